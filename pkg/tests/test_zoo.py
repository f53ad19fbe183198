from __future__ import annotations

import json
import random

import pytest

from orbcat.groups import HomomorphismError
from orbcat.selftest import run_selftest
from orbcat.zoo import ZOO_GROUPS, embedding, parse_hom, random_square_instance, zoo_families, zoo_group, zoo_pairs


def test_zoo_contents():
    assert len(ZOO_GROUPS) == 18
    assert sum(1 for _ in zoo_pairs()) == 50
    # Z1 collapses to a single family
    assert len(zoo_families(zoo_group("Z1"))) == 1
    names = [f.name for f in zoo_families(zoo_group("S4"))]
    assert names[:4] == ["trivial", "all", "p:2", "p:3"] and names[4].startswith("gen:")


@pytest.mark.parametrize(
    "desc,image",
    [
        ("id:Z3", (0, 1, 2)),
        ("mod:6:3", (0, 1, 2, 0, 1, 2)),
        ("sign:3", (0, 1, 1, 0, 0, 1)),
        ("map:Z4:Z2:1=1", (0, 1, 0, 1)),
    ],
)
def test_parse_hom(desc, image):
    h = parse_hom(desc)
    assert h.image == image and h.check() is None


def test_embedding_fixes_new_points():
    h = embedding(3, 4)
    for g, im in enumerate(h.image):
        assert h.target.perms[im][3] == 3
        assert h.target.perms[im][:3] == h.source.perms[g]


@pytest.mark.parametrize("desc", ["mod:4:3", "map:Z4:Z2:1=0,2=1", "sign:x", "hom:1", "embed:3"])
def test_bad_homs(desc):
    with pytest.raises(HomomorphismError):
        parse_hom(desc)


def test_square_instances_are_seeded():
    a = [random_square_instance(random.Random(9)).description for _ in range(3)]
    assert len(set(a)) == 1


def test_selftest_small_is_deterministic():
    r1, r2 = run_selftest(7, "small"), run_selftest(7, "small")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
    assert r1["ok"] and len(r1["suites"]) == 10
