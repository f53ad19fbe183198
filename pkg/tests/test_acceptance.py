"""End-to-end acceptance checks over the zoo; each prints one PASS/FAIL line."""

from __future__ import annotations

import subprocess
import sys

import pytest

from orbcat import checks


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, suite: checks.SuiteResult) -> None:
        status = "PASS" if suite.ok else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} ({suite.checked} checks)")
            for msg in suite.failures:
                print(f"    {msg}")
        assert suite.ok, suite.failures

    return emit


def test_01_morphism_counts(report):
    report(1, "orbit-category hom-sets equal brute-force equivariant map counts", checks.morphism_counts())


def test_02_thinness(report):
    report(2, "every E_F(G) is thin", checks.thinness())


def test_03_fixed_subcategory(report):
    report(3, "fixed-point scan equals the coset description, full", checks.fixed_points())


def test_04_classifying_fixed_points(report):
    report(4, "fixed subcategories empty off F, initial and acyclic on F", checks.classifying(N=3))


def test_05_orbit_quotient(report):
    report(5, "G-orbits of simplices of N(E_F) match N(Orb_F), k <= 3", checks.quotients(N=3))


def test_06_homology_sanity(report):
    report(6, "H_*(Orb_1(Z2)) and H_1(Orb_1(G)) = abelianization", checks.homology_sanity())


def test_07_functoriality(report):
    report(7, "induced functors: functor, equivariant, composition, 20 squares", checks.functoriality(seed=42, squares=20))


def test_08_holim(report):
    report(8, "cones biject with equivariant maps from pi_0, 50 sets per pair", checks.holim_bijection(per_pair=50, seed=42))


def test_09_sylow(report):
    report(9, "Sylow comparison: bijections and hypothesis-failure fibers", checks.sylow(per_case=20, seed=42))


def test_10_homotopy_invariance(report):
    report(10, "equivariant bijections induce bijections of cones", checks.homotopy_invariance(per_pair=5, seed=42))


def test_11_determinism(capsys):
    cmd = [sys.executable, "-m", "orbcat", "selftest", "--seed", "42", "--output", "json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion 11: selftest --seed 42 twice gives identical JSON ({len(first.stdout)} bytes)")
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
