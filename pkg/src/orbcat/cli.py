"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification finds a
counterexample, 2 for usage errors (bad flags or descriptors).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

import jsonschema

from .families import Family, FamilyError, all_families, parse_family, preimage_family
from .fincat import CategoryError, orbit_category
from .grothendieck import (
    classifying_certificate,
    composition_violation,
    e_f_gamma,
    fixed_subcategory,
    square_violation,
    induced_functor,
    quotient_compare,
)
from .groups import FiniteGroup, GroupError, HomomorphismError, Subgroup, generate, make_group
from .gsets import GammaSet, GammaSetError, point, read_gamma_set
from .holim import cofinality_check, holim_discrete, sylow_comparison, verify_holim_theorem
from .nerve import DEFAULT_CAP, NerveTooLarge, complex_of_nerve, homology, nerve
from .schemas import SCHEMAS
from .selftest import run_selftest
from .zoo import parse_hom, random_square_instance

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group descriptor: Z6, D4, S3, A4, Q8, Z2xZ2, perm:(1 2),(1 2 3)")
    common.add_argument("--cayley", metavar="FILE", help="read the group from a Cayley table file")
    common.add_argument("--max-order", type=int, default=5040, metavar="K", help="refuse groups larger than K")
    common.add_argument("--output", choices=("json", "dot", "text"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", default="all", help="trivial, all, p:P or gen:[a,b],[c]")

    dim = argparse.ArgumentParser(add_help=False)
    dim.add_argument("--maxdim", type=int, default=3, metavar="N")
    dim.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest nerve level to enumerate")

    p = argparse.ArgumentParser(prog="orbcat", description="Orbit categories, E_F(Gamma) and homotopy fixed points.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("orbit-cat", parents=[common, fam], help="emit the orbit category Orb_F(G)")
    sub.add_parser("efg", parents=[common, fam], help="emit E_F(G) and check thinness and the action")
    sub.add_parser("certify", parents=[common, fam], help="fixed-point certificate for every subgroup")
    sub.add_parser("quotient-check", parents=[common, fam, dim], help="compare G-orbits of simplices with Orb_F(G)")

    h = sub.add_parser("homology", parents=[common, fam, dim], help="integral homology of a nerve")
    h.add_argument("--category", choices=("orbit", "efg"), default="orbit")
    h.add_argument("--sub", metavar="GENS", help="use the fixed subcategory of E_F(G) for <GENS>")
    h.add_argument("--method", choices=("auto", "direct", "skeleton"), default="auto")
    h.add_argument("--dump-boundaries", metavar="DIR", help="write boundary matrices as Matrix Market files")

    hf = sub.add_parser("hofix", parents=[common, fam], help="cones over the fixed-point diagram of a G-set")
    hf.add_argument("--gset", metavar="FILE", help="G-set file (default: a point)")

    c = sub.add_parser("cofinal", parents=[common, fam], help="fibers of a full subcategory inclusion")
    c.add_argument("--sub", metavar="GENS", action="append", default=[], help="a subgroup by generators (repeatable)")
    c.add_argument("--maximal", action="store_true", help="use the maximal members of the family")

    s = sub.add_parser("sylow", parents=[common], help="compare X^{h_P G} with (X^P)^W")
    s.add_argument("--p", type=int, help="prime for the p-subgroup family")
    s.add_argument("--family", help="generalized mode: any family descriptor")
    s.add_argument("--gset", metavar="FILE")

    f = sub.add_parser("functorial", parents=[common], help="check the functors induced by homomorphisms")
    f.add_argument("--hom", action="append", required=True, metavar="DESC",
                   help="id:G, mod:M:N, sign:N, embed:M:N, map:SRC:DST:a=b,...; repeat to compose")
    f.add_argument("--family", help="family on the target (default: every family)")
    f.add_argument("--squares", type=int, default=20, help="random strict squares to check")

    t = sub.add_parser("selftest", parents=[common], help="run every invariant suite over the zoo")
    t.add_argument("--scale", choices=("full", "small"), default="full")
    return p


def _group(args) -> FiniteGroup:
    if args.group and args.cayley:
        raise UsageError("give either --group or --cayley, not both")
    if args.cayley:
        return make_group(f"cayley:{args.cayley}", args.max_order)
    if not args.group:
        raise UsageError("--group is required")
    return make_group(args.group, args.max_order)


def _subgroup(G: FiniteGroup, gens: str) -> Subgroup:
    body = gens.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    labels = [s for s in re.split(r"\s*,\s*(?![^()]*\))", body.strip()) if s]
    return generate(G, [G.index_of(lab) for lab in labels])


def _gset(G: FiniteGroup, path: str | None) -> GammaSet:
    if path is None:
        return point(G)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read G-set file {path!r}: {exc.strerror}") from None
    return read_gamma_set(G, text)


def _context(G: FiniteGroup, F: Family) -> dict:
    return {"group": G.name, "order": G.order, "family": [m.describe(G) for m in F.members]}


# --------------------------------------------------------------------------
# subcommands; each returns (payload, text, exit code) and optionally dot


def cmd_orbit_cat(args):
    G = _group(args)
    F = parse_family(G, args.family)
    orb = orbit_category(G, F)
    text = [f"Orb_F({G.name}): {orb.n_objects} objects, {orb.n_morphisms} morphisms"]
    for a in range(orb.n_objects):
        row = " ".join(str(orb.hom_count(a, b)) for b in range(orb.n_objects))
        text.append(f"  {orb.object_label(a)}: {row}")
    return {**_context(G, F), "category": orb.to_dict()}, text, 0, orb.to_dot()


def cmd_efg(args):
    G = _group(args)
    F = parse_family(G, args.family)
    E = e_f_gamma(G, F)
    thin = E.is_thin()
    action = E.action_violation()
    ok = thin and action is None
    C = E.category
    text = [
        f"E_F({G.name}): {C.n_objects} objects, {C.n_morphisms} morphisms",
        f"thin: {'yes' if thin else 'no'}",
        f"action: {action or 'ok'}",
    ]
    payload = {**_context(G, F), "category": C.to_dict(), "thin": thin, "actionViolation": action, "ok": ok}
    return payload, text, 0 if ok else 1, C.to_dot()


def cmd_certify(args):
    G = _group(args)
    F = parse_family(G, args.family)
    cert = classifying_certificate(G, F)
    text = []
    for e in cert.entries:
        where = "in F" if e.in_family else "not in F"
        line = f"{e.subgroup.describe(G)}  {where}  {e.verdict}"
        if e.witness_label:
            line += f"  witness {e.witness_label}"
        if e.detail:
            line += f"  ({e.detail})"
        text.append(line)
    text.append("certificate ok" if cert.ok else f"{len(cert.counterexamples)} counterexample(s)")
    return cert.to_dict(), text, 0 if cert.ok else 1, None


def cmd_quotient_check(args):
    G = _group(args)
    F = parse_family(G, args.family)
    rep = quotient_compare(e_f_gamma(G, F), args.maxdim, cap=args.cap)
    text = [f"method: {rep.method}"]
    for lv in rep.levels:
        text.append(f"  k={lv.dim}: {lv.simplices} simplices, {lv.orbits} orbits, {lv.base_simplices} in Orb_F")
    text.append("ok" if rep.ok else f"counterexample: {rep.counterexample}")
    return {**_context(G, F), **rep.to_dict()}, text, 0 if rep.ok else 1, None


def cmd_homology(args):
    G = _group(args)
    F = parse_family(G, args.family)
    if args.sub is not None:
        H = _subgroup(G, args.sub)
        C = fixed_subcategory(e_f_gamma(G, F), H).category
        target = f"fixed:{H.describe(G)}"
    elif args.category == "efg":
        C, target = e_f_gamma(G, F).category, "efg"
    else:
        C, target = orbit_category(G, F), "orbit"
    if C.n_objects == 0:
        raise UsageError(f"the {target} category is empty")
    res = homology(C, args.maxdim, cap=args.cap, method=args.method)
    if args.dump_boundaries:
        _dump_boundaries(C, args.maxdim, args.cap, Path(args.dump_boundaries))
    text = [f"H_{k} = {g}" for k, g in enumerate(res.groups)]
    return {**_context(G, F), "target": target, **res.to_dict()}, text, 0, None


def _dump_boundaries(C, maxdim: int, cap: int, out: Path) -> None:
    from scipy.io import mmwrite

    out.mkdir(parents=True, exist_ok=True)
    cc = complex_of_nerve(nerve(C, maxdim + 1, cap))
    for k, M in sorted(cc.boundaries.items()):
        mmwrite(str(out / f"d{k}.mtx"), M)


def cmd_hofix(args):
    G = _group(args)
    F = parse_family(G, args.family)
    X = _gset(G, args.gset)
    cones = holim_discrete(F, X)
    rep = verify_holim_theorem(F, X)
    text = [f"{len(cones)} cone(s) over {len(F)} member(s); {rep.maps} map(s) from pi_0 E_F"]
    text += ["  " + " ".join(X.label(x) for x in cone) for cone in cones]
    text.append("bijection ok" if rep.ok else f"counterexample: {rep.detail}")
    payload = {
        **_context(G, F),
        "gsetSize": X.size,
        "cones": [list(c) for c in cones],
        "ok": rep.ok,
        "maps": rep.maps,
        "detail": rep.detail,
    }
    return payload, text, 0 if rep.ok else 1, None


def cmd_cofinal(args):
    G = _group(args)
    F = parse_family(G, args.family)
    if args.maximal == bool(args.sub):
        raise UsageError("give either --maximal or at least one --sub")
    if args.maximal:
        chosen = F.maximal_members()
    else:
        chosen = []
        for gens in args.sub:
            H = _subgroup(G, gens)
            if H not in F:
                raise UsageError(f"subgroup {gens!r} is not in the family")
            chosen.append(H)
    objs = sorted({F.index(H) for H in chosen})
    orb = orbit_category(G, F)
    rep = cofinality_check(orb, objs)
    text = [f"cofinal: {'yes' if rep.cofinal else 'no'} (all fibers indiscrete: {'yes' if rep.all_indiscrete else 'no'})"]
    for fib in rep.fibers:
        text.append(
            f"  {fib.label} | i: {fib.n_objects} objects, {fib.n_morphisms} morphisms, "
            f"{fib.components} component(s), {'contractible' if fib.contractible else 'not certified'}"
        )
    payload = {**_context(G, F), "subcategory": [orb.object_label(a) for a in objs], **rep.to_dict()}
    return payload, text, 0, None


def cmd_sylow(args):
    G = _group(args)
    if (args.p is None) == (args.family is None):
        raise UsageError("give exactly one of --p or --family")
    X = _gset(G, args.gset)
    if args.family is not None:
        rep = sylow_comparison(G, None, X, family=parse_family(G, args.family))
    else:
        rep = sylow_comparison(G, args.p, X)
    P = rep.sylow.describe(G) if rep.sylow else "?"
    if rep.hypothesis == "holds":
        text = [
            f"hypothesis holds: unique maximal member {P} is normal",
            f"|X^hP| = {rep.holim_size}, |(X^P)^W| = {rep.fixed_size}, bijection: {'yes' if rep.bijection else 'no'}",
        ]
    else:
        fib = rep.failing_fiber
        text = [f"hypothesis fails: no unique maximal member (e.g. {P})"]
        if fib is not None:
            text.append(
                f"counterexample fiber at {fib.label}: {fib.n_objects} objects, {fib.n_morphisms} morphisms, "
                f"{fib.components} component(s), not indiscrete"
            )
    return rep.to_dict(G), text, 0 if rep.ok else 1, None


def cmd_functorial(args):
    homs = [parse_hom(d) for d in args.hom]
    h = homs[0]
    for inner in homs[1:]:
        if inner.target != h.source:
            raise UsageError(f"{args.hom[homs.index(inner)]!r} does not compose with the previous homomorphism")
    fams = [parse_family(h.target, args.family)] if args.family else all_families(h.target)
    # the composite (h o k o ...) is checked against the step-by-step functors
    composite = h
    for inner in homs[1:]:
        composite = composite.compose(inner)
    checks, text, ok = [], [], True
    for F in fams:
        ind = induced_functor(composite, F)
        fv = ind.functor_violation()
        g = ind.equivariance_violation()
        ev = None if g is None else f"fails at {composite.source.labels[g]}"
        cv = None
        if len(homs) > 1:
            cv = _chain_violation(homs, F)
        ok = ok and fv is None and ev is None and cv is None
        C = ind.source.category
        checks.append(
            {
                "family": [m.describe(h.target) for m in F.members],
                "sourceFamily": [m.describe(composite.source) for m in ind.source.family.members],
                "objects": C.n_objects,
                "morphisms": C.n_morphisms,
                "functor": fv,
                "equivariance": ev,
                "composition": cv,
            }
        )
        status = "ok" if fv is None and ev is None and cv is None else (fv or ev or cv)
        text.append(f"|F|={len(F)}: h_F on {C.n_objects} objects, {C.n_morphisms} morphisms: {status}")
    rng = random.Random(args.seed)
    squares = []
    for _ in range(args.squares):
        inst = random_square_instance(rng)
        v = square_violation(inst.alpha, inst.eta)
        ok = ok and v is None
        squares.append({"instance": inst.description, "violation": v})
    bad = sum(1 for s in squares if s["violation"])
    text.append(f"{len(squares) - bad}/{len(squares)} random squares commute")
    payload = {"homomorphisms": list(args.hom), "checks": checks, "squares": squares, "ok": ok}
    return payload, text, 0 if ok else 1, None


def _chain_violation(homs, F: Family) -> str | None:
    """Fold h1 o h2 o ... right to left, checking each step against the direct composite."""
    outer = homs[0]
    fam = F
    for inner in homs[1:]:
        msg = composition_violation(outer, inner, fam)
        if msg:
            return msg
        fam = preimage_family(outer, fam)
        outer = inner
    return None


def cmd_selftest(args):
    report = run_selftest(args.seed, args.scale)
    text = []
    for s in report["suites"]:
        text.append(f"{'PASS' if s['ok'] else 'FAIL'} {s['name']} ({s['checked']} checks)")
        text += [f"    {msg}" for msg in s["failures"]]
    return report, text, 0 if report["ok"] else 1, None


COMMANDS = {
    "orbit-cat": cmd_orbit_cat,
    "efg": cmd_efg,
    "certify": cmd_certify,
    "quotient-check": cmd_quotient_check,
    "homology": cmd_homology,
    "hofix": cmd_hofix,
    "cofinal": cmd_cofinal,
    "sylow": cmd_sylow,
    "functorial": cmd_functorial,
    "selftest": cmd_selftest,
}

_USAGE_ERRORS = (UsageError, GroupError, FamilyError, HomomorphismError, GammaSetError)


def render(command: str, payload: dict) -> str:
    jsonschema.validate(payload, SCHEMAS[command])
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "maxdim", 0) < 0:
        print("orbcat: error: --maxdim must be >= 0", file=stderr)
        return 2
    try:
        payload, text, code, dot = COMMANDS[args.command](args)
    except NerveTooLarge as exc:
        print(f"orbcat: error: {exc}; raise --cap or lower --maxdim", file=stderr)
        return 2
    except _USAGE_ERRORS as exc:
        print(f"orbcat: error: {exc}", file=stderr)
        return 2
    except CategoryError as exc:
        # a construction that should always be a category was not one
        print(f"orbcat: counterexample: {exc}", file=stderr)
        return 1
    if args.output == "json":
        stdout.write(render(args.command, payload))
    elif args.output == "dot":
        if dot is None:
            print(f"orbcat: error: --output dot is not available for {args.command}", file=stderr)
            return 2
        stdout.write(dot)
    else:
        stdout.write("\n".join(text) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
