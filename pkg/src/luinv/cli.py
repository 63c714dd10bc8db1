"""Command-line interface.

Exit codes: 0 positive result, 1 negative decision, 2 not in class,
3 unreadable input, 4 shape/arity/spec problem, 5 internal error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import classes, invariants, judge, zoo
from .errors import (BadSpec, DimensionMismatch, DimensionOrder, FamilyMismatch, LUError,
                     ParseError, ShapeMismatch, WrongArity)
from .io import format_invariants, read_state, write_state
from .linalg import derive_seed, random_unitary
from .states import apply_local_unitary

EXIT_OK, EXIT_NEGATIVE, EXIT_NOT_IN_CLASS, EXIT_PARSE, EXIT_SHAPE, EXIT_INTERNAL = range(6)

SHAPE_ERRORS = (WrongArity, DimensionMismatch, DimensionOrder, FamilyMismatch, ShapeMismatch,
                BadSpec)


def _report_lines(rep: classes.MembershipReport, prefix: str = "") -> list[str]:
    return [
        f"{prefix}verdict: {'in-class' if rep.verdict else 'not-in-class'}",
        f"{prefix}max_commutator: {rep.max_commutator:.6e}",
        f"{prefix}min_rank_margin: {rep.min_rank_margin:.6e}",
        f"{prefix}failing_pair: {rep.failing_pair if rep.failing_pair is not None else '-'}",
        f"{prefix}degenerate_weights: {'yes' if rep.degenerate else 'no'}",
    ]


def cmd_check(args) -> int:
    state, _ = read_state(args.input)
    rep = classes.check_class(state, args.klass, args.tol)
    print(f"class: {classes.normalize_class(args.klass)}")
    print("\n".join(_report_lines(rep)))
    return EXIT_OK if rep.verdict else EXIT_NOT_IN_CLASS


def cmd_invariants(args) -> int:
    state, _ = read_state(args.input)
    text = format_invariants(invariants.compute_invariants(state, args.family))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _matrix_lines(name: str, m: np.ndarray) -> list[str]:
    out = [f"{name}:"]
    for row in m:
        out.append("  " + " ".join(f"{z.real:+.12f}{z.imag:+.12f}j" for z in row))
    return out


def cmd_compare(args) -> int:
    s1, _ = read_state(args.input1)
    s2, _ = read_state(args.input2)
    if tuple(s1.dims) != tuple(s2.dims):
        raise DimensionMismatch(f"dims {s1.dims} vs {s2.dims}")
    v = judge.decide_equivalence(s1, s2, args.klass, tol=args.tol, gate_tol=args.gate_tol)
    print(f"class: {v.class_checked}")
    print(f"decision: {v.decision}")
    print(f"evidence: {v.evidence:.6e}")
    print("pairing: " + " ".join(f"{i}-{j}" for i, j in v.pairing))
    for n, rep in enumerate(v.reports, 1):
        print("\n".join(_report_lines(rep, prefix=f"state{n}_")))
    if args.witness:
        w = judge.find_lu_witness(s1, s2, budget=args.budget, seed=args.seed)
        print(f"witness_found: {'yes' if w.found else 'no'}")
        print(f"witness_overlap: {w.overlap:.15f}")
        print(f"witness_restarts: {w.restarts}")
        if w.found:
            for k, f in enumerate(w.factors, 1):
                print("\n".join(_matrix_lines(f"factor{k}", f)))
    return {"equivalent": EXIT_OK, "inequivalent": EXIT_NEGATIVE,
            "not-in-class": EXIT_NOT_IN_CLASS}.get(v.decision, EXIT_INTERNAL)


def orbit_test(state, trials: int, seed: int, tol: float, families=None) -> tuple[bool, float, list[str]]:
    """Compare invariants of ``state`` with those of ``trials`` random LU images."""
    fams = tuple(families or invariants.families_for(state))
    base = {f: invariants.compute_invariants(state, f) for f in fams}
    worst = 0.0
    for t in range(trials):
        us = [random_unitary(d, derive_seed(seed, t, k)) for k, d in enumerate(state.dims)]
        img = apply_local_unitary(state, us)
        for f in fams:
            cmp = judge.compare_invariants(base[f], invariants.compute_invariants(img, f), tol)
            worst = max(worst, cmp.mismatch)
    ok = worst <= tol
    lines = [f"trials: {trials}", "families: " + " ".join(fams), f"seed: {seed}"]
    if trials == 0:
        lines.append("note: 0 trials, vacuous pass")
    lines.append(f"max_deviation: {worst:.6e}")
    lines.append(f"status: {'pass' if ok else 'fail'}")
    return ok, worst, lines


def cmd_orbit_test(args) -> int:
    state, _ = read_state(args.input)
    fams = args.family.split(",") if args.family else None
    ok, _, lines = orbit_test(state, args.trials, args.seed, args.tol, fams)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(Fraction(x.strip())) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise BadSpec(f"cannot parse number list {text!r}") from None


def _pair_paths(out: Path) -> tuple[Path, Path]:
    return (out.with_name(f"{out.stem}_1{out.suffix}"), out.with_name(f"{out.stem}_2{out.suffix}"))


def cmd_zoo(args) -> int:
    base = _floats(args.base) if args.base else None
    spec = zoo.FamilySpec(args.family, args.dim, _floats(args.weights), base)
    built = zoo.build(spec)
    meta = {"family": spec.family, "dim": spec.dim,
            "weights": ",".join(repr(w) for w in spec.weights)}
    out = Path(args.out)
    if isinstance(built, tuple):
        for n, (path, st) in enumerate(zip(_pair_paths(out), built), 1):
            write_state(path, st, {**meta, "member": n})
            print(f"wrote: {path}")
    else:
        write_state(out, built, meta)
        print(f"wrote: {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="luinv", description="Local unitary invariants and equivalence.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test class membership")
    c.add_argument("input")
    c.add_argument("--class", dest="klass", required=True,
                   help="gamma0, gamma1, gamma2, gamma3 or gamma")
    c.add_argument("--tol", type=float, default=classes.COMMUTATOR_TOL)
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("invariants", help="print an invariant set")
    i.add_argument("input")
    i.add_argument("--family", required=True, choices=invariants.ALL_TAGS)
    i.add_argument("--out")
    i.set_defaults(func=cmd_invariants)

    m = sub.add_parser("compare", help="decide local unitary equivalence")
    m.add_argument("input1")
    m.add_argument("input2")
    m.add_argument("--class", dest="klass", required=True)
    m.add_argument("--tol", type=float, default=judge.COMPARE_TOL)
    m.add_argument("--gate-tol", type=float, default=classes.COMMUTATOR_TOL)
    m.add_argument("--witness", action="store_true")
    m.add_argument("--budget", type=int, default=judge.WITNESS_RESTARTS)
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_compare)

    o = sub.add_parser("orbit-test", help="check invariants over random local unitary images")
    o.add_argument("input")
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--tol", type=float, default=judge.COMPARE_TOL)
    o.add_argument("--family", help="comma-separated tags; default: all that apply")
    o.set_defaults(func=cmd_orbit_test)

    z = sub.add_parser("zoo", help="write a state from a built-in family")
    z.add_argument("--family", required=True, choices=zoo.FAMILIES)
    z.add_argument("--dim", type=int, default=3)
    z.add_argument("--weights", required=True, help="e.g. 0.5,0.5 or 1/3,1/3,1/3")
    z.add_argument("--base", help="first-branch coefficients for tri-mixed")
    z.add_argument("--out", required=True)
    z.set_defaults(func=cmd_zoo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SHAPE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SHAPE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (LUError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
