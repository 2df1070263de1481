"""Command line entry point: ``canonical-section <verb> <composition> [options]``.

Results go to stdout, diagnostics to stderr.  Exit status 0 means every
requested check passed, 1 a verification failure, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import CompositionError, neighbouring_pairs, parse_composition
from .exact import realize
from .orbital import excluded_sets, orbital_json, pair_subspaces, u_intersection
from .render import FORMATS, RenderPlan, render_lines, render_matrix
from .scan import scan
from .section import SectionError, build_section
from .verify import ALL_CHECKS, jordan_type, orbit_half_dim, regularity_check, verify_composition
from .vs import build_extended

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _composition(text):
    try:
        return parse_composition(text)
    except CompositionError as exc:
        raise UsageError(str(exc)) from None


def _checks(text: Optional[str]):
    if not text:
        return None
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [t for t in names if t not in ALL_CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {', '.join(unknown)}; known: {', '.join(ALL_CHECKS)}")
    return names


def _coords(xs) -> str:
    return " ".join(f"({i},{j})" for i, j in xs) or "-"


def cmd_section(args) -> int:
    state = build_section(_composition(args.composition))
    fmt = args.format or "ascii"
    print(render_matrix(state, None, RenderPlan(fmt)), end="" if fmt != "json" else "\n")
    if fmt == "ascii":
        print(f"supp e: {_coords(state.supp_e)}")
        print(f"supp V: {_coords(state.supp_v)}")
    return OK


def cmd_grow(args) -> int:
    c = _composition(args.composition)
    state = build_section(c)
    if args.trace:
        for ev in state.trace:
            print(ev)
        return OK
    if c.k < 2:
        print(f"{c} has a single column; nothing to grow", file=sys.stderr)
        return OK
    S = c.drop_last()
    for s in range(1, c.parts[-1] + 1):
        st = build_section(S.append(s))
        block = st.last_block()
        cols = " ".join(
            f"{t}:" + (",".join(f"{r}{l}" for r, l in sorted(block[t].items())) if t in block else "-")
            for t in range(1, s + 1)
        )
        print(f"s={s} {cols}")
    return OK


def cmd_vs(args) -> int:
    c = _composition(args.composition)
    state = build_section(c)
    rep = build_extended(state)
    if args.format == "json":
        out = rep.to_json()
        if args.dims:
            out["dims"] = _dims(state, rep)
        print(json.dumps(out, sort_keys=True))
        return OK
    print("quadruplets: " + (" ".join(str(q.quad) for q in rep.quadruplets) or "-"))
    print("bad:         " + (" ".join(str(q.quad) for q in rep.bad) or "-"))
    print("adjoined:    " + _coords(rep.adjoined))
    if args.dims:
        for k, v in _dims(state, rep).items():
            print(f"{k}: {v}")
    return OK


def _dims(state, rep) -> dict:
    c = state.composition
    reg = regularity_check(state, rep)
    je = jordan_type(realize(state.supp_e, 1, c.n))
    jv = jordan_type(realize(rep.supp_evs, 1, c.n))
    return {
        "dim_m": reg.dim_m,
        "g": reg.g,
        "dim_pe": reg.dim_pe,
        "dim_pevs": reg.dim_pevs,
        "jordan_e": list(je.parts),
        "jordan_evs": list(jv.parts),
        "orbit_half_dim_e": orbit_half_dim(je),
        "orbit_half_dim_evs": orbit_half_dim(jv),
        "verdict": reg.verdict,
    }


def cmd_orbital(args) -> int:
    c = _composition(args.composition)
    state = build_section(c)
    if args.format == "json":
        print(json.dumps(orbital_json(c, state), sort_keys=True))
        return OK
    for p, w, u in pair_subspaces(c):
        print(f"{p}: word {' '.join(map(str, w.word))}; dim u = {len(u)}")
    print(f"dim u_intersection = {len(u_intersection(c))} (dim m = {c.dim_nilradical}, g = {len(neighbouring_pairs(c))})")
    ex = excluded_sets(c, state)
    print(f"X: {_coords(sorted(ex.X))}")
    print(f"Y: {_coords(sorted(ex.Y))}")
    print(f"Z: {_coords(sorted(ex.Z))}")
    for v in ex.violations:
        print(f"violation: {v}", file=sys.stderr)
    return FAILED if ex.violations else OK


def cmd_verify(args) -> int:
    c = _composition(args.composition)
    rep = verify_composition(c, seed=args.seed, checks=_checks(args.checks))
    if args.format == "json":
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        for ch in rep.checks:
            extra = "" if ch.passed else f"  expected {ch.expected} got {ch.got}"
            print(f"{'PASS' if ch.passed else 'FAIL'} {ch.name}{extra}")
    return OK if rep.passed else FAILED


def cmd_scan(args) -> int:
    summary = scan(args.max_n, _checks(args.checks), args.jobs, args.seed)
    if args.format == "json":
        print(json.dumps(summary.to_json(), sort_keys=True))
    else:
        print(summary.text(), end="")
    return OK if summary.passed else FAILED


def cmd_render(args) -> int:
    c = _composition(args.composition)
    state = build_section(c)
    if args.lines:
        print(render_lines(state), end="")
        return OK
    X = None if args.no_circles else excluded_sets(c, state).X
    fmt = args.format or "ascii"
    out = render_matrix(state, X, RenderPlan(fmt))
    print(out, end="" if out.endswith("\n") else "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="canonical-section", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help, composition=True):
        p = sub.add_parser(name, help=help)
        if composition:
            p.add_argument("composition", help='column heights, e.g. "3,2,1,1,2,3"')
        p.set_defaults(fn=fn)
        return p

    p = verb("section", cmd_section, "print the canonical section e + V")
    p.add_argument("--format", choices=FORMATS)
    p = verb("grow", cmd_grow, "show the last column block height by height")
    p.add_argument("--trace", action="store_true", help="print which rule placed each entry")
    p = verb("vs", cmd_vs, "VS quadruplets, bad pairs and e_VS")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dims", action="store_true", help="also print Jordan types and p-orbit dimensions")
    p = verb("orbital", cmd_orbital, "Weyl words, the subalgebras u and the excluded sets")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = verb("verify", cmd_verify, "run the exact verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", help="comma separated subset of: " + ",".join(ALL_CHECKS))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = verb("scan", cmd_scan, "verify every composition with n <= --max-n", composition=False)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = verb("render", cmd_render, "draw the matrix with excluded coordinates circled")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--no-circles", action="store_true")
    p.add_argument("--lines", action="store_true", help="list the labelled lines instead")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except SectionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return FAILED
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
