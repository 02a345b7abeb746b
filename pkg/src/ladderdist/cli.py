"""Command-line entry point ``ladderdist``.

Exit codes: 0 success or PASS, 1 FAIL, 2 usage or parse error, 3 universe
semantic error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import engine
from .dsl import format_multisegment, format_segment, parse_multisegment, parse_universe
from .errors import LadderDistError, NotALadderError
from .multisegment import (
    NOT_LADDER,
    Multisegment,
    derivative_set,
    is_conjugate_selfdual,
    ladder_shape,
    proper_ladder_decomposition,
    pure_components,
)
from .segments import format_rational
from .sweep import ladder_corpus, multisegment_corpus, sweep_realizations, sweep_universe
from .universe import Universe

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNIVERSE = 0, 1, 2, 3


def _rat(x) -> list:
    return [x.numerator, x.denominator]


def _ms_json(ms: Multisegment) -> list:
    return [engine.segment_json(s) for s in ms]


def _line_json(line) -> dict:
    return {"tower": line.tower.id, "offset": _rat(line.offset)}


def _line_text(line) -> str:
    return f"[{line.tower.id}, offset {format_rational(line.offset)}]"


def _load_universe(args, default_gamma: Optional[int] = None) -> Universe:
    if args.universe is None:
        if default_gamma is None:
            raise LadderDistError("--universe is required for this command")
        return sweep_universe(default_gamma)
    try:
        text = Path(args.universe).read_text(encoding="utf-8")
    except OSError as e:
        raise LadderDistError(f"cannot read universe file: {e}") from None
    return parse_universe(text)


def _load_pi(args, universe: Universe) -> Multisegment:
    if args.pi is None:
        raise LadderDistError("--pi is required for this command")
    return parse_multisegment(args.pi, universe)


# -- subcommands ---------------------------------------------------------------

def cmd_classify(args, out):
    u = _load_universe(args)
    ms = _load_pi(args, u)
    if args.mode == "ladder" and ladder_shape(ms) is NOT_LADDER:
        raise NotALadderError(f"--mode ladder: {format_multisegment(ms)} is not a ladder")
    rep = engine.classify(ms, args.mode)
    if args.format == "json":
        doc = {"command": "classify", "pi": format_multisegment(ms), "mode": args.mode}
        doc.update(rep.to_json())
        return doc, EXIT_OK
    out.append(f"pi: {format_multisegment(ms)}")
    out.append(f"family: {rep.family}")
    out.append(f"dist: {rep.dist.value}")
    out.append(f"eta: {rep.eta.value}")
    out.append("trace:")
    for e in rep.trace:
        tag = f"[{e.kind}] " if e.kind else ""
        out.append(f"  {tag}{e.rule}: {e.detail}")
    return None, EXIT_OK


def cmd_decompose(args, out):
    u = _load_universe(args)
    ms = _load_pi(args, u)
    comps = pure_components(ms)
    shape = ladder_shape(ms)
    parts = proper_ladder_decomposition(shape) if shape is not NOT_LADDER and len(ms) else []
    if args.format == "json":
        return {
            "command": "decompose",
            "pi": format_multisegment(ms),
            "components": [{"line": _line_json(l), "segments": _ms_json(c)}
                           for l, c in comps.items()],
            "ladder": shape is not NOT_LADDER,
            "proper_ladders": [_ms_json(p.multisegment()) for p in parts],
        }, EXIT_OK
    out.append("pure components:")
    for line, comp in comps.items():
        out.append(f"  {_line_text(line)}: {format_multisegment(comp)}")
    if shape is NOT_LADDER:
        out.append("not a ladder")
    else:
        out.append(f"proper ladders (k={len(parts)}):")
        for p in parts:
            out.append(f"  {format_multisegment(p.multisegment())}")
    return None, EXIT_OK


def cmd_derivatives(args, out):
    u = _load_universe(args)
    ms = _load_pi(args, u)
    members = derivative_set(ms)
    if args.format == "json":
        return {
            "command": "derivatives",
            "pi": format_multisegment(ms),
            "members": [{"segments": _ms_json(m), "empty": len(m) == 0} for m in members],
        }, EXIT_OK
    out.append(f"{len(members)} members")
    for m in members:
        out.append(f"  {format_multisegment(m)}" if len(m) else "  (empty)")
    return None, EXIT_OK


def cmd_strata(args, out):
    u = _load_universe(args)
    ms = engine.twist_for(_load_pi(args, u), args.kind)
    rows = engine.strata(ms, prune=args.prune)
    total = sum(r.hom_bound for r in rows)
    if args.format == "json":
        return {
            "command": "strata",
            "realization": _ms_json(ms),
            "kind": args.kind,
            "strata": [r.to_json() for r in rows],
            "total_bound": total,
        }, EXIT_OK
    out.append(f"realization: {' x '.join(format_segment(s) for s in ms)}")
    for r in rows:
        cells = r.w.cells
        eps = " ".join(f"{cells[c]}<->{cells[e]}" for c, e in enumerate(r.w.eps) if c <= e)
        flag = "A" if r.w.is_admissible else "-"
        out.append(f"  {flag} L={list(map(list, r.w.refinement))} eps: {eps}  bound {r.hom_bound}"
                   + (f"  ({r.failure_reason})" if r.failure_reason else ""))
    out.append(f"total bound: {total}")
    return None, EXIT_OK


def cmd_dual(args, out):
    u = _load_universe(args)
    ms = _load_pi(args, u)
    star, tau = ms.star(), ms.tau()
    closed = is_conjugate_selfdual(ms)
    if args.format == "json":
        return {
            "command": "dual",
            "pi": format_multisegment(ms),
            "star": _ms_json(star),
            "tau": _ms_json(tau),
            "gd_closed": closed,
        }, EXIT_OK
    out.append(f"star: {format_multisegment(star)}")
    out.append(f"tau: {format_multisegment(tau)}")
    out.append(f"gd-closed: {'yes' if closed else 'no'}")
    return None, EXIT_OK


def cmd_check_key_lemma(args, out):
    universes = [_load_universe(args)] if args.universe else [sweep_universe(g) for g in (0, 1)]
    checked, witnesses = 0, []
    for u in universes:
        towers = tuple(t.id for t in u.declared)
        for r in sweep_realizations(u, max_segments=args.max_segments, max_span=args.max_span,
                                    towers=towers):
            checked += 1
            res = engine.key_lemma_check(r)
            if not res.passed:
                witnesses.append(res)
    status = "PASS" if not witnesses else "FAIL"
    code = EXIT_OK if not witnesses else EXIT_FAIL
    if args.format == "json":
        return {
            "command": "check",
            "check": "key-lemma",
            "status": status,
            "checked": checked,
            "failures": [{"realization": [engine.segment_json(s) for s in w.realization],
                          "w": w.witness.to_json()} for w in witnesses[:20]],
        }, code
    out.append(f"key-lemma: {status} ({checked} right-ordered realizations, "
               f"{len(witnesses)} failures)")
    for w in witnesses[:20]:
        out.append(f"  {' x '.join(map(format_segment, w.realization))}: {w.witness.to_json()}")
    return None, code


def cmd_check_deriv(args, out):
    u = _load_universe(args, default_gamma=0)
    counts = {"PASS": 0, "FAIL": 0, "NOT_APPLICABLE": 0}
    failures = []
    for _, ms in ladder_corpus(args.seed, args.corpus, u):
        res = engine.deriv_consistency_check(ms)
        counts[res.status] += 1
        if res.status == "FAIL":
            failures.append(format_multisegment(ms))
    status = "PASS" if not failures else "FAIL"
    code = EXIT_OK if not failures else EXIT_FAIL
    if args.format == "json":
        return {"command": "check", "check": "deriv", "status": status,
                "checked": args.corpus, "counts": counts, "failures": failures}, code
    out.append(f"deriv: {status} (pass {counts['PASS']}, fail {counts['FAIL']}, "
               f"not applicable {counts['NOT_APPLICABLE']})")
    out.extend(f"  {f}" for f in failures)
    return None, code


def cmd_corpus(args, out):
    u = _load_universe(args, default_gamma=0)
    corpus = multisegment_corpus(args.seed, args.count, u, args.max_segments, args.max_span)
    if args.format == "json":
        return {"command": "corpus", "seed": args.seed,
                "multisegments": [format_multisegment(m) for m in corpus]}, EXIT_OK
    out.extend(format_multisegment(m) for m in corpus)
    return None, EXIT_OK


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--universe", metavar="PATH", help="universe declaration file")
    common.add_argument("--format", choices=("text", "json"), default="text")

    pi = argparse.ArgumentParser(add_help=False)
    pi.add_argument("--pi", metavar="EXPR", help="multisegment literal, e.g. 'Delta(T,0,1)'")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--max-segments", type=int, default=3, metavar="K")
    sweep.add_argument("--max-span", type=int, default=2, metavar="S")

    p = argparse.ArgumentParser(prog="ladderdist",
                                description="Distinction verdicts for standard modules "
                                            "and ladder representations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common, pi], help="distinction verdicts")
    c.add_argument("--mode", choices=("auto", "ladder", "standard", "segment"), default="auto")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("decompose", parents=[common, pi],
                       help="pure components and proper-ladder decomposition")
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("derivatives", parents=[common, pi], help="ladder derivative set")
    c.set_defaults(func=cmd_derivatives)

    c = sub.add_parser("strata", parents=[common, pi], help="geometric lemma stratum table")
    c.add_argument("--kind", choices=engine.KINDS, default="dist")
    c.add_argument("--prune", action="store_true",
                   help="skip strata whose Jacquet pieces vanish by degree")
    c.set_defaults(func=cmd_strata)

    c = sub.add_parser("dual", parents=[common, pi], help="star, tau and gd-closure")
    c.set_defaults(func=cmd_dual)

    chk = sub.add_parser("check", help="exhaustive and corpus checks")
    chk_sub = chk.add_subparsers(dest="check", required=True)
    c = chk_sub.add_parser("key-lemma", parents=[common, sweep],
                           help="non-admissible strata vanish on right-ordered realizations")
    c.set_defaults(func=cmd_check_key_lemma)
    c = chk_sub.add_parser("deriv", parents=[common], help="derivative consistency on a corpus")
    c.add_argument("--corpus", type=int, default=300, metavar="N")
    c.add_argument("--seed", type=int, default=0, metavar="U64")
    c.set_defaults(func=cmd_check_deriv)

    c = sub.add_parser("corpus", parents=[common, sweep], help="seeded random multisegments")
    c.add_argument("--seed", type=int, default=0, metavar="U64")
    c.add_argument("--count", type=int, default=10, metavar="N")
    c.set_defaults(func=cmd_corpus, max_segments=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: list[str] = []
    try:
        doc, code = args.func(args, out)
    except LadderDistError as e:
        print(f"ladderdist: error: {e}", file=sys.stderr)
        return e.exit_code
    if doc is not None:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
