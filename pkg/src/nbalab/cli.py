"""Command-line front end.

Exit codes: 0 = success/valid, 1 = counterexample or invalid object,
2 = usage or file error.  Output is JSON unless --text is given, and is
deterministic for fixed inputs and flags; sampled modes print their seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import core, ideals, representation, skew, synthesis, terms, transforms
from .transforms import CenterParams


def _emit(args, obj: dict, text: str = None):
    if args.text and text is not None:
        print(text)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _load_algebra(path: str):
    try:
        return core.load_algebra(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load algebra from {path}: {exc}")


class UsageError(Exception):
    pass


# -- subcommands -----------------------------------------------------------


def cmd_check(args) -> int:
    alg = _load_algebra(args.algebra)
    suite = {
        "nba": "NBA",
        "skewba": "SKEW_BA",
        "skewlattice": "SKEW_LATTICE",
        "srca": "SRCA",
        "skewstar": "SKEW_STAR",
    }[args.suite]
    if suite in ("SKEW_BA", "SKEW_LATTICE"):
        obj = skew.reduct(alg, "skew", i=args.i)
    elif suite == "SRCA":
        obj = skew.reduct(alg, "rchurch", i=args.i)
    elif suite == "SKEW_STAR":
        obj = skew.star_of(alg)
    else:
        obj = alg
    report = skew.check_axioms(obj, suite, budget=args.budget,
                               samples=args.samples, seed=args.seed)
    out = report.to_json()
    if report.sampled:
        out["samples"] = args.samples
        out["seed"] = args.seed
    lines = [f"suite {report.suite}: {'ok' if report.ok else 'FAIL'}"]
    for ax in report.axioms:
        lines.append(f"  {ax.name}: {'ok' if ax.ok else 'FAIL'} ({ax.mode})")
        if not ax.ok:
            lines.append(f"    counterexample: {ax.counterexample}")
    _emit(args, out, "\n".join(lines))
    return 0 if report.ok else 1


def _parse_element(text: str, alg):
    text = text.strip()
    if text.startswith("e") and text[1:].isdigit():
        return alg.constant(int(text[1:]))
    vals = tuple(int(v) for v in text.strip("[]").split(","))
    alg._check_element(vals)
    return vals


def cmd_eval(args) -> int:
    env = {}
    points = 1
    pairs = []
    for kv in args.env or []:
        name, _, val = kv.partition("=")
        if not val:
            raise UsageError(f"bad --env entry {kv!r}, expected name=value")
        pairs.append((name, val))
        if not val.lstrip().startswith("e"):
            points = max(points, len(val.strip("[]").split(",")))
    alg = core.power_algebra(args.n, points)
    for name, val in pairs:
        env[name] = _parse_element(val, alg)
    t = terms.parse_term(args.term, args.n)
    result = terms.eval_term(t, env, alg)
    label = "[" + ",".join(map(str, result)) + "]"
    _emit(args, {"result": list(result)}, f"{args.term} = {label}")
    return 0


def cmd_equiv(args) -> int:
    lhs = terms.parse_term(args.lhs, args.n)
    rhs = terms.parse_term(args.rhs, args.n)
    mode = "sampled" if args.sampled else "exhaustive"
    try:
        verdict = terms.check_identity(lhs, rhs, args.n, mode=mode,
                                       budget=args.budget,
                                       samples=args.samples, seed=args.seed)
    except terms.BudgetExceeded:
        verdict = terms.check_identity(lhs, rhs, args.n, mode="sampled",
                                       samples=args.samples, seed=args.seed)
    out = {"valid": verdict.valid, "mode": verdict.mode}
    if verdict.mode == "sampled":
        out["samples"] = verdict.samples or args.samples
        out["seed"] = verdict.seed if verdict.seed is not None else args.seed
    if verdict.counterexample:
        out["counterexample"] = verdict.counterexample
    text = f"{'Valid' if verdict.valid else 'Counterexample'} ({verdict.mode})"
    if verdict.counterexample:
        text += ": " + ", ".join(f"{k}={v}" for k, v in verdict.counterexample.items())
    _emit(args, out, text)
    return 0 if verdict.valid else 1


def cmd_translate(args) -> int:
    t = terms.parse_term(args.term, args.n)
    out = transforms.translate_term(t, args.to, args.n, i=args.i)
    printed = terms.print_term(out)
    _emit(args, {"term": printed}, printed)
    return 0


def cmd_synth(args) -> int:
    try:
        table = synthesis.load_table(args.table)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load table from {args.table}: {exc}")
    t = synthesis.synth(table)
    out = {"term": terms.print_term(t), "verified": synthesis.verify_term(t, table)}
    if args.simplify:
        simp, trace = synthesis.simplify(t, table.n)
        out["simplified"] = terms.print_term(simp)
        out["rewrites"] = [{"rule": s.rule, "position": list(s.position)} for s in trace]
        out["simplified_verified"] = synthesis.verify_term(simp, table)
    text = out.get("simplified", out["term"])
    _emit(args, out, text)
    ok = out["verified"] and out.get("simplified_verified", True)
    return 0 if ok else 1


def cmd_congruences(args) -> int:
    alg = _load_algebra(args.algebra)
    cons = ideals.all_congruences(alg)
    mids = ideals.all_proper_multideals(alg)
    out = {
        "count": len(cons),
        "congruences": [c.to_json() for c in cons],
        "proper_multideals": [m.to_json() for m in mids],
    }
    text = f"{len(cons)} congruences, {len(mids)} proper multideals"
    _emit(args, out, text)
    return 0


def cmd_multideals(args) -> int:
    alg = _load_algebra(args.algebra)
    if args.validate:
        try:
            with open(args.validate, encoding="utf-8") as fh:
                cand = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load candidate from {args.validate}: {exc}")
        comps = [[tuple(e) for e in comp] for comp in cand["components"]]
        res = ideals.validate_multideal(alg, comps)
        out = {"status": res.status}
        if res.clause:
            out["clause"] = res.clause
        if res.witness:
            out["witness"] = {k: str(v) for k, v in res.witness.items()}
        _emit(args, out, res.status)
        return 0 if res.status in ("proper", "degenerate") else 1
    mids = ideals.all_proper_multideals(alg)
    out = {"count": len(mids), "multideals": [m.to_json() for m in mids]}
    _emit(args, out, f"{len(mids)} proper multideals")
    return 0


def cmd_ultras(args) -> int:
    alg = _load_algebra(args.algebra)
    ultras = ideals.all_ultramultideals(alg)
    out = {"count": len(ultras), "ultramultideals": [u.to_json() for u in ultras]}
    _emit(args, out, f"{len(ultras)} ultramultideals")
    return 0


def cmd_embed(args) -> int:
    alg = _load_algebra(args.algebra)
    emb = ideals.stone_embed(alg)
    out = {
        "target": emb.target.to_json(),
        "images": [list(img) for img in emb.images],
        "injective": emb.injective,
        "preserves_q": emb.preserves_q(),
        "isomorphism": emb.is_isomorphism,
    }
    text = (f"embeds into {alg.n}^{emb.target.points}; "
            f"{'isomorphism' if emb.is_isomorphism else 'proper embedding'}")
    _emit(args, out, text)
    return 0 if out["injective"] and out["preserves_q"] else 1


def cmd_reduct(args) -> int:
    alg = _load_algebra(args.algebra)
    d = frozenset(int(v) for v in args.d.split(",")) if args.d else None
    red = skew.reduct(alg, args.kind, i=args.i, d=d, j=args.j)
    if args.kind == "skew":
        out = {
            "kind": "skew", "i": args.i, "zero": red.zero,
            "meet": red.meet.tolist(), "join": red.join.tolist(),
            "minus": red.minus.tolist(), "labels": list(red.labels),
        }
    elif args.kind == "rchurch":
        out = {"kind": "rchurch", "i": args.i, "zero": red.zero,
               "t": red.q3.tolist(), "labels": list(red.labels)}
    else:
        out = {"kind": "church", "d": sorted(red.d), "zero": red.zero,
               "one": red.one, "t": red.q3.tolist(), "labels": list(red.labels)}
    _emit(args, out, f"{args.kind} reduct over {red.size} elements")
    return 0


def cmd_represent(args) -> int:
    rep = representation.verify_embedding(args.points, args.n, args.i)
    out = {"ok": rep.ok, "injective": rep.injective}
    if rep.failure:
        out["failure"] = {k: str(v) for k, v in rep.failure.items()}
    text = "embedding verified" if rep.ok else f"embedding FAILED: {rep.failure}"
    _emit(args, out, text)
    return 0 if rep.ok else 1


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nba", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--text", action="store_true", help="human-readable output")

    sp = sub.add_parser("check", help="run an axiom suite against an algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--suite", required=True,
                    choices=["nba", "skewba", "srca", "skewstar", "skewlattice"])
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--budget", type=int, default=skew.DEFAULT_BUDGET)
    sp.add_argument("--samples", type=int, default=skew.DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=skew.DEFAULT_SEED)
    common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("eval", help="evaluate a term in a power algebra")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--term", required=True)
    sp.add_argument("--env", nargs="*", metavar="NAME=VALUE")
    common(sp)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("equiv", help="decide an identity over dimension n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--sampled", action="store_true")
    sp.add_argument("--budget", type=int, default=terms.DEFAULT_BUDGET)
    sp.add_argument("--samples", type=int, default=terms.DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=terms.DEFAULT_SEED)
    common(sp)
    sp.set_defaults(fn=cmd_equiv)

    sp = sub.add_parser("translate", help="translate a term between signatures")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--term", required=True)
    sp.add_argument("--to", required=True, choices=["q", "skew", "star"])
    sp.add_argument("--i", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=cmd_translate)

    sp = sub.add_parser("synth", help="compile a truth table to a term")
    sp.add_argument("--table", required=True)
    sp.add_argument("--simplify", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_synth)

    sp = sub.add_parser("congruences", help="enumerate congruences and multideals")
    sp.add_argument("--algebra", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_congruences)

    sp = sub.add_parser("multideals", help="enumerate or validate multideals")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--validate")
    common(sp)
    sp.set_defaults(fn=cmd_multideals)

    sp = sub.add_parser("ultras", help="enumerate ultramultideals")
    sp.add_argument("--algebra", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_ultras)

    sp = sub.add_parser("embed", help="Stone-style embedding into a power")
    sp.add_argument("--algebra", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_embed)

    sp = sub.add_parser("reduct", help="extract a reduct's operation tables")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--kind", required=True, choices=["church", "rchurch", "skew"])
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--d")
    sp.add_argument("--j", type=int)
    common(sp)
    sp.set_defaults(fn=cmd_reduct)

    sp = sub.add_parser("represent", help="verify the partial-function embedding")
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_represent)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (terms.TermError, ValueError, core.DimensionError, core.ShapeError) as exc:
        print(json.dumps({"error": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
