"""Command-line front end.

    iads check --system z_2_3
    iads suite --system matrix --samples 200 --seed 42
    iads coset intersect --system z_2_3 --a "g=1,p=g0" --b "g=2,p=g1"
    iads norm --system z_2_3 --expr "e(0,g0) + e(0,g1)"
    iads mono mul --system z_2_3 --a "u(1)s(g0)" --b "s(g1)*u(2)*"

``--system`` takes a path to a JSON file or the name of a bundled system.
Exit codes: 0 pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from importlib import resources
from pathlib import Path
from typing import Any

from . import __version__
from .coeffs import Gaussian
from .cosetlat import coset_intersect
from .diagonal import cofinal_chain, diag_norm, level_map, spectrum_level
from .dynsys import (DynamicalSystem, Minimality, check_axiom_C,
                     check_independence, check_minimality, finite_type_table)
from .errors import DomainError, InvalidSystem
from .groups import INFINITY
from .pmonoid import PElement

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def bundled_systems() -> list[str]:
    root = resources.files("iads") / "data" / "systems"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_system(ref: str) -> DynamicalSystem:
    path = Path(ref)
    if path.exists():
        text = path.read_text()
    else:
        res = resources.files("iads") / "data" / "systems" / f"{ref}.json"
        if not res.is_file():
            raise UsageError(f"no system file {ref!r}; bundled: {', '.join(bundled_systems())}")
        text = res.read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: invalid JSON: {exc}") from exc
    return DynamicalSystem.from_json(spec)


def _jsonable(x: Any):
    if isinstance(x, PElement):
        return str(x)
    if isinstance(x, Gaussian):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x == INFINITY:
        return "infinity"
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, record: dict, human: str):
        if self.as_json:
            print(json.dumps(_jsonable(record), sort_keys=True))
        else:
            print(human)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    sys = load_system(args.system)
    G = sys.group
    ok = True
    gens = []
    for i, e in sys.generators.items():
        idx = e.index()
        surj = idx == 1
        ok &= not surj
        gens.append({"generator": f"g{i}", "index": idx, "non_surjective": not surj})
    out.emit({"check": "axiom_B", "passed": all(g["non_surjective"] for g in gens),
              "generators": gens},
             "axiom B (injective, non-surjective): "
             + ", ".join(f"{g['generator']} index {_fmt_index(g['index'])}" for g in gens))

    rep = check_axiom_C(sys, args.radius)
    ok &= rep.passed
    record = {"check": "axiom_C", "passed": rep.passed, "pairs": len(rep.checked), "note": rep.note}
    human = f"axiom C (independent iff coprime): {'pass' if rep.passed else 'FAIL'} ({len(rep.checked)} pairs examined)"
    if rep.counterexample is not None:
        p, q, res = rep.counterexample
        w = res.witness if res.witness is not None else None
        record["counterexample"] = {"p": p, "q": q, "result": res.kind.value,
                                    "witness": None if w is None else G.format(w)}
        human += f"\n  counterexample: p={p} q={q} -> {res.kind.value}"
        if w is not None:
            human += f", witness {G.format(w)} lies in both images but not in theta_pq(G)"
    out.emit(record, human)

    pairs = []
    ids = sys.gen_ids
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            res = check_independence(sys, PElement.gen(ids[a]), PElement.gen(ids[b]))
            pairs.append({"p": f"g{ids[a]}", "q": f"g{ids[b]}", "kind": res.kind.value})
    if pairs:
        out.emit({"check": "independence", "pairs": pairs},
                 "independence: " + ", ".join(f"({x['p']},{x['q']}) {x['kind']}" for x in pairs))

    table = finite_type_table(sys)
    finite = all(v != INFINITY for v in table.values())
    out.emit({"check": "finite_type", "finite_type": finite, "indices": table},
             f"finite type: {'yes' if finite else 'no'}")

    mres = check_minimality(sys, args.radius)
    if mres.kind is Minimality.NOT_MINIMAL:
        ok = False
    elif mres.kind is not Minimality.CERTIFIED and not args.allow_unknown:
        ok = False
    out.emit({"check": "minimality", "result": mres.kind.value, "radius": mres.radius,
              "witness": None if mres.witness is None else G.format(mres.witness),
              "reason": mres.reason},
             f"minimality: {mres.kind.value} ({mres.reason})")
    out.emit({"check": "summary", "passed": ok}, "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _fmt_index(i):
    return "infinity" if i == INFINITY else str(i)


def cmd_suite(args, out: Output) -> int:
    from .suites import SUITES, run_suites

    sys = load_system(args.system)
    names = args.only.split(",") if args.only else None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; known: {', '.join(SUITES)}")
    results = run_suites(sys, args.samples, args.seed, names)
    ok = all(r.passed for r in results)
    for r in results:
        status = "skip" if r.skipped else ("pass" if r.passed else "FAIL")
        human = f"{r.name:10s} {status:5s} {r.checked} checks"
        if r.skipped:
            human += f" ({r.skipped})"
        for f in r.failures:
            human += f"\n    {f}"
        out.emit(r.as_dict(), human)
    out.emit({"suite": "summary", "system": sys.name, "seed": args.seed, "samples": args.samples,
              "passed": ok},
             f"{sys.name}: {'all suites pass' if ok else 'FAILURES'} (seed {args.seed}, {args.samples} samples)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coset(args, out: Output) -> int:
    from .expr import parse_coset

    sys = load_system(args.system)
    a, b = parse_coset(sys, args.a), parse_coset(sys, args.b)
    c = coset_intersect(sys, a, b)
    G = sys.group
    if c is None:
        out.emit({"intersection": None}, "EMPTY")
    else:
        out.emit({"intersection": {"g": G.format(c.g), "p": c.p}}, f"g={G.format(c.g)},p={c.p}")
    return EXIT_OK


def cmd_norm(args, out: Output) -> int:
    from .expr import parse_diagonal

    sys = load_system(args.system)
    d = parse_diagonal(sys, args.expr)
    res = diag_norm(d)
    G = sys.group
    subset = [f"e({G.format(c.g)},{c.p})" for c in res.subset]
    out.emit({"norm": str(res), "norm_squared": res.squared, "subset": subset,
              "witness": None if res.witness is None else {"g": G.format(res.witness.g),
                                                           "p": res.witness.p}},
             f"{res}\nmaximising subset: {{{', '.join(subset)}}}")
    return EXIT_OK


def cmd_mono(args, out: Output) -> int:
    from .expr import parse_algebra

    sys = load_system(args.system)
    prod = parse_algebra(sys, args.a) * parse_algebra(sys, args.b)
    text = prod.format()
    out.emit({"product": text}, text)
    return EXIT_OK


def cmd_spectrum(args, out: Output) -> int:
    sys = load_system(args.system)
    p = PElement.parse(args.level)
    lev = spectrum_level(sys, p)
    G = sys.group
    coarse = [PElement.gen(i, k) for i, k in p.items()]
    maps = {str(c): {G.format(x): G.format(y) for x, y in level_map(sys, lev, c).items()}
            for c in coarse}
    human = f"level {p}: {len(lev.points)} points\n  " + " ".join(G.format(x) for x in lev.points)
    for c, m in maps.items():
        human += f"\n  -> {c}: " + ", ".join(f"{k}->{v}" for k, v in m.items())
    out.emit({"level": p, "points": [G.format(x) for x in lev.points], "maps": maps}, human)
    return EXIT_OK


def cmd_prodsys(args, out: Output) -> int:
    from .prodsys import cnp_representation_check, onb_check

    sys = load_system(args.system)
    onb = onb_check(sys, 36, seed=args.seed)
    rep = cnp_representation_check(sys, args.samples, seed=args.seed)
    ok = onb.passed and rep.passed
    for name, r in (("onb", onb), ("representation", rep)):
        for ident, counts in r.summary().items():
            status = "pass" if counts["failed"] == 0 else "FAIL"
            out.emit({"identity": ident, **counts}, f"{ident:22s} {status} {counts['checked']}")
    out.emit({"identity": "summary", "passed": ok}, "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_l2(args, out: Output) -> int:
    import random

    from .partialrep import cnp3_defect
    from .suites import l2_window, suite_l2, suite_monoalg

    sys = load_system(args.system)
    rng = random.Random(args.seed)
    oracle = suite_monoalg(sys, rng, args.samples)
    window = suite_l2(sys, rng, args.samples, args.window)
    out.emit(oracle.as_dict(), f"oracle agreement: {oracle.checked - oracle.failed}/{oracle.checked}")
    out.emit(window.as_dict(), f"window checks:    {window.checked - window.failed}/{window.checked}")
    pts = l2_window(sys, args.window)
    for i in sys.gen_ids:
        p = PElement.gen(i)
        tp = sys.theta(p)
        seen = []
        for x in pts:
            r = tp.canonical_rep(x)
            if r not in seen:
                seen.append(r)
        rows = []
        for k in range(1, len(seen) + 1):
            rows.append((k, cnp3_defect(sys, p, pts, seen[:k])))
        out.emit({"cnp3_defect": f"g{i}", "window": len(pts),
                  "table": [{"classes": k, "defect": str(d)} for k, d in rows]},
                 f"cnp3 defect for g{i} on {len(pts)} points: "
                 + " ".join(f"{k}:{d}" for k, d in rows))
    ok = oracle.passed and window.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_quotient(args, out: Output) -> int:
    sys = load_system(args.system)
    p = PElement.parse(args.p)
    th = sys.theta(p)
    idx = th.index()
    if idx == INFINITY:
        out.emit({"p": p, "index": idx, "invariant_factors": None}, f"G/theta_{p}(G) is infinite")
        return EXIT_OK
    facs = th.invariant_factors()
    out.emit({"p": p, "index": int(idx), "invariant_factors": facs},
             f"G/theta_{p}(G) ~ " + (" x ".join(f"Z/{f}" for f in facs) or "0") + f"  (order {idx})")
    return EXIT_OK


def cmd_chain(args, out: Output) -> int:
    sys = load_system(args.system)
    for lev in cofinal_chain(sys, args.length):
        out.emit({"p": lev.p, "index": lev.index, "invariant_factors": list(lev.invariant_factors)},
                 f"{lev.p}: index {_fmt_index(lev.index)}, factors {list(lev.invariant_factors)}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, top: bool):
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--system", default=default("z_2_3"),
                        help="system JSON path or bundled name (default z_2_3)")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--samples", type=int, default=default(200))
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="machine-readable output, one JSON object per line")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iads", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    _globals(ap, True)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        _globals(p, False)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, help="axioms, finite type and minimality")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--allow-unknown", action="store_true")

    p = add("suite", cmd_suite, help="seeded property suites")
    p.add_argument("--only", help="comma-separated suite names")

    p = add("coset", cmd_coset, help="coset lattice operations")
    p.add_argument("action", choices=["intersect"])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = add("norm", cmd_norm, help="norm of a diagonal element")
    p.add_argument("--expr", required=True)

    p = add("mono", cmd_mono, help="products in the monomial algebra")
    p.add_argument("action", choices=["mul"])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = add("spectrum", cmd_spectrum, help="a finite level of the spectrum")
    p.add_argument("--level", required=True)

    p = add("prodsys", cmd_prodsys, help="product-system identities")
    p.add_argument("action", choices=["check"])

    p = add("l2", cmd_l2, help="partial-injection oracle and truncations")
    p.add_argument("action", choices=["validate"])
    p.add_argument("--window", type=int, default=64)

    p = add("quotient", cmd_quotient, help="invariant factors of G/theta_p(G)")
    p.add_argument("--p", required=True)

    p = add("chain", cmd_chain, help="cofinal chain of finite-index levels")
    p.add_argument("--length", type=int, default=3)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = Output(args.json)
    try:
        return args.func(args, out)
    except (UsageError, InvalidSystem, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
