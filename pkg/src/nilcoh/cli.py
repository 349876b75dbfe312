"""Command line interface.

Exit codes: 0 success, 2 unreadable or malformed input, 3 Jacobi violation,
4 resource cap exceeded, 5 a verified property failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .cohomology import betti, filtered_h2
from .free import FreeNilpotent, ResourceCapExceeded, witt_dim
from .io import AlgebraFileError, read_algebra
from .lie import JacobiViolation, NotNilpotent, nilpotency_class, type_of
from .modules import adjoint_module, trivial_module
from .presentation import (
    admissible_range,
    betti_bounds,
    build_free_extension,
    central_extension_criterion,
    filtration_via_kernel,
)

EXIT_PARSE, EXIT_VALIDATE, EXIT_CAP, EXIT_FAIL = 2, 3, 4, 5
CSV_COLUMNS = ["name", "dim", "class", "type", "depth", "b1", "b2", "Fp_dim",
               "ker_pi2_dim", "c", "C", "verdict"]


class PropertyFailure(RuntimeError):
    pass


def _load(path):
    return read_algebra(path)


def _emit(args, data, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        print(text)


def cmd_check(args) -> int:
    g = _load(args.path)
    print(f"ok {g.name or args.path} dim={g.dim}")
    return 0


def cmd_betti(args) -> int:
    g = _load(args.path)
    b = betti(g, args.max_degree)
    _emit(args, {"name": g.name, "betti": list(b)}, " ".join(map(str, b)))
    return 0


def filtration_rows(g, coeffs: str) -> list[dict]:
    M = trivial_module(g) if coeffs == "trivial" else adjoint_module(g)
    rows = []
    for r in admissible_range(g, M):
        a = filtered_h2(g, M, r)
        b = filtration_via_kernel(g, M, r)
        rows.append({"r": r, "filtered": a.dim, "kernel": b.dim, "h2": a.cohomology.dim,
                     "equal": a.subspace == b})
    return rows


def cmd_filtration(args) -> int:
    g = _load(args.path)
    rows = filtration_rows(g, args.coeffs)
    ok = all(r["equal"] for r in rows)
    lines = [f"{'r':>3} {'F_rH2':>6} {'ker':>6} {'H2':>6}  verdict"]
    for r in rows:
        lines.append(f"{r['r']:>3} {r['filtered']:>6} {r['kernel']:>6} {r['h2']:>6}  "
                     f"{'OK' if r['equal'] else 'FAIL'}")
    _emit(args, {"name": g.name, "coeffs": args.coeffs, "rows": rows, "ok": ok}, "\n".join(lines))
    return 0 if ok else EXIT_FAIL


def cmd_free(args) -> int:
    f = FreeNilpotent(args.n, args.p)
    words = [{"index": i, "degree": f.degree_of(i), "word": f.labels[i]} for i in range(f.dim)]
    table = [{"degree": i, "dim": witt_dim(args.n, i)} for i in range(1, args.p + 1)]
    if args.json:
        print(json.dumps({"n": args.n, "p": args.p, "dim": f.dim, "basis": words, "witt": table},
                         indent=1))
        return 0
    for w in words:
        print(f"{w['index']:>5}  {w['degree']}  {w['word']}")
    print("degree  dim")
    for t in table:
        print(f"{t['degree']:>6}  {t['dim']}")
    print(f"total   {f.dim}")
    return 0


def cmd_free_ext(args) -> int:
    g = _load(args.path)
    r = args.r if args.r is not None else nilpotency_class(g)
    E = build_free_extension(g, r)
    gens = [g.labels[min(x)] if len(x) == 1 else str(x) for x in E.generators]
    data = {"name": g.name, "r": r, "generators": gens, "kernel_dim": E.kernel.dim,
            "depth": E.depth, "n_mod_fn": E.f_n_quotient_dim(), "free_dim": E.f.dim}
    text = (f"generators: {' '.join(gens)}\nfree algebra: f_({E.f.n},{r}) dim {E.f.dim}\n"
            f"kernel dim: {E.kernel.dim}\ndepth: {E.depth}\n|n/[f,n]|: {data['n_mod_fn']}")
    _emit(args, data, text)
    return 0


def cmd_bounds(args) -> int:
    g = _load(args.path)
    bb = betti_bounds(g)
    lo, hi = bb.interval
    data = {"name": g.name, "c": bb.c, "C": bb.C, "b2": bb.b2, "depth": bb.depth,
            "lower_refined": bb.lower_refined, "upper_refined": bb.upper_refined,
            "interval": [lo, hi], "verdicts": bb.verdicts, "ok": bb.ok}
    text = f"c={bb.c} C={bb.C} b2={bb.b2} interval=[{lo},{hi}] {'OK' if bb.ok else 'FAIL'}"
    _emit(args, data, text)
    return 0 if bb.ok else EXIT_FAIL


def report_row(path: str) -> dict:
    """One catalog record; every check that fails marks the verdict FAIL."""
    t0 = time.perf_counter()
    g = read_algebra(path)
    p = nilpotency_class(g)
    b = betti(g, 2)
    k = trivial_module(g)
    Fp = filtered_h2(g, k, p)
    ker = filtration_via_kernel(g, k, p)
    bb = betti_bounds(g)
    ok = Fp.subspace == ker and bb.ok
    for coeffs in ("trivial", "adjoint"):
        ok = ok and all(r["equal"] for r in filtration_rows(g, coeffs))
    if g.dim >= 2:
        ok = ok and central_extension_criterion(g).consistent
    return {
        "name": g.name or Path(path).stem, "dim": g.dim, "class": p,
        "type": "(" + ",".join(map(str, type_of(g))) + ")", "depth": bb.depth,
        "b1": b[1], "b2": b[2], "Fp_dim": Fp.dim, "ker_pi2_dim": ker.dim,
        "c": bb.c, "C": bb.C, "verdict": "OK" if ok else "FAIL",
        "seconds": round(time.perf_counter() - t0, 3),
    }


def cmd_catalog(args) -> int:
    if args.dir:
        files = sorted(str(p) for p in Path(args.dir).glob("*.json"))
    else:
        from .catalog import catalog_files
        files = [str(p) for p in catalog_files()]
    if not files:
        print("no algebra files found", file=sys.stderr)
        return EXIT_PARSE
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(report_row, files))
    else:
        rows = [report_row(f) for f in files]
    rows.sort(key=lambda r: r["name"])
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.DictWriter(fh, CSV_COLUMNS, extrasaction="ignore")
            w.writeheader()
            w.writerows(rows)
    w = csv.DictWriter(sys.stdout, CSV_COLUMNS, extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)
    return 0 if all(r["verdict"] == "OK" for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilcoh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="parse and validate an algebra file")
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("betti", help="Betti numbers with trivial coefficients")
    s.add_argument("path")
    s.add_argument("--max-degree", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("filtration", help="F_r H^2 for every admissible r, computed two ways")
    s.add_argument("path")
    s.add_argument("--coeffs", choices=["trivial", "adjoint"], default="trivial")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_filtration)

    s = sub.add_parser("free", help="Hall basis of f_{n,p} and its dimension table")
    s.add_argument("n", type=int)
    s.add_argument("p", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("free-ext", help="free nilpotent extension of an algebra")
    s.add_argument("path")
    s.add_argument("--class", dest="r", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_free_ext)

    s = sub.add_parser("bounds", help="bounds on b_2 and their verdicts")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("catalog", help="report on every algebra file in a directory")
    s.add_argument("dir", nargs="?", default=None, help="defaults to the bundled catalog")
    s.add_argument("--report", default=None, help="also write the CSV here")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    try:
        return args.func(args)
    except AlgebraFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except JacobiViolation as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATE
    except NotNilpotent as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATE
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
