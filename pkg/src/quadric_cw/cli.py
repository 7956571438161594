"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 bad arguments,
3 I/O failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from collections import Counter

from .cells import cell_degree
from .combinatorics import Cell, Rel, enumerate_cells, labels_of, mask_of
from .homology import Filter, boundary_matrix, homology_group, max_degree

FORMAT = 1
DEFAULT_MAX_N = 4


class UsageError(Exception):
    pass


def max_n() -> int:
    raw = os.environ.get("QAH_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QAH_MAX_N must be an integer, got {raw!r}")


def check_n(n: int, lo: int = 0) -> None:
    cap = max_n()
    if not lo <= n <= cap:
        raise UsageError(f"n must lie in {lo}..{cap} (QAH_MAX_N raises the cap)")


def parse_set(text: str) -> int:
    try:
        labs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad subset {text!r}; use comma-separated labels like 1,3")
    if not labs or len(set(labs)) != len(labs) or min(labs) < 1:
        raise UsageError(f"bad subset {text!r}")
    return mask_of(labs)


def cell_json(c: Cell) -> dict:
    return {
        "flag": [labels_of(s) for s in c.flag],
        "j_le": labels_of(c.j_le),
        "j_ge": labels_of(c.j_ge),
        "rel": "le" if c.rel == Rel.LE else "eq",
        "tau": c.tau,
        "degree": cell_degree(c),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def complex_json(n: int) -> dict:
    cells = [cell_json(c) for c in enumerate_cells(n)]
    bds = []
    for d in range(1, max_degree(n) + 1):
        m = boundary_matrix(n, d, Filter.ALL)
        bds.append({"degree": d, "matrix": {"rows": m.rows, "cols": m.cols,
                                            "entries": [list(e) for e in m.entries]}})
    return {"format": FORMAT, "n": n, "cells": cells, "boundaries": bds}


def manifest(n: int) -> dict:
    cells = [cell_json(c) for c in enumerate_cells(n)]
    counts = Counter(c["degree"] for c in cells)
    h = hashlib.sha256(_dumps({"format": FORMAT, "n": n, "cells": cells}).encode("utf-8")).hexdigest()
    return {"format": FORMAT, "n": n, "total": len(cells),
            "cells_per_degree": {str(d): counts[d] for d in sorted(counts)},
            "hash": h}


def emit(args, data: dict, text: str) -> None:
    if args.json:
        print(_dumps(data))
    else:
        print(text)


def cmd_build(args) -> int:
    check_n(args.n)
    path = args.out or f"complex_n{args.n}.json"
    payload = _dumps(complex_json(args.n)) + "\n"
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 3
    man = manifest(args.n)
    man["path"] = path
    per = " ".join(f"{d}:{c}" for d, c in man["cells_per_degree"].items())
    emit(args, man, f"n={args.n} cells={man['total']} per-degree {per}\nhash {man['hash']}\nwrote {path}")
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite
    check_n(args.n)
    results = run_suite(args.suite, args.n, args.seed)
    ok = all(r.ok for r in results)
    data = {"n": args.n, "suite": args.suite, "seed": args.seed, "ok": ok,
            "checks": [{"name": r.name, "cases": r.cases, "ok": r.ok, "info": r.info,
                        "failures": r.failures[:20]} for r in results]}
    text = f"suite {args.suite} n={args.n} seed={args.seed}\n" + "\n".join(r.line() for r in results)
    text += f"\n{'ALL PASS' if ok else 'SOME CHECKS FAILED'}"
    emit(args, data, text)
    return 0 if ok else 1


def cmd_homology(args) -> int:
    check_n(args.n)
    f = Filter(args.filter)
    top = max_degree(args.n) + (1 if args.matrix else 0)
    if not 0 <= args.degree <= top:
        raise UsageError(f"degree must lie in 0..{top}")
    if args.matrix:
        sys.stdout.write(boundary_matrix(args.n, args.degree, f).to_text())
        return 0
    h = homology_group(args.n, args.degree, f)
    data = {"n": args.n, "degree": args.degree, "filter": f.value,
            "free_rank": h.free_rank, "torsion": h.torsion}
    emit(args, data, f"H_{args.degree} ({f.value}) n={args.n}: free rank {h.free_rank}, torsion {h.torsion}")
    return 0


def cmd_intersect(args) -> int:
    from .intersection import index_with_imaginary
    from .combinatorics import format_cell
    check_n(args.n)
    I = parse_set(args.set)
    if I >= 1 << (args.n + 1):
        raise UsageError(f"labels must lie in 1..{args.n + 1}")
    value, cert = index_with_imaginary(I, args.n)
    pts = [{"cell": format_cell(p.cell), "coefficient": p.coefficient,
            "frame_det": p.frame_det, "local_sign": p.local_sign} for p in cert.points[0]]
    data = {"n": args.n, "set": labels_of(I), "index": value,
            "certificate": {"shifts": [list(w) for w in cert.shifts], "counts": cert.counts,
                            "shift_invariant": cert.shift_invariant, "points_first_shift": pts,
                            "disjointness_witness_found": cert.witness_found}}
    lines = [f"index <(iR)^{args.n + 1} | E{labels_of(I)}> = {value}",
             f"transverse counts over {len(cert.shifts)} shifts: {cert.counts}"]
    for p in pts:
        lines.append(f"  hit {p['cell']} coeff {p['coefficient']} det {p['frame_det']} sign {p['local_sign']}")
    if cert.witness_found is not None:
        lines.append(f"disjointness witness found: {cert.witness_found}")
    emit(args, data, "\n".join(lines))
    return 0


def cmd_monodromy(args) -> int:
    from .monodromy import MinusVariant, computed_base_index, run_loops, stated_base_index
    if args.D < 2:
        raise UsageError("D must be >= 2")
    check_n(args.D - 1, 1)
    alias = {"+": "+", "-": "-", "p": "+", "m": "-"}
    word = [w.strip() for w in args.loops.split(",") if w.strip()]
    if any(w not in alias for w in word):
        raise UsageError("loops are a comma-separated word in + and - (or p and m)")
    word = [alias[w] for w in word]
    base = computed_base_index if args.pairings == "computed" else stated_base_index
    g = run_loops(args.D, word, MinusVariant(args.variant), base)
    data = {"D": args.D, "loops": word, "variant": args.variant, "pairings": args.pairings, **g.to_json()}
    sph = " ".join(f"{s['coeff']:+d}*sphere[{s['pinch']}]" for s in data["spheres"]) or "(no sphere terms)"
    emit(args, data, f"D={args.D} loops {','.join(word) or '(none)'}: {g.base}*(iR)^{args.D} {sph}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadric-cw", description="Cell complex of an arrangement of complex spheres.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("build", cmd_build, "write the complex as JSON and print its manifest")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp = add("verify", cmd_verify, "run a property suite")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--suite", choices=["boundary", "signs", "cube", "generators", "geometry", "intersection", "all"],
                    default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("homology", cmd_homology, "homology of the EQ subcomplex, the relative complex or the full complex")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--filter", choices=[f.value for f in Filter], default="eq")
    sp.add_argument("--matrix", action="store_true", help="print the boundary matrix in sparse text form")
    sp = add("intersect", cmd_intersect, "index of a relative generator with the imaginary plane")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--set", required=True, help="comma-separated labels, e.g. 1,3")
    sp = add("monodromy", cmd_monodromy, "loop word around the bubble pinches")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--loops", default="+", help="e.g. +,+ or p,m (write --loops=-,+ when starting with -)")
    sp.add_argument("--variant", choices=["A", "B"], default="A")
    sp.add_argument("--pairings", choices=["computed", "stated"], default="computed",
                    help="base pairings from the transverse count, or the stated case split")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
