"""Time digit extraction with each head-sum kernel.

    python3 benchmarks/bench_kernels.py --pos 4000 20000 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import time

from binbbp._kernels import available_kernels
from binbbp.digits import extract_bits
from binbbp.generators import catalog_entry


def bench(name: str, t: int, kernel: str, repeat: int) -> tuple[float, str]:
    f = catalog_entry(name).formula
    extract_bits(f, 64, 4, kernel=kernel)  # warm-up, includes numba compilation
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        run = extract_bits(f, t, 16, kernel=kernel)
        best = min(best, time.perf_counter() - start)
    return best, run.hex_digits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--formula", default="catalan_g")
    ap.add_argument("--pos", type=int, nargs="+", default=[4000, 20000, 100000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for t in args.pos:
        digits = set()
        for kernel in available_kernels():
            seconds, hex_digits = bench(args.formula, t, kernel, args.repeat)
            digits.add(hex_digits)
            rows.append({"formula": args.formula, "pos": t, "kernel": kernel, "seconds": round(seconds, 4)})
        if len(digits) != 1:
            raise SystemExit(f"kernels disagree at t={t}: {sorted(digits)}")
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        print(f"{r['formula']:12s} t={r['pos']:<7d} {r['kernel']:7s} {r['seconds']:.4f}s")


if __name__ == "__main__":
    main()
