#!/usr/bin/env python3
"""Minimal-generator tables for two degree-10 curves with a cubic moving line.

Both curves have mu = 3 and a very singular point, yet their generator tables
differ in one bidegree — showing that (d, mu, singularity class) alone does
not pin the table once mu exceeds 2.  The curves are entered through their
moving-line pairs; the parametrizations are the signed 2x2 minors.
"""
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from reescurve.fields import DEFAULT_PRIME, PrimeField
from reescurve.oracle import Oracle
from reescurve.poly import BiPoly, parse_bipoly
from reescurve.syzygy import parametrization


def cross(l, n):
    return [
        l[1] * n[2] - l[2] * n[1],
        l[2] * n[0] - l[0] * n[2],
        l[0] * n[1] - l[1] * n[0],
    ]


def main():
    field = PrimeField(DEFAULT_PRIME)
    P = lambda s: parse_bipoly(field, s).x_coefficient((0, 0, 0))
    z = BiPoly.zero(field, 3, 0)
    n = [
        P("T0^6*T1 - T0^2*T1^5"),
        P("T0^4*T1^3 + T0^2*T1^5"),
        P("T0^7 + T1^7"),
    ]
    pairs = {
        "curve 1": [P("T0^3"), P("T1^3 - T0*T1^2"), z],
        "curve 2": [P("T0^3 - T0^2*T1"), P("T1^3"), z],
    }
    for name, l in pairs.items():
        par = parametrization(field, *cross(l, n))
        t0 = time.perf_counter()
        table = Oracle(par).mingen_table(7, 10)
        dt = time.perf_counter() - t0
        cells = ", ".join(f"({i},{j})x{c}" if c > 1 else f"({i},{j})"
                          for (i, j), c in sorted(table.counts.items()))
        print(f"{name}: {table.total()} generators in {dt:.1f}s: {cells}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
