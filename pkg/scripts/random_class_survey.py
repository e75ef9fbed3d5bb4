#!/usr/bin/env python3
"""Survey random proper mu = 2 curves: pipeline output vs brute-force table.

Samples curves of each singularity class over the default 62-bit prime field,
assembles their generators, and checks the bidegree multiset against the
closed-form predictions cell by cell.

Usage: python scripts/random_class_survey.py --per-class 5 --dmax 8 --seed 1 [--jobs 2]
"""
import argparse
import multiprocessing
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from reescurve.fields import DEFAULT_PRIME, PrimeField
from reescurve.report import build_report
from reescurve.sampling import sample_mild, sample_very_singular


def predicted_count(d, kind):
    if kind == "mild":
        return (d + 1) * (d - 4) // 2 + 5
    return (d + 5) // 2 if d % 2 else (d + 6) // 2


def run_case(case):
    kind, d, seed = case
    field = PrimeField(DEFAULT_PRIME)
    rng = random.Random(seed)
    sampler = sample_mild if kind == "mild" else sample_very_singular
    t0 = time.perf_counter()
    sample = sampler(field, d, rng)
    rep = build_report(sample.par)
    dt = time.perf_counter() - t0
    ok = rep.all_pass and len(rep.generators) == predicted_count(d, kind)
    return kind, d, seed, ok, len(rep.generators), dt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-class", type=int, default=5)
    ap.add_argument("--dmin", type=int, default=5)
    ap.add_argument("--dmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=2)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cases = []
    for kind in ("very-singular", "mild"):
        for n in range(args.per_class):
            cases.append((kind, rng.randint(args.dmin, args.dmax), rng.randrange(10**6)))
    with multiprocessing.get_context("fork").Pool(args.jobs) as pool:
        results = pool.map(run_case, cases)
    bad = 0
    for kind, d, seed, ok, ngens, dt in results:
        status = "ok " if ok else "FAIL"
        print(f"[{status}] {kind:14s} d={d} seed={seed}: {ngens} generators ({dt:.1f}s)")
        bad += not ok
    print(f"{len(results) - bad}/{len(results)} curves verified")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
