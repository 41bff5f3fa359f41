#!/usr/bin/env python3
"""Writes a synthetic stand-in for the transaction output-sum pool.

NOT real data. Values are lognormal with a median of 5e6 satoshi and a log
standard deviation of 2.5, rounded to whole satoshi (minimum 1).
"""
import argparse

import numpy as np


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=20161028)
    ap.add_argument("--output", default="data/synthetic_output_sums.csv")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    values = np.maximum(1, np.rint(rng.lognormal(np.log(5e6), 2.5, args.rows))).astype(np.int64)
    with open(args.output, "w", encoding="ascii") as f:
        f.write("output_sum_satoshi\n")
        f.writelines(f"{v}\n" for v in values)


if __name__ == "__main__":
    main()
