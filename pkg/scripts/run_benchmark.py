"""Time supervisor synthesis on the scheduling family and write a TSV.

Usage: python scripts/run_benchmark.py [--rows 9:2,9:3,4:4] [--reps 3] [--out bench.tsv]
Rows are m:n (tasks per player : players). Absolute times depend on the machine;
the ratio between rows is the quantity of interest.
"""
import argparse
import sys

from fstguard.casestudy import TSV_HEADER, parse_rows, run_benchmark


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rows", default="9:2,9:3")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--budget", type=int, default=10 ** 4)
    p.add_argument("--out")
    args = p.parse_args(argv)
    records = run_benchmark(parse_rows(args.rows), args.reps, args.budget)
    text = "\n".join([TSV_HEADER] + [r.tsv() for r in records]) + "\n"
    sys.stdout.write(text)
    timed = [r for r in records if not r.skipped]
    if len(timed) >= 2:
        print(f"# time ratio last/first row: {timed[-1].synth_time / timed[0].synth_time:.1f}",
              file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
