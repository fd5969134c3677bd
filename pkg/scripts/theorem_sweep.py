#!/usr/bin/env python3
"""Sweep a corpus through both discharging certificates and report stats.

Example:
    python3 scripts/make_corpus.py --count 10000 --out /tmp/corpus.pc
    python3 scripts/theorem_sweep.py /tmp/corpus.pc --jobs 4
"""

import argparse
import collections
import sys
import time

from planecrit.io_formats import read_corpus
from planecrit.search_harness import TaskSet, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", help="planar_code or JSON corpus file")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--critical-k", type=int, default=5,
                    help="also attempt k-criticality certification")
    args = ap.parse_args()

    with open(args.corpus, "rb") as fh:
        records = list(read_corpus(fh.read()))
    tasks = TaskSet(theorem1=True, theorem2=True,
                    certify_critical=args.critical_k, lemma_bounds=True)
    started = time.perf_counter()
    report = scan(records, tasks, jobs=args.jobs)
    elapsed = time.perf_counter() - started

    t1 = collections.Counter(r.results["theorem1"] for r in report.records)
    t2 = collections.Counter(r.results["theorem2"] for r in report.records)
    crit = collections.Counter(r.results["critical"] for r in report.records)
    print(f"{len(report.records)} graphs in {elapsed:.1f}s "
          f"({args.jobs} jobs)")
    print("theorem1:", dict(t1))
    print("theorem2:", dict(t2))
    print(f"critical (k={args.critical_k}):", dict(crit))
    if report.anomalies:
        print("ANOMALIES:")
        for line in report.anomalies:
            print(" ", line)
        return 1
    print("no anomalies")
    return 0


if __name__ == "__main__":
    sys.exit(main())
