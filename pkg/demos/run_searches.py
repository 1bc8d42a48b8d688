"""Run the classification searches.

Usage: python demos/run_searches.py [p47] [p23] [p11]

With no arguments only the fast p = 47 search runs; p23 takes on the
order of half an hour and p11 around ten minutes on one core.  Each
search prints its staged-filter progress and the resulting equivalence
classes; together they reproduce the classification: every extremal
self-dual ternary [48, 24, 15] code with an automorphism of prime
order p >= 5 is equivalent to Q48 or P48.
"""

import sys

from ternary48.classify import search_p11, search_p23, search_p47


def show(report):
    print(f"search {report.search_id}: "
          f"{report.candidates_after_symmetry} candidates after symmetry "
          f"(of {report.candidates_total})")
    for key, val in report.timings.items():
        print(f"  {key}: {val}")
    for cls in report.classes:
        print(f"  class {cls['label']}: {len(cls['members'])} distinct "
              f"survivor codes, representative {cls['representative']}")


def main():
    which = sys.argv[1:] or ["p47"]
    progress = lambda msg: print("  ..", msg)
    if "p47" in which:
        show(search_p47())
    if "p23" in which:
        show(search_p23(progress=progress))
    if "p11" in which:
        show(search_p11(progress=progress))


if __name__ == "__main__":
    main()
