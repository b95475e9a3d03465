"""Census of satellite refinements of the fixture cycles.

For each number of curves, count the isomorphism classes reached by
satellite blow-ups from the triangle and the square of zeros, and tally
their classification verdicts and refinement consistency.

    python scripts/refinement_census.py --max-curves 8
"""

import argparse
from collections import Counter

from circinf.boundary import Satellite, Verdict, blow_up, classify_surface, torus_square, triangle
from circinf.circle import refine_consistency


def key(g):
    # self-intersections around the cycle, up to rotation and reflection
    seq, prev, cur = [], None, g.ids[0]
    for _ in g.ids:
        seq.append(g.curve(cur).self_int)
        nbrs = sorted(g.neighbors(cur))
        nxt = nbrs[0] if prev is None else next(c for c in nbrs if c != prev)
        prev, cur = cur, nxt
    return min(tuple(s[i:] + s[:i]) for s in (seq, seq[::-1]) for i in range(len(seq)))


def census(start, max_curves):
    seen, frontier, rows = set(), [start], Counter()
    while frontier:
        fresh = []
        for g in frontier:
            k = key(g)
            if k not in seen and len(g.ids) <= max_curves:
                seen.add(k)
                fresh.append(g)
        for g in fresh:
            verdict = classify_surface(g).verdict
            # Z_v needs a nondegenerate form, so torus-like cycles are skipped
            consistent = None if verdict is Verdict.TORUS_LIKE else all(
                refine_consistency(g, (a, b)) for a, b, _ in g.meets)
            rows[len(g.ids), verdict.value, consistent] += 1
        frontier = [blow_up(g, Satellite(a, b)) for g in fresh for a, b, _ in g.meets]
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-curves", type=int, default=8)
    args = ap.parse_args()
    for name, g in (("triangle", triangle()), ("square", torus_square())):
        print(f"# {name}")
        print(f"{'curves':>6}  {'verdict':<12}{'refine ok':<10}{'classes':>8}")
        for (n, verdict, ok), count in sorted(census(g, args.max_curves).items(), key=lambda kv: kv[0][:2]):
            mark = {None: "n/a", True: "yes", False: "no"}[ok]
            print(f"{n:>6}  {verdict:<12}{mark:<10}{count:>8}")


if __name__ == "__main__":
    main()
