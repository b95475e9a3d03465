"""Sweep Z_v^2 and Z_v.(K+D) along every edge of a cyclic boundary.

    python scripts/circle_sweep.py data/boundaries/nodal.txt --samples 9
"""

import argparse

from circinf.boundary import load_boundary
from circinf.circle import circle_table
from circinf.lattice import frac_str


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file")
    ap.add_argument("--samples", type=int, default=7)
    ap.add_argument("--scale", default="1")
    args = ap.parse_args()
    g = load_boundary(args.file)
    print(f"{'edge':<10}{'s':>10}{'Z^2':>12}{'Z.(K+D)':>10}  nef")
    for a, b, _ in g.meets:
        for row in circle_table(g, (a, b), args.samples, args.scale):
            s = "-" if row["s"] is None else frac_str(row["s"])
            print(f"{row['point']:<10}{s:>10}{frac_str(row['z_squared']):>12}"
                  f"{frac_str(row['z_kdelta']):>10}  {'yes' if row['nef'] else 'no'}")


if __name__ == "__main__":
    main()
