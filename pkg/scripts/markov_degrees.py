"""Degree growth and dynamical degree of every cyclically reduced Vieta word.

Prints the max-plus degree sequence, the fitted recurrence and lambda for
all cyclically reduced words up to a given length (one per rotation class),
and checks the first applications against exact composition.

    python scripts/markov_degrees.py --max-length 6
"""

import argparse
import itertools

from circinf.errors import DegreeOverflow
from circinf.markov import composition_oracle, is_reduced, lambda_of_word, maxplus_degrees


def rotation_classes(max_length):
    seen = set()
    for n in range(2, max_length + 1):
        for w in map("".join, itertools.product("xyz", repeat=n)):
            if not is_reduced(w) or w[0] == w[-1]:
                continue
            rep = min(w[k:] + w[:k] for k in range(n))
            if rep not in seen:
                seen.add(rep)
                yield rep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-length", type=int, default=6)
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args()
    print(f"{'word':<10}{'lambda':<22}{'char poly':<16}{'exact':>6}  degrees")
    for w in rotation_classes(args.max_length):
        r = lambda_of_word(w, args.depth)
        try:
            exact = composition_oracle(w, 3)
        except DegreeOverflow as exc:
            exact = exc.partial
        agree = exact == maxplus_degrees(w, 3).states[:len(exact)]
        tag = f"{len(exact)}{'ok' if agree else '!!'}"
        seq = ", ".join(map(str, r.sequence[:6]))
        print(f"{w:<10}{str(r.lam.value):<22}{r.lam.char_poly_str():<16}{tag:>6}  {seq}, ...")


if __name__ == "__main__":
    main()
