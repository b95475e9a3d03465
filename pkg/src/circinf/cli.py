"""``circinf`` command line front end.

Every command builds a Report and prints it in the line format (or JSON with
``--json``). Errors print ``error: ...`` on stderr and exit with the code of
the exception class: 2 parse, 3 precondition, 4 computation verdict.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import boundary as bd
from . import circle, markov, torus
from .errors import CircInfError, DegenerateForm, DegreeOverflow, ParseError
from .lattice import dual_basis, inertia
from .report import Report

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"expected an integer or p/q, got {text!r}")
    if text.endswith("/0"):
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(text)


def rational_list(text: str, n: int | None = None) -> list[Fraction]:
    vals = [rational(t) for t in text.split(",")]
    if n is not None and len(vals) != n:
        raise ParseError(f"expected {n} comma separated values, got {len(vals)}")
    return vals


def int_list(text: str, n: int) -> list[int]:
    vals = rational_list(text, n)
    if any(v.denominator != 1 for v in vals):
        raise ParseError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _load(path: str) -> tuple[bd.BoundaryGraph, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    g = bd.parse_boundary(text)
    g.require_connected()
    return g, text


def _graph_summary(g: bd.BoundaryGraph) -> dict:
    return {
        "curves": {c.id: {"self": c.self_int, "genus": c.genus, "nodes": c.nodes} for c in g.curves},
        "meets": [[a, b, m] for a, b, m in g.meets],
    }


def _dual_table(g: bd.BoundaryGraph):
    try:
        basis = dual_basis(g.intersection_form())
    except DegenerateForm as exc:
        return None, str(exc)
    return {cid: dict(zip(g.ids, vec)) for cid, vec in zip(g.ids, basis)}, None


# -- boundary commands ------------------------------------------------------

def cmd_classify(args) -> Report:
    g, text = _load(args.file)
    rep = Report(_echo(args), {"file": text, "minimize": args.minimize})
    res = rep.results
    res["graph"] = _graph_summary(g)
    res["shape"] = bd.classify_shape(g)
    res["e"] = bd.euler_invariant(g)
    res["h0"] = bd.h0_log_canonical(g)
    res["inertia"] = list(inertia(g.intersection_form()))
    table, err = _dual_table(g)
    res["duals"] = table if table is not None else {"DegenerateForm": err}
    res["k_delta"] = list(bd.k_delta_pairing(g))
    if args.minimize:
        if res["shape"] is bd.Shape.CYCLE:
            res["minimized"] = _graph_summary(bd.minimize_cycle(g))
        else:
            res["minimized"] = None
    cls = bd.classify_surface(g)
    res["verdict"] = cls.verdict
    res["failed"] = list(cls.failed)
    for name, ok in cls.checks.items():
        rep.check(name, ok)
    return rep


def cmd_dual(args) -> Report:
    g, text = _load(args.file)
    rep = Report(_echo(args), {"file": text})
    form = g.intersection_form()
    basis = dual_basis(form)        # DegenerateForm propagates (exit 4)
    rep.results["duals"] = {cid: dict(zip(g.ids, vec)) for cid, vec in zip(g.ids, basis)}
    rep.results["gram"] = {a: {b: form.pair(u, v) for b, v in zip(g.ids, basis)}
                           for a, u in zip(g.ids, basis)}
    rep.check("kronecker", all(form.apply(vec) == tuple(int(i == j) for j in range(len(basis)))
                               for i, vec in enumerate(basis)))
    return rep


def cmd_circle(args) -> Report:
    g, text = _load(args.file)
    edge = tuple(s.strip() for s in args.edge.split(","))
    if len(edge) != 2:
        raise ParseError(f"--edge wants E,F, got {args.edge!r}")
    scale = rational(args.scale)
    rep = Report(_echo(args), {"file": text, "edge": edge, "samples": args.samples, "scale": scale})
    g.curve(edge[0]), g.curve(edge[1])
    rows = circle.circle_table(g, edge, args.samples, scale)
    rep.results["rows"] = rows
    rep.check("refine_consistency", circle.refine_consistency(g, edge))
    return rep


# -- markov -----------------------------------------------------------------

def _surface(args) -> markov.MarkovSurface:
    return markov.MarkovSurface(*rational_list(args.params, 4))


def cmd_markov_lambda(args) -> Report:
    rep = Report(_echo(args), {"word": args.word, "depth": args.depth, "oracle_depth": args.oracle_depth})
    wl = markov.lambda_of_word(args.word, args.depth)
    lam = wl.lam
    res = rep.results
    res["word"] = wl.word
    res["sequence"] = wl.sequence
    res["recurrence"] = str(wl.recurrence)
    res["lambda"] = {"t": lam.t, "n": lam.n, "disc": lam.disc,
                     "char_poly": lam.char_poly_str(), "root": lam.value}
    res["loxodromic"] = wl.loxodromic
    res["class"] = "Loxodromic" if wl.loxodromic else "NotLoxodromic"
    res["notes"] = wl.notes
    run = markov.maxplus_degrees(wl.word, args.oracle_depth)
    try:
        exact = markov.composition_oracle(wl.word, args.oracle_depth)
        checked = args.oracle_depth
    except DegreeOverflow as exc:
        exact = exc.partial
        checked = len(exact)
    res["oracle_applications"] = checked
    rep.check("oracle_agreement", list(run.states[:checked]) == list(exact))
    rep.check("recurrence_reproduces", wl.recurrence.reproduces(wl.sequence))
    return rep


def cmd_markov_orbit(args) -> Report:
    S = _surface(args)
    start = rational_list(args.start, 3)
    rep = Report(_echo(args), {"params": str(S), "start": start, "word": args.word,
                               "steps": args.steps, "per_letter": args.per_letter})
    pts = markov.orbit(S, args.word, start, args.steps, per_letter=args.per_letter)
    r0 = S.residual(start)
    rep.results["start_residual"] = r0
    rep.results["orbit"] = [[p.x, p.y, p.z, p.residual] for p in pts]
    rep.check("residual_constant", all(p.residual == r0 for p in pts))
    return rep


def cmd_markov_smooth(args) -> Report:
    S = _surface(args)
    rep = Report(_echo(args), {"params": str(S)})
    v = markov.smoothness_screen(S)
    rep.results["verdict"] = v.kind
    rep.results["points"] = [list(p) for p in v.points]
    rep.results["detail"] = v.detail
    rep.check("points_on_surface", all(S.contains(p) for p in v.points))
    return rep


def cmd_markov_cayley(args) -> Report:
    rep = Report(_echo(args), {"samples": args.samples})
    samples = markov.cayley_samples(args.samples)
    rep.results["images"] = [[u, v, *markov.cayley_point(u, v)] for u, v in samples]
    rep.check("cayley_quotient", markov.cayley_quotient_check(samples))
    return rep


# -- torus ------------------------------------------------------------------

def _matrix(args) -> torus.MonomialMap:
    return torus.MonomialMap(*int_list(args.matrix, 4))


def cmd_torus_lambda(args) -> Report:
    f = _matrix(args)
    rep = Report(_echo(args), {"matrix": f.rows})
    lam = torus.dynamical_degree(f)
    rep.results["lambda"] = {"t": lam.t, "n": lam.n, "disc": lam.disc,
                             "char_poly": lam.char_poly_str(), "root": lam.value}
    rep.results["loxodromic"] = torus.is_loxodromic(f)
    return rep


def cmd_torus_eigen(args) -> Report:
    f = _matrix(args)
    rep = Report(_echo(args), {"matrix": f.rows})
    e = torus.eigenvaluations(f)
    rep.results["lambda"] = e.lam.value
    rep.results["mu_plus"] = e.mu_plus
    rep.results["mu_minus"] = e.mu_minus
    rep.results["ray_plus"] = list(e.ray_plus)
    rep.results["ray_minus"] = list(e.ray_minus)
    rep.check("eigen_relations", e.verify(f))
    return rep


def cmd_torus_attract(args) -> Report:
    f = _matrix(args)
    start = rational_list(args.start, 2)
    rep = Report(_echo(args), {"matrix": f.rows, "start": start, "steps": args.steps})
    a = torus.attraction_check(f, start, args.steps)
    rep.results["weights"] = [list(w) for w in a.weights]
    rep.results["ratios"] = a.ratios
    rep.check("monotone", a.monotone)
    return rep


# -- plumbing ---------------------------------------------------------------

def _echo(args) -> str:
    return " ".join(args.argv)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circinf", description="Exact boundary, circle and degree computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of the line format")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify a boundary file")
    c.add_argument("file")
    c.add_argument("--minimize", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("dual", parents=[common], help="dual basis of a boundary lattice")
    c.add_argument("file")
    c.set_defaults(func=cmd_dual)

    c = sub.add_parser("circle", parents=[common], help="sample Z_v along one edge of the circle")
    c.add_argument("file")
    c.add_argument("--edge", required=True, help="E,F")
    c.add_argument("--samples", type=int, default=5)
    c.add_argument("--scale", default="1")
    c.set_defaults(func=cmd_circle)

    m = sub.add_parser("markov", help="Markov type cubic surfaces").add_subparsers(dest="sub", required=True)
    c = m.add_parser("lambda", parents=[common])
    c.add_argument("--word", required=True)
    c.add_argument("--depth", type=int, default=8)
    c.add_argument("--oracle-depth", type=int, default=3)
    c.set_defaults(func=cmd_markov_lambda)
    c = m.add_parser("orbit", parents=[common])
    c.add_argument("--params", default="0,0,0,0")
    c.add_argument("--start", required=True)
    c.add_argument("--word", required=True)
    c.add_argument("--steps", type=int, default=10)
    c.add_argument("--per-letter", action="store_true", help="record every single involution")
    c.set_defaults(func=cmd_markov_orbit)
    c = m.add_parser("smooth", parents=[common])
    c.add_argument("--params", required=True)
    c.set_defaults(func=cmd_markov_smooth)
    c = m.add_parser("cayley", parents=[common])
    c.add_argument("--samples", type=int, default=50)
    c.set_defaults(func=cmd_markov_cayley)

    t = sub.add_parser("torus", help="monomial maps of the torus").add_subparsers(dest="sub", required=True)
    for name, func in (("lambda", cmd_torus_lambda), ("eigen", cmd_torus_eigen), ("attract", cmd_torus_attract)):
        c = t.add_parser(name, parents=[common])
        c.add_argument("--matrix", required=True, help="a,b,c,d for [[a,b],[c,d]]")
        if name == "attract":
            c.add_argument("--start", required=True)
            c.add_argument("--steps", type=int, default=20)
        c.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        rep = args.func(args)
    except CircInfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(rep.to_json() if args.json else rep.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
