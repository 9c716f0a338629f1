"""Command-line front end ``tropint``.

Exit status: 0 on success, 1 on invalid input or violated preconditions,
2 when an identity check in ``verify`` (or an internal cross-check) fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .ehrhart import (
    ehrhart_polynomial,
    genus_comparison,
    macdonald_check,
    mixed_ehrhart,
    mixed_ehrhart_predicted,
    pick_surface_check,
    toric_genus,
    count_interior_lattice_points,
    count_boundary_lattice_points,
)
from .errors import IdentityCheckError
from .exact_math import fraction_to_str
from .instances import random_polynomial, random_polytope
from .intersection import (
    NotTransversalError,
    f_vector_counts,
    generic_polynomials,
    genus,
    intersection_complex,
    stable_intersection_points,
    unbounded_face_count,
)
from .mixed_volume import mixed_volume_cells, mixed_volume_ie
from .polytope import LatticePolytope, polytope_from_json, polytope_to_json
from .subdivision import PerturbationError, is_transversal, perturb_lifts, privileged_subdivision
from .tropical import TropicalPolynomial, infer_n_vars, newton_polytope, parse_tropical_polynomial

log = logging.getLogger("tropint")

SUITES = ("bernstein", "fvector", "unbounded", "genus-equality", "mixed-ehrhart", "pick")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- input handling ----------------------------------------------------------


def _polynomial_texts(args) -> list[str]:
    texts = list(args.poly or [])
    for path in args.poly_file or []:
        try:
            content = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read polynomial file {path}: {exc}") from exc
        texts.extend(line.strip() for line in content.splitlines() if line.strip() and not line.startswith("#"))
    return texts


def _polynomials(args, required: bool = True) -> list[TropicalPolynomial]:
    texts = _polynomial_texts(args)
    if not texts:
        if required:
            raise UsageError("no polynomials given (use -f TEXT or -F FILE)")
        return []
    n = args.n_vars or infer_n_vars(texts)
    fs = [parse_tropical_polynomial(t, n) for t in texts]
    if args.min_plus:
        # X_min(f) = -X_max(-f): negate coefficients here and output points later
        fs = [f.negated() for f in fs]
    return fs


def _polytopes(args) -> list[LatticePolytope]:
    out = []
    for path in args.polytope or []:
        try:
            out.append(polytope_from_json(Path(path).read_text(encoding="utf-8")))
        except OSError as exc:
            raise UsageError(f"cannot read polytope file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    out.extend(newton_polytope(f) for f in _polynomials(args, required=False))
    if not out:
        raise UsageError("no polytopes given (use -p FILE.json or -f POLY)")
    if len({p.ambient_dim for p in out}) > 1:
        raise UsageError("polytopes of different ambient dimensions")
    return out


def _point(x, negate: bool) -> list[str]:
    return [fraction_to_str(-c if negate else c) for c in x]


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TROPINT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TROPINT_SEED must be an integer, got {env!r}") from None


def _maybe_perturb(args, fs):
    s = privileged_subdivision(fs)
    rep = is_transversal(s)
    if rep:
        return fs, s, False
    if not args.perturb:
        raise NotTransversalError(rep)
    fs = perturb_lifts(fs, _seed(args))
    return fs, privileged_subdivision(fs), True


# -- verbs --------------------------------------------------------------------


def cmd_newton(args) -> dict:
    fs = _polynomials(args)
    out = []
    for f in fs:
        p = newton_polytope(f)
        out.append(
            polytope_to_json(p)
            | {
                "polytope_dim": p.dim,
                "volume": fraction_to_str(p.euclidean_volume),
                "relative_volume": fraction_to_str(p.relative_volume),
                "facets": [{"normal": list(nrm), "offset": off} for nrm, off, _ in p.facets],
            }
        )
    return {"polytopes": out}


def cmd_subdivision(args) -> dict:
    fs = _polynomials(args)
    s = privileged_subdivision(fs)
    out = s.to_json()
    out["transversal"] = bool(is_transversal(s))
    out["census"] = s.census()
    return out


def cmd_mixed_volume(args) -> dict:
    ps = _polytopes(args)
    mults = args.mult or [1] * len(ps)
    if len(mults) != len(ps):
        raise UsageError(f"{len(mults)} multiplicities for {len(ps)} polytopes")
    out = {"multiplicities": mults}
    if args.method in ("ie", "both"):
        out["ie"] = fraction_to_str(mixed_volume_ie(ps, mults))
    if args.method in ("cells", "both"):
        out["cells"] = fraction_to_str(mixed_volume_cells(ps, mults, seed=_seed(args)))
    if args.method == "both" and out["ie"] != out["cells"]:
        raise IdentityCheckError(f"mixed volume by polarization {out['ie']} != by cells {out['cells']}")
    out["value"] = out.get("ie", out.get("cells"))
    return out


def _counts(args, fn) -> tuple[dict, object]:
    _, s, perturbed = _maybe_perturb(args, _polynomials(args))
    js = [args.j] if args.j is not None else list(range(s.n + 1))
    reports = [fn(s, j, check_subsets=False).to_json() for j in js]
    if any(not r["equal"] for r in reports):
        raise IdentityCheckError(f"face counts disagree: {reports}")
    return {"perturbed": perturbed, "counts": reports}, s


def cmd_fvector(args) -> dict:
    out, s = _counts(args, f_vector_counts)
    out["f_vector"] = intersection_complex(s).f_vector()
    return out


def cmd_unbounded(args) -> dict:
    return _counts(args, unbounded_face_count)[0]


def cmd_genus(args) -> dict:
    fs = _polynomials(args)
    rep = genus(fs, seed=_seed(args))
    if not rep.consistent:
        raise IdentityCheckError(
            f"genus formula {rep.genus_formula_value} inconsistent with graph value {rep.genus_graph_value}"
        )
    out = rep.to_json()
    out["genus"] = out["genus_formula_value"]
    return out


def cmd_toric_genus(args) -> dict:
    return {"toric_genus": fraction_to_str(toric_genus(_polytopes(args)))}


def cmd_ehrhart(args) -> dict:
    out = []
    for p in _polytopes(args):
        out.append(ehrhart_polynomial(p).to_json())
    return {"polynomials": out}


def cmd_mixed_ehrhart(args) -> dict:
    ps = _polytopes(args)
    me = mixed_ehrhart(ps)
    out = me.to_json()
    n = ps[0].ambient_dim
    if len(ps) == n - 1:
        pred = mixed_ehrhart_predicted(ps)
        out["predicted"] = [fraction_to_str(c) for c in pred.coeffs]
        if pred.coeffs != me.coeffs:
            raise IdentityCheckError("interpolated mixed Ehrhart polynomial differs from the closed form")
    return out


def cmd_stable_points(args) -> dict:
    fs = _polynomials(args)
    pts = stable_intersection_points(fs, seed=_seed(args))
    return {
        "points": [{"point": _point(x, args.min_plus), "weight": fraction_to_str(w)} for x, w in pts.items()],
        "total_weight": fraction_to_str(sum(pts.values(), Fraction(0))),
    }


def cmd_draw(args) -> str:
    from .draw import render_svg

    fs = _polynomials(args)
    if len(fs) != 1:
        raise UsageError("draw takes exactly one polynomial")
    viewport = None
    if args.viewport:
        try:
            viewport = [Fraction(v) for v in args.viewport.split(",")]
        except ValueError:
            raise UsageError("--viewport needs four numbers xmin,ymin,xmax,ymax") from None
        if len(viewport) != 4:
            raise UsageError("--viewport needs four numbers xmin,ymin,xmax,ymax")
    return render_svg(fs[0], viewport, negate=args.min_plus)


# -- verify suites --------------------------------------------------------------


def _generic(rng, n, k, seed):
    return generic_polynomials([random_polytope(rng, n) for _ in range(k)], seed=seed)


def _trial(suite: str, n: int, seed: int) -> dict:
    rng = random.Random(seed)
    checks: dict[str, dict] = {}

    def record(name, left, right):
        checks[name] = {"left": fraction_to_str(left), "right": fraction_to_str(right), "equal": left == right}

    if suite == "bernstein":
        ps = [random_polytope(rng, n) for _ in range(n)]
        ie = mixed_volume_ie(ps)
        record("ie=cells", ie, mixed_volume_cells(ps, seed=seed))
        fs = [random_polynomial(rng, p) for p in ps]
        pts = stable_intersection_points(fs, seed=seed)
        record("ie=stable", ie, sum(pts.values(), Fraction(0)))
    elif suite in ("fvector", "unbounded"):
        fs = _generic(rng, n, n - 1, seed)
        s = privileged_subdivision(fs)
        fn = f_vector_counts if suite == "fvector" else unbounded_face_count
        for j in range(n + 1):
            r = fn(s, j, check_subsets=False)
            record(f"j={j}", r.left, r.right)
    elif suite == "genus-equality":
        ps = [random_polytope(rng, n) for _ in range(n - 1)]
        r = genus_comparison(ps)
        record("tropical=toric", r.left, r.right)
    elif suite == "mixed-ehrhart":
        ps = [random_polytope(rng, n) for _ in range(n - 1)]
        me = mixed_ehrhart(ps, validate=False)
        pred = mixed_ehrhart_predicted(ps)
        for r, (a, b) in enumerate(zip(me.coeffs, pred.coeffs)):
            record(f"me_{r}", a, b)
    elif suite == "pick":
        p = random_polytope(rng, n)
        r = pick_surface_check(p)
        record("surface", r.left, r.right)
        m1, m2 = macdonald_check(p)
        record("macdonald", m1.left, m1.right)
        record("macdonald-interior", m2.left, m2.right)
        if n == 2:
            record(
                "pick",
                p.euclidean_volume,
                count_interior_lattice_points(p) + Fraction(count_boundary_lattice_points(p), 2) - 1,
            )
    else:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return {"seed": seed, "checks": checks, "passed": all(c["equal"] for c in checks.values())}


def run_verify(suite: str, trials: int, seed: int, n: int) -> dict:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if n not in (2, 3):
        raise UsageError("--dim must be 2 or 3")
    if trials < 1:
        raise UsageError("--trials must be positive")
    results = []
    for i in range(trials):
        # per-trial seeds keep trials independent and reproducible
        results.append({"trial": i} | _trial(suite, n, seed * 1_000_003 + i))
    return {
        "suite": suite,
        "dim": n,
        "seed": seed,
        "trials": results,
        "passed": all(r["passed"] for r in results),
    }


def cmd_verify(args) -> dict:
    return run_verify(args.suite, args.trials, _seed(args), args.dim)


# -- argument parsing -----------------------------------------------------------


def _add_poly_args(p, required_help="tropical polynomial (repeatable)"):
    p.add_argument("-f", "--poly", action="append", help=required_help)
    p.add_argument("-F", "--poly-file", action="append", help="file with one polynomial per line")
    p.add_argument("--n-vars", type=int, help="number of variables (default: inferred)")
    p.add_argument("--min-plus", action="store_true", help="read and write in the min-plus convention")


def _add_polytope_args(p):
    p.add_argument("-p", "--polytope", action="append", help='polytope JSON {"dim": n, "vertices": [...]}')
    _add_poly_args(p, "polynomial whose Newton polytope is used (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropint", description="Exact combinatorics of tropical hypersurface intersections.")
    parser.add_argument("-o", "--out", help="write output here instead of stdout")
    parser.add_argument("--seed", type=int, help="perturbation seed (default: $TROPINT_SEED or 0)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("-o", "--out", default=argparse.SUPPRESS, help="output path")
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="perturbation seed")
        return p

    _add_poly_args(verb("newton", cmd_newton, "Newton polytopes of polynomials"))
    _add_poly_args(verb("subdivision", cmd_subdivision, "privileged mixed subdivision"))
    p = verb("mixed-volume", cmd_mixed_volume, "mixed volume of polytopes")
    _add_polytope_args(p)
    p.add_argument("-m", "--mult", type=int, nargs="+", help="multiplicity of each polytope")
    p.add_argument("--method", choices=("ie", "cells", "both"), default="both")
    for name, fn, what in (
        ("fvector", cmd_fvector, "j-face counts of the intersection, both ways"),
        ("unbounded", cmd_unbounded, "unbounded j-face counts, both ways"),
    ):
        p = verb(name, fn, what)
        _add_poly_args(p)
        p.add_argument("-j", type=int, help="face dimension (default: all)")
        p.add_argument("--perturb", action="store_true", help="perturb non-transversal input with --seed")
    _add_poly_args(verb("genus", cmd_genus, "genus of an intersection curve"))
    _add_polytope_args(verb("toric-genus", cmd_toric_genus, "toric genus from interior points"))
    _add_polytope_args(verb("ehrhart", cmd_ehrhart, "Ehrhart polynomial"))
    _add_polytope_args(verb("mixed-ehrhart", cmd_mixed_ehrhart, "mixed Ehrhart polynomial"))
    _add_poly_args(verb("stable-points", cmd_stable_points, "stable intersection of n hypersurfaces"))
    p = verb("draw", cmd_draw, "SVG drawing of a plane tropical curve")
    _add_poly_args(p)
    p.add_argument("--viewport", help="xmin,ymin,xmax,ymax")
    p = verb("verify", cmd_verify, "randomized identity checks")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--dim", type=int, default=3, choices=(2, 3))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        result = args.func(args)
    except IdentityCheckError as exc:
        print(f"tropint: identity check failed: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, PerturbationError) as exc:
        print(f"tropint: error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, dict):
        text = json.dumps({"command": args.verb} | result, indent=2) + "\n"
    else:
        text = result
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if isinstance(result, dict) and result.get("passed") is False:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
