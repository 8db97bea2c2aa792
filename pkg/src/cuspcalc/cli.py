"""Command-line front end.

    cuspcalc [--json] [--output FILE] germ classify --poly "x^2 - y^3 - z^2 + w^3"
    cuspcalc deform fiber --params "1, 0, 0, 3"
    cuspcalc fibration census --config job.txt
    cuspcalc transition table
    cuspcalc cohomology bott --args 1,0,2,-3
    cuspcalc reproduce-paper

Exit status: 0 on success, 1 for unparsable input, 2 for a violated
precondition and 3 when an internal consistency check trips.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import reproduce
from .algebra.parse import parse_polynomial, parse_scalar
from .algebra.polynomial import PolyRing
from .cohomology import bicubic_report, bott
from .errors import CuspcalcError, InconsistentInput, InternalInconsistency, ParseError
from .fibration import (
    CubicPencil,
    WeierstrassFibration,
    discriminant_form,
    euler_from_census,
    genericity_check,
    pencil_discriminant,
    pencil_fiber_product_census,
    weierstrass_census,
)
from .germ import classify_germ, milnor_number, t1_basis, tyurina_number
from .numeric import ROOT_TOL
from .report import Report, emit, exact, numeric
from .transition import (
    TableSeeds,
    TransitionEdge,
    VarietyInvariants,
    derive_table,
    format_table,
    propagate_from_resolution,
    propagate_from_smoothing,
    smooth_calabi_yau,
)
from .versal import (
    KuranishiPoint,
    critical_system,
    deformed_fiber_singularities,
    factored_family_analysis,
    three_node_locus,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# -- config files ----------------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError(f"{path}:{n}: empty key")
        out[key] = value
    return out


def _tolerance(cfg: dict) -> float:
    if "tolerance" not in cfg:
        return ROOT_TOL
    try:
        tol = float(cfg["tolerance"])
    except ValueError:
        raise ParseError(f"tolerance {cfg['tolerance']!r} is not a number") from None
    if not 0 < tol <= 1e-3:
        raise InconsistentInput("tolerance must lie in (0, 1e-3]")
    return tol


def _int(cfg: dict, key: str, default=None) -> int:
    if key not in cfg:
        if default is None:
            raise InconsistentInput(f"config key {key!r} is required")
        return default
    try:
        return int(cfg[key])
    except ValueError:
        raise ParseError(f"{key} = {cfg[key]!r} is not an integer") from None


def _flag(cfg: dict, key: str, default: bool) -> bool:
    value = cfg.get(key)
    if value is None:
        return default
    if value.lower() in ("1", "true", "yes"):
        return True
    if value.lower() in ("0", "false", "no"):
        return False
    raise ParseError(f"{key} = {value!r} is not a boolean")


def _scalars(text: str) -> list:
    return [parse_scalar(s.strip()) for s in text.split(",") if s.strip()]


# -- germ --------------------------------------------------------------------------------


def cmd_germ(args) -> tuple[Report, str]:
    f = parse_polynomial(args.poly)
    if args.vars:
        f = parse_polynomial(args.poly, PolyRing(tuple(v.strip() for v in args.vars.split(",")), f.ring.field))
    res = {"polynomial": str(f), "variables": list(f.ring.variables)}
    if args.action == "milnor":
        res["milnor"] = milnor_number(f)
        text = f"mu = {res['milnor']}"
    elif args.action == "tyurina":
        res["tyurina"] = tyurina_number(f)
        text = f"tau = {res['tyurina']}"
    elif args.action == "t1":
        basis = [str(m) for m in t1_basis(f)]
        res["t1_basis"] = basis
        text = "T1 basis: {" + ", ".join(basis) + "}"
    else:
        rep = classify_germ(f)
        wh = rep.weighted_homogeneous
        res.update(
            germ_class=rep.germ_class.value,
            milnor=rep.milnor,
            tyurina=rep.tyurina,
            t1_basis=[str(m) for m in rep.t1_basis] if rep.t1_basis is not None else None,
            corank=rep.corank,
            weights=exact(list(wh.weights)) if wh else None,
        )
        text = f"{rep.germ_class.value}: mu = {rep.milnor}, tau = {rep.tyurina}, corank {rep.corank}"
    return Report([], res, notes=["exact"]), text


# -- deform ------------------------------------------------------------------------------------


def _point(args) -> KuranishiPoint:
    if not args.params:
        raise InconsistentInput("--params lam,mu,nu,sigma is required")
    vals = _scalars(args.params)
    if len(vals) != 4:
        raise InconsistentInput("--params needs four values lam, mu, nu, sigma")
    return KuranishiPoint(*vals)


def _singular_points(fib) -> tuple[list, dict, list[str]]:
    exact_pts, numeric_pts, lines = [], {}, []
    for i, p in enumerate(fib.singular_points):
        cls = p.germ_class.value
        if p.exact:
            exact_pts.append({"point": [str(c) for c in p.coordinates], "class": cls})
            lines.append(f"({', '.join(map(str, p.coordinates))}): {cls}")
        else:
            numeric_pts[str(i)] = {"point": numeric(list(p.coordinates)), "class": cls}
            lines.append(f"({', '.join(f'{complex(c):.10g}' for c in p.coordinates)}): {cls} (numeric)")
    return exact_pts, numeric_pts, lines


def cmd_deform(args) -> tuple[Report, str]:
    if args.action == "critical":
        pt = _point(args)
        eqs = [str(p) for p in critical_system(pt)]
        return Report([], {"point": exact(list(pt.as_tuple())), "critical_system": eqs}), "\n".join(eqs)
    if args.action == "fiber":
        pt = _point(args)
        fib = deformed_fiber_singularities(pt)
        ex, nu, lines = _singular_points(fib)
        res = {"point": exact(list(pt.as_tuple())), "singular_points": ex, "classes": [c.value for c in fib.classes]}
        return Report([], res, numeric=nu), "\n".join(lines) or "smooth fiber"
    if args.action == "locus":
        loc = three_node_locus()
        sols = [
            {"point": [str(c) for c in s.point.as_tuple()], "flag": s.flag.value, "nu_over_sigma2": exact(s.nu_ratio)}
            for s in loc.solutions
        ]
        res = {
            "conditions": [str(c) for c in loc.conditions],
            "solutions": sols,
            "curve_ideal": [str(g) for g in loc.curve_ideal],
        }
        lines = ["conditions:"] + [f"  {c}" for c in res["conditions"]] + ["solutions (lam, mu, nu, sigma):"]
        lines += [f"  ({', '.join(s['point'])})  {s['flag']}" for s in sols]
        return Report([], res), "\n".join(lines)
    if not args.params:
        raise InconsistentInput("--params alpha,beta,gamma is required")
    vals = _scalars(args.params)
    if len(vals) != 3:
        raise InconsistentInput("--params needs three values alpha, beta, gamma")
    rep = factored_family_analysis(*vals)
    pts = [{"point": [str(c) for c in p.coordinates], "class": p.germ_class.value} for p in rep.points]
    res = {
        "on_plane": rep.on_plane,
        "singular_points": pts,
        "predicted": exact([list(p) for p in rep.predicted]),
        "matches_prediction": rep.matches_prediction,
        "kuranishi_image": exact(list(rep.kuranishi_image.as_tuple())),
    }
    lines = [f"({', '.join(map(str, p.coordinates))}): {p.germ_class.value}" for p in rep.points]
    lines.append(f"matches closed form: {rep.matches_prediction}")
    return Report([], res), "\n".join(lines)


# -- fibration -------------------------------------------------------------------------------------


def _census_payload(census):
    ex, nu = [], {}
    for i, e in enumerate(census.entries):
        item = {"base": str(e.base), "class": e.germ_class.value, "multiplicity": e.multiplicity}
        if e.predicted is not None:
            item["predicted"] = e.predicted.value
        if e.exact and e.base.exact:
            item["point"] = [str(c) for c in e.point]
            ex.append(item)
        else:
            item["exact_class"] = e.exact
            ex.append(item)
            nu[str(i)] = {"base": numeric(e.base.root.value)}
    totals = {k.value: v for k, v in sorted(census.totals.items(), key=lambda kv: kv[0].value)}
    return ex, nu, totals


def cmd_fibration(args) -> tuple[Report, str]:
    cfg = read_config(args.config)
    tol = _tolerance(cfg)
    kind = cfg.get("type", "weierstrass")
    notes = [f"numeric tolerance {tol:g}"]
    if kind == "weierstrass":
        if "A" not in cfg or "B" not in cfg:
            raise InconsistentInput("a Weierstrass config needs A and B")
        W = WeierstrassFibration.parse(cfg["A"], cfg["B"], cfg.get("var", "t"))
        if args.action == "discriminant":
            d = discriminant_form(W)
            gen = genericity_check(W)
            res = {"delta": str(d), "degree": d.total_degree(), "squarefree": gen.delta_squarefree, "coprime": gen.coprime}
            return Report([], res, notes=notes), f"delta = {d}\ngeneric: {gen.generic}"
        census = weierstrass_census(W, exact=_flag(cfg, "exact", True), tol=tol)
        ex, nu, totals = _census_payload(census)
        res = {"entries": ex, "totals": totals, "generic": census.generic, "discriminant_degree": census.discriminant_degree}
        text = "\n".join(f"{e['base']}: {e['class']}" for e in ex) + f"\ntotals: {totals}"
        return Report([], res, numeric=nu, notes=notes), text
    if kind == "pencil":
        if "a" not in cfg or "b" not in cfg:
            raise InconsistentInput("a pencil config needs a and b")
        pencil = CubicPencil(cfg["a"], cfg["b"])
        census = pencil_fiber_product_census(pencil, tol=tol)
        if args.action == "discriminant":
            d = pencil_discriminant(pencil, census)
            res = {
                "eliminant": str(d.eliminant),
                "root_count": d.root_count,
                "at_infinity": d.at_infinity,
                "exact_roots": [str(r.root.exact) for r in d.roots if r.exact],
                "flagged": [str(r) for r in d.flagged],
            }
            nu = {"roots": numeric([r.root.value for r in d.roots])}
            text = f"P(t) = {d.eliminant}\n{d.root_count} roots; flagged: {res['flagged'] or 'none'}"
            return Report([], res, numeric=nu, notes=notes), text
        ex, nu, totals = _census_payload(census)
        res = {"entries": ex, "totals": totals}
        if census.all_nodes:
            chi = euler_from_census(census)
            res["euler"] = {"X": chi.chi_X, "resolution": chi.chi_resolution}
        text = "\n".join(f"{e['base']}: {e['class']}" for e in ex) + f"\ntotals: {totals}"
        return Report([], res, numeric=nu, notes=notes), text
    raise InconsistentInput(f"unknown fibration type {kind!r}")


# -- transition ------------------------------------------------------------------------------------------


def _seeds(cfg: dict) -> TableSeeds:
    base = TableSeeds.computed()
    kw = {f: _int(cfg, f, getattr(base, f)) for f in TableSeeds.__dataclass_fields__ if f in cfg}
    return replace(base, **kw)


def _variety_dict(v: VarietyInvariants) -> dict:
    return {"name": v.name, "dimdef": v.dimdef, "b2": v.b2, "b3": v.b3, "b4": v.b4, "rho": v.rho,
            "defect": v.defect, "chi": v.chi, "smooth": v.smooth}


def cmd_transition(args) -> tuple[Report, str]:
    cfg = read_config(args.config) if args.config else {}
    if args.action == "table":
        der = derive_table(_seeds(cfg))
        res = {"rows": [_variety_dict(r) for r in der.rows], "steps": der.steps}
        return Report([], res), format_table(der.rows)
    if not cfg:
        raise InconsistentInput("transition propagate needs --config")
    src = smooth_calabi_yau(cfg.get("name", "source"), _int(cfg, "h11"), _int(cfg, "h21"))
    if "N" in cfg:
        edge = TransitionEdge.conifold(_int(cfg, "N"), _int(cfg, "k"))
    else:
        edge = TransitionEdge(_int(cfg, "n"), _int(cfg, "m"), _int(cfg, "k"))
    direction = cfg.get("from", "resolution")
    if direction == "resolution":
        t = propagate_from_resolution(src, edge)
    elif direction == "smoothing":
        t = propagate_from_smoothing(src, edge)
    else:
        raise InconsistentInput("from must be resolution or smoothing")
    rows = [t.resolution, t.singular, t.smoothing]
    res = {"rows": [_variety_dict(r) for r in rows], "c_prime": edge.c_prime, "c_second": edge.c_second}
    return Report([], res), format_table(rows, with_b2=True)


# -- cohomology --------------------------------------------------------------------------------------------


def cmd_cohomology(args) -> tuple[Report, str]:
    if args.action == "bicubic":
        t = bicubic_report()
        res = {"entries": t.as_dict(), "h21": t.get("T_W", 1), "chi": t.get("chi(W)"), "b3": t.get("b3(W)")}
        lines = [f"{e.symbol}{'' if e.degree is None else f' H^{e.degree}'} = {e.value}  [{e.rule}]" for e in t.entries]
        return Report([], res), "\n".join(lines)
    if not args.args:
        raise InconsistentInput("--args p,q,n,a is required")
    try:
        p, q, n, a = (int(s) for s in args.args.split(","))
    except ValueError:
        raise ParseError("--args needs four integers p,q,n,a") from None
    value = bott(p, q, n, a)
    return Report([], {"p": p, "q": q, "n": n, "a": a, "dimension": value}), f"h^{q}(P^{n}, Omega^{p}({a})) = {value}"


# -- reproduce-paper ------------------------------------------------------------------------------------------


def cmd_reproduce(args) -> tuple[Report, str]:
    only = [int(s) for s in args.criteria.split(",")] if args.criteria else None
    if only and any(n not in reproduce.CRITERIA for n in only):
        raise InconsistentInput("criteria are numbered 1 to 10")
    results = reproduce.run_all(only)
    payload = []
    lines = []
    for r in results:
        failing = [
            {"name": c.name, "expected": str(c.expected), "got": str(c.got)} for c in r.checks if not c.passed
        ]
        payload.append({"criterion": r.criterion, "title": r.title, "passed": r.passed, "checks": len(r.checks), "failing": failing})
        lines.append(r.line())
        lines += [f"    {c.line()}" for c in r.checks if not c.passed]
    ok = all(r.passed for r in results)
    report = Report([], {"criteria": payload, "passed": ok})
    if not ok:
        report.notes.append("some checks failed")
    return report, "\n".join(lines)


# -- entry point ------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cuspcalc", description="Threefold cusps, fiber products and their transitions.")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--output", help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("germ", help="invariants of a hypersurface germ at the origin")
    g.add_argument("action", choices=["classify", "milnor", "tyurina", "t1"])
    g.add_argument("--poly", required=True)
    g.add_argument("--vars", help="comma-separated variable order")
    g.set_defaults(run=cmd_germ)

    d = sub.add_parser("deform", help="the versal deformation of the threefold cusp")
    d.add_argument("action", choices=["critical", "fiber", "locus", "factored"])
    d.add_argument("--params", help="lam,mu,nu,sigma (critical, fiber) or alpha,beta,gamma (factored)")
    d.set_defaults(run=cmd_deform)

    f = sub.add_parser("fibration", help="singular fibers of Weierstrass fibrations and cubic pencils")
    f.add_argument("action", choices=["census", "discriminant"])
    f.add_argument("--config", required=True)
    f.set_defaults(run=cmd_fibration)

    t = sub.add_parser("transition", help="Betti and Hodge bookkeeping across transitions")
    t.add_argument("action", choices=["table", "propagate"])
    t.add_argument("--config")
    t.set_defaults(run=cmd_transition)

    c = sub.add_parser("cohomology", help="sheaf cohomology dimensions")
    c.add_argument("action", choices=["bicubic", "bott"])
    c.add_argument("--args", help="p,q,n,a for h^q(P^n, Omega^p(a))")
    c.set_defaults(run=cmd_cohomology)

    r = sub.add_parser("reproduce-paper", help="run every golden check")
    r.add_argument("--criteria", help="comma-separated subset, e.g. 1,5,8")
    r.set_defaults(run=cmd_reproduce)
    return p


def run(argv=None) -> tuple[int, Report | None, str]:
    """Execute one command; returns (exit code, report, text)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        report, text = args.run(args)
    except CuspcalcError as exc:
        return exc.exit_code, None, f"error: {exc}"
    except ZeroDivisionError as exc:
        return 2, None, f"error: {exc}"
    except AssertionError as exc:
        return InternalInconsistency.exit_code, None, f"internal inconsistency: {exc}"
    report.command = argv
    report.duration = round(time.perf_counter() - start, 6)
    code = 0
    if args.command == "reproduce-paper" and not report.results["passed"]:
        code = InternalInconsistency.exit_code
    if args.output:
        try:
            Path(args.output).write_text(emit(report) + "\n", encoding="utf-8")
        except OSError as exc:
            return 2, report, f"error: cannot write {args.output}: {exc}"
    return code, report, emit(report) if args.json else text


def main(argv=None) -> int:
    code, report, text = run(argv)
    print(text, file=sys.stdout if report is not None else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
