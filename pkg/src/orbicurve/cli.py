"""Command-line front end.

Exit codes: 0 when a result was computed (even a negative verdict), 1 for input
errors, 2 when a premise of the requested check fails, 3 when a numeric
computation did not converge.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import SCHEMA, __version__
from .algebra.bivariate import MapFamily
from .algebra.places import INFINITY, Divisor, Place, RationalMap, pullback_divisor
from .classification import classify, pi1_presentation, quotient_signature, unfolding_exists
from .errors import InputError, OrbicurveError, PremiseError, QuadratureError
from .kobayashi import (
    chain_upper_bound,
    classical_distance_disc,
    distance_decreasing_check,
    limit_convergence,
    limit_density,
    metric_density,
)
from .morphisms import (
    MorphismMode,
    MorphismVerdict,
    check_morphism,
    composition_rule_check,
    critical_values,
    degree_inequality_check,
    divisor_criterion,
    etale_check,
    limit_closure_check,
    orbifold_base,
    ramification_divisor,
)
from .nevanlinna import DEFAULT_TOLERANCE, orbi_trunc_check
from .orbifold import (
    INF,
    Disc,
    OrbifoldCurve,
    OrbifoldDivisor,
    P1,
    blowup_exceptional_threshold,
    check_multiplicity,
    divisor_to_json,
    orbifold_from_json,
    orbifold_to_json,
    place_inside_disc,
    place_text,
)
from .schemas import schema_text
from .serialize import dumps, envelope, float_text, rational_text
from .unfolding import PRESETS, build_unfolding, etale_cover_report, profile_summary

EXIT_OK, EXIT_INPUT, EXIT_PREMISE, EXIT_NUMERIC = 0, 1, 2, 3

Result = tuple[dict, list[str], Optional[tuple[list[str], list[list]]]]


class _Parser(argparse.ArgumentParser):
    """Argument errors become :class:`InputError` so they map to exit code 1."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # values such as -1/4 or -0.3i are arguments, not options
        self._negative_number_matcher = re.compile(r"^-[0-9.]")

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


# -- argument helpers ------------------------------------------------------------

def _load_json(value: str) -> Any:
    text = value.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(value).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {value}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _orbifold(value: Any, default: Optional[OrbifoldCurve] = None) -> OrbifoldCurve:
    if value is None:
        return default if default is not None else OrbifoldCurve(P1(), OrbifoldDivisor())
    doc = _load_json(value) if isinstance(value, str) else value
    return orbifold_from_json(doc)


def _map(text: Optional[str], name: str = "map") -> RationalMap:
    if text is None:
        raise InputError(f"--{name} is required")
    return RationalMap.parse(str(text))


def _rational(text: Any, what: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be a rational number, got {text!r}") from None


def _number(text: Any, what: str):
    """Exact Fraction when possible, else a complex number (``j`` or ``i`` suffix)."""
    s = str(text).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(s.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise InputError(f"{what} must be a number, got {text!r}") from None


def _value_place(text: Any) -> Place:
    s = str(text).strip()
    return INFINITY if s.lower() in ("inf", "infinity", "oo") else Place.at(_rational(s, "place"))


def _mult(value: Any):
    m = check_multiplicity(value)
    return "inf" if m == INF else int(m)


def _csv_list(text: Any, convert: Callable) -> list:
    if isinstance(text, (list, tuple)):
        return [convert(t) for t in text]
    items = [t for t in str(text).split(",") if t.strip()]
    if not items:
        raise InputError("empty list")
    return [convert(t) for t in items]


def _divisor_json(d: Divisor) -> list[dict]:
    return [{"place": place_text(p), "coeff": rational_text(Fraction(c))} for p, c in d.items()]


def _verdict_json(v: MorphismVerdict) -> dict:
    return {
        "ok": v.ok,
        "mode": v.mode.value,
        "image_in_support": v.image_in_support,
        "witnesses": [{"source": place_text(w.source), "target": place_text(w.target), "d": w.d,
                       "n": _mult(w.n) if w.n != 1 else 1, "m": _mult(w.m),
                       "condition": w.condition, "satisfied": w.satisfied}
                      for w in v.witnesses],
    }


def _explicit_p1(o: OrbifoldCurve) -> bool:
    return isinstance(o.base, P1) and not o.punctures and not o.delta.infinite_support


# -- commands ---------------------------------------------------------------------

def cmd_classify(args) -> Result:
    o = _orbifold(args.document)
    v = classify(o)
    unfold = unfolding_exists(o) if o.is_compact and not o.delta.infinite_support else None
    payload = {
        "orbifold": orbifold_to_json(o),
        "hyperbolic": v.hyperbolic,
        "classical_hyperbolic": v.classical_hyperbolic,
        "reason": v.reason.value,
        "degree": v.degree,
        "unfolding_exists": unfold,
        "notes": list(v.notes),
    }
    deg = "undefined" if v.degree is None else rational_text(v.degree)
    lines = [f"{'hyperbolic' if v.hyperbolic else 'not hyperbolic'} "
             f"(reason {v.reason.value}, deg(K + Delta) = {deg})"]
    if unfold is not None:
        lines.append(f"unfolding exists: {'yes' if unfold else 'no'}")
    lines += [f"note: {n}" for n in v.notes]
    return payload, lines, None


def cmd_pi1(args) -> Result:
    o = _orbifold(args.document)
    p = pi1_presentation(o)
    payload = {
        "orbifold": orbifold_to_json(o),
        "generators": list(p.generators),
        "relators": list(p.relators),
        "abelianization": list(p.abelianization),
        "abelianization_text": p.abelianization_text(),
        "is_trivial": p.is_trivial,
    }
    lines = [f"< {', '.join(p.generators) or '-'} | {', '.join(p.relators) or '-'} >",
             f"abelianization: {p.abelianization_text()}",
             f"trivial: {'yes' if p.is_trivial else 'no'}"]
    return payload, lines, None


def cmd_morphism(args) -> Result:
    f = _map(args.map)
    source, target = _orbifold(args.source), _orbifold(args.target)
    mode = MorphismMode.parse(args.mode)
    v = check_morphism(f, source, target, mode)
    criterion = degree = None
    # the criterion divisor has rational coefficients only without punctures
    if ((_explicit_p1(source) or isinstance(source.base, Disc)) and _explicit_p1(target)
            and not source.delta.infinite_places() and not target.delta.infinite_places()):
        c = divisor_criterion(f, source.delta, target.delta, in_disc=isinstance(source.base, Disc))
        criterion = {"divisor": _divisor_json(c.divisor), "nonnegative": c.nonnegative}
    if v.ok and mode is MorphismMode.NONCLASSICAL and _explicit_p1(source) and _explicit_p1(target):
        d = degree_inequality_check(f, source, target)
        degree = {"lhs": d.lhs, "rhs": d.rhs, "holds": d.holds}
    payload = {"map": f.to_text(), "source": orbifold_to_json(source),
               "target": orbifold_to_json(target), "verdict": _verdict_json(v),
               "criterion": criterion, "degree_inequality": degree}
    lines = [f"{mode.value} orbifold morphism: {'yes' if v.ok else 'no'}"]
    for w in v.witnesses:
        lines.append(f"  [{place_text(w.source)}] -> [{place_text(w.target)}]  d={w.d}  "
                     f"{w.condition}  {'ok' if w.satisfied else 'FAILS'}")
    if criterion is not None:
        lines.append(f"R_f + Delta - f^*Delta' = {c.divisor.to_text()}")
    if degree is not None:
        lines.append(f"degree inequality: {rational_text(degree['lhs'])} >= "
                     f"{rational_text(degree['rhs'])}: {'holds' if degree['holds'] else 'fails'}")
    return payload, lines, None


def cmd_ramification(args) -> Result:
    f = _map(args.map)
    r = ramification_divisor(f)
    payload = {"map": f.to_text(), "degree": f.degree, "divisor": _divisor_json(r),
               "divisor_degree": r.degree(), "riemann_hurwitz": r.degree() == 2 * f.degree - 2}
    lines = [f"R_f = {r.to_text()}",
             f"deg R_f = {rational_text(r.degree())} = 2*{f.degree} - 2"]
    return payload, lines, None


def cmd_compose(args) -> Result:
    f, g = _map(args.f, "f"), _map(args.g, "g")
    c = composition_rule_check(f, g)
    payload = {"f": f.to_text(), "g": g.to_text(), "composite": g.compose(f).to_text(),
               "lhs": _divisor_json(c.lhs), "rhs": _divisor_json(c.rhs), "equal": c.equal}
    lines = [f"R_(g o f)     = {c.lhs.to_text()}",
             f"R_f + f^*R_g  = {c.rhs.to_text()}",
             f"equal: {'yes' if c.equal else 'no'}"]
    return payload, lines, None


def cmd_orbifold_base(args) -> Result:
    f = _map(args.map)
    mode = MorphismMode.parse(args.mode)
    base = orbifold_base(f, mode)
    crit = [place_text(q) for q in critical_values(f)]
    payload = {"map": f.to_text(), "mode": mode.value, "critical_values": crit,
               "divisor": divisor_to_json(base), "text": base.to_text()}
    lines = [f"critical values: {', '.join(crit) or 'none'}",
             f"{mode.value} orbifold base: {base.to_text()}"]
    return payload, lines, None


def cmd_etale(args) -> Result:
    f = _map(args.map)
    source, target = _orbifold(args.source), _orbifold(args.target)
    morphism_ok = check_morphism(f, source, target, MorphismMode.NONCLASSICAL).ok
    ok = etale_check(f, source, target)
    r = ramification_divisor(f)
    expected = pullback_divisor(f, target.delta.as_divisor()) - source.delta.as_divisor()
    if isinstance(source.base, Disc):
        r = r.restrict(p for p in r.support() if place_inside_disc(p))
        expected = expected.restrict(p for p in expected.support() if place_inside_disc(p))
    payload = {"map": f.to_text(), "source": orbifold_to_json(source),
               "target": orbifold_to_json(target), "etale": ok, "morphism_ok": morphism_ok,
               "ramification": _divisor_json(r), "expected": _divisor_json(expected)}
    lines = [f"etale: {'yes' if ok else 'no'}",
             f"R_f            = {r.to_text()}",
             f"f^*Delta' - Delta = {expected.to_text()}"]
    return payload, lines, None


def cmd_unfold(args) -> Result:
    c = build_unfolding(args.preset, args.lam)
    report = etale_cover_report(c)
    summary = {place_text(Place.at(v)): (k, mults) for v, k, mults in profile_summary(c)}
    profile = []
    for q, fib in c.profile:
        k, mults = summary[place_text(q)]
        profile.append({"value": place_text(q), "count": k, "multiplicities": mults,
                        "points": [{"point": pt.to_text(), "degree": pt.degree, "mult": d}
                                   for pt, d in fib]})
    payload = {
        "preset": c.preset,
        "lambda": None if args.lam is None else Fraction(args.lam),
        "curve": f"y^2 = {c.curve.h.to_text('x')}",
        "map": {"a": c.map.a.to_text("x"), "b": c.map.b.to_text("x"), "text": c.map.to_text()},
        "degree": c.degree,
        "target": orbifold_to_json(c.target),
        "profile": profile,
        "verification": {
            "ok": report.ok,
            "profile_consistent": report.profile_consistent,
            "fiber_sums_ok": report.fiber_sums_ok,
            "ramification_matches": report.ramification_matches,
            "unramified_elsewhere": report.unramified_elsewhere,
            "riemann_hurwitz": list(report.riemann_hurwitz),
            "degree_equality": list(report.degree_equality),
        },
    }
    lines = [f"curve y^2 = {c.curve.h.to_text('x')}, map {c.map.to_text()} of degree {c.degree}"]
    for entry in profile:
        pts = ", ".join(f"{p['point']} (x{p['mult']})" for p in entry["points"])
        lines.append(f"  over {entry['value']}: {entry['count']} point(s), "
                     f"multiplicities {entry['multiplicities']}: {pts}")
    lines.append(f"etale cover verified: {'yes' if report.ok else 'no'}")
    return payload, lines, None


def cmd_quotient(args) -> Result:
    s = quotient_signature(args.preset, args.n)
    orbits = [{"representative": "inf" if o.representative is None else complex(o.representative),
               "orbit_size": o.orbit_size, "stabilizer": o.stabilizer} for o in s.orbits]
    o = OrbifoldCurve(P1(), s.divisor)
    payload = {"preset": args.preset, "n": args.n, "order": s.order,
               "multiplicities": list(s.multiplicities), "orbits": orbits,
               "orbifold": orbifold_to_json(o)}
    lines = [f"|G| = {s.order}, signature ({', '.join(map(str, s.multiplicities))})",
             f"quotient orbifold: {s.divisor.to_text()}"]
    return payload, lines, None


def cmd_nevanlinna(args) -> Result:
    f = _map(args.map)
    place = _value_place(args.place)
    if args.mult is None:
        raise InputError("--mult is required")
    radii = _csv_list(args.radii, lambda t: float(_rational(t, "radius")))
    tol = DEFAULT_TOLERANCE if args.tolerance is None else float(args.tolerance)
    rep = orbi_trunc_check(f, place, check_multiplicity(args.mult), radii, tol)
    payload = {"map": f.to_text(), "place": place_text(place), "mult": _mult(rep.multiplicity),
               "alpha": rep.alpha, "radii": list(rep.radii), "T": list(rep.T),
               "T_area": list(rep.T_area), "N": list(rep.N), "N1": list(rep.N1),
               "margin": list(rep.margin), "margin_area": list(rep.margin_area),
               "errors": list(rep.errors), "tolerance": rep.tolerance,
               "flagged": list(rep.flagged), "ok": rep.ok}
    lines = ["r  T  T_area  N  N1  margin  margin_area"]
    rows = []
    for i, r in enumerate(rep.radii):
        row = [r, rep.T[i], rep.T_area[i], rep.N[i], rep.N1[i], rep.margin[i],
               rep.margin_area[i], rep.errors[i]]
        rows.append(row)
        lines.append("  ".join(f"{x:.10g}" for x in row[:7]))
    lines.append(f"truncation inequality: {'holds' if rep.ok else 'FLAGGED at ' + str(list(rep.flagged))}")
    header = ["r", "T", "T_area", "N", "N1", "margin", "margin_area", "quad_error"]
    return payload, lines, (header, rows)


def cmd_kobayashi_density(args) -> Result:
    n = _positive_int(args.n, "n")
    z = _number(args.z, "z")
    dens = metric_density(n, z)
    conv = limit_convergence(z)
    payload = {"n": n, "z": z, "density": dens, "density_float": float(dens),
               "limit": limit_density(z),
               "convergence": {"ns": list(conv.ns), "differences": list(conv.differences),
                               "decreasing": conv.decreasing}}
    shown = rational_text(dens) if isinstance(dens, Fraction) else f"{dens:.17g}"
    lines = [f"density(n={n}, z={args.z}) = {shown}",
             f"limit density = {conv.limit:.17g}",
             f"|density - limit| at n = {conv.ns[-1]}: {conv.differences[-1]:.3e} "
             f"({'decreasing' if conv.decreasing else 'NOT decreasing'} in n)"]
    rows = [[k, float(metric_density(k, complex(z))), conv.limit, d]
            for k, d in zip(conv.ns, conv.differences)]
    return payload, lines, (["n", "density", "limit", "difference"], rows)


def cmd_kobayashi_distance(args) -> Result:
    n = _positive_int(args.n, "n")
    p, q = complex(_number(args.p, "p")), complex(_number(args.q, "q"))
    d = classical_distance_disc(n, p, q)
    chain = None
    lines = [f"d*_{n}({args.p}, {args.q}) = {d:.17g}"]
    if args.experimental_chain:
        b = chain_upper_bound(n, p, q, _positive_int(args.budget, "budget", allow_zero=True))
        chain = {"value": b.value, "best": b.best, "evaluated": b.evaluated,
                 "improved": b.improved, "fallback": b.fallback}
        lines.append(f"chain upper bound (experimental) = {b.value:.17g} via {b.best}"
                     f"{'; below d*' if b.improved else ''}{'; fallback' if b.fallback else ''}")
    payload = {"n": n, "p": p, "q": q, "classical": d, "chain": chain}
    return payload, lines, None


def cmd_kobayashi_decreasing(args) -> Result:
    f = _map(args.map)
    n_src, n_tgt = _positive_int(args.n_src, "n-src"), _positive_int(args.n_tgt, "n-tgt")

    def pair(text: str):
        a, sep, b = str(text).partition(":")
        if not sep:
            raise InputError(f"pairs are written p:q, got {text!r}")
        return complex(_number(a, "p")), complex(_number(b, "q"))

    pairs = _csv_list(args.pairs, pair)
    tol = 1e-9 if args.tolerance is None else float(args.tolerance)
    rep = distance_decreasing_check(f, n_src, n_tgt, pairs, tol)
    payload = {"map": f.to_text(), "n_src": n_src, "n_tgt": n_tgt, "tolerance": tol,
               "ok": rep.ok,
               "pairs": [{"p": c.p, "q": c.q, "image_distance": c.image_distance,
                          "source_distance": c.source_distance, "ok": c.ok} for c in rep.pairs]}
    lines = [f"distance decreasing: {'yes' if rep.ok else 'NO'}"]
    lines += [f"  {c.p} , {c.q}: {c.image_distance:.12g} <= {c.source_distance:.12g}"
              f"{'' if c.ok else '  FAILS'}" for c in rep.pairs]
    return payload, lines, None


def cmd_limit_closure(args) -> Result:
    if args.family is None:
        raise InputError("--family is required")
    family = MapFamily.parse(str(args.family))
    source, target = _orbifold(args.source), _orbifold(args.target)
    mode = MorphismMode.parse(args.mode)
    kwargs = {}
    if args.samples is not None:
        kwargs["samples"] = _csv_list(args.samples, lambda t: _rational(t, "sample"))
    rep = limit_closure_check(family, source, target, mode, **kwargs)
    payload = {"family": family.text, "mode": mode.value, "source": orbifold_to_json(source),
               "target": orbifold_to_json(target),
               "samples": [{"t": c.t, "map": c.map.to_text(), "status": c.status}
                           for c in rep.samples],
               "limit": rep.limit.map.to_text(), "branch": rep.branch, "holds": rep.holds}
    lines = [f"  t = {rational_text(c.t)}: {c.map.to_text()} ({c.status})" for c in rep.samples]
    lines.append(f"limit f_0 = {rep.limit.map.to_text()}: {rep.branch}")
    lines.append(f"closure property: {'holds' if rep.holds else 'FAILS'}")
    return payload, lines, None


def cmd_blowup(args) -> Result:
    def pair(text):
        if isinstance(text, dict):
            n, d = text.get("n"), text.get("d")
        else:
            n, sep, d = str(text).partition(":")
            if not sep:
                raise InputError(f"pairs are written n:d, got {text!r}")
        return check_multiplicity(str(n).strip(), allow_one=True), _positive_int(d, "d")

    pairs = _csv_list(args.pairs, pair)
    m, k = blowup_exceptional_threshold(pairs)
    payload = {"pairs": [{"n": _mult(n) if n != 1 else 1, "d": d} for n, d in pairs],
               "threshold": "inf" if m == INF else m, "k_min": _mult(k) if k != 1 else 1}
    mt = "inf" if m == INF else rational_text(m)
    kt = "inf" if k == INF else str(k)
    lines = [f"threshold m = {mt}; exceptional multiplicity k >= {kt}"]
    return payload, lines, None


def _positive_int(value: Any, what: str, allow_zero: bool = False) -> int:
    try:
        n = int(str(value).strip())
    except ValueError:
        raise InputError(f"{what} must be an integer, got {value!r}") from None
    if n < (0 if allow_zero else 1):
        raise InputError(f"{what} must be {'non-negative' if allow_zero else 'positive'}, got {n}")
    return n


# -- parser -----------------------------------------------------------------------

# commands whose document *is* the orbifold
_ORBIFOLD_DOC = {"classify", "pi1"}


def _help_epilog(name: str) -> str:
    return f"JSON output schema ({SCHEMA}):\n{schema_text(name)}"


def _add_common(p: argparse.ArgumentParser, *, document: bool = True) -> None:
    p.add_argument("--json", action="store_true", help="emit canonical JSON")
    p.add_argument("--csv", metavar="PATH", help="write CSV rows (where the command has any)")
    if document:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--inline", metavar="JSON", help="input document as inline JSON")
        g.add_argument("--input", metavar="PATH", help="input document file")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = _Parser(prog="orbicurve", description="Computations with orbifold curves.",
                     formatter_class=fmt,
                     epilog="Exit codes: 0 computed, 1 input error, 2 premise failure, "
                            "3 numeric non-convergence.")
    parser.add_argument("--version", action="version", version=f"orbicurve {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name: str, func, help_text: str, schema: Optional[str] = None) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text,
                           epilog=_help_epilog(schema or name), formatter_class=fmt)
        p.set_defaults(func=func, schema_name=schema or name)
        _add_common(p)
        return p

    mode_help = "classical or nonclassical (default nonclassical)"
    orb_help = "orbifold document (inline JSON or path); default: P1 without orbifold points"

    add("classify", cmd_classify, "hyperbolicity verdict for an orbifold curve document")
    add("pi1", cmd_pi1, "presentation of the orbifold fundamental group")

    p = add("morphism", cmd_morphism, "check whether a rational map is an orbifold morphism")
    p.add_argument("--map", help="rational function of z")
    p.add_argument("--source", help=orb_help)
    p.add_argument("--target", help=orb_help)
    p.add_argument("--mode", help=mode_help)

    p = add("ramification", cmd_ramification, "ramification divisor of a rational map")
    p.add_argument("--map", help="rational function of z")

    p = add("compose-check", cmd_compose, "check R_(g o f) = R_f + f^*R_g")
    p.add_argument("--f", help="inner map")
    p.add_argument("--g", help="outer map")

    p = add("orbifold-base", cmd_orbifold_base, "maximal target divisor of a rational map")
    p.add_argument("--map", help="rational function of z")
    p.add_argument("--mode", help=mode_help)

    p = add("etale", cmd_etale, "check R_f = f^*Delta' - Delta")
    p.add_argument("--map", help="rational function of z")
    p.add_argument("--source", help=orb_help)
    p.add_argument("--target", help=orb_help)

    p = add("unfold", cmd_unfold, "elliptic unfolding of a euclidean signature")
    p.add_argument("--preset", choices=PRESETS, help="signature")
    p.add_argument("--lambda", dest="lam", help="fourth branch value for 2222")

    p = add("quotient", cmd_quotient, "signature of P^1 modulo a finite Moebius group")
    p.add_argument("--preset", help="cyclic, dihedral, tetrahedral, octahedral or icosahedral")
    p.add_argument("--n", type=int, help="order parameter for cyclic and dihedral groups")

    p = add("nevanlinna", cmd_nevanlinna, "orbifold truncated second main theorem check")
    p.add_argument("--map", help="polynomial or rational function of z")
    p.add_argument("--place", default="inf", help="target value or inf (default inf)")
    p.add_argument("--mult", help="multiplicity m of the target point")
    p.add_argument("--radii", default="2,10,100", help="comma separated radii >= 1")
    p.add_argument("--tolerance", type=float, help=f"margin tolerance (default {DEFAULT_TOLERANCE})")

    kob = sub.add_parser("kobayashi", help="disc orbifold metrics and distances",
                         description="disc orbifold metrics and distances")
    ksub = kob.add_subparsers(dest="kobayashi_command", metavar="QUANTITY", required=True)

    def kadd(name: str, func, help_text: str) -> argparse.ArgumentParser:
        schema = f"kobayashi {name}"
        p = ksub.add_parser(name, help=help_text, description=help_text,
                            epilog=_help_epilog(schema), formatter_class=fmt)
        p.set_defaults(func=func, schema_name=schema)
        _add_common(p)
        return p

    p = kadd("density", cmd_kobayashi_density, "metric density on (D / (1 - 1/n)[0])")
    p.add_argument("--n", default="2")
    p.add_argument("--z", help="point with 0 < |z| < 1 (rational or complex)")
    p = kadd("distance", cmd_kobayashi_distance, "classical pseudodistance d*_n")
    p.add_argument("--n", default="2")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--experimental-chain", action="store_true",
                   help="also search chains of non-classical disc morphisms")
    p.add_argument("--budget", default="200", help="candidate budget for the chain search")
    p = kadd("decreasing", cmd_kobayashi_decreasing, "distance-decreasing check on sample pairs")
    p.add_argument("--map")
    p.add_argument("--n-src", dest="n_src", default="1")
    p.add_argument("--n-tgt", dest="n_tgt", default="1")
    p.add_argument("--pairs", help="comma separated p:q pairs")
    p.add_argument("--tolerance", type=float)

    p = add("limit-closure", cmd_limit_closure, "limit of a family of orbifold morphisms")
    p.add_argument("--family", help="rational function of z and t")
    p.add_argument("--source", help=orb_help)
    p.add_argument("--target", help=orb_help)
    p.add_argument("--mode", help=mode_help)
    p.add_argument("--samples", help="comma separated nonzero t values")

    p = add("blowup-threshold", cmd_blowup, "multiplicity threshold for a blow-up")
    p.add_argument("--pairs", help="comma separated n:d pairs")
    return parser


_DEFAULTS = {"mode": "nonclassical"}


def _merge_document(args: argparse.Namespace) -> None:
    """Fill unset options from the input document; flags win over document fields."""
    raw = args.inline if args.inline is not None else args.input
    args.document = None
    if raw is None:
        if args.command in _ORBIFOLD_DOC:
            raise InputError("an orbifold document is required (--inline or --input)")
    else:
        doc = _load_json(raw)
        if args.command in _ORBIFOLD_DOC:
            args.document = doc
        else:
            if not isinstance(doc, dict):
                raise InputError("input document must be a JSON object")
            reserved = {"func", "schema_name", "command", "kobayashi_command", "json", "csv",
                        "inline", "input", "document"}
            for key, value in doc.items():
                dest = {"lambda": "lam"}.get(key, key.replace("-", "_"))
                if dest in reserved or not hasattr(args, dest):
                    raise InputError(f"unknown field {key!r} for {args.command}")
                if getattr(args, dest) in (None, False):
                    setattr(args, dest, value)
    for key, value in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    def cell(x):
        if isinstance(x, float):
            return float_text(x).strip('"')
        return x

    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows([[cell(x) for x in row] for row in rows])
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run the command line ``argv`` and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with contextlib.redirect_stdout(stdout):
            args = build_parser().parse_args(argv)
        _merge_document(args)
        payload, lines, table = args.func(args)
        if args.csv:
            if table is None:
                raise InputError(f"{args.schema_name} has no CSV output")
            _write_csv(args.csv, *table)
        if args.json:
            stdout.write(dumps(envelope(args.schema_name, payload)) + "\n")
        else:
            stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except QuadratureError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC
    except PremiseError as exc:
        stderr.write(f"premise failure: {exc}\n")
        return EXIT_PREMISE
    except (InputError, OrbicurveError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
