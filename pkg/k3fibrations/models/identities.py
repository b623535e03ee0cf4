# -*- coding: utf-8 -*-
"""Exact checks of the identities relating the four fibrations.

Every check returns IdentityReport objects. Polynomial identities are
attempted symbolically under a term budget. Identities between values at
points are tested at seeded random rational points. A ratio that is
not constant fails; the monomial it fits, if any, is kept on the report.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence
import numpy as np
from cachetools import LRUCache, cached
from k3fibrations.algebra.exactalg import (InexactDivisionError, MPoly,
                                           TermBudgetExceeded, discriminant,
                                           format_rat, rational_root,
                                           resultant, symbols, term_budget)
from k3fibrations.models.fibrations import (POLARIZATION_TABLES,
                                            FibrationClass, build,
                                            homogeneous_coefficients,
                                            j30_point, j6_zero_chart,
                                            modular_coefficients,
                                            modular_model, rescale_model)
from k3fibrations.models.moduli import (INVARIANT_NAMES, PARAM_NAMES,
                                        InvariantPoint, ParamPoint,
                                        generic_guard, invariants, j30,
                                        sample_params, weighted_degrees)
from k3fibrations.models.weierstrass import (ClassificationError,
                                             DegenerateModelError, WModel,
                                             classify_fibration)

logger = logging.getLogger(__name__)

VERIFIED_SYMBOLIC = "verified-symbolic"
FAILED = "failed"

DEFAULT_BUDGET = 2_000_000
DEFAULT_POINTS = 20


def verified_at(n: int) -> str:
    return f"verified-at-{n}-points"


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check.

    A failed comparison may still carry a ``fitted_prefactor`` (and the
    alternative expression in ``factor``): the monomial by which the two
    sides differ at every sampled point. It is a diagnostic only.
    """
    name: str
    status: str
    witnesses: tuple = ()
    constant_ratio: Optional[Fraction] = None
    factor: Optional[str] = None
    residual: Optional[str] = None
    fitted_prefactor: Optional[str] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAILED

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status,
                "witnesses": list(self.witnesses),
                "constant_ratio": (None if self.constant_ratio is None
                                   else format_rat(self.constant_ratio)),
                "factor": self.factor, "residual": self.residual,
                "fitted_prefactor": self.fitted_prefactor,
                "note": self.note}

    def as_row(self) -> dict:
        return {"check": self.name, "status": self.status,
                "detail": self.note or self.factor or ""}


def _truncate(p: MPoly, limit: int = 400) -> str:
    text = str(p)
    return text if len(text) <= limit else text[:limit] + " ..."


def _bind(p: MPoly, values: Optional[dict]) -> MPoly:
    if not values:
        return p
    bound = {k: v for k, v in values.items() if k in p.variables}
    return p.evaluate(bound) if bound else p


# -- substitutions into the quartic ----------------------------------------
@cached(cache=LRUCache(maxsize=2))
def quartic_surface() -> MPoly:
    """Defining quartic in (X, Y, Z, W) over alpha..zeta."""
    X, Y, Z, W = symbols("X", "Y", "Z", "W")
    al, be, ga, de, ep, ze = symbols(*PARAM_NAMES)
    half = Fraction(1, 2)
    return (Y**2 * Z * W - 4 * X**3 * Z + 3 * al * X * Z * W**2
            + be * Z * W**3 + ga * X * Z**2 * W
            - half * (de * Z**2 * W**2 + ze * W**4) + ep * X * W**3)


@cached(cache=LRUCache(maxsize=2))
def maximal_conic() -> MPoly:
    """Auxiliary surface, linear in Z, cut out with the quartic for the
    maximal fibration."""
    X, Y, Z, W = symbols("X", "Y", "Z", "W")
    al, be, ga, de, ep, ze = symbols(*PARAM_NAMES)
    u, v = symbols("u", "v")
    inner = (2 * ga**2 * de * ep * ze * X * Z
             + (6 * al * ga * de * ep * ze + 4 * be * ga * de * ep**2
                + 4 * be * ga**2 * ep * ze + 2 * de**2 * ze**2) * X * W
             - ga * de**2 * ep * ze * Z * W
             + 2 * ga * de * ep * ze * Y**2
             - (8 * be * ga**2 * ep**2 + 4 * de**2 * ep * ze
                + 4 * ga * de * ze**2) * X**2)
    return v * inner + u * (2 * ga * X - de * W) * (2 * ep * X - ze * W)


# Sign of the gamma epsilon^2 u v^3 z term of the bfd Z coordinate; -1
# leaves a residual.
BFD_Z_SIGN = 1
BFD_Z_NOTE = ("sign-corrected Z: +6*gamma*epsilon^2 u v^3 z; "
              "-6*gamma*epsilon^2 leaves a residual")


@cached(cache=LRUCache(maxsize=8))
def coordinate_change(cls: FibrationClass, z_sign: int = BFD_Z_SIGN
                      ) -> dict[str, MPoly]:
    """(X, Y, Z, W) in terms of (u, v, x, y, z); Z is eliminated for the
    maximal class. ``z_sign`` only affects the bfd class."""
    al, be, ga, de, ep, ze = symbols(*PARAM_NAMES)
    u, v, x, y, z = symbols("u", "v", "x", "y", "z")
    if cls is FibrationClass.STANDARD:
        return {"X": u * v * x, "Y": y, "Z": 4 * u**4 * v**2 * z,
                "W": 4 * u**3 * v**3 * z}
    if cls is FibrationClass.ALTERNATE:
        return {"X": 2 * u * v * x, "Y": y,
                "Z": 4 * v**5 * (-2 * ep * u + ze * v) * z,
                "W": 2 * v**2 * x}
    if cls is FibrationClass.BFD:
        return {"X": 3 * u * v * (x + 6 * ga * ep * u * v**3 * z), "Y": y,
                "Z": 6 * v**2 * (ep * x
                                 + z_sign * 6 * ga * ep**2 * u * v**3 * z
                                 - 18 * ze * u**2 * v**2 * z),
                "W": 108 * u**3 * v**3 * z}
    return {"X": de * ze * v * ((2 * be * ga * ep * v - u) * x
                                - 2 * ga * de**5 * ep * ze**5 * v**5 * z),
            "Y": y, "W": 2 * de**2 * ze**2 * v**2 * x}


def _substituted(cls: FibrationClass, values: Optional[dict] = None,
                 z_sign: int = BFD_Z_SIGN) -> MPoly:
    quartic = _bind(quartic_surface(), values)
    coords = {k: _bind(p, values)
              for k, p in coordinate_change(cls, z_sign).items()}
    if cls is FibrationClass.MAXIMAL:
        # Z = -R/L from the conic; clear L^2 from the quartic.
        conic = _bind(maximal_conic(), values)
        L, R = conic.coeff("Z", 1), conic.coeff("Z", 0)
        Q0, Q1, Q2 = (quartic.coeff("Z", k) for k in range(3))
        quartic = Q0 * L**2 - Q1 * R * L + Q2 * R**2
    return quartic.substitute(coords)


def _weierstrass_form(cls: FibrationClass, values: Optional[dict] = None
                      ) -> MPoly:
    x, y, z = symbols("x", "y", "z")
    a2, a4, a6 = (_bind(p, values) for p in homogeneous_coefficients(cls))
    return y**2 * z - (x**3 + a2 * x**2 * z + a4 * x * z**2
                       + a6 * z**3)


def _match(S: MPoly, T: MPoly) -> tuple[Optional[MPoly], MPoly]:
    """Factor S = factor * T, reading the factor off the y^2 terms."""
    z = MPoly.var("z")
    try:
        factor = S.coeff("y", 2).divide_exact(z)
    except InexactDivisionError:
        return None, S
    return factor, S - factor * T


def verify_substitution(cls: FibrationClass, budget: int = DEFAULT_BUDGET,
                        points: int = DEFAULT_POINTS, seed: int = 0,
                        z_sign: int = BFD_Z_SIGN) -> IdentityReport:
    """Substitute the coordinate change into the quartic and compare with
    the Weierstrass model up to an overall factor.

    ``z_sign = -1`` flips the gamma epsilon^2 term of the bfd Z coordinate.
    """
    cls = FibrationClass(cls)
    name = f"substitution.{cls}"
    note = ""
    if cls is FibrationClass.BFD:
        note = (BFD_Z_NOTE if z_sign == BFD_Z_SIGN
                else "Z with -6*gamma*epsilon^2 u v^3 z")
    try:
        with term_budget(budget):
            factor, residual = _match(_substituted(cls, z_sign=z_sign),
                                      _weierstrass_form(cls))
    except TermBudgetExceeded as err:
        logger.warning("%s: %s; testing at %d random points", name, err,
                       points)
        return _substitution_at_points(cls, name, points, seed, z_sign,
                                       note)
    if factor is None or not residual.is_zero():
        return IdentityReport(name, FAILED, residual=_truncate(residual),
                              note=note)
    return IdentityReport(name, VERIFIED_SYMBOLIC, factor=_truncate(factor),
                          note=note)


def _substitution_at_points(cls: FibrationClass, name: str, points: int,
                            seed: int, z_sign: int = BFD_Z_SIGN,
                            note: str = "") -> IdentityReport:
    rng = np.random.default_rng(seed)
    for _ in range(points):
        p = sample_params(rng, guard=lambda J: True)
        values = p.as_dict()
        factor, residual = _match(_substituted(cls, values, z_sign),
                                  _weierstrass_form(cls, values))
        if factor is None or not residual.is_zero():
            return IdentityReport(name, FAILED, witnesses=(p.to_json(),),
                                  residual=_truncate(residual), note=note)
    budget_note = "symbolic expansion exceeded the budget"
    return IdentityReport(name, verified_at(points),
                          note=f"{note}; {budget_note}" if note
                          else budget_note)


# -- the two standard branches ---------------------------------------------
def reduce_a_squared(p: MPoly) -> MPoly:
    """Rewrite a^2 as J5^2 - 4 J4 J6."""
    if "a" not in p.free_vars:
        return p
    J4, J5, J6 = symbols("J4", "J5", "J6")
    a = MPoly.var("a")
    square = J5**2 - 4 * J4 * J6
    out = MPoly.const(0)
    for k, c in p.coefficients("a").items():
        c = c.evaluate({"a": 0})
        out = out + c * square**(k // 2) * (a if k % 2 else 1)
    return out


def verify_fplus_fminus() -> list[IdentityReport]:
    t, J6 = symbols("t", "J6")
    _, f_plus, g = modular_coefficients(FibrationClass.STANDARD, 1)
    _, f_minus, _ = modular_coefficients(FibrationClass.STANDARD, -1)
    reports = []

    # t^8 f_-(J6/t) = J6^4 f_+(t) and t^12 g(J6/t) = J6^6 g(t)
    res_f = reduce_a_squared(
        f_minus.substitute({"t": J6 * t}).reciprocal("t", 8)
        - J6**4 * f_plus)
    res_g = reduce_a_squared(
        g.substitute({"t": J6 * t}).reciprocal("t", 12) - J6**6 * g)
    if res_f.is_zero() and res_g.is_zero():
        reports.append(IdentityReport("fplus_fminus.symmetry",
                                      VERIFIED_SYMBOLIC))
    else:
        reports.append(IdentityReport(
            "fplus_fminus.symmetry", FAILED,
            residual=_truncate(res_f if res_f else res_g)))

    J = invariants(ParamPoint(Fraction(2, 7), Fraction(-1, 3),
                              Fraction(2, 3), Fraction(7, 5),
                              Fraction(-4, 9), Fraction(3, 7)))
    plus = build(FibrationClass.STANDARD, J, 1)
    minus = build(FibrationClass.STANDARD, J, -1)
    bad = []
    for t0 in (Fraction(1), Fraction(-2), Fraction(3, 5), Fraction(7, 2)):
        at = {"t": J.J6 / t0}
        lhs_f = minus.a4.evaluate(at).constant_value()
        lhs_g = minus.a6.evaluate(at).constant_value()
        rhs_f = J.J6**4 * plus.a4.evaluate({"t": t0}).constant_value() \
            / t0**8
        rhs_g = J.J6**6 * plus.a6.evaluate({"t": t0}).constant_value() \
            / t0**12
        if lhs_f != rhs_f or lhs_g != rhs_g:
            bad.append(format_rat(t0))
    reports.append(IdentityReport(
        "fplus_fminus.point", FAILED if bad else verified_at(4),
        witnesses=(J.to_json(),), note=", ".join(bad)))

    # (t, X, Y) -> (1/t, X/t^4, -Y/t^6) between the J6 = 0 charts
    one, two = j6_zero_chart(1), j6_zero_chart(-1)
    res_f = one.a4.reciprocal("t", 8) - two.a4
    res_g = one.a6.reciprocal("t", 12) - two.a6
    ok = res_f.is_zero() and res_g.is_zero()
    reports.append(IdentityReport(
        "fplus_fminus.j6_zero_charts", VERIFIED_SYMBOLIC if ok else FAILED,
        residual=None if ok else _truncate(res_f if res_f else res_g)))
    return reports


# -- J30 -------------------------------------------------------------------
def _discriminant_value(p: MPoly) -> Fraction:
    return discriminant(p, "t").constant_value()


def _resultant_value(p: MPoly, q: MPoly) -> Fraction:
    return resultant(p, q, "t").constant_value()


def j30_standard(J: InvariantPoint) -> Fraction:
    """2^4 / (3^18 J6^30) Disc p / Res^3(t^-3 f, t^-5 g)."""
    m = build(FibrationClass.STANDARD, J, 1)
    t = MPoly.var("t")
    p = m.discriminant().divide_exact(t**9) / J.J6**9
    res = _resultant_value(m.a4.divide_exact(t**3),
                           m.a6.divide_exact(t**5))
    return Fraction(2**4, 3**18) / J.J6**30 * _discriminant_value(p) \
        / res**3


def j30_bfd_as_printed(J: InvariantPoint) -> Fraction:
    """-(J2^9 / 3^21) Disc P / Res^3(t^-2 F, t^-3 G)."""
    m = build(FibrationClass.BFD, J)
    t = MPoly.var("t")
    P = m.discriminant().divide_exact(t**8)
    res = _resultant_value(m.a4.divide_exact(t**2),
                           m.a6.divide_exact(t**3))
    return -J.J2**9 / Fraction(3**21) * _discriminant_value(P) / res**3


def j30_maximal(J: InvariantPoint) -> Fraction:
    """Disc d with Delta = J6^16 d."""
    m = build(FibrationClass.MAXIMAL, J)
    return _discriminant_value(m.discriminant() / J.J6**16)


def j30_maximal_quotient(J: InvariantPoint) -> Fraction:
    """Disc d / Res^3(alpha, beta) for the short form of the maximal model.
    """
    m = build(FibrationClass.MAXIMAL, J)
    alpha, beta = m.depress()
    return j30_maximal(J) / _resultant_value(alpha, beta)**3


def _log2_exact(q: Fraction) -> Optional[int]:
    if q <= 0:
        return None
    n, d = q.numerator, q.denominator
    if n & (n - 1) or d & (d - 1):
        return None
    return n.bit_length() - d.bit_length()


def _monomial(J: InvariantPoint, exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for v, e in zip(J.values, exps):
        out *= v**e
    return out


def format_monomial(const: Fraction, exps: Sequence[int]) -> str:
    parts = [format_rat(const)] + [f"{n}^{e}" for n, e in
                                   zip(INVARIANT_NAMES, exps) if e]
    return " * ".join(parts)


def fit_monomial(ratio: Callable[[InvariantPoint], Fraction],
                 points: Sequence[InvariantPoint]
                 ) -> Optional[tuple[Fraction, tuple[int, ...]]]:
    """Fit ratio(J) = c * prod J_k^e_k exactly, or return None.

    Each exponent is read off by doubling one coordinate, then the
    constant is confirmed at every point.
    """
    base = points[0]
    try:
        r0 = ratio(base)
        exps = []
        for k in range(len(INVARIANT_NAMES)):
            vals = list(base.values)
            vals[k] *= 2
            e = _log2_exact(ratio(InvariantPoint(*vals)) / r0)
            if e is None:
                return None
            exps.append(e)
        consts = {ratio(J) / _monomial(J, exps) for J in points}
    except (ZeroDivisionError, ValueError):
        return None
    if len(consts) != 1:
        return None
    return consts.pop(), tuple(exps)


def compare_at_points(name: str, lhs: Callable, rhs: Callable,
                      points: Sequence[InvariantPoint],
                      corrections: Iterable[tuple[str, Callable]] = ()
                      ) -> IdentityReport:
    """lhs(J) = rhs(J) at every point, or a ratio constant across points.

    Anything else fails. A failed report keeps the monomial fitted to the
    ratio, or to the first of ``corrections`` that fits, as a diagnostic.
    """
    pairs = [(lhs(J), rhs(J)) for J in points]
    n = len(points)
    if all(a == b for a, b in pairs):
        return IdentityReport(name, verified_at(n))
    counter = next(J for J, (a, b) in zip(points, pairs) if a != b)
    witnesses = (counter.to_json(),)
    ratios = {a / b for a, b in pairs if b}
    if len(ratios) == 1 and all(b for _, b in pairs):
        return IdentityReport(name, verified_at(n),
                              constant_ratio=ratios.pop())
    fit = fit_monomial(lambda J: lhs(J) / rhs(J), points)
    if fit is not None:
        logger.warning("%s: ratio is %s, not constant", name,
                       format_monomial(*fit))
        return IdentityReport(name, FAILED, witnesses,
                              fitted_prefactor=format_monomial(*fit),
                              note="non-constant ratio to Disc_t D")
    for label, alt in corrections:
        fit = fit_monomial(lambda J, alt=alt: alt(J) / rhs(J), points)
        if fit is not None:
            logger.warning("%s: ratio is non-constant; %s differs by %s",
                           name, label, format_monomial(*fit))
            return IdentityReport(name, FAILED, witnesses, factor=label,
                                  fitted_prefactor=format_monomial(*fit),
                                  note="non-constant ratio to Disc_t D")
    return IdentityReport(name, FAILED, witnesses,
                          note="ratio is not a monomial")


def _j30_guard(J: InvariantPoint) -> bool:
    if not generic_guard(J):
        return False
    try:
        j30_standard(J)
        j30_bfd_as_printed(J)
        j30_maximal_quotient(J)
    except (ZeroDivisionError, InexactDivisionError):
        return False
    return True


def sample_points(points: int, seed: int,
                  guard: Callable[[InvariantPoint], bool] = generic_guard
                  ) -> list[InvariantPoint]:
    """Seeded J6 = 1 points carrying a rational a."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(points):
        p = sample_params(rng, guard=guard, unit_j6=True)
        out.append(invariants(p))
        logger.debug("sample %d: %s", len(out), out[-1])
    return out


def verify_j30_identity(points: int = DEFAULT_POINTS,
                        seed: int = 0) -> list[IdentityReport]:
    pts = sample_points(points, seed, _j30_guard)
    reports = [
        compare_at_points("j30.maximal", j30_maximal, j30, pts,
                          [("Disc_t d / Res_t(alpha, beta)^3",
                            j30_maximal_quotient)]),
        compare_at_points("j30.standard_quotient", j30_standard, j30, pts),
        compare_at_points("j30.bfd_quotient", j30_bfd_as_printed, j30, pts),
    ]
    zero = j30_point(2, 3, Fraction(1, 5))
    ok = j30(zero) == 0
    reports.append(IdentityReport("j30.locus_point",
                                  verified_at(1) if ok else FAILED,
                                  witnesses=(zero.to_json(),)))
    return reports


# -- one Wilson line --------------------------------------------------------
def siegel_restriction() -> dict[str, MPoly]:
    psi4, psi6, chi10, chi12 = symbols("psi4", "psi6", "chi10", "chi12")
    return {"J2": psi4, "J3": psi6, "J4": MPoly.const(0),
            "J5": 2**12 * 3**5 * chi10, "J6": 2**12 * 3**6 * chi12}


def _restricted(m: WModel) -> WModel:
    restriction = siegel_restriction()

    def restrict(p: MPoly) -> MPoly:
        return p.substitute({k: v for k, v in restriction.items()
                             if k in p.variables})
    return WModel(restrict(m.a2), restrict(m.a4), restrict(m.a6),
                  m.chart, m.label)


def one_wilson_line_models() -> dict[str, WModel]:
    psi4, psi6, chi10, chi12 = symbols("psi4", "psi6", "chi10", "chi12")
    t, = symbols("t")
    e8e7 = WModel.short(
        -t**3 * (Fraction(1, 48) * psi4 * t + 4 * chi10),
        t**5 * (t**2 - Fraction(1, 864) * psi6 * t + chi12), "t",
        "e8+e7, one Wilson line")
    so28 = WModel(t**3 - Fraction(1, 48) * psi4 * t - Fraction(1, 864) * psi6,
                  -(4 * chi10 * t - chi12), 0, "t",
                  "so(28)+su(2), one Wilson line")
    return {"e8e7": e8e7, "so28": so28}


def _same(m: WModel, n: WModel) -> bool:
    return m.a2 == n.a2 and m.a4 == n.a4 and m.a6 == n.a6


def _constant_quotient(p: MPoly, q: MPoly) -> Optional[Fraction]:
    try:
        r = p.divide_exact(q)
    except (InexactDivisionError, ZeroDivisionError):
        return None
    return r.constant_value() if r.is_constant() else None


def solve_rescaling(m: WModel, target: WModel, k: int, top: int,
                    low: int) -> Optional[tuple[Fraction, Fraction]]:
    """(kappa, mu^2) with rescale_model(m, kappa, mu^2) == target.

    Read off the t^top and t^low terms of a_k: the transformed t^j
    coefficient is c_j kappa^j / mu^(2k).
    """
    src, dst = getattr(m, f"a{2 * k}"), getattr(target, f"a{2 * k}")
    cross = _constant_quotient(src.coeff("t", low) * dst.coeff("t", top),
                               src.coeff("t", top) * dst.coeff("t", low))
    if not cross:
        return None
    kappa = rational_root(cross, top - low)
    lead = _constant_quotient(src.coeff("t", top), dst.coeff("t", top))
    if not kappa or not lead:
        return None
    mu2 = rational_root(lead * kappa**top, k)
    return (kappa, mu2) if mu2 else None


def maximal_to_alternate(m: WModel) -> WModel:
    """t -> J6 t and mu^2 = J6^4 on the J4 = 0 slice."""
    J6 = MPoly.var("J6")
    return rescale_model(m, J6, J6**4)


def verify_reductions() -> list[IdentityReport]:
    """Restrict to the Humbert surface of one Wilson line and rescale.

    The base rescaling t -> kappa t is reported together with the
    equivalent J_k -> r^k J_k, using that t has weight 2w when J_k has
    weight 2k.
    """
    targets = one_wilson_line_models()
    alt = modular_model(FibrationClass.ALTERNATE)
    mx = maximal_to_alternate(
        modular_model(FibrationClass.MAXIMAL).specialize({"J4": 0}))
    sources = (
        # name, model, target, a_k used, top and low degree, t weight / 2
        ("reductions.bfd", modular_model(FibrationClass.BFD), "e8e7",
         3, 7, 6, 3),
        ("reductions.alternate", alt, "so28", 1, 3, 0, 1),
        ("reductions.maximal", mx, "so28", 1, 3, 0, 1),
    )
    reports = []
    for name, model, key, k, top, low, w in sources:
        model = _restricted(model.specialize({"J4": 0}))
        target = targets[key]
        solved = solve_rescaling(model, target, k, top, low)
        if solved is None:
            reports.append(IdentityReport(name, FAILED,
                                          note="no rescaling found"))
            continue
        kappa, mu2 = solved
        reduced = rescale_model(model, kappa, mu2)
        if not _same(reduced, target):
            residual = next(a - b for a, b in zip(
                (reduced.a2, reduced.a4, reduced.a6),
                (target.a2, target.a4, target.a6)) if a != b)
            reports.append(IdentityReport(name, FAILED,
                                          residual=_truncate(residual)))
            continue
        r = rational_root(1 / kappa, w)
        note = f"t -> {format_rat(kappa)} t, mu^2 = {format_rat(mu2)}"
        if r is not None:
            note += f"; equivalently J_k -> ({format_rat(r)})^k J_k"
        reports.append(IdentityReport(name, VERIFIED_SYMBOLIC, note=note))
    return reports


# -- convergence at J4 = 0 -------------------------------------------------
def limit_models() -> tuple[WModel, WModel]:
    """The two J4 = 0 charts shared by the standard and bfd classes."""
    J2, J3, J5, J6 = symbols("J2", "J3", "J5", "J6")
    t, = symbols("t")
    first = WModel.short(-t**3 * (3 * J2 * t + J5),
                         t**5 * (t**2 - 2 * J3 * t + J6), "t", "J4=0")
    second = WModel.short(-t**4 * (J5 * t + 3 * J2),
                          t**5 * (J6 * t**2 - 2 * J3 * t + 1), "t",
                          "J4=0, second chart")
    return first, second


def _report(name: str, ok: bool, note: str = "") -> IdentityReport:
    return IdentityReport(name, VERIFIED_SYMBOLIC if ok else FAILED,
                          note=note)


def verify_convergence() -> list[IdentityReport]:
    first, second = limit_models()
    bfd = modular_model(FibrationClass.BFD).specialize({"J4": 0})
    reports = [_report("convergence.bfd_standard", _same(bfd, first))]

    slice_ = {"J6": 1}
    J5 = MPoly.var("J5")
    plus = modular_model(FibrationClass.STANDARD, 1)
    minus = modular_model(FibrationClass.STANDARD, -1)

    def on_slice(m: WModel) -> WModel:
        m = m.specialize(slice_)
        return WModel(*(p.substitute({"a": J5}) if "a" in p.variables
                        else p for p in (m.a2, m.a4, m.a6)),
                      m.chart, m.label)
    ok = (_same(on_slice(plus), first.specialize(slice_))
          and _same(on_slice(minus), second.specialize(slice_)))
    reports.append(_report("convergence.standard_charts", ok,
                           "a = J5 on J6 = 1"))
    ok = (first.a4.reciprocal("t", 8) == second.a4
          and first.a6.reciprocal("t", 12) == second.a6)
    reports.append(_report("convergence.chart_map", ok,
                           "(t, X, Y) -> (1/t, X/t^4, -Y/t^6)"))

    alt = modular_model(FibrationClass.ALTERNATE).specialize({"J4": 0})
    mx = modular_model(FibrationClass.MAXIMAL).specialize({"J4": 0})
    reports.append(_report("convergence.maximal_alternate",
                           _same(maximal_to_alternate(mx), alt),
                           "t -> J6 t, mu^2 = J6^4"))
    return reports


# -- weights ---------------------------------------------------------------
T_WEIGHTS = {FibrationClass.ALTERNATE: 2, FibrationClass.BFD: 6,
             FibrationClass.MAXIMAL: 14}


def model_weights(m: WModel, t_weight: int) -> list[set[int]]:
    weights = {n: 2 * k for k, n in enumerate(INVARIANT_NAMES, start=2)}
    weights[m.chart] = t_weight
    return [weighted_degrees(p, weights) for p in (m.a2, m.a4, m.a6)]


def verify_weights() -> list[IdentityReport]:
    reports = []
    for cls, w in T_WEIGHTS.items():
        degs = model_weights(modular_model(cls), w)
        nonzero = [(k, d) for k, d in enumerate(degs, start=1) if d]
        ok = all(len(d) == 1 for _, d in nonzero)
        if ok:
            unit = {d.pop() / k for k, d in nonzero}
            ok = len(unit) == 1
        reports.append(_report(f"weights.{cls}", ok, f"t has weight {w}"))
    return reports


# -- generic configurations -------------------------------------------------
def verify_generic(points: int = DEFAULT_POINTS,
                   seed: int = 0) -> list[IdentityReport]:
    """Generic rows from raw and modular builds at random points."""
    rng = np.random.default_rng(seed)
    samples = [sample_params(rng, unit_j6=True) for _ in range(points)]
    reports = []
    for cls in FibrationClass:
        expected = POLARIZATION_TABLES[cls][0].config
        bad = []
        for p in samples:
            J = invariants(p)
            models = [build(cls, p), build(cls, J)]
            if cls is FibrationClass.STANDARD:
                models.append(build(cls, J, -1))
            try:
                configs = [classify_fibration(m) for m in models]
            except (ClassificationError, DegenerateModelError) as err:
                logger.warning("generic %s at %s: %s", cls, p, err)
                bad.append(p.to_json())
                continue
            if any(c != expected for c in configs):
                bad.append(p.to_json())
        if bad:
            reports.append(IdentityReport(f"generic.{cls}", FAILED,
                                          tuple(bad[:3])))
        else:
            reports.append(IdentityReport(f"generic.{cls}",
                                          verified_at(points),
                                          note=str(expected)))
    return reports


# -- suite -----------------------------------------------------------------
@dataclass(frozen=True)
class SuiteOptions:
    points: int = DEFAULT_POINTS
    seed: int = 0
    budget: int = DEFAULT_BUDGET


def _registry(opts: SuiteOptions) -> list[tuple[str, Callable]]:
    checks: list[tuple[str, Callable]] = [
        (f"substitution.{cls}",
         lambda cls=cls: [verify_substitution(cls, opts.budget,
                                              opts.points, opts.seed)])
        for cls in FibrationClass]
    checks += [
        ("fplus_fminus", verify_fplus_fminus),
        ("j30", lambda: verify_j30_identity(opts.points, opts.seed)),
        ("reductions", verify_reductions),
        ("convergence", verify_convergence),
        ("weights", verify_weights),
        ("generic", lambda: verify_generic(opts.points, opts.seed)),
    ]
    return checks


def run_suite(opts: SuiteOptions = SuiteOptions(),
              name_filter: Optional[str] = None) -> list[IdentityReport]:
    """Run the checks whose names match ``name_filter`` (a prefix)."""
    reports = []
    for prefix, check in _registry(opts):
        if name_filter and not (prefix.startswith(name_filter)
                                or name_filter.startswith(prefix)):
            continue
        logger.info("running %s", prefix)
        reports.extend(check())
    if name_filter:
        reports = [r for r in reports if r.name.startswith(name_filter)]
    if not reports:
        err_msg = f"No checks match {name_filter!r}"
        raise ValueError(err_msg)
    return sorted(reports, key=lambda r: r.name)
