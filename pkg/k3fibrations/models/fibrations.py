# -*- coding: utf-8 -*-
"""Weierstrass models of the four Jacobian elliptic fibrations.

Functions:
    - homogeneous_coefficients: (a2, a4, a6) in u, v over the raw sextuple.
    - modular_coefficients: (a2, a4, a6) in t over J2..J6 (and a).
    - build: a WModel for a class at a raw, invariant or symbolic point.
    - locus_point / specialize: exact points on the confluence loci and
      their classified fiber configurations.
    - reproduce_table: every row of the polarization table, recomputed.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union
from cachetools import LRUCache, cached
from k3fibrations.algebra.exactalg import MPoly, Scalar, symbols
from k3fibrations.models.moduli import (INVARIANT_NAMES, PARAM_NAMES,
                                        InvariantPoint, ParamPoint,
                                        invariants, j30)
from k3fibrations.models.weierstrass import (TORSION_TRIVIAL, TORSION_Z2,
                                             ClassificationError,
                                             FiberConfig, WModel,
                                             classify_fibration)

logger = logging.getLogger(__name__)

Point = Union[ParamPoint, InvariantPoint]


class FibrationClass(str, Enum):
    STANDARD = "standard"
    ALTERNATE = "alternate"
    BFD = "bfd"
    MAXIMAL = "maximal"

    def __str__(self) -> str:
        return self.value


class Locus(str, Enum):
    GENERIC = "generic"
    RES = "Res"
    A_ZERO = "a=0"
    J30 = "J30"
    J4 = "J4=0"
    J4J5 = "J4=J5=0"

    def __str__(self) -> str:
        return self.value


def _check_branch(branch: int) -> int:
    if branch not in (1, -1):
        err_msg = f"branch must be +1 or -1, got {branch!r}"
        raise ValueError(err_msg)
    return branch


@cached(cache=LRUCache(maxsize=8))
def homogeneous_coefficients(cls: FibrationClass
                             ) -> tuple[MPoly, MPoly, MPoly]:
    """(a2, a4, a6) of the fibration, bihomogeneous in (u, v)."""
    al, be, ga, de, ep, ze = symbols(*PARAM_NAMES)
    u, v = symbols("u", "v")
    zero = MPoly.const(0, ("u", "v"))
    if cls is FibrationClass.STANDARD:
        f = -4 * u**3 * v**3 * (ga * u**2 + 3 * al * u * v + ep * v**2)
        g = 8 * u**5 * v**5 * (de * u**2 - 2 * be * u * v + ze * v**2)
        return zero, f, g
    if cls is FibrationClass.ALTERNATE:
        A = 4 * v * (4 * u**3 - 3 * al * u * v**2 - be * v**3)
        B = 4 * v**6 * (2 * ga * u - de * v) * (2 * ep * u - ze * v)
        return A, B, zero
    if cls is FibrationClass.BFD:
        F = -108 * u**2 * v**4 * (9 * al * u**2
                                  - 3 * (ga * ze + de * ep) * u * v
                                  + ga**2 * ep**2 * v**2)
        G = -216 * u**3 * v**5 * (
            27 * u**4 + 54 * be * u**3 * v
            + 27 * (al * ga * ep + de * ze) * u**2 * v**2
            - 9 * ga * ep * (ga * ze + de * ep) * u * v**3
            + 2 * ga**3 * ep**3 * v**4)
        return zero, F, G
    a = -2 * de * ze * v * (
        u**3 - 6 * be * ga * ep * u**2 * v
        + 3 * (4 * be**2 * ga**2 * ep**2 - al * de**2 * ze**2) * u * v**2
        - 2 * be * (4 * be**2 * ga**3 * ep**3
                    - 3 * al * ga * de**2 * ep * ze**2
                    - de**3 * ze**3) * v**3)
    b = -4 * de**6 * ze**6 * v**6 * (
        2 * ga * ep * u**2
        - (8 * be * ga**2 * ep**2 + ga * de * ze**2 + de**2 * ep * ze)
        * u * v
        + (8 * be**2 * ga**3 * ep**3 - 3 * al * ga * de**2 * ep * ze**2
           + 2 * be * ga**2 * de * ep * ze**2
           + 2 * be * ga * de**2 * ep**2 * ze - de**3 * ze**3) * v**2)
    c = -8 * ga * de**11 * ep * ze**11 * v**11 * (
        ga * ep * u
        - (2 * be * ga**2 * ep**2 + ga * de * ze**2 + de**2 * ep * ze) * v)
    return a, b, c


@cached(cache=LRUCache(maxsize=8))
def raw_model(cls: FibrationClass) -> WModel:
    """Affine chart v = 1, u = t of the homogeneous model."""
    t, = symbols("t")
    chart = {"u": t, "v": 1}
    a2, a4, a6 = (p.substitute(chart) for p in homogeneous_coefficients(cls))
    return WModel(a2, a4, a6, "t", f"{cls} (raw)")


@cached(cache=LRUCache(maxsize=8))
def modular_coefficients(cls: FibrationClass, branch: int = 1
                         ) -> tuple[MPoly, MPoly, MPoly]:
    """(a2, a4, a6) in t over J2..J6; the standard model also uses a."""
    J2, J3, J4, J5, J6 = symbols(*INVARIANT_NAMES)
    t, = symbols("t")
    zero = MPoly.const(0, ("t",))
    half = Fraction(1, 2)
    if cls is FibrationClass.STANDARD:
        a = _check_branch(branch) * MPoly.var("a")
        f = -t**3 * J6**3 * ((J5 - a) * half * t**2 + 3 * J2 * J6 * t
                             + (J5 + a) * J6 * half)
        g = J6**5 * t**5 * (t**2 - 2 * J3 * t + J6)
        return zero, f, g
    if cls is FibrationClass.ALTERNATE:
        return (t**3 - 3 * J2 * t - 2 * J3, J4 * t**2 - J5 * t + J6, zero)
    if cls is FibrationClass.BFD:
        F = t**2 * (-3 * J2 * t**2 - J5 * t - Fraction(1, 3) * J4**2)
        G = t**3 * (t**4 - 2 * J3 * t**3 + (J2 * J4 + J6) * t**2
                    + Fraction(1, 3) * J4 * J5 * t
                    + Fraction(2, 27) * J4**3)
        return zero, F, G
    a = J6 * (t**3 + 6 * J3 * J4 * t**2
              + 3 * (4 * J3**2 * J4**2 - J2 * J6**2) * t
              - 2 * J3 * (3 * J2 * J4 * J6**2 - 4 * J3**2 * J4**3
                          + J6**3))
    b = -J6**6 * (2 * J4 * t**2 + (8 * J3 * J4**2 + J5 * J6) * t
                  + (8 * J3**2 * J4**3 - 3 * J2 * J4 * J6**2
                     + 2 * J3 * J4 * J5 * J6 - J6**3))
    c = J4 * J6**11 * (J4 * t + 2 * J3 * J4**2 + J5 * J6)
    return a, b, c


@cached(cache=LRUCache(maxsize=8))
def modular_model(cls: FibrationClass, branch: int = 1) -> WModel:
    label = str(cls) if cls is not FibrationClass.STANDARD \
        else f"{cls} ({'+' if branch > 0 else '-'}a)"
    return WModel(*modular_coefficients(cls, branch), "t", label)


@cached(cache=LRUCache(maxsize=4))
def j6_zero_chart(branch: int = 1) -> WModel:
    """Standard fibration over J6 = 0; the branches are the two charts."""
    J2, J3, J4, J5 = symbols(*INVARIANT_NAMES[:4])
    t, = symbols("t")
    if _check_branch(branch) > 0:
        f = -t**3 * (t**2 + 3 * J2 * t + J4)
        g = t**5 * (J5 - 2 * J3 * t)
    else:
        f = -t**3 * (J4 * t**2 + 3 * J2 * t + 1)
        g = t**5 * (-2 * J3 * t + J5 * t**2)
    return WModel.short(f, g, "t", f"standard (J6=0, chart {branch:+d})")


def build(cls: Union[FibrationClass, str], point: Optional[Point] = None,
          branch: int = 1, raw: bool = False) -> WModel:
    """Weierstrass model of ``cls``.

    Without a point the model is symbolic: in alpha..zeta with ``raw``,
    otherwise in J2..J6 (and a for the standard class). A ParamPoint gives
    the raw model; an InvariantPoint the modular one. The standard model
    at J6 = 0 falls back to the chart selected by ``branch``.
    """
    cls = FibrationClass(cls)
    _check_branch(branch)
    if point is None:
        return raw_model(cls) if raw else modular_model(cls, branch)
    if isinstance(point, ParamPoint):
        point.check()
        return raw_model(cls).specialize(point.as_dict())
    if not isinstance(point, InvariantPoint):
        err_msg = f"Unsupported point type: {type(point).__name__}"
        raise TypeError(err_msg)
    if cls is FibrationClass.STANDARD:
        if point.J6 == 0:
            logger.info("J6 = 0: using standard chart %+d", branch)
            return j6_zero_chart(branch).specialize(point.as_dict())
        point = point.with_root()
    return modular_model(cls, branch).specialize(point.as_dict())


def rescale_model(m: WModel, kappa: Union[MPoly, Scalar],
                  mu2: Union[MPoly, Scalar]) -> WModel:
    """t -> kappa t, then a_k -> a_k / mu^k (mu^2 given)."""
    var = m.chart
    t = MPoly.var(var)
    mu2 = mu2 if isinstance(mu2, MPoly) else MPoly.const(mu2)
    if mu2.is_zero():
        err_msg = "mu^2 must be nonzero"
        raise ValueError(err_msg)
    out = []
    for k, p in ((1, m.a2), (2, m.a4), (3, m.a6)):
        p = p.substitute({var: kappa * t}) if var in p.variables else p
        out.append(p.divide_exact(mu2**k) if p else p)
    return WModel(*out, var, m.label)


# -- loci -----------------------------------------------------------------
_GENERIC_BASE = ParamPoint(Fraction(2, 7), Fraction(-1, 3), Fraction(2, 3),
                           Fraction(7, 5), Fraction(-4, 9), Fraction(5, 7))

# Points where two I1 fibers collide into II (III for the alternate class).
_RES_POINTS = {
    FibrationClass.STANDARD: invariants(ParamPoint(
        Fraction(7, 36), Fraction(13, 12), Fraction(2, 3), Fraction(3, 2),
        Fraction(-5, 4), Fraction(2, 3))),
    FibrationClass.ALTERNATE: InvariantPoint(
        Fraction(2, 7), Fraction(1, 14), Fraction(-3, 5), Fraction(2, 5), 1,
        a=Fraction(8, 5)),
    FibrationClass.BFD: InvariantPoint(
        Fraction(2, 7), Fraction(-1, 3), Fraction(5, 4),
        Fraction(-463, 336), Fraction(-2755, 1728)),
    FibrationClass.MAXIMAL: InvariantPoint(
        Fraction(2, 7), 0, Fraction(-7, 6), 0, 1),
}

# (t0, r, J2) seeds for double roots of D(t) at t = t0.
_J30_SEEDS = ((2, 3, Fraction(1, 5)), (3, 2, Fraction(1, 7)),
              (1, 5, Fraction(2, 3)))


def square_point(J2: Scalar, J3: Scalar, m: Scalar, n: Scalar
                 ) -> InvariantPoint:
    """J4 = m^2, J5 = 2mn, J6 = n^2, so a = 0 over Q."""
    m, n = Fraction(m), Fraction(n)
    return InvariantPoint(J2, J3, m**2, 2 * m * n, n**2, a=0)


def j30_point(t0: Scalar, r: Scalar, J2: Scalar) -> InvariantPoint:
    """A J6 = 1 point where D(t) has a double root at t0.

    X = (r + 1/r)/2 and Y = (1/r - r)/2 parametrize X^2 - Y^2 = 1; this makes
    both D(t0) = 0 and a^2 a rational square.
    """
    t0, r, J2 = Fraction(t0), Fraction(r), Fraction(J2)
    if not t0 or not r:
        err_msg = "t0 and r must be nonzero"
        raise ValueError(err_msg)
    X, Y = (r + 1 / r) / 2, (1 / r - r) / 2
    J3 = X - t0**3
    A0 = t0**3 - 3 * J2 * t0 - 2 * J3
    A1 = 3 * t0**2 - 3 * J2
    J4 = (1 - A0**2 / 4 + t0 * A0 * A1 / 2) / t0**2
    J5 = 2 * J4 * t0 - A0 * A1 / 2
    return InvariantPoint(J2, J3, J4, J5, 1, a=A0 * Y / t0)


def on_locus(J: InvariantPoint, locus: Locus) -> bool:
    if locus is Locus.A_ZERO:
        return J.a_squared == 0
    if locus is Locus.J30:
        return j30(J) == 0
    if locus is Locus.J4:
        return J.J4 == 0
    if locus is Locus.J4J5:
        return J.J4 == 0 and J.J5 == 0
    return True


def _candidates(cls: FibrationClass, locus: Locus) -> list:
    J2, J3 = _GENERIC_BASE.alpha, _GENERIC_BASE.beta
    if locus is Locus.GENERIC:
        return [lambda: invariants(_GENERIC_BASE)]
    if locus is Locus.RES:
        return [lambda: _RES_POINTS[cls]]
    if locus is Locus.A_ZERO:
        return [lambda m=m: square_point(J2, J3, m, 1)
                for m in (Fraction(3, 2), Fraction(5, 3), 2)]
    if locus is Locus.J30:
        return [lambda s=s: j30_point(*s) for s in _J30_SEEDS]
    if locus is Locus.J4:
        return [lambda j5=j5: InvariantPoint(J2, J3, 0, j5, 1, a=j5)
                for j5 in (Fraction(5, 3), Fraction(7, 2))]
    return [lambda: InvariantPoint(J2, J3, 0, 0, 1, a=0)]


def locus_point(cls: Union[FibrationClass, str],
                locus: Union[Locus, str]) -> InvariantPoint:
    """An exact rational point on ``locus`` for ``cls``."""
    cls, locus = FibrationClass(cls), Locus(locus)
    if cls is FibrationClass.STANDARD and locus is Locus.A_ZERO:
        err_msg = "The standard fibration has no a = 0 row"
        raise ValueError(err_msg)
    for attempt, make in enumerate(_candidates(cls, locus)):
        try:
            J = make()
        except ValueError as err:
            logger.warning("locus %s: base %d failed (%s)", locus,
                           attempt, err)
            continue
        if on_locus(J, locus):
            return J
        logger.warning("locus %s: base %d is off the locus, retrying",
                       locus, attempt)
    err_msg = f"No rational point found on {locus} for {cls}"
    raise ValueError(err_msg)


def specialize(cls: Union[FibrationClass, str], locus: Union[Locus, str],
               branch: int = 1) -> tuple[WModel, FiberConfig]:
    J = locus_point(cls, locus)
    m = build(cls, J, branch)
    return m, classify_fibration(m)


# -- polarization table ---------------------------------------------------
@dataclass(frozen=True)
class TableRow:
    locus: Locus
    fibers: str
    torsion: str
    picard: int
    lattice: tuple[str, ...]
    discriminant_group: str

    @property
    def config(self) -> FiberConfig:
        return FiberConfig.parse(self.fibers, self.torsion)


def _rows(*specs) -> tuple[TableRow, ...]:
    return tuple(TableRow(Locus(l), f, t, p, tuple(lat.split("+")), d)
                 for l, f, t, p, lat, d in specs)


_T, _Z2 = TORSION_TRIVIAL, TORSION_Z2

POLARIZATION_TABLES = {
    FibrationClass.STANDARD: _rows(
        ("generic", "2III* + 6I1", _T, 16, "E7+E7", "Z2^2"),
        ("Res", "2III* + II + 4I1", _T, 16, "E7+E7", "Z2^2"),
        ("J30", "2III* + I2 + 4I1", _T, 17, "E7+E7+A1", "Z2^3"),
        ("J4=0", "II* + III* + 5I1", _T, 17, "E8+E7", "Z2"),
        ("J4=J5=0", "2II* + 4I1", _T, 18, "E8+E8", "0")),
    FibrationClass.ALTERNATE: _rows(
        ("generic", "I8* + 2I2 + 6I1", _Z2, 16, "E7+E7", "Z2^2"),
        ("Res", "I8* + III + I2 + 5I1", _Z2, 16, "E7+E7", "Z2^2"),
        ("a=0", "I8* + I4 + 6I1", _Z2, 17, "E8+D7", "Z4"),
        ("J30", "I8* + 3I2 + 4I1", _Z2, 17, "E7+E7+A1", "Z2^3"),
        ("J4=0", "I10* + I2 + 6I1", _Z2, 17, "E8+E7", "Z2"),
        ("J4=J5=0", "I12* + 6I1", _Z2, 18, "E8+E8", "0")),
    FibrationClass.BFD: _rows(
        ("generic", "II* + I2* + 6I1", _T, 16, "E8+D6", "Z2^2"),
        ("Res", "II* + I2* + II + 4I1", _T, 16, "E8+D6", "Z2^2"),
        ("a=0", "II* + I3* + 5I1", _T, 17, "E8+D7", "Z4"),
        ("J30", "II* + I2* + I2 + 4I1", _T, 17, "E8+D6+A1", "Z2^3"),
        ("J4=0", "II* + III* + 5I1", _T, 17, "E8+E7", "Z2"),
        ("J4=J5=0", "2II* + 4I1", _T, 18, "E8+E8", "0")),
    FibrationClass.MAXIMAL: _rows(
        ("generic", "I10* + 8I1", _T, 16, "D14", "Z2^2"),
        ("Res", "I10* + II + 6I1", _T, 16, "D14", "Z2^2"),
        ("a=0", "I11* + 7I1", _T, 17, "D15", "Z4"),
        ("J30", "I10* + I2 + 6I1", _T, 17, "D14+A1", "Z2^3"),
        ("J4=0", "I10* + I2 + 6I1", _Z2, 17, "E8+E7", "Z2"),
        ("J4=J5=0", "I12* + 6I1", _Z2, 18, "E8+E8", "0")),
}


def expected_row(cls: Union[FibrationClass, str],
                 locus: Union[Locus, str]) -> TableRow:
    cls, locus = FibrationClass(cls), Locus(locus)
    for row in POLARIZATION_TABLES[cls]:
        if row.locus is locus:
            return row
    err_msg = f"No table row for ({cls}, {locus})"
    raise KeyError(err_msg)


@dataclass(frozen=True)
class RowCheck:
    cls: FibrationClass
    expected: TableRow
    point: Optional[InvariantPoint]
    computed: Optional[FiberConfig]
    error: Optional[str] = None

    @property
    def matches(self) -> bool:
        c, e = self.computed, self.expected
        return (c is not None and c == e.config and c.picard == e.picard
                and c.lattice_summands == e.lattice
                and c.discriminant_group == e.discriminant_group)

    def as_row(self) -> dict:
        row = {"class": str(self.cls), "locus": str(self.expected.locus),
               "expected": f"{self.expected.fibers}",
               "computed": str(self.computed) if self.computed else "-",
               "MW": self.computed.mw_torsion if self.computed else "-",
               "p_X": self.computed.picard if self.computed else "-",
               "lattice": self.computed.lattice if self.computed else "-",
               "D(L)": (self.computed.discriminant_group
                        if self.computed else "-"),
               "match": self.matches}
        if self.error:
            row["error"] = self.error
        return row


def check_row(cls: Union[FibrationClass, str], row: TableRow) -> RowCheck:
    cls = FibrationClass(cls)
    try:
        point = locus_point(cls, row.locus)
        cfg = classify_fibration(build(cls, point))
    except (ValueError, ClassificationError) as err:
        logger.warning("row (%s, %s) failed: %s", cls, row.locus, err)
        return RowCheck(cls, row, None, None, str(err))
    return RowCheck(cls, row, point, cfg)


def reproduce_table(classes: Optional[Sequence[FibrationClass]] = None
                    ) -> list[RowCheck]:
    checks = []
    for cls in classes or list(FibrationClass):
        cls = FibrationClass(cls)
        for row in POLARIZATION_TABLES[cls]:
            checks.append(check_row(cls, row))
            logger.info("table %s %s: %s", cls, row.locus,
                        "ok" if checks[-1].matches else "MISMATCH")
    return checks
