# -*- coding: utf-8 -*-
"""Dual heterotic gauge algebras of the four fibration branches.

Gauge algebras and their enhancements are looked up by (class, locus) and
checked against the algebra read off the classified fiber configuration
through the ADE dictionary E8 -> e8, E7 -> e7, D_n -> so(2n), A_n -> su(n+1).
"""
from __future__ import annotations
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Optional, Union
import sympy
from k3fibrations.algebra.exactalg import Scalar, symbols
from k3fibrations.models.fibrations import (FibrationClass, Locus, build,
                                            on_locus)
from k3fibrations.models.moduli import (MODULAR_WEIGHTS, InvariantPoint,
                                        ParamPoint, invariants)
from k3fibrations.models.weierstrass import (TORSION_TRIVIAL,
                                             TORSION_UNDETERMINED,
                                             ClassificationError,
                                             FiberConfig, WModel,
                                             classify_fibration)

logger = logging.getLogger(__name__)

_SUMMAND_RE = re.compile(r"^(e[678]|so\((\d+)\)|su\((\d+)\))$")


def _summand_rank(label: str) -> int:
    match = _SUMMAND_RE.match(label)
    if not match:
        err_msg = f"Unknown simple algebra {label!r}"
        raise ValueError(err_msg)
    if label.startswith("e"):
        return int(label[1])
    if match.group(2):
        return int(match.group(2)) // 2
    return int(match.group(3)) - 1


def _summand_key(label: str) -> tuple:
    family = ("e", "so", "su").index(label[:2] if label[0] == "s" else "e")
    return family, -_summand_rank(label)


def ade_to_algebra(label: str) -> str:
    kind, n = label[0], int(label[1:])
    if kind == "E":
        return f"e{n}"
    if kind == "D":
        return f"so({2 * n})"
    return f"su({n + 1})"


@dataclass(frozen=True)
class GaugeAlgebra:
    """A sum of simple algebras, kept sorted."""
    summands: tuple[str, ...]

    def __post_init__(self):
        for s in self.summands:
            _summand_rank(s)
        object.__setattr__(self, "summands",
                           tuple(sorted(self.summands, key=_summand_key)))

    @classmethod
    def parse(cls, text: str) -> GaugeAlgebra:
        """
        >>> str(GaugeAlgebra.parse("su(2) + so(24) + su(2)"))
        'so(24) + su(2) + su(2)'
        """
        return cls(tuple(s.strip() for s in text.split("+") if s.strip()))

    @classmethod
    def from_fibers(cls, cfg: FiberConfig) -> GaugeAlgebra:
        return cls(tuple(ade_to_algebra(s) for s in cfg.root_lattice))

    @property
    def rank(self) -> int:
        return sum(_summand_rank(s) for s in self.summands)

    def plus(self, *labels: str) -> GaugeAlgebra:
        return GaugeAlgebra(self.summands + labels)

    def to_json(self) -> list[str]:
        return list(self.summands)

    def __str__(self) -> str:
        return " + ".join(self.summands) if self.summands else "0"


def _g(text: str) -> GaugeAlgebra:
    return GaugeAlgebra.parse(text)


BRANCH_NAMES = MappingProxyType({
    FibrationClass.BFD: "e8-so12",
    FibrationClass.STANDARD: "e7-e7",
    FibrationClass.ALTERNATE: "so24-su2su2",
    FibrationClass.MAXIMAL: "so28",
})

GENERIC_GAUGE = MappingProxyType({
    FibrationClass.BFD: _g("e8 + so(12)"),
    FibrationClass.STANDARD: _g("e7 + e7"),
    FibrationClass.ALTERNATE: _g("so(24) + su(2) + su(2)"),
    FibrationClass.MAXIMAL: _g("so(28)"),
})

# J30 = 0 adds su(2) on top of whichever algebra the point carries.
ENHANCEMENTS = MappingProxyType({
    (FibrationClass.BFD, Locus.A_ZERO): _g("e8 + so(14)"),
    (FibrationClass.BFD, Locus.J4): _g("e8 + e7"),
    (FibrationClass.BFD, Locus.J4J5): _g("e8 + e8"),
    (FibrationClass.STANDARD, Locus.J4): _g("e8 + e7"),
    (FibrationClass.STANDARD, Locus.J4J5): _g("e8 + e8"),
    (FibrationClass.ALTERNATE, Locus.A_ZERO): _g("so(24) + su(4)"),
    (FibrationClass.ALTERNATE, Locus.J4): _g("so(28) + su(2)"),
    (FibrationClass.ALTERNATE, Locus.J4J5): _g("so(32)"),
    (FibrationClass.MAXIMAL, Locus.A_ZERO): _g("so(30)"),
    (FibrationClass.MAXIMAL, Locus.J4): _g("so(28) + su(2)"),
    (FibrationClass.MAXIMAL, Locus.J4J5): _g("so(32)"),
})

DOUBLE_COVER = ("parameter space is a double cover branched along "
                "a^2 = J5^2 - 4 J4 J6")
POINTLIKE_INSTANTON = "pointlike instanton locus (J6 = 0)"

ANNOTATIONS = MappingProxyType({
    (FibrationClass.ALTERNATE, None): "(Spin(24) x SU(2) x SU(2))/Z2",
    (FibrationClass.ALTERNATE, Locus.J4J5): "Spin(32)/Z2",
    (FibrationClass.MAXIMAL, Locus.J4J5): "Spin(32)/Z2",
    (FibrationClass.STANDARD, None): DOUBLE_COVER,
})

# Most special first; the first detected locus with an entry wins.
_PRECEDENCE = (Locus.J4J5, Locus.J4, Locus.A_ZERO)


def detect_loci(J: InvariantPoint) -> frozenset[Locus]:
    """Exact membership in the loci a = 0, J30 = 0, J4 = 0, J4 = J5 = 0."""
    return frozenset(locus for locus in (Locus.A_ZERO, Locus.J30, Locus.J4,
                                         Locus.J4J5)
                     if on_locus(J, locus))


def expected_gauge(cls: FibrationClass, loci: frozenset[Locus]
                   ) -> GaugeAlgebra:
    gauge = GENERIC_GAUGE[cls]
    for locus in _PRECEDENCE:
        if locus in loci and (cls, locus) in ENHANCEMENTS:
            gauge = ENHANCEMENTS[cls, locus]
            break
    if Locus.J30 in loci:
        gauge = gauge.plus("su(2)")
    return gauge


# -- general forms ---------------------------------------------------------
GENERAL_SECTIONS = MappingProxyType(
    {"c": "J5", "d": "J4", "e": "J2", "f": "J6", "g": "J3"})


def sections(J: InvariantPoint, lam: Scalar = 1) -> dict[str, Fraction]:
    """c, d, e, f, g and a = -3 d^2, b = -2 d^3 of the general form."""
    J = J.scaled(Fraction(lam)**2)
    d = -J.J4 / 3
    return {"c": -J.J5, "d": d, "e": -3 * J.J2, "f": J.J6, "g": -2 * J.J3,
            "a": -3 * d**2, "b": -2 * d**3}


def general_form(cls: Union[FibrationClass, str], J: InvariantPoint,
                 lam: Scalar = 1, sign: int = 1) -> WModel:
    """Covariant Weierstrass form of a branch at J, rescaled by lam.

    The bfd and alternate forms reduce to the J-models at lam = 1. The
    standard form needs J6 != 0 and a rational a; on J6 = 1 it agrees with
    the standard J-model of the opposite sign.
    """
    cls = FibrationClass(cls)
    t, = symbols("t")
    s = sections(J, lam)
    if cls is FibrationClass.BFD:
        F = s["a"] * t**2 + s["c"] * t**3 + s["e"] * t**4
        G = (s["b"] * t**3 + s["c"] * s["d"] * t**4
             + (s["d"] * s["e"] + s["f"]) * t**5 + s["g"] * t**6 + t**7)
        return WModel.short(F, G, "t", "bfd (general form)")
    if cls is FibrationClass.ALTERNATE:
        return WModel(t**3 + s["e"] * t + s["g"],
                      -3 * s["d"] * t**2 + s["c"] * t + s["f"], 0, "t",
                      "alternate (general form)")
    if cls is FibrationClass.STANDARD:
        if sign not in (1, -1):
            err_msg = f"sign must be +1 or -1, got {sign!r}"
            raise ValueError(err_msg)
        J = J.with_root().scaled(Fraction(lam)**2)
        if not J.J6:
            err_msg = "The e7+e7 general form needs J6 != 0"
            raise ValueError(err_msg)
        eps = (J.J5 - sign * J.a) / 2
        gamma = (J.J5 + sign * J.a) / (2 * J.J6)
        f = -t**3 * (eps + 3 * J.J2 * t + gamma * t**2)
        g = t**5 * (J.J6 - 2 * J.J3 * t + t**2)
        return WModel.short(f, g, "t", "standard (general form)")
    err_msg = f"No general form is recorded for the {cls} branch"
    raise ValueError(err_msg)


# -- branch classification -------------------------------------------------
@dataclass(frozen=True)
class BranchReport:
    cls: FibrationClass
    point: InvariantPoint
    gauge: GaugeAlgebra
    loci: frozenset = frozenset()
    enhancements: tuple = ()
    flux: bool = False
    annotations: tuple[str, ...] = ()
    fibers: Optional[FiberConfig] = None
    computed: Optional[GaugeAlgebra] = None
    note: str = ""

    @property
    def branch(self) -> str:
        return BRANCH_NAMES[self.cls]

    @property
    def validated(self) -> bool:
        """The lookup agrees with the classified fibers, rank included."""
        return (self.computed is not None and self.computed == self.gauge
                and self.computed.rank == self.fibers.ade_total)

    def to_json(self) -> dict:
        return {"branch": self.branch, "class": str(self.cls),
                "point": self.point.to_json(),
                "gauge": self.gauge.to_json(),
                "loci": sorted(str(l) for l in self.loci),
                "enhancements": [{"locus": str(l), "gauge": g.to_json()}
                                 for l, g in self.enhancements],
                "flux": self.flux,
                "annotations": list(self.annotations),
                "fibers": str(self.fibers) if self.fibers else None,
                "computed": (self.computed.to_json()
                             if self.computed else None),
                "validated": self.validated,
                "note": self.note}

    def as_row(self) -> dict:
        return {"branch": self.branch, "gauge": str(self.gauge),
                "fibers": str(self.fibers) if self.fibers else "-",
                "flux": self.flux,
                "loci": ", ".join(sorted(str(l) for l in self.loci)),
                "validated": self.validated}


def _branch_model(cls: FibrationClass, J: InvariantPoint,
                  sign: int) -> WModel:
    if cls is FibrationClass.STANDARD:
        if J.J6 == 0:
            return build(cls, J, sign)
        return general_form(cls, J, sign=sign)
    return build(cls, J)


def classify_branch(cls: Union[FibrationClass, str],
                    point: Union[InvariantPoint, ParamPoint],
                    sign: int = 1) -> BranchReport:
    """Gauge algebra, enhancements and flux of one branch at a point."""
    cls = FibrationClass(cls)
    J = invariants(point) if isinstance(point, ParamPoint) else point
    loci = detect_loci(J)
    gauge = expected_gauge(cls, loci)
    enhancements = tuple(
        (locus, ENHANCEMENTS[cls, locus]) for locus in sorted(loci)
        if (cls, locus) in ENHANCEMENTS)
    if Locus.J30 in loci:
        enhancements += ((Locus.J30, GENERIC_GAUGE[cls].plus("su(2)")),)

    notes = [ANNOTATIONS[cls, None]] if (cls, None) in ANNOTATIONS else []
    for locus in sorted(loci):
        if (cls, locus) in ANNOTATIONS:
            notes.append(ANNOTATIONS[cls, locus])
    if cls is FibrationClass.STANDARD and J.J6 == 0:
        notes.append(POINTLIKE_INSTANTON)

    try:
        cfg = classify_fibration(_branch_model(cls, J, sign))
    except (ValueError, ClassificationError) as err:
        flux = cls is FibrationClass.ALTERNATE
        logger.warning("%s branch at %s not classified: %s",
                       BRANCH_NAMES[cls], J, err)
        logger.warning("%s branch at %s: flux=%s taken from the lookup, "
                       "not computed", BRANCH_NAMES[cls], J, flux)
        return BranchReport(cls, J, gauge, loci, enhancements, flux=flux,
                            annotations=tuple(notes),
                            note=f"{err}; flux not computed")
    computed = GaugeAlgebra.from_fibers(cfg)
    if computed != gauge:
        logger.warning("%s branch at %s: fibers give %s, expected %s",
                       BRANCH_NAMES[cls], J, computed, gauge)
    flux = cfg.mw_torsion not in (TORSION_TRIVIAL, TORSION_UNDETERMINED)
    return BranchReport(cls, J, gauge, loci, enhancements, flux,
                        tuple(notes), cfg, computed)


# -- bundle weights --------------------------------------------------------
@dataclass(frozen=True)
class BundleWeights:
    section_weights: dict = field(default_factory=dict)
    equations: tuple[str, ...] = ()
    m: Optional[int] = None
    ell: Optional[int] = None

    @property
    def consistent(self) -> bool:
        return self.m is not None

    def to_json(self) -> dict:
        return {"section_weights": dict(self.section_weights),
                "equations": list(self.equations),
                "M": self.m, "L": self.ell, "consistent": self.consistent}


def _term_table(weights: dict[str, int]) -> tuple[list, list]:
    """(weight, power of t) of the X-terms and of the constant terms."""
    w = dict(weights)
    w["a"], w["b"] = 2 * w["d"], 3 * w["d"]
    x_terms = [(w["a"], 2), (w["c"], 3), (w["e"], 4)]
    const_terms = [(w["b"], 3), (w["c"] + w["d"], 4),
                   (w["d"] + w["e"], 5), (w["f"], 5), (w["g"], 6), (0, 7)]
    return x_terms, const_terms


def check_bundle_weights() -> BundleWeights:
    """Solve for M = Lambda^m and L = Lambda^l from the general form.

    With t a section of M, the X-terms of the bfd general form are
    sections of L^4 and the constant terms of L^6.
    """
    weights = {s: MODULAR_WEIGHTS[j] for s, j in GENERAL_SECTIONS.items()}
    m, ell = sympy.symbols("m ell", integer=True)
    x_terms, const_terms = _term_table(weights)
    eqs = [sympy.Eq(w + k * m, 4 * ell) for w, k in x_terms]
    eqs += [sympy.Eq(w + k * m, 6 * ell) for w, k in const_terms]
    solution = sympy.solve(eqs, [m, ell], dict=True)
    rendered = tuple(f"{e.lhs} = {e.rhs}" for e in eqs)
    if len(solution) != 1 or set(solution[0]) != {m, ell}:
        logger.warning("bundle weights: no unique solution (%s)", solution)
        return BundleWeights(weights, rendered)
    sol = solution[0]
    if not all(v.is_integer for v in sol.values()):
        return BundleWeights(weights, rendered)
    return BundleWeights(weights, rendered, int(sol[m]), int(sol[ell]))
