# -*- coding: utf-8 -*-
"""Weierstrass models over Q(t) and Kodaira fiber classification.

Functions:
    - depress: long form y^2 = x^3 + a2 x^2 + a4 x + a6 to short form.
    - local_data: minimal valuations of f, g, Delta at a place.
    - kodaira_classify: the characteristic-zero Kodaira table.
    - classify_fibration: fiber inventory, torsion and lattice bookkeeping.
    - two_torsion_sections: screening for x-roots of the cubic in Q[t].
    - shioda_tate_rank: 2 + total ADE rank.

Notes:
    - Delta = 4 f^3 + 27 g^2 throughout.
    - A fiber over an irreducible factor of degree d is counted d times.
"""
from __future__ import annotations
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional, Sequence, Union
from k3fibrations.algebra.exactalg import (MPoly, Scalar, as_poly,
                                           factor_rational,
                                           interpolate, rational_roots,
                                           udivmod)

logger = logging.getLogger(__name__)

TORSION_TRIVIAL = "trivial"
TORSION_Z2 = "Z/2Z"
TORSION_Z2Z2 = "Z/2Z x Z/2Z"
TORSION_UNDETERMINED = "undetermined"

# Sample values of t for the torsion screen.
_SCREEN_POINTS = tuple(Fraction(x) for x in (
    1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2), 5, -5,
    Fraction(1, 3), Fraction(-1, 3), 7, Fraction(3, 2), Fraction(-3, 2)))
_SCREEN_MIN = 6
_ROOT_DEGREE = 4


class DegenerateModelError(ValueError):
    """The discriminant vanishes identically."""


class ClassificationError(ArithmeticError):
    """Valuations outside the Kodaira table or a broken Euler sum."""


_NAMED_EULER = MappingProxyType({"II": 2, "III": 3, "IV": 4,
                                 "IV*": 8, "III*": 9, "II*": 10})
_NAMED_ADE = MappingProxyType({"II": None, "III": "A1", "IV": "A2",
                               "IV*": "E6", "III*": "E7", "II*": "E8"})
_TYPE_RE = re.compile(r"^I(\d+)(\*?)$")


@dataclass(frozen=True)
class KodairaType:
    """A Kodaira symbol; ``symbol`` is "I", "I*" or a named type."""
    symbol: str
    n: int = 0

    def __post_init__(self):
        if self.symbol not in ("I", "I*") and self.symbol not in _NAMED_EULER:
            err_msg = f"Unknown Kodaira symbol: {self.symbol!r}"
            raise ValueError(err_msg)
        if self.n < 0 or (self.n and self.symbol not in ("I", "I*")):
            err_msg = f"Invalid index {self.n} for {self.symbol}"
            raise ValueError(err_msg)

    @classmethod
    def parse(cls, text: str) -> KodairaType:
        """
        >>> str(KodairaType.parse("I8*"))
        'I8*'
        >>> KodairaType.parse("III*").euler_number
        9
        """
        text = text.strip()
        match = _TYPE_RE.match(text)
        if match:
            star = "*" if match.group(2) else ""
            return cls("I" + star, int(match.group(1)))
        return cls(text)

    @property
    def euler_number(self) -> int:
        if self.symbol == "I":
            return self.n
        if self.symbol == "I*":
            return self.n + 6
        return _NAMED_EULER[self.symbol]

    @property
    def ade_label(self) -> Optional[str]:
        if self.symbol == "I":
            return f"A{self.n - 1}" if self.n >= 2 else None
        if self.symbol == "I*":
            return f"D{self.n + 4}"
        return _NAMED_ADE[self.symbol]

    @property
    def ade_rank(self) -> int:
        label = self.ade_label
        return int(label[1:]) if label else 0

    def __str__(self) -> str:
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol


I0 = KodairaType("I", 0)


def kodaira_classify(ordf: Union[int, float], ordg: Union[int, float],
                     ord_delta: int) -> KodairaType:
    """Kodaira type of a minimal triple of vanishing orders.

    >>> str(kodaira_classify(3, 5, 9))
    'III*'
    >>> str(kodaira_classify(2, 3, 14))
    'I8*'
    """
    triple = (ordf, ordg, ord_delta)
    if ordf >= 4 and ordg >= 6:
        err_msg = f"Non-minimal valuations {triple}"
        raise ClassificationError(err_msg)
    if ord_delta == 0:
        return I0
    if ordf == 0 and ordg == 0:
        return KodairaType("I", ord_delta)
    if ordf >= 1 and ordg == 1 and ord_delta == 2:
        return KodairaType("II")
    if ordf == 1 and ordg >= 2 and ord_delta == 3:
        return KodairaType("III")
    if ordf >= 2 and ordg == 2 and ord_delta == 4:
        return KodairaType("IV")
    if ordf >= 2 and ordg >= 3 and ord_delta == 6:
        return KodairaType("I*", 0)
    if ordf == 2 and ordg == 3 and ord_delta > 6:
        return KodairaType("I*", ord_delta - 6)
    if ordf >= 3 and ordg == 4 and ord_delta == 8:
        return KodairaType("IV*")
    if ordf == 3 and ordg >= 5 and ord_delta == 9:
        return KodairaType("III*")
    if ordf >= 4 and ordg == 5 and ord_delta == 10:
        return KodairaType("II*")
    err_msg = f"Valuations {triple} are outside the Kodaira table"
    raise ClassificationError(err_msg)


@dataclass(frozen=True)
class Place:
    """A closed point of the base: an irreducible factor or infinity."""
    kind: str
    uniformizer: Optional[MPoly] = None
    degree: int = 1

    @classmethod
    def finite(cls, poly: MPoly, var: str = "t") -> Place:
        _, prim = poly.primitive()
        degree = prim.degree(var)
        if degree < 1:
            err_msg = f"A place needs a non-constant uniformizer, got {poly}"
            raise ValueError(err_msg)
        return cls("finite", prim, degree)

    @classmethod
    def infinity(cls) -> Place:
        return cls("infinity", None, 1)

    def __str__(self) -> str:
        return "t=oo" if self.kind == "infinity" else f"({self.uniformizer})"


class LocalData(NamedTuple):
    ordf: Union[int, float]
    ordg: Union[int, float]
    ord_delta: int


def valuation(p: MPoly, pi: MPoly, var: str) -> Union[int, float]:
    """Multiplicity of ``pi`` in ``p``; infinite for the zero polynomial."""
    if p.is_zero():
        return math.inf
    count = 0
    while True:
        quot, rem = udivmod(p, pi, var)
        if not rem.is_zero():
            return count
        p = quot
        count += 1


def _reductions(ordf: Union[int, float], ordg: Union[int, float]) -> int:
    if ordf == math.inf:
        return int(ordg // 6)
    if ordg == math.inf:
        return int(ordf // 4)
    return int(min(ordf // 4, ordg // 6))


def _order_at_infinity(p: MPoly, var: str, weight: int
                       ) -> Union[int, float]:
    """Order at v = 0 of p homogenized to ``weight`` in (var : v)."""
    if p.is_zero():
        return math.inf
    hom = p.homogenize(var, "v", weight)
    i = hom.variables.index("v")
    return min(exp[i] for exp in hom.terms)


def _weights(f: MPoly, g: MPoly, var: str) -> int:
    return max(2, math.ceil(f.degree(var) / 4), math.ceil(g.degree(var) / 6))


def _raw_local(f: MPoly, g: MPoly, place: Place, var: str) -> LocalData:
    delta = 4 * f**3 + 27 * g**2
    if delta.is_zero():
        err_msg = "The discriminant 4f^3 + 27g^2 vanishes identically"
        raise DegenerateModelError(err_msg)
    if place.kind == "infinity":
        n = _weights(f, g, var)
        return LocalData(_order_at_infinity(f, var, 4 * n),
                         _order_at_infinity(g, var, 6 * n),
                         _order_at_infinity(delta, var, 12 * n))
    pi = place.uniformizer
    return LocalData(valuation(f, pi, var), valuation(g, pi, var),
                     valuation(delta, pi, var))


def _check_univariate(f: MPoly, g: MPoly, var: str) -> None:
    for p in (f, g):
        if not p.is_univariate(var):
            err_msg = (f"Parameters must be bound before classification; "
                       f"free variables {p.free_vars}")
            raise ValueError(err_msg)


def local_data(f: MPoly, g: MPoly, place: Place,
               var: str = "t") -> LocalData:
    """Minimal (ordf, ordg, ord Delta) of y^2 = x^3 + f x + g at ``place``.

    At infinity the orders are read on the forms homogenized to weights
    (4N, 6N, 12N) with N = max(2, ceil(deg f / 4), ceil(deg g / 6)).
    """
    f, g = as_poly(f), as_poly(g)
    _check_univariate(f, g, var)
    raw = _raw_local(f, g, place, var)
    k = _reductions(raw.ordf, raw.ordg)
    return LocalData(raw.ordf - 4 * k, raw.ordg - 6 * k,
                     raw.ord_delta - 12 * k)


@dataclass(frozen=True)
class WModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 over the affine base chart ``chart``.

    The short form y^2 = x^3 + f x + g is the case a2 = 0.
    """
    a2: MPoly
    a4: MPoly
    a6: MPoly
    chart: str = "t"
    label: str = ""

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name,
                               as_poly(getattr(self, name), (self.chart,)))
        if self.a2.is_zero() and self.a4.is_zero() and self.a6.is_zero():
            err_msg = "y^2 = x^3 is not an elliptic fibration"
            raise DegenerateModelError(err_msg)

    @classmethod
    def short(cls, f: MPoly, g: MPoly, chart: str = "t",
              label: str = "") -> WModel:
        return cls(MPoly.const(0, (chart,)), f, g, chart, label)

    def depress(self) -> tuple[MPoly, MPoly]:
        """(f, g) after the shift x -> x - a2/3."""
        return depress(self)

    def discriminant(self) -> MPoly:
        f, g = self.depress()
        return 4 * f**3 + 27 * g**2

    def cubic(self, x: Union[MPoly, Scalar]) -> MPoly:
        x = as_poly(x, (self.chart,))
        return x**3 + self.a2 * x**2 + self.a4 * x + self.a6

    def specialize(self, values: Mapping[str, Scalar]) -> WModel:
        """Bind parameters present in the coefficients."""
        def bind(p: MPoly) -> MPoly:
            bound = {k: v for k, v in values.items() if k in p.variables}
            return p.evaluate(bound) if bound else p
        return WModel(bind(self.a2), bind(self.a4), bind(self.a6),
                      self.chart, self.label)

    @property
    def parameters(self) -> tuple[str, ...]:
        names = []
        for p in (self.a2, self.a4, self.a6):
            names.extend(v for v in p.free_vars
                         if v != self.chart and v not in names)
        return tuple(names)

    def coefficient_map(self) -> dict[str, MPoly]:
        if self.a2.is_zero():
            return {"f": self.a4, "g": self.a6}
        return {"a2": self.a2, "a4": self.a4, "a6": self.a6}

    def to_json(self) -> dict:
        return {"label": self.label, "chart": self.chart,
                "a2": str(self.a2), "a4": str(self.a4), "a6": str(self.a6)}

    def __str__(self) -> str:
        return "y^2 = x^3 + ({}) x^2 + ({}) x + ({})".format(
            self.a2, self.a4, self.a6)


def depress(m: WModel) -> tuple[MPoly, MPoly]:
    """f = a4 - a2^2/3, g = a6 - a2 a4/3 + 2 a2^3/27."""
    a2, a4, a6 = m.a2, m.a4, m.a6
    if a2.is_zero():
        return a4, a6
    f = a4 - a2**2 * Fraction(1, 3)
    g = a6 - a2 * a4 * Fraction(1, 3) + a2**3 * Fraction(2, 27)
    return f, g


# -- lattice bookkeeping ------------------------------------------------------
# Index-2 overlattices forced by a two-torsion section.
_OVERLATTICES = MappingProxyType({
    ("D12", "A1", "A1"): ("E7", "E7"),
    ("D12", "A3"): ("E8", "D7"),
    ("D12", "A1", "A1", "A1"): ("E7", "E7", "A1"),
    ("D14", "A1"): ("E8", "E7"),
    ("D16",): ("E8", "E8"),
})


def _lattice_key(label: str) -> tuple:
    return ("EDA".index(label[0]), -int(label[1:]))


def _discriminant_orders(label: str) -> list[int]:
    kind, rank = label[0], int(label[1:])
    if kind == "A":
        return [rank + 1]
    if kind == "D":
        return [2, 2] if rank % 2 == 0 else [4]
    return {6: [3], 7: [2], 8: []}[rank]


def _render_group(orders: Sequence[int]) -> str:
    if not orders:
        return "0"
    counts = Counter(orders)
    parts = [f"Z{o}" if c == 1 else f"Z{o}^{c}"
             for o, c in sorted(counts.items())]
    return " x ".join(parts)


@dataclass(frozen=True)
class FiberConfig:
    """Singular fibers with multiplicities plus Mordell-Weil torsion."""
    fibers: tuple[tuple[KodairaType, int], ...]
    mw_torsion: str = TORSION_TRIVIAL
    places: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    @classmethod
    def from_counts(cls, counts: Mapping[KodairaType, int],
                    mw_torsion: str = TORSION_TRIVIAL,
                    places: Sequence[tuple[str, str]] = ()) -> FiberConfig:
        items = [(k, c) for k, c in counts.items() if c and k != I0]
        items.sort(key=lambda kc: (-kc[0].euler_number, str(kc[0])))
        return cls(tuple(items), mw_torsion, tuple(places))

    @classmethod
    def parse(cls, text: str,
              mw_torsion: str = TORSION_TRIVIAL) -> FiberConfig:
        """Read a fiber string such as "2III* + 6I1"."""
        counts: Counter = Counter()
        for chunk in text.split("+"):
            match = re.match(r"^\s*(\d*)\s*([IV]+\d*\*?)\s*$", chunk)
            if not match:
                err_msg = f"Cannot parse fiber term {chunk!r}"
                raise ValueError(err_msg)
            counts[KodairaType.parse(match.group(2))] += \
                int(match.group(1) or 1)
        return cls.from_counts(counts, mw_torsion)

    @property
    def euler_total(self) -> int:
        return sum(k.euler_number * c for k, c in self.fibers)

    @property
    def ade_total(self) -> int:
        return sum(k.ade_rank * c for k, c in self.fibers)

    @property
    def picard(self) -> int:
        return shioda_tate_rank(self)

    @property
    def singular_count(self) -> int:
        return sum(c for _, c in self.fibers)

    @property
    def root_lattice(self) -> tuple[str, ...]:
        labels = [k.ade_label for k, c in self.fibers
                  for _ in range(c) if k.ade_label]
        return tuple(sorted(labels, key=_lattice_key))

    @property
    def lattice_summands(self) -> tuple[str, ...]:
        root = self.root_lattice
        if self.mw_torsion == TORSION_Z2:
            over = _OVERLATTICES.get(root)
            if over is None:
                logger.warning("No overlattice recorded for %s", root)
                return root
            return tuple(sorted(over, key=_lattice_key))
        return root

    @property
    def lattice(self) -> str:
        return " + ".join(["H"] + [f"{s}(-1)" for s in self.lattice_summands])

    @property
    def discriminant_group(self) -> str:
        orders = []
        for summand in self.lattice_summands:
            orders.extend(_discriminant_orders(summand))
        return _render_group(orders)

    def refines(self, other: FiberConfig) -> bool:
        """True if this inventory arises from ``other`` by collisions."""
        return (self.euler_total == other.euler_total
                and self.singular_count < other.singular_count
                and self.ade_total >= other.ade_total)

    def __str__(self) -> str:
        return " + ".join(str(k) if c == 1 else f"{c}{k}"
                          for k, c in self.fibers)

    def to_json(self) -> dict:
        return {"fibers": [{"type": str(k), "count": c}
                           for k, c in self.fibers],
                "mw_torsion": self.mw_torsion,
                "picard": self.picard,
                "lattice": self.lattice,
                "discriminant_group": self.discriminant_group,
                "euler": self.euler_total}

    def as_row(self) -> dict:
        return {"fibers": str(self), "MW": self.mw_torsion,
                "p_X": self.picard, "lattice": self.lattice,
                "D(L)": self.discriminant_group}


def shioda_tate_rank(cfg: FiberConfig) -> int:
    """2 + total ADE rank (the Mordell-Weil rank is zero in this family)."""
    return 2 + cfg.ade_total


def classify_fibration(m: WModel) -> FiberConfig:
    """Classify every singular fiber of a specialized model.

    Finite places come from the factorization of Delta over Q. After global
    minimalization the remaining data is read at t = oo.
    """
    var = m.chart
    f, g = m.depress()
    _check_univariate(f, g, var)
    delta = 4 * f**3 + 27 * g**2
    if delta.is_zero():
        err_msg = f"Delta vanishes identically for {m.label or m}"
        raise DegenerateModelError(err_msg)

    counts: Counter = Counter()
    places = []
    f_min, g_min = f, g
    for pi, _ in factor_rational(delta, var).factors:
        place = Place.finite(pi, var)
        raw = _raw_local(f, g, place, var)
        k = _reductions(raw.ordf, raw.ordg)
        if k:
            logger.debug("minimalizing %d times at %s", k, place)
            f_min = f_min.divide_exact(pi ** (4 * k)) if f_min else f_min
            g_min = g_min.divide_exact(pi ** (6 * k)) if g_min else g_min
        data = LocalData(raw.ordf - 4 * k, raw.ordg - 6 * k,
                         raw.ord_delta - 12 * k)
        kind = kodaira_classify(*data)
        logger.debug("place %s: %s -> %s", place, tuple(data), kind)
        if kind != I0:
            counts[kind] += place.degree
            places.append((str(place), str(kind)))

    data = local_data(f_min, g_min, Place.infinity(), var)
    kind = kodaira_classify(*data)
    logger.debug("place t=oo: %s -> %s", tuple(data), kind)
    if kind != I0:
        counts[kind] += 1
        places.append(("t=oo", str(kind)))

    cfg = FiberConfig.from_counts(counts, two_torsion_sections(m), places)
    if cfg.euler_total != 24:
        err_msg = (f"Euler numbers sum to {cfg.euler_total}, not 24, for "
                   f"{cfg} ({m.label or m})")
        raise ClassificationError(err_msg)
    return cfg


def _values(m: WModel, t0: Fraction) -> list[Fraction]:
    var = m.chart
    return [p.evaluate({var: t0}).constant_value() if var in p.variables
            else p.constant_value() for p in (m.a2, m.a4, m.a6)]


def two_torsion_sections(m: WModel) -> str:
    """Two-torsion of the Mordell-Weil group by screening and interpolation.

    A sample t0 whose cubic has no rational root proves the torsion is
    trivial. Otherwise candidate roots x(t) of degree <= 4 are interpolated
    and confirmed by exact substitution into the cubic.
    """
    var = m.chart
    for p in (m.a2, m.a4, m.a6):
        if not p.is_univariate(var):
            err_msg = "Torsion screening needs a specialized model"
            raise ValueError(err_msg)
    delta = m.discriminant()
    x = MPoly.var("x")
    samples: list[tuple[Fraction, list[Fraction]]] = []
    for t0 in _SCREEN_POINTS:
        if delta.evaluate({var: t0}).constant_value() == 0:
            continue
        a2, a4, a6 = _values(m, t0)
        cubic = x**3 + a2 * x**2 + a4 * x + a6
        roots = rational_roots(cubic, "x")
        if not roots:
            logger.debug("no rational 2-torsion at %s=%s: trivial",
                         var, t0)
            return TORSION_TRIVIAL
        samples.append((t0, roots))

    if len(samples) < _SCREEN_MIN:
        return TORSION_UNDETERMINED

    nodes = samples[:_ROOT_DEGREE + 1]
    checks = samples[_ROOT_DEGREE + 1:]
    found: list[MPoly] = []
    for choice in product(*(roots for _, roots in nodes)):
        cand = interpolate([t0 for t0, _ in nodes], choice, var)
        if any(cand.evaluate({var: t0}).constant_value() not in roots
               for t0, roots in checks):
            continue
        if cand in found:
            continue
        if m.cubic(cand).is_zero():
            found.append(cand)
    logger.debug("two-torsion x-coordinates: %s", [str(c) for c in found])
    if not found:
        return TORSION_UNDETERMINED
    return TORSION_Z2 if len(found) == 1 else TORSION_Z2Z2

