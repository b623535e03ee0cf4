# -*- coding: utf-8 -*-
"""Parameter points of the quartic family and their modular invariants.

Functions:
    - invariants: (alpha, ..., zeta) -> (J2 : J3 : J4 : J5 : J6) and a.
    - act: the scaling and swap generators acting on sextuples.
    - isomorphic: orbit comparison with a rational witness search.
    - wp_normalize: weighted cross-ratio label of a weighted projective
      point.
    - j30: the discriminant of the sextic D(t) of the alternate model.
    - sample_params, sample_invariants: seeded random admissible points.

Notes:
    - J_k carries modular weight 2k. Scaling a sextuple by t multiplies J_k
      by t^k and a by t^5.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union
import numpy as np
from cachetools import LRUCache, cached
from k3fibrations.algebra.exactalg import (MPoly, Scalar, discriminant,
                                           format_rat, parse_rat,
                                           rational_root, symbols)

logger = logging.getLogger(__name__)

PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta")
INVARIANT_NAMES = ("J2", "J3", "J4", "J5", "J6")

# Modular weights of J2..J6; the projective labels (2, 3, 4, 5, 6) halve them.
MODULAR_WEIGHTS = MappingProxyType(
    {"J2": 4, "J3": 6, "J4": 8, "J5": 10, "J6": 12})
_INDEX = MappingProxyType({name: k for k, name in
                           enumerate(INVARIANT_NAMES, start=2)})

SWAP = "swap"

_NONZERO = np.array([k for k in range(-50, 51) if k], dtype=np.int64)


class InadmissiblePointError(ValueError):
    """A point outside the admissible parameter set."""


@dataclass(frozen=True)
class ParamPoint:
    """Coefficients (alpha, beta, gamma, delta, epsilon, zeta) of the quartic.
    """
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    epsilon: Fraction
    zeta: Fraction

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, parse_rat(getattr(self, f.name)))

    @classmethod
    def from_sequence(cls, values: Sequence[Union[str, Scalar]]
                      ) -> ParamPoint:
        if len(values) != len(PARAM_NAMES):
            err_msg = (f"Expected {len(PARAM_NAMES)} parameters "
                       f"(alpha..zeta), got {len(values)}")
            raise ValueError(err_msg)
        return cls(*values)

    @property
    def admissible(self) -> bool:
        return bool(self.gamma or self.delta) and \
            bool(self.epsilon or self.zeta)

    def check(self) -> ParamPoint:
        if not self.admissible:
            err_msg = ("Inadmissible parameters: need (gamma, delta) != 0 "
                       f"and (epsilon, zeta) != 0, got {self}")
            raise InadmissiblePointError(err_msg)
        return self

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, n) for n in PARAM_NAMES)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(PARAM_NAMES, self.as_tuple()))

    def to_json(self) -> dict[str, str]:
        return {k: format_rat(v) for k, v in self.as_dict().items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> ParamPoint:
        missing = [n for n in PARAM_NAMES if n not in obj]
        if missing:
            err_msg = f"Missing parameters: {missing}"
            raise ValueError(err_msg)
        return cls(*(obj[n] for n in PARAM_NAMES))

    def __str__(self) -> str:
        return "(" + ", ".join(format_rat(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class InvariantPoint:
    """(J2 : J3 : J4 : J5 : J6) with an optional root a of J5^2 - 4 J4 J6."""
    J2: Fraction
    J3: Fraction
    J4: Fraction
    J5: Fraction
    J6: Fraction
    a: Optional[Fraction] = None

    def __post_init__(self):
        for name in INVARIANT_NAMES:
            object.__setattr__(self, name, parse_rat(getattr(self, name)))
        if not (self.J4 or self.J5 or self.J6):
            err_msg = "Inadmissible invariants: (J4, J5, J6) = (0, 0, 0)"
            raise InadmissiblePointError(err_msg)
        if self.a is not None:
            object.__setattr__(self, "a", parse_rat(self.a))
            if self.a**2 != self.a_squared:
                err_msg = (f"a = {format_rat(self.a)} does not satisfy "
                           f"a^2 = J5^2 - 4 J4 J6 = "
                           f"{format_rat(self.a_squared)}")
                raise ValueError(err_msg)

    @classmethod
    def from_sequence(cls, values: Sequence[Union[str, Scalar]],
                      a: Optional[Union[str, Scalar]] = None
                      ) -> InvariantPoint:
        if len(values) != len(INVARIANT_NAMES):
            err_msg = f"Expected 5 invariants (J2..J6), got {len(values)}"
            raise ValueError(err_msg)
        return cls(*values, a=a)

    @property
    def a_squared(self) -> Fraction:
        return self.J5**2 - 4 * self.J4 * self.J6

    def with_root(self) -> InvariantPoint:
        """Attach the non-negative rational a, if a^2 is a rational square."""
        if self.a is not None:
            return self
        root = rational_root(self.a_squared, 2)
        if root is None:
            err_msg = (f"J5^2 - 4 J4 J6 = {format_rat(self.a_squared)} is "
                       "not a rational square; supply a")
            raise ValueError(err_msg)
        return InvariantPoint(*self.values, a=root)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, n) for n in INVARIANT_NAMES)

    def as_dict(self) -> dict[str, Fraction]:
        out = dict(zip(INVARIANT_NAMES, self.values))
        if self.a is not None:
            out["a"] = self.a
        return out

    def scaled(self, r: Scalar) -> InvariantPoint:
        """J_k -> r^k J_k and a -> r^5 a."""
        r = Fraction(r)
        vals = [v * r**k for k, v in enumerate(self.values, start=2)]
        return InvariantPoint(*vals,
                              a=None if self.a is None else self.a * r**5)

    def to_json(self) -> dict[str, str]:
        return {k: format_rat(v) for k, v in self.as_dict().items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> InvariantPoint:
        missing = [n for n in INVARIANT_NAMES if n not in obj]
        if missing:
            err_msg = f"Missing invariants: {missing}"
            raise ValueError(err_msg)
        return cls(*(obj[n] for n in INVARIANT_NAMES), a=obj.get("a"))

    def __str__(self) -> str:
        body = " : ".join(format_rat(v) for v in self.values)
        if self.a is None:
            return f"[{body}]"
        return f"[{body}], a = {format_rat(self.a)}"


def invariants(p: ParamPoint) -> InvariantPoint:
    """
    >>> str(invariants(ParamPoint(1, 1, 1, 1, 1, 2)))
    '[1 : 1 : 1 : 3 : 2], a = 1'
    """
    p.check()
    return InvariantPoint(
        p.alpha, p.beta, p.gamma * p.epsilon,
        p.gamma * p.zeta + p.delta * p.epsilon, p.delta * p.zeta,
        a=p.gamma * p.zeta - p.delta * p.epsilon)


@cached(cache=LRUCache(maxsize=4))
def symbolic_invariants() -> MappingProxyType:
    """J2..J6 and a as polynomials in alpha..zeta."""
    al, be, ga, de, ep, ze = symbols(*PARAM_NAMES)
    return MappingProxyType({
        "J2": al, "J3": be, "J4": ga * ep, "J5": ga * ze + de * ep,
        "J6": de * ze, "a": ga * ze - de * ep})


def act(p: ParamPoint, t: Union[Scalar, str]) -> ParamPoint:
    """Apply a generator: scaling by t != 0, or the swap.

    >>> str(act(ParamPoint(1, 1, 1, 1, 1, 2), 2))
    '(4, 8, 32, 64, 1/2, 2)'
    """
    if t == SWAP:
        return ParamPoint(p.alpha, p.beta, p.epsilon, p.zeta,
                          p.gamma, p.delta)
    t = parse_rat(t)
    if not t:
        err_msg = "The scaling parameter must be nonzero"
        raise ValueError(err_msg)
    return ParamPoint(t**2 * p.alpha, t**3 * p.beta, t**5 * p.gamma,
                      t**6 * p.delta, p.epsilon / t, p.zeta)


def act_word(p: ParamPoint, word: Iterable[Union[Scalar, str]]
             ) -> ParamPoint:
    """Apply generators left to right."""
    for step in word:
        p = act(p, step)
    return p


@dataclass(frozen=True)
class IsomorphismResult:
    over_extension: bool
    over_q: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.over_q

    def to_json(self) -> dict:
        return {"equivalent_over_extension": self.over_extension,
                "equivalent_over_Q": self.over_q,
                "witness": None if self.witness is None else
                [s if s == SWAP else format_rat(s) for s in self.witness]}


def _torus_word(u: Fraction, t: Fraction) -> tuple:
    # s_u o (swap s_t swap): gamma -> u^5/t, delta -> u^6,
    # epsilon -> t^5/u, zeta -> t^6 (alpha, beta scale by (ut)^2, (ut)^3).
    word: list = []
    if t != 1:
        word += [SWAP, t, SWAP]
    if u != 1 or not word:
        word.append(u)
    return tuple(word)


def _scale_candidates(jp: InvariantPoint, jq: InvariantPoint
                      ) -> list[Fraction]:
    for k, (x, y) in enumerate(zip(jp.values, jq.values), start=2):
        if x and y:
            root = rational_root(y / x, k)
            if root is None:
                return []
            return [root, -root] if k % 2 == 0 else [root]
        if x or y:
            return []
    return []


def isomorphic(p: ParamPoint, q: ParamPoint) -> IsomorphismResult:
    """Compare two sextuples under the group generated by scalings and swap.

    ``over_extension`` compares invariants in weighted projective space;
    ``over_q`` reports whether a rational group element maps p to q, with
    the word of generators as witness.
    """
    jp, jq = invariants(p), invariants(q)
    over_ext = wp_normalize(jp) == wp_normalize(jq)
    if not over_ext:
        return IsomorphismResult(False, False)
    for swapped in (False, True):
        base = act(p, SWAP) if swapped else p
        for s in _scale_candidates(jp, jq):
            if base.delta and q.delta:
                u6 = q.delta / base.delta
            elif base.gamma and q.gamma:
                u6 = s * q.gamma / base.gamma
            else:
                continue
            root = rational_root(u6, 6)
            if root is None or not root:
                continue
            for u in (root, -root):
                t = s / u
                word = ((SWAP,) if swapped else ()) + _torus_word(u, t)
                if act_word(p, word) == q:
                    logger.debug("witness %s", word)
                    return IsomorphismResult(True, True, word)
    return IsomorphismResult(True, False)


@dataclass(frozen=True)
class WPLabel:
    """Zero pattern and weighted cross-ratios of a weighted point."""
    zero_pattern: tuple[bool, ...]
    ratios: tuple[Fraction, ...]

    def __str__(self) -> str:
        pattern = "".join("*" if nz else "0" for nz in self.zero_pattern)
        return f"{pattern} " + ",".join(format_rat(r) for r in self.ratios)


def wp_normalize(J: InvariantPoint) -> WPLabel:
    """Orbit label under J_k -> r^k J_k.

    Each pair of nonzero coordinates contributes J_a^(b/g) / J_b^(a/g)
    with g = gcd(a, b), so J4 = -J2^2 and J4 = J2^2 stay apart.

    >>> wp_normalize(InvariantPoint(1, 1, 1, 3, 2)) == \\
    ...     wp_normalize(InvariantPoint(4, 8, 16, 96, 128))
    True
    """
    vals = J.values
    if not any(vals):
        err_msg = "The all-zero point has no weighted projective class"
        raise InadmissiblePointError(err_msg)
    pattern = tuple(bool(v) for v in vals)
    ratios = []
    for i, a in enumerate(range(2, 7)):
        for j, b in enumerate(range(2, 7)):
            if a < b and vals[i] and vals[j]:
                g = gcd(a, b)
                ratios.append(vals[i] ** (b // g) / vals[j] ** (a // g))
    return WPLabel(pattern, tuple(ratios))


def weighted_degrees(poly: MPoly, weights: Mapping[str, int]) -> set[int]:
    """Weighted degrees of the terms of ``poly`` (unlisted variables: 0)."""
    w = [weights.get(v, 0) for v in poly.variables]
    return {sum(e * x for e, x in zip(exp, w)) for exp in poly.terms}


def sextic(J: InvariantPoint) -> MPoly:
    """D(t) = A(t)^2 - 4 B(t) for the alternate model at J."""
    t, = symbols("t")
    A = t**3 - 3 * J.J2 * t - 2 * J.J3
    B = J.J4 * t**2 - J.J5 * t + J.J6
    return A**2 - 4 * B


def j30(J: InvariantPoint) -> Fraction:
    """J30 as Disc_t D at a rational point."""
    return discriminant(sextic(J), "t").constant_value()


def sample_rational(rng: np.random.Generator) -> Fraction:
    num, den = rng.choice(_NONZERO, size=2)
    return Fraction(int(num), int(den))


def generic_guard(J: InvariantPoint) -> bool:
    """Off every special locus and away from vanishing coefficients."""
    return all(J.values) and bool(J.a_squared) and j30(J) != 0


def sample_params(rng: np.random.Generator,
                  guard: Callable[[InvariantPoint], bool] = generic_guard,
                  unit_j6: bool = False,
                  max_tries: int = 1000) -> ParamPoint:
    """Draw an admissible sextuple whose invariants pass ``guard``.

    With ``unit_j6`` the last parameter is zeta = 1/delta, so J6 = 1.
    """
    for attempt in range(max_tries):
        vals = [sample_rational(rng) for _ in PARAM_NAMES]
        if unit_j6:
            vals[-1] = 1 / vals[3]
        p = ParamPoint(*vals)
        if p.admissible and guard(invariants(p)):
            logger.debug("sampled %s after %d rejections", p, attempt)
            return p
    err_msg = f"No admissible point passed the guard in {max_tries} tries"
    raise RuntimeError(err_msg)


def sample_invariants(rng: np.random.Generator,
                      guard: Callable[[InvariantPoint], bool] = generic_guard,
                      unit_j6: bool = True) -> InvariantPoint:
    """Invariants (with rational a) of a sampled sextuple."""
    return invariants(sample_params(rng, guard, unit_j6))
