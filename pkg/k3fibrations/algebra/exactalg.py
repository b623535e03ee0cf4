# -*- coding: utf-8 -*-
"""Exact rational arithmetic and sparse multivariate polynomials.

Every computation in k3fibrations happens over Q. Coefficients are
``fractions.Fraction`` values; an ``MPoly`` is a sparse map from exponent
tuples to nonzero coefficients over an ordered tuple of variable names.

Functions:
    - resultant, discriminant: Sylvester determinants by fraction-free
      (Bareiss) elimination.
    - gcd, squarefree_factor, factor_rational: gcd and factorization;
      univariate factoring and multivariate gcd go through sympy.
    - interpolate, rational_root: helpers for the torsion screen and for
      solving weighted rescalings.

Notes:
    - Arithmetic between polynomials over different variable lists extends
      both operands to the union (the left operand's order first).
    - Monomials are ordered graded-lexicographically.
"""
from __future__ import annotations
import contextlib
import contextvars
import logging
import operator
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd
from math import lcm as _ilcm
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Sequence, Tuple, Union
import sympy

logger = logging.getLogger(__name__)

Rat = Fraction
Scalar = Union[int, Fraction]
Exponent = Tuple[int, ...]

MAX_EXPONENT = 2**31 - 1

_term_budget: contextvars.ContextVar[Optional[int]] = \
    contextvars.ContextVar("term_budget", default=None)


class InexactDivisionError(ArithmeticError):
    """An exact polynomial division left a remainder."""


class TermBudgetExceeded(RuntimeError):
    """A product would exceed the active term budget."""


@contextlib.contextmanager
def term_budget(limit: Optional[int]) -> Iterator[None]:
    """Bound the size of every polynomial product inside the block.

    A multiplication whose term-count estimate ``len(p) * len(q)`` exceeds
    ``limit`` raises ``TermBudgetExceeded``. ``None`` lifts the bound.
    """
    token = _term_budget.set(limit)
    try:
        yield
    finally:
        _term_budget.reset(token)


def format_rat(q: Scalar) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1.

    >>> format_rat(Fraction(-3, 6))
    '-1/2'
    >>> format_rat(4)
    '4'
    """
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: Union[str, Scalar]) -> Fraction:
    """Parse "p/q", "p" or a decimal-free integer into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as err:
        err_msg = f"Invalid rational: {text!r}"
        raise ValueError(err_msg) from err
    if "." in str(text) or "e" in str(text).lower():
        err_msg = f"Use p/q for rationals, not decimals: {text!r}"
        raise ValueError(err_msg)
    return value


def _grlex(exp: Exponent) -> tuple:
    return (sum(exp), exp)


def _is_scalar(value: object) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are immutable. Zero coefficients are never stored, so the zero
    polynomial has an empty term map.

    >>> x, y = symbols("x", "y")
    >>> str((x + y) * (x - y))
    'x^2 - y^2'
    """

    __slots__ = ("_vars", "_terms")

    def __init__(self,
                 variables: Sequence[str] = (),
                 terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            err_msg = f"Duplicate variable names: {variables}"
            raise ValueError(err_msg)
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                err_msg = (f"Exponent {exp} does not match variables "
                           f"{variables}")
                raise ValueError(err_msg)
            if any(e < 0 for e in exp):
                err_msg = f"Negative exponent in {exp}"
                raise ValueError(err_msg)
            if any(e > MAX_EXPONENT for e in exp):
                err_msg = f"Exponent overflow in {exp}"
                raise OverflowError(err_msg)
            coef = clean.get(exp, Fraction(0)) + Fraction(coef)
            if coef:
                clean[exp] = coef
            else:
                clean.pop(exp, None)
        self._vars = variables
        self._terms = clean

    @classmethod
    def _make(cls, variables: tuple, terms: dict) -> MPoly:
        obj = object.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        return obj

    @classmethod
    def const(cls, value: Scalar, variables: Sequence[str] = ()) -> MPoly:
        variables = tuple(variables)
        value = Fraction(value)
        terms = {(0,) * len(variables): value} if value else {}
        return cls._make(variables, terms)

    @classmethod
    def var(cls, name: str, variables: Optional[Sequence[str]] = None
            ) -> MPoly:
        variables = tuple(variables) if variables else (name,)
        if name not in variables:
            err_msg = f"{name!r} is not among {variables}"
            raise ValueError(err_msg)
        exp = tuple(int(v == name) for v in variables)
        return cls._make(variables, {exp: Fraction(1)})

    # -- introspection -----------------------------------------------------
    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def free_vars(self) -> tuple[str, ...]:
        """Variables that actually occur with a positive exponent."""
        used = [False] * len(self._vars)
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self._vars, used) if u)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            err_msg = f"Polynomial is not constant: {self}"
            raise ValueError(err_msg)
        return next(iter(self._terms.values()), Fraction(0))

    def is_univariate(self, var: str) -> bool:
        return set(self.free_vars) <= {var}

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError as err:
            err_msg = f"{var!r} is not a variable of {self._vars}"
            raise ValueError(err_msg) from err

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var not in self._vars:
            return 0
        i = self._vars.index(var)
        return max(exp[i] for exp in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(exp) for exp in self._terms)

    def coefficients(self, var: str) -> dict[int, MPoly]:
        """Split into coefficients of powers of ``var`` (var kept, unused)."""
        if var not in self._vars:
            return {0: self} if self._terms else {}
        i = self._vars.index(var)
        parts: dict[int, dict] = {}
        for exp, coef in self._terms.items():
            rest = exp[:i] + (0,) + exp[i + 1:]
            parts.setdefault(exp[i], {})[rest] = coef
        return {k: MPoly._make(self._vars, v) for k, v in parts.items()}

    def coeff(self, var: str, k: int) -> MPoly:
        return self.coefficients(var).get(k, MPoly.const(0, self._vars))

    def leading_coeff(self, var: str) -> MPoly:
        return self.coeff(var, self.degree(var))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            err_msg = "The zero polynomial has no leading term"
            raise ValueError(err_msg)
        exp = max(self._terms, key=_grlex)
        return exp, self._terms[exp]

    # -- variable bookkeeping ----------------------------------------------
    def _reindex(self, target: tuple[str, ...]) -> MPoly:
        if target == self._vars:
            return self
        pos = [target.index(v) for v in self._vars]
        terms = {}
        for exp, coef in self._terms.items():
            new = [0] * len(target)
            for p, e in zip(pos, exp):
                new[p] = e
            terms[tuple(new)] = coef
        return MPoly._make(target, terms)

    def extend(self, variables: Sequence[str]) -> MPoly:
        """Re-express over ``self.variables`` followed by new names."""
        extra = tuple(v for v in variables if v not in self._vars)
        return self._reindex(self._vars + extra)

    def _aligned(self, other: Union[MPoly, Scalar]) -> tuple[MPoly, MPoly]:
        if not isinstance(other, MPoly):
            return self, MPoly.const(other, self._vars)
        if other._vars == self._vars:
            return self, other
        union = self._vars + tuple(v for v in other._vars
                                   if v not in self._vars)
        return self._reindex(union), other._reindex(union)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Union[MPoly, Scalar]) -> MPoly:
        if not isinstance(other, MPoly) and not _is_scalar(other):
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a._terms)
        for exp, coef in b._terms.items():
            total = terms.get(exp, 0) + coef
            if total:
                terms[exp] = total
            else:
                terms.pop(exp, None)
        return MPoly._make(a._vars, terms)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._make(self._vars,
                           {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union[MPoly, Scalar]) -> MPoly:
        if not isinstance(other, MPoly) and not _is_scalar(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> MPoly:
        return (-self) + other

    def _scale(self, value: Scalar) -> MPoly:
        value = Fraction(value)
        if not value:
            return MPoly.const(0, self._vars)
        return MPoly._make(self._vars,
                           {e: c * value for e, c in self._terms.items()})

    def __mul__(self, other: Union[MPoly, Scalar]) -> MPoly:
        if _is_scalar(other):
            return self._scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._aligned(other)
        if not a._terms or not b._terms:
            return MPoly.const(0, a._vars)
        limit = _term_budget.get()
        if limit is not None and len(a) * len(b) > limit:
            err_msg = (f"Product of {len(a)} x {len(b)} terms exceeds the "
                       f"budget of {limit}")
            raise TermBudgetExceeded(err_msg)
        for v in a._vars:
            if a.degree(v) + b.degree(v) > MAX_EXPONENT:
                err_msg = f"Exponent overflow in {v!r}"
                raise OverflowError(err_msg)
        add = operator.add
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                exp = tuple(map(add, e1, e2))
                total = terms.get(exp, 0) + c1 * c2
                if total:
                    terms[exp] = total
                else:
                    terms.pop(exp, None)
        return MPoly._make(a._vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        if not isinstance(n, int) or n < 0:
            err_msg = f"Exponent must be a non-negative integer, got {n!r}"
            raise ValueError(err_msg)
        top = max((self.degree(v) for v in self._vars), default=0)
        if top * n > MAX_EXPONENT:
            err_msg = f"Exponent overflow raising to the power {n}"
            raise OverflowError(err_msg)
        result = MPoly.const(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other: Union[MPoly, Scalar]) -> MPoly:
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self._scale(1 / Fraction(other))
        if isinstance(other, MPoly):
            return self.divide_exact(other)
        return NotImplemented

    def divide_exact(self, other: Union[MPoly, Scalar]) -> MPoly:
        """Exact quotient; raises ``InexactDivisionError`` otherwise."""
        a, b = self._aligned(other)
        if not b._terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not a._terms:
            return a
        if len(b._terms) == 1:
            (be, bc), = b._terms.items()
            terms = {}
            for exp, coef in a._terms.items():
                diff = tuple(x - y for x, y in zip(exp, be))
                if min(diff, default=0) < 0:
                    err_msg = f"{b} does not divide {a}"
                    raise InexactDivisionError(err_msg)
                terms[diff] = coef / bc
            return MPoly._make(a._vars, terms)
        lead_e, lead_c = b.leading_term()
        rest = b._terms.items()
        rem = dict(a._terms)
        quotient: dict[Exponent, Fraction] = {}
        while rem:
            exp = max(rem, key=_grlex)
            diff = tuple(x - y for x, y in zip(exp, lead_e))
            if min(diff, default=0) < 0:
                err_msg = f"{b} does not divide {a}"
                raise InexactDivisionError(err_msg)
            qc = rem[exp] / lead_c
            quotient[diff] = qc
            for be, bc in rest:
                key = tuple(map(operator.add, be, diff))
                val = rem.get(key, 0) - qc * bc
                if val:
                    rem[key] = val
                else:
                    rem.pop(key, None)
        return MPoly._make(a._vars, quotient)

    def divides(self, other: MPoly) -> bool:
        try:
            other.divide_exact(self)
        except InexactDivisionError:
            return False
        return True

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if _is_scalar(other):
            other = MPoly.const(other, self._vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        free = tuple(sorted(self.free_vars))
        canon = MPoly._make(self._vars, self._terms)
        canon = canon._restrict(free)
        return hash((free, frozenset(canon._terms.items())))

    def _restrict(self, target: tuple[str, ...]) -> MPoly:
        """Drop variables that do not occur (must not occur in ``self``)."""
        pos = [self._vars.index(v) for v in target]
        terms = {tuple(exp[p] for p in pos): c
                 for exp, c in self._terms.items()}
        return MPoly._make(target, terms)

    def compact(self) -> MPoly:
        """Drop unused variables, keeping the order of the rest."""
        return self._restrict(self.free_vars)

    # -- calculus and composition -------------------------------------------
    def diff(self, var: str) -> MPoly:
        if var not in self._vars:
            return MPoly.const(0, self._vars)
        i = self._vars.index(var)
        terms = {}
        for exp, coef in self._terms.items():
            if exp[i]:
                new = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                terms[new] = coef * exp[i]
        return MPoly._make(self._vars, terms)

    def substitute(self, bindings: Mapping[str, Union[MPoly, Scalar]]
                   ) -> MPoly:
        """Compose: replace each bound variable by a polynomial or scalar.

        Unbound variables pass through. The result is over the unbound
        variables followed by the variables of the bound values.
        """
        for name in bindings:
            self._index(name)
        bound = [i for i, v in enumerate(self._vars) if v in bindings]
        free = [i for i, v in enumerate(self._vars) if v not in bindings]
        rest_vars = tuple(self._vars[i] for i in free)
        values = [bindings[self._vars[i]] for i in bound]

        if all(_is_scalar(v) for v in values):
            values = [Fraction(v) for v in values]
            terms: dict[Exponent, Fraction] = {}
            for exp, coef in self._terms.items():
                for i, val in zip(bound, values):
                    if exp[i]:
                        coef *= val ** exp[i]
                key = tuple(exp[i] for i in free)
                total = terms.get(key, 0) + coef
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
            return MPoly._make(rest_vars, terms)

        # group by the bound part of the exponent
        groups: dict[Exponent, dict] = {}
        for exp, coef in self._terms.items():
            key = tuple(exp[i] for i in bound)
            groups.setdefault(key, {})[tuple(exp[i] for i in free)] = coef
        polys = [v if isinstance(v, MPoly) else MPoly.const(v)
                 for v in values]
        powers: dict[tuple[int, int], MPoly] = {}

        def power(j: int, e: int) -> MPoly:
            if (j, e) not in powers:
                powers[j, e] = polys[j] if e == 1 \
                    else power(j, e - 1) * polys[j]
            return powers[j, e]

        result = MPoly.const(0, rest_vars)
        for key, part in groups.items():
            term = MPoly._make(rest_vars, part)
            for j, e in enumerate(key):
                if e:
                    term = term * power(j, e)
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> MPoly:
        return self.substitute({k: Fraction(v) for k, v in values.items()})

    def __call__(self, **values: Union[MPoly, Scalar]) -> MPoly:
        return self.substitute(values)

    def homogenize(self, var: str, hvar: str,
                   degree: Optional[int] = None) -> MPoly:
        """Homogenize in ``var`` with the new variable ``hvar``."""
        degree = self.degree(var) if degree is None else degree
        if degree < self.degree(var):
            err_msg = f"Degree {degree} is below deg_{var} = " \
                      f"{self.degree(var)}"
            raise ValueError(err_msg)
        p = self.extend((var, hvar))
        i, h = p._vars.index(var), p._vars.index(hvar)
        terms = {}
        for exp, coef in p._terms.items():
            new = list(exp)
            new[h] += degree - exp[i]
            terms[tuple(new)] = coef
        return MPoly._make(p._vars, terms)

    def reciprocal(self, var: str, n: int) -> MPoly:
        """Return var^n * p(1/var); requires n >= deg_var(p)."""
        if n < self.degree(var):
            err_msg = f"{n} is below deg_{var} = {self.degree(var)}"
            raise ValueError(err_msg)
        p = self.extend((var,))
        i = p._vars.index(var)
        terms = {exp[:i] + (n - exp[i],) + exp[i + 1:]: c
                 for exp, c in p._terms.items()}
        return MPoly._make(p._vars, terms)

    # -- normalization --------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with p / c integral and of content 1."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for coef in self._terms.values():
            num = _igcd(num, coef.numerator)
            den = _ilcm(den, coef.denominator)
        return Fraction(num, den)

    def primitive(self) -> tuple[Fraction, MPoly]:
        """Split as unit * primitive with a positive grlex leading term."""
        if not self._terms:
            return Fraction(0), self
        unit = self.content()
        if self.leading_term()[1] < 0:
            unit = -unit
        return unit, self._scale(1 / unit)

    # -- rendering ---------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: _grlex(item[0]),
                      reverse=True)

    def _monomial(self, exp: Exponent) -> str:
        parts = []
        for v, e in zip(self._vars, exp):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (exp, coef) in enumerate(self.sorted_terms()):
            mono = self._monomial(exp)
            mag = abs(coef)
            if not mono:
                body = format_rat(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rat(mag)}*{mono}"
            if k == 0:
                out.append(f"-{body}" if coef < 0 else body)
            else:
                out.append(f"- {body}" if coef < 0 else f"+ {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, variables={self._vars})"

    def to_json(self) -> dict:
        return {"vars": list(self._vars),
                "terms": [{"exp": list(exp), "coef": format_rat(coef)}
                          for exp, coef in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> MPoly:
        terms = {tuple(t["exp"]): parse_rat(t["coef"]) for t in obj["terms"]}
        return cls(obj["vars"], terms)

    # -- sympy bridge ---------------------------------------------------------
    def to_sympy(self) -> sympy.Poly:
        gens = [sympy.Symbol(v) for v in self._vars] or [sympy.Dummy("z")]
        rep = {exp if self._vars else (0,):
               sympy.Rational(c.numerator, c.denominator)
               for exp, c in self._terms.items()}
        return sympy.Poly.from_dict(rep or {(0,) * len(gens): 0}, *gens,
                                    domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly,
                   variables: Optional[Sequence[str]] = None) -> MPoly:
        names = tuple(str(g) for g in poly.gens)
        terms = {}
        for exp, coef in poly.as_dict().items():
            coef = sympy.Rational(coef)
            terms[exp] = Fraction(int(coef.p), int(coef.q))
        result = cls(names, terms)
        if variables is not None:
            result = result.compact().extend(variables)
            result = result._reindex(tuple(variables)
                                     + tuple(v for v in result._vars
                                             if v not in variables))
        return result

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> MPoly:
        """Parse an expression such as "x^2 - 3/2*x*y" over ``variables``."""
        local = {v: sympy.Symbol(v) for v in variables}
        try:
            expr = sympy.parse_expr(text.replace("^", "**"),
                                    local_dict=local, evaluate=True)
            poly = sympy.Poly(expr, *local.values(), domain=sympy.QQ)
        except (sympy.SympifyError, sympy.PolynomialError, SyntaxError,
                TypeError) as err:
            err_msg = f"Cannot parse polynomial: {text!r}"
            raise ValueError(err_msg) from err
        return cls.from_sympy(poly, variables)


def symbols(*names: str) -> tuple[MPoly, ...]:
    """Generators over the shared variable list ``names``."""
    return tuple(MPoly.var(n, names) for n in names)


def as_poly(value: Union[MPoly, Scalar],
            variables: Sequence[str] = ()) -> MPoly:
    if isinstance(value, MPoly):
        return value
    return MPoly.const(value, variables)


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f ** m for f, m in factors)``."""
    unit: Fraction
    factors: tuple[tuple[MPoly, int], ...]

    def expand(self) -> MPoly:
        result = MPoly.const(self.unit)
        for factor, mult in self.factors:
            result = result * factor ** mult
        return result

    @property
    def degrees(self) -> list[tuple[int, int]]:
        return [(f.total_degree(), m) for f, m in self.factors]

    def __str__(self) -> str:
        parts = [format_rat(self.unit)] if self.unit != 1 or \
            not self.factors else []
        for factor, mult in self.factors:
            body = f"({factor})"
            parts.append(body if mult == 1 else f"{body}^{mult}")
        return " * ".join(parts)


def _normalized(factors: list[tuple[MPoly, int]], p: MPoly
                ) -> Factorization:
    clean = []
    for factor, mult in factors:
        _, prim = factor.primitive()
        clean.append((prim, mult))
    clean.sort(key=lambda fm: (fm[0].total_degree(), str(fm[0]), fm[1]))
    product = MPoly.const(1)
    for factor, mult in clean:
        product = product * factor ** mult
    unit = p.leading_term()[1] / product.leading_term()[1]
    return Factorization(unit=unit, factors=tuple(clean))


# -- dense univariate helpers (ascending coefficient lists) ----------------
def _dense(p: MPoly, var: str) -> list[Fraction]:
    if not p.is_univariate(var):
        err_msg = f"Expected a polynomial in {var!r} alone, got {p}"
        raise ValueError(err_msg)
    deg = p.degree(var)
    out = [Fraction(0)] * (deg + 1)
    i = p.variables.index(var) if var in p.variables else None
    for exp, coef in p.terms.items():
        out[exp[i] if i is not None else 0] = coef
    return out


def _from_dense(coeffs: Sequence[Fraction], var: str) -> MPoly:
    return MPoly((var,), {(k,): c for k, c in enumerate(coeffs) if c})


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _ddivmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        qc = a[-1] / lead
        quot[shift] = qc
        for k, c in enumerate(b):
            a[k + shift] -= qc * c
        a.pop()
        _trim(a)
    return _trim(quot), a


def _dgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _ddivmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def _dderiv(a: list) -> list:
    return [k * a[k] for k in range(1, len(a))]


def _dsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for k, c in enumerate(b):
        a[k] -= c
    return _trim(a)


def udivmod(p: MPoly, q: MPoly, var: str) -> tuple[MPoly, MPoly]:
    """Quotient and remainder of univariate polynomials in ``var``."""
    quot, rem = _ddivmod(_dense(p, var), _dense(q, var))
    return _from_dense(quot, var), _from_dense(rem, var)


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Primitive gcd with a positive leading coefficient."""
    p, q = p._aligned(q)
    if p.is_zero() and q.is_zero():
        return p
    free = set(p.free_vars) | set(q.free_vars)
    if not free:
        return MPoly.const(1, p.variables)
    if len(free) == 1:
        var = free.pop()
        result = _from_dense(_dgcd(_dense(p, var), _dense(q, var)), var)
    else:
        result = MPoly.from_sympy(sympy.gcd(p.to_sympy(), q.to_sympy()))
    return result.primitive()[1].extend(p.variables)


def squarefree_factor(p: MPoly, var: str) -> Factorization:
    """Yun's squarefree decomposition of a univariate polynomial."""
    if p.is_zero():
        err_msg = "Cannot factor the zero polynomial"
        raise ValueError(err_msg)
    a = _dense(p, var)
    if len(a) == 1:
        return Factorization(unit=a[0], factors=())
    b = _dderiv(a)
    c = _dgcd(a, b)
    w = _ddivmod(a, c)[0]
    y = _ddivmod(b, c)[0]
    z = _dsub(y, _dderiv(w))
    blocks = []
    mult = 1
    while len(w) > 1:
        g = _dgcd(w, z)
        if len(g) > 1:
            blocks.append((_from_dense(g, var), mult))
        w = _ddivmod(w, g)[0]
        y = _ddivmod(z, g)[0]
        z = _dsub(y, _dderiv(w))
        mult += 1
    return _normalized(blocks, _from_dense(a, var))


def factor_rational(p: MPoly, var: str) -> Factorization:
    """Complete factorization over Q of a polynomial in ``var`` alone."""
    if p.is_zero():
        err_msg = "Cannot factor the zero polynomial"
        raise ValueError(err_msg)
    dense = _dense(p, var)
    uni = _from_dense(dense, var)
    if len(dense) == 1:
        return Factorization(unit=dense[0], factors=())
    _, parts = uni.to_sympy().factor_list()
    factors = [(MPoly.from_sympy(f, (var,)), int(m)) for f, m in parts]
    return _normalized(factors, uni)


def rational_roots(p: MPoly, var: str) -> list[Fraction]:
    """Distinct rational roots, in increasing order."""
    if p.is_zero():
        err_msg = "Every value is a root of the zero polynomial"
        raise ValueError(err_msg)
    roots = []
    for factor, _ in factor_rational(p, var).factors:
        if factor.degree(var) == 1:
            c1 = factor.coeff(var, 1).constant_value()
            c0 = factor.coeff(var, 0).constant_value()
            roots.append(-c0 / c1)
    return sorted(roots)


def interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar],
                var: str) -> MPoly:
    """Lagrange interpolation through (xs[i], ys[i]) (Newton form)."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    if len(set(xs)) != len(xs):
        err_msg = "Interpolation nodes must be distinct"
        raise ValueError(err_msg)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # result = result * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + result
        for k, c in enumerate(result):
            shifted[k] -= xs[i] * c
        shifted[0] += coef[i]
        result = shifted
    return _from_dense(_trim(result), var)


def rational_root(x: Scalar, k: int) -> Optional[Fraction]:
    """Exact rational k-th root (the positive one for even k), or None."""
    x = Fraction(x)
    if k < 1:
        err_msg = f"Root index must be positive, got {k}"
        raise ValueError(err_msg)
    if not x:
        return Fraction(0)
    if x < 0 and k % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    num, exact_n = sympy.integer_nthroot(abs(x.numerator), k)
    den, exact_d = sympy.integer_nthroot(x.denominator, k)
    if not (exact_n and exact_d):
        return None
    return sign * Fraction(int(num), int(den))


# -- resultants --------------------------------------------------------------
def _bareiss(matrix: list[list], divide) -> object:
    """Fraction-free determinant; entries are ints or MPoly."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else divide(num, prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _sylvester(pc: list, qc: list, zero: object) -> list[list]:
    """Rows of p (descending coefficients) first, then rows of q."""
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Res_var(p, q) = lc(p)^deg(q) * prod of q over the roots of p.

    >>> x, c = symbols("x", "c")
    >>> str(resultant(x - c, x - 2, "x"))
    'c - 2'
    """
    p, q = p._aligned(q)
    m, n = p.degree(var), q.degree(var)
    if m < 1 or n < 1:
        err_msg = f"Resultant needs positive degree in {var!r} " \
                  f"(got {m} and {n})"
        raise ValueError(err_msg)
    pc = [p.coeff(var, k) for k in range(m, -1, -1)]
    qc = [q.coeff(var, k) for k in range(n, -1, -1)]
    variables = p.variables

    if all(c.is_constant() for c in pc + qc):
        pv = [c.constant_value() for c in pc]
        qv = [c.constant_value() for c in qc]
        dp = _ilcm(*(c.denominator for c in pv))
        dq = _ilcm(*(c.denominator for c in qv))
        pi = [int(c * dp) for c in pv]
        qi = [int(c * dq) for c in qv]
        det = _bareiss(_sylvester(pi, qi, 0), operator.floordiv)
        value = Fraction(det, dp**n * dq**m)
        logger.debug("resultant %dx%d scalar -> %s", m + n, m + n, value)
        return MPoly.const(value, variables)

    zero = MPoly.const(0, variables)
    det = _bareiss(_sylvester(pc, qc, zero), MPoly.divide_exact)
    return as_poly(det, variables)


def discriminant(p: MPoly, var: str) -> MPoly:
    """(-1)^(n(n-1)/2) * Res(p, p') / lc(p)."""
    n = p.degree(var)
    if n < 2:
        err_msg = f"Discriminant needs degree >= 2 in {var!r}, got {n}"
        raise ValueError(err_msg)
    res = resultant(p, p.diff(var), var)
    quotient = res.divide_exact(p.leading_coeff(var))
    return quotient if (n * (n - 1) // 2) % 2 == 0 else -quotient
