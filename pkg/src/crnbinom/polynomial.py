"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials live in a :class:`PolyRing`, which fixes the variables and
their storage order.  A monomial is a tuple of exponents aligned with the
ring's variables; a polynomial maps monomials to nonzero ``Fraction``
coefficients.  All values are immutable.

The ambient order is degree reverse lexicographic with the ring's first
variable largest.  Species variables come before rate variables, so
``x1 > x2 > ... > xn > k_1 > k_2 > ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

SPECIES = "species"
RATE = "rate"

Monomial = tuple  # exponent tuple aligned with PolyRing.variables
Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class Variable:
    kind: str
    index: int
    name: str = ""

    def __str__(self) -> str:
        if self.name:
            return self.name
        return f"x{self.index + 1}" if self.kind == SPECIES else f"k{self.index + 1}"


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """``a / b``; the caller guarantees that ``b`` divides ``a``."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def monomials_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _degrevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


class TermOrder:
    """Degree reverse lexicographic order over an explicit variable ranking.

    ``ranking`` lists variables from largest to smallest.  Two orders
    compare equal when their rankings do.
    """

    kind = "degrevlex"

    def __init__(self, ranking: Sequence[Variable]):
        self.ranking = tuple(ranking)
        self._keys: dict = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, TermOrder) and self.ranking == other.ranking

    def __hash__(self) -> int:
        return hash(self.ranking)

    def __repr__(self) -> str:
        return f"TermOrder(degrevlex, {' > '.join(map(str, self.ranking))})"

    def key_for(self, ring: "PolyRing") -> Callable[[Monomial], tuple]:
        """Sort key on ``ring`` monomials; larger key means larger monomial."""
        cached = self._keys.get(ring.variables)
        if cached is not None:
            return cached
        if self.ranking == ring.variables:
            key = _degrevlex_key
        else:
            if set(self.ranking) != set(ring.variables):
                raise ValueError("term order ranks a different set of variables than the ring")
            perm = [ring.index(v) for v in self.ranking]

            def key(m: Monomial, perm=perm) -> tuple:
                return _degrevlex_key(tuple(m[i] for i in perm))

        self._keys[ring.variables] = key
        return key


class PolyRing:
    """Polynomial ring over the rationals in a fixed tuple of variables."""

    def __init__(self, variables: Iterable[Variable]):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("ring variables must be distinct")
        self._index = {v: i for i, v in enumerate(self.variables)}
        self._by_name = {str(v): v for v in self.variables}
        self.order = TermOrder(self.variables)
        self.key = self.order.key_for(self)
        self.unit = (0,) * len(self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(map(str, self.variables))})"

    def index(self, var: Union[Variable, str]) -> int:
        if isinstance(var, str):
            var = self._by_name[var]
        return self._index[var]

    def monomial(self, powers: Mapping[Union[Variable, str], int]) -> Monomial:
        exps = [0] * self.nvars
        for var, e in powers.items():
            exps[self.index(var)] += int(e)
        return tuple(exps)

    def gen(self, var: Union[Variable, str]) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(var)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def constant(self, c: Coefficient) -> "Polynomial":
        return Polynomial(self, {self.unit: Fraction(c)})

    def term(self, coeff: Coefficient, monomial: Monomial) -> "Polynomial":
        return Polynomial(self, {tuple(monomial): Fraction(coeff)})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def from_terms(self, terms: Iterable[tuple[Coefficient, Monomial]]) -> "Polynomial":
        acc: dict = {}
        for c, m in terms:
            m = tuple(m)
            acc[m] = acc.get(m, 0) + Fraction(c)
        return Polynomial(self, acc)


class Polynomial:
    """Immutable polynomial; ``terms`` lists (coefficient, monomial) pairs in
    strictly descending ambient order."""

    __slots__ = ("ring", "_coeffs", "_terms", "_hash")

    def __init__(self, ring: PolyRing, coeffs: Mapping[Monomial, Coefficient]):
        self.ring = ring
        self._coeffs = {m: Fraction(c) for m, c in coeffs.items() if c != 0}
        self._terms = None
        self._hash = None

    @classmethod
    def _trusted(cls, ring: PolyRing, coeffs: dict) -> "Polynomial":
        # coeffs already holds nonzero Fractions and is not shared
        p = cls.__new__(cls)
        p.ring = ring
        p._coeffs = coeffs
        p._terms = None
        p._hash = None
        return p

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    @property
    def terms(self) -> list[tuple[Fraction, Monomial]]:
        if self._terms is None:
            key = self.ring.key
            self._terms = [(self._coeffs[m], m) for m in sorted(self._coeffs, key=key, reverse=True)]
        return list(self._terms)

    def monomials(self) -> list[Monomial]:
        return [m for _, m in self.terms]

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._coeffs.get(tuple(monomial), Fraction(0))

    def __len__(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise ValueError("polynomials belong to different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._trusted(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.ring, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return scalar_mul(other, self)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        acc: dict = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.ring, acc)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return scalar_mul(other, self)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def mul_term(self, coeff: Fraction, monomial: Monomial) -> "Polynomial":
        """Multiply by the single term ``coeff * monomial``."""
        if not coeff:
            return self.ring.zero
        return Polynomial._trusted(
            self.ring,
            {tuple(x + y for x, y in zip(m, monomial)): c * coeff for m, c in self._coeffs.items()},
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._coeffs == other._coeffs
        if isinstance(other, (int, Rational)):
            if other == 0:
                return not self._coeffs
            return self._coeffs == {self.ring.unit: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._coeffs.items())))
        return self._hash

    def leading_term(self, order: Optional[TermOrder] = None) -> tuple[Fraction, Monomial]:
        return leading_term(self, order)

    def monic(self) -> "Polynomial":
        if not self._coeffs:
            return self
        lc, _ = self.leading_term()
        return scalar_mul(1 / lc, self)

    def render(self, names: Optional[Mapping[Variable, str]] = None) -> str:
        return render(self, names)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def neg(p: Polynomial) -> Polynomial:
    return -p


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def scalar_mul(c: Coefficient, p: Polynomial) -> Polynomial:
    c = Fraction(c)
    if not c:
        return p.ring.zero
    return Polynomial._trusted(p.ring, {m: c * v for m, v in p._coeffs.items()})


def is_binomial(p: Polynomial) -> bool:
    """True iff ``p`` has exactly two terms (monomials are not binomials)."""
    return len(p) == 2


def leading_term(p: Polynomial, order: Optional[TermOrder] = None) -> tuple[Fraction, Monomial]:
    if p.is_zero():
        raise ValueError("the zero polynomial has no leading term")
    key = p.ring.key if order is None else order.key_for(p.ring)
    m = max(p._coeffs, key=key)
    return p._coeffs[m], m


def _render_monomial(ring: PolyRing, m: Monomial, names: Optional[Mapping[Variable, str]]) -> str:
    # rate symbols first, then species, each by ascending index
    idx = sorted(
        (i for i, e in enumerate(m) if e),
        key=lambda i: (ring.variables[i].kind != RATE, ring.variables[i].index),
    )
    parts = []
    for i in idx:
        var = ring.variables[i]
        name = names.get(var, str(var)) if names else str(var)
        parts.append(name if m[i] == 1 else f"{name}^{m[i]}")
    return "*".join(parts)


def render(p: Polynomial, names: Optional[Mapping[Variable, str]] = None) -> str:
    """Human-readable form, e.g. ``-k12*x1*x2 + k21*x3*x4``."""
    if p.is_zero():
        return "0"
    out = []
    for pos, (c, m) in enumerate(p.terms):
        mono = _render_monomial(p.ring, m, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if pos == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
