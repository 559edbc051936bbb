"""A small Buchberger engine used to cross-check binomiality verdicts.

Not built for speed.  Inputs above a modest size budget are refused with
:class:`BudgetExceeded` rather than left to run for hours.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .kinetics import ode_generators
from .network import ReactionNetwork
from .polynomial import (
    Polynomial,
    PolyRing,
    TermOrder,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomials_coprime,
)


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    max_variables: int = 12
    max_terms: int = 40
    max_reductions: int = 10_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _ring_of(polys: Sequence[Polynomial]) -> PolyRing:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise ValueError("polynomials must share one ring")
    return rings.pop()


def _lead(coeffs: dict, key) -> tuple:
    m = max(coeffs, key=key)
    return m, coeffs[m]


def _reduce_dict(f: dict, basis: Sequence[tuple], key) -> dict:
    """Full reduction of ``f`` by ``basis`` entries ``(lm, lc, coeffs)``.

    The largest remaining term is always treated first and divided by the
    first basis element whose leading monomial divides it.
    """
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for lm, lc, g in basis:
            if monomial_divides(lm, m):
                q = monomial_div(m, lm)
                factor = c / lc
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    mm = tuple(x + y for x, y in zip(gm, q))
                    v = f.get(mm, 0) - factor * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            rem[m] = c
    return rem


def _spoly_dict(f: tuple, g: tuple) -> dict:
    (lmf, lcf, pf), (lmg, lcg, pg) = f, g
    lcm = monomial_lcm(lmf, lmg)
    uf, ug = monomial_div(lcm, lmf), monomial_div(lcm, lmg)
    out: dict = {}
    for m, c in pf.items():
        mm = tuple(x + y for x, y in zip(m, uf))
        out[mm] = out.get(mm, 0) + c / lcf
    for m, c in pg.items():
        mm = tuple(x + y for x, y in zip(m, ug))
        v = out.get(mm, 0) - c / lcg
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


def _entry(p: Polynomial, key) -> tuple:
    coeffs = p.coeffs
    lm, lc = _lead(coeffs, key)
    return lm, lc, coeffs


def _key(ring: PolyRing, order: Optional[TermOrder]):
    return ring.key if order is None else order.key_for(ring)


def s_polynomial(p: Polynomial, q: Polynomial, order: Optional[TermOrder] = None) -> Polynomial:
    """``lcm * (p / LT(p) - q / LT(q))`` with ``lcm`` of the leading monomials."""
    if p.is_zero() or q.is_zero():
        raise ValueError("S-polynomial of the zero polynomial")
    ring = _ring_of([p, q])
    key = _key(ring, order)
    return Polynomial(ring, _spoly_dict(_entry(p, key), _entry(q, key)))


def reduce(p: Polynomial, basis: Sequence[Polynomial], order: Optional[TermOrder] = None) -> Polynomial:
    """Normal form of ``p`` modulo ``basis`` (deterministic, see module notes)."""
    nonzero = [g for g in basis if not g.is_zero()]
    if not nonzero:
        return p
    ring = _ring_of([p, *nonzero])
    key = _key(ring, order)
    return Polynomial(ring, _reduce_dict(p.coeffs, [_entry(g, key) for g in nonzero], key))


def _monic(coeffs: dict, key) -> tuple:
    lm, lc = _lead(coeffs, key)
    if lc != 1:
        coeffs = {m: c / lc for m, c in coeffs.items()}
    return lm, Fraction(1), coeffs


def buchberger(
    gens: Iterable[Polynomial],
    order: Optional[TermOrder] = None,
    budget: Optional[Budget] = DEFAULT_BUDGET,
    selection: str = "normal",
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``selection`` is ``"normal"`` (smallest lcm first) or ``"fifo"``; both
    give the same reduced basis.  Pairs with coprime leading monomials and
    pairs covered by Buchberger's chain criterion are skipped.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        if order is None:
            raise ValueError("cannot infer a term order from an empty generator list")
        return GroebnerBasis(order, ())
    ring = _ring_of(gens)
    order = ring.order if order is None else order
    key = order.key_for(ring)
    if budget is not None:
        if ring.nvars > budget.max_variables:
            raise BudgetExceeded(f"{ring.nvars} variables exceed the budget of {budget.max_variables}")
        total = sum(len(g) for g in gens)
        if total > budget.max_terms:
            raise BudgetExceeded(f"{total} generator terms exceed the budget of {budget.max_terms}")

    basis: list[tuple] = []
    pairs: list = []
    counter = 0
    done: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        nonlocal counter
        lcm = monomial_lcm(basis[i][0], basis[j][0])
        if selection == "normal":
            prio = key(lcm)
            # heapq is a min-heap and the key grows with the monomial
            heapq.heappush(pairs, (prio, counter, i, j))
        else:
            pairs.append((counter, i, j))
        counter += 1

    def pop() -> tuple[int, int]:
        if selection == "normal":
            _, _, i, j = heapq.heappop(pairs)
        else:
            _, i, j = pairs.pop(0)
        return i, j

    def add(coeffs: dict) -> None:
        basis.append(_monic(coeffs, key))
        new = len(basis) - 1
        for i in range(new):
            push(i, new)

    for g in gens:
        h = _reduce_dict(g.coeffs, basis, key)
        if h:
            add(h)

    reductions = 0
    while pairs:
        i, j = pop()
        done.add((i, j))
        lmi, lmj = basis[i][0], basis[j][0]
        if monomials_coprime(lmi, lmj):
            continue
        lcm = monomial_lcm(lmi, lmj)
        if any(
            k not in (i, j)
            and monomial_divides(basis[k][0], lcm)
            and (min(i, k), max(i, k)) in done
            and (min(j, k), max(j, k)) in done
            for k in range(len(basis))
        ):
            continue
        reductions += 1
        if budget is not None and reductions > budget.max_reductions:
            raise BudgetExceeded(f"more than {budget.max_reductions} pair reductions")
        h = _reduce_dict(_spoly_dict(basis[i], basis[j]), basis, key)
        if h:
            add(h)

    # minimal basis, then inter-reduction
    lms = [b[0] for b in basis]
    keep = []
    for i, lm in enumerate(lms):
        redundant = any(
            j != i and monomial_divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(lms))
        )
        if not redundant:
            keep.append(basis[i])
    reduced = []
    for idx, (lm, lc, g) in enumerate(keep):
        others = [b for k, b in enumerate(keep) if k != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce_dict(tail, others, key)
        tail[lm] = Fraction(1)
        reduced.append(Polynomial(ring, tail))
    reduced.sort(key=lambda p: key(max(p.coeffs, key=key)), reverse=True)
    return GroebnerBasis(order, tuple(reduced))


def is_groebner(basis: Sequence[Polynomial], order: Optional[TermOrder] = None) -> bool:
    """Every S-polynomial of a pair reduces to zero modulo ``basis``."""
    basis = [g for g in basis if not g.is_zero()]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not reduce(s_polynomial(basis[a], basis[b], order), basis, order).is_zero():
                return False
    return True


def binomiality_via_gb(network: ReactionNetwork, budget: Optional[Budget] = DEFAULT_BUDGET) -> bool:
    """True iff every element of the reduced Groebner basis of the
    steady-state ideal has exactly two terms.

    A monomial anywhere in the basis makes the answer ``False``.
    """
    gb = buchberger(list(ode_generators(network)), budget=budget)
    return all(len(g) == 2 for g in gb.elements)


def ideal_equal(
    first: Sequence[Polynomial],
    second: Sequence[Polynomial],
    budget: Optional[Budget] = None,
) -> bool:
    """Membership both ways: each list reduces to zero modulo the other's basis."""
    for a, b in ((first, second), (second, first)):
        a = [p for p in a if not p.is_zero()]
        b = [p for p in b if not p.is_zero()]
        if not b:
            if a:
                return False
            continue
        gb = buchberger(b, budget=budget).elements
        if any(not reduce(p, gb).is_zero() for p in a):
            return False
    return True
