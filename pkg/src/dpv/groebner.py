"""Buchberger engine over F_p(params) with explicit resource limits.

Pair selection is the normal strategy (minimal lcm total degree, ties broken
by lexicographic pair index), pairs are discarded by the coprimality and
chain criteria, and exceeding a resource cap raises Inconclusive rather than
ever returning a wrong basis.  Reduced bases are monic and sorted by
descending leading monomial, so results are canonical for a given order.
"""

from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass

from .orders import MonomialOrder, elimination, grevlex
from .poly import Polynomial
from .ring import RingContext, work_done

DEFAULT_PAIR_LIMIT = 10**6


class Inconclusive(Exception):
    """A resource limit was hit before the computation finished."""


@dataclass(frozen=True)
class Limits:
    max_pairs: int = DEFAULT_PAIR_LIMIT
    max_degree: int | None = None
    # work budget per basis computation, in coefficient term-product units;
    # runaway parameter-fraction growth trips the cap long before it can
    # stall a single normal form
    max_steps: int | None = None

    @classmethod
    def from_env(cls) -> "Limits":
        kwargs = {}
        raw = os.environ.get("DPV_PAIR_LIMIT")
        if raw:
            kwargs["max_pairs"] = int(raw)
        raw = os.environ.get("DPV_STEP_LIMIT")
        if raw:
            kwargs["max_steps"] = int(raw)
        return cls(**kwargs)


class Budget:
    """Deterministic work allowance shared across reductions.

    Each charge also drains the coefficient-arithmetic work (term-product
    units, see ring.work_done) performed since the previous charge, so gcd
    and fraction-normalization cost counts even though no step sees it.
    """

    __slots__ = ("left", "_mark")

    def __init__(self, allowance: int | None):
        self.left = allowance
        self._mark = work_done()

    def charge(self, cost: int):
        if self.left is None:
            return
        now = work_done()
        self.left -= cost + now - self._mark
        self._mark = now
        if self.left < 0:
            raise Inconclusive("work budget exceeded")


def _lead(f: Polynomial, order: MonomialOrder):
    e = max(f.terms, key=order.key)
    return e, f.terms[e]


def monomial_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def make_monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, lc = _lead(f, order)
    if lc.is_one():
        return f
    inv = lc.inverse()
    return f * inv


def reduce(
    f: Polynomial,
    basis: list[Polynomial],
    order: MonomialOrder,
    budget: "Budget | Limits | None" = None,
) -> Polynomial:
    """Full normal form of f modulo basis; deterministic divisor scan order.
    Passing Limits applies its work budget to this one reduction."""
    if isinstance(budget, Limits):
        budget = Budget(budget.max_steps)
    ring = f.ring
    data = []
    for g in basis:
        if g.is_zero():
            continue
        lm, lc = _lead(g, order)
        data.append((lm, lc, g))
    work = dict(f.terms)
    remainder: dict = {}
    key = order.key
    while work:
        if budget is not None:
            budget.charge(len(work) + 1)
        e = max(work, key=key)
        c = work.pop(e)
        hit = None
        for lm, lc, g in data:
            if monomial_divides(lm, e):
                hit = (lm, lc, g)
                break
        if hit is None:
            remainder[e] = c
            continue
        lm, lc, g = hit
        factor = c / lc
        delta = tuple(x - y for x, y in zip(e, lm))
        for ge, gc in g.terms.items():
            if ge == lm:
                continue
            ne = tuple(x + y for x, y in zip(ge, delta))
            v = factor * gc
            old = work.get(ne)
            v = -v if old is None else old - v
            if v.is_zero():
                work.pop(ne, None)
            else:
                work[ne] = v
    return Polynomial(ring, remainder, normalized=True)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ring = f.ring
    lmf, lcf = _lead(f, order)
    lmg, lcg = _lead(g, order)
    L = monomial_lcm(lmf, lmg)
    af = tuple(x - y for x, y in zip(L, lmf))
    ag = tuple(x - y for x, y in zip(L, lmg))
    one = ring.coeff(1)
    mf = Polynomial(ring, {af: one / lcf}, normalized=True)
    mg = Polynomial(ring, {ag: one / lcg}, normalized=True)
    return mf * f - mg * g


def buchberger(
    gens: list[Polynomial],
    order: MonomialOrder | None = None,
    limits: Limits | None = None,
) -> list[Polynomial]:
    """Reduced Groebner basis; [] for the zero ideal, [1] for the unit ideal."""
    if limits is None:
        limits = Limits.from_env()
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return []
    ring = nonzero[0].ring
    if order is None:
        order = grevlex(ring.ngeom)

    budget = Budget(limits.max_steps)
    G: list[Polynomial] = []
    seen = set()
    # insert small generators first and pre-reduce: collapses redundant input
    for g in sorted(nonzero, key=lambda f: (f.total_degree(), len(f.terms))):
        h = reduce(g, G, order, budget) if G else g
        if h.is_zero():
            continue
        if h.is_constant():
            return [Polynomial.one(ring)]
        h = make_monic(h, order)
        hk = frozenset(h.terms.items())
        if hk in seen:
            continue
        seen.add(hk)
        G.append(h)

    leads = [_lead(g, order)[0] for g in G]
    pending: set[tuple[int, int]] = set()
    heap: list = []
    for i, j in itertools.combinations(range(len(G)), 2):
        L = monomial_lcm(leads[i], leads[j])
        pending.add((i, j))
        heapq.heappush(heap, (sum(L), (i, j)))

    processed = 0
    while heap:
        _, (i, j) = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > limits.max_pairs:
            raise Inconclusive(f"pair limit {limits.max_pairs} exceeded")
        lmi, lmj = leads[i], leads[j]
        L = monomial_lcm(lmi, lmj)
        if L == tuple(x + y for x, y in zip(lmi, lmj)):
            continue  # coprime leading monomials
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if not monomial_divides(leads[k], L):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        s = s_polynomial(G[i], G[j], order)
        h = reduce(s, G, order, budget)
        if h.is_zero():
            continue
        if h.is_constant():
            return [Polynomial.one(ring)]
        if limits.max_degree is not None and h.total_degree() > limits.max_degree:
            raise Inconclusive(f"degree limit {limits.max_degree} exceeded")
        h = make_monic(h, order)
        G.append(h)
        leads.append(_lead(h, order)[0])
        t = len(G) - 1
        for i2 in range(t):
            L2 = monomial_lcm(leads[i2], leads[t])
            pending.add((i2, t))
            heapq.heappush(heap, (sum(L2), (i2, t)))

    return _interreduce(G, order, budget)


def _interreduce(
    G: list[Polynomial], order: MonomialOrder, budget: Budget | None = None
) -> list[Polynomial]:
    pairs = sorted(((_lead(g, order)[0], g) for g in G), key=lambda t: order.key(t[0]))
    kept: list[tuple[tuple, Polynomial]] = []
    for lm, g in pairs:
        if any(monomial_divides(klm, lm) for klm, _ in kept):
            continue
        kept.append((lm, g))
    polys = [g for _, g in kept]
    reduced = []
    for idx, g in enumerate(polys):
        others = polys[:idx] + polys[idx + 1 :]
        h = reduce(g, others, order, budget) if others else g
        reduced.append(make_monic(h, order))
    reduced.sort(key=lambda f: order.key(_lead(f, order)[0]), reverse=True)
    return reduced


def is_unit_ideal(gens: list[Polynomial], order: MonomialOrder | None = None, limits: Limits | None = None) -> bool:
    G = buchberger(gens, order, limits)
    return len(G) == 1 and G[0].is_constant() and not G[0].is_zero()


def _extend_with_var(ring: RingContext, base: str = "T"):
    name = ring.fresh_name(base)
    return ring.with_extra_geom_vars((name,)), name


def radical_membership(
    g: Polynomial, gens: list[Polynomial], limits: Limits | None = None
) -> bool:
    """True iff g lies in the radical of (gens), by the inverse-variable trick:
    1 belongs to (gens, 1 - T*g)."""
    if g.is_zero():
        return True
    ring = g.ring
    big, tname = _extend_with_var(ring)
    t = Polynomial.variable(big, tname)
    lifted = [f.change_ring(big) for f in gens]
    lifted.append(Polynomial.one(big) - t * g.change_ring(big))
    return is_unit_ideal(lifted, grevlex(big.ngeom), limits)


def saturate(
    gens: list[Polynomial], f: Polynomial, limits: Limits | None = None
) -> list[Polynomial]:
    """Generators of (gens) : f^infinity via elimination of an inverse variable."""
    ring = f.ring
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return []
    big, tname = _extend_with_var(ring)
    t = Polynomial.variable(big, tname)
    lifted = [h.change_ring(big) for h in nonzero]
    lifted.append(Polynomial.one(big) - t * f.change_ring(big))
    order = elimination(big.ngeom, (big.ngeom - 1,))
    G = buchberger(lifted, order, limits)
    ti = big.ngeom - 1
    out = []
    for h in G:
        if all(e[ti] == 0 for e in h.terms):
            out.append(Polynomial(ring, {e[:ti]: c for e, c in h.terms.items()}, normalized=True))
    return out


def dimension(
    gens: list[Polynomial],
    ring: RingContext,
    order: MonomialOrder | None = None,
    limits: Limits | None = None,
) -> int:
    """Krull dimension of the affine zero set over the algebraic closure of
    F_p(params): the largest variable set independent modulo the initial
    ideal.  Returns -1 for the unit ideal, ngeom for the zero ideal."""
    n = ring.ngeom
    if order is None:
        order = grevlex(n)
    G = buchberger(gens, order, limits)
    if not G:
        return n
    if len(G) == 1 and G[0].is_constant():
        return -1
    supports = []
    for g in G:
        lm = _lead(g, order)[0]
        supports.append(frozenset(i for i, x in enumerate(lm) if x))
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            s = frozenset(combo)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def vector_space_dimension(
    gens: list[Polynomial],
    ring: RingContext,
    order: MonomialOrder | None = None,
    limits: Limits | None = None,
) -> int:
    """K-dimension of the quotient by a zero-dimensional ideal (its degree)."""
    n = ring.ngeom
    if order is None:
        order = grevlex(n)
    G = buchberger(gens, order, limits)
    if len(G) == 1 and G[0].is_constant() and not G[0].is_zero():
        return 0
    leads = [_lead(g, order)[0] for g in G]
    caps = [None] * n
    for lm in leads:
        nz = [i for i, x in enumerate(lm) if x]
        if len(nz) == 1:
            i = nz[0]
            if caps[i] is None or lm[i] < caps[i]:
                caps[i] = lm[i]
    if any(c is None for c in caps):
        raise ValueError("ideal is not zero-dimensional")
    count = 0
    for mono in itertools.product(*(range(c) for c in caps)):
        if not any(monomial_divides(lm, mono) for lm in leads):
            count += 1
    return count


def projective_is_empty(
    gens: list[Polynomial], irrelevant: list[str], limits: Limits | None = None
) -> bool:
    """True iff the projective zero set is empty: every irrelevant variable
    lies in the radical, i.e. the affine cone sits inside the vertex."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False  # the zero ideal cuts out the whole (nonempty) space
    ring = gens[0].ring
    for name in irrelevant:
        v = Polynomial.variable(ring, name)
        if not radical_membership(v, gens, limits):
            return False
    return True
