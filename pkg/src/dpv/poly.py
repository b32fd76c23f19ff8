"""Sparse multivariate polynomials in geometric variables over F_p(params).

Terms map geometric exponent tuples to Coefficient fractions.  Derivations
exist for both variable sorts: geometric variables differentiate the
monomials, parameter variables differentiate the coefficients by the quotient
rule.  Characteristic-p annihilation (d/dx of x^p) falls out of the mod-p
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orders import grevlex_key
from .ring import Coefficient, RingContext

INHOMOGENEOUS = "inhomogeneous"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: dict | None = None, normalized: bool = False):
        self.ring = ring
        if terms is None:
            terms = {}
        if not normalized:
            terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.terms = terms
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingContext) -> "Polynomial":
        return cls(ring, {}, normalized=True)

    @classmethod
    def one(cls, ring: RingContext) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def constant(cls, ring: RingContext, c) -> "Polynomial":
        if isinstance(c, int):
            c = ring.coeff(c)
        if c.is_zero():
            return cls.zero(ring)
        return cls(ring, {(0,) * ring.ngeom: c}, normalized=True)

    @classmethod
    def variable(cls, ring: RingContext, name: str) -> "Polynomial":
        if name in ring.geom:
            i = ring.geom_index(name)
            e = tuple(1 if j == i else 0 for j in range(ring.ngeom))
            return cls(ring, {e: ring.coeff(1)}, normalized=True)
        return cls.constant(ring, ring.coeff_param(name))

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.ngeom, self.ring.coeff_zero())

    def is_unit_constant(self) -> bool:
        return self.is_constant() and not self.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, Coefficient):
            return Polynomial.constant(self.ring, other)
        if isinstance(other, int):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.ring, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(
            self.ring, {e: -c for e, c in self.terms.items()}, normalized=True
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (Coefficient, int)):
            c = other if isinstance(other, Coefficient) else self.ring.coeff(other)
            if c.is_zero():
                return Polynomial.zero(self.ring)
            return Polynomial(
                self.ring, {e: v * c for e, v in self.terms.items()}, normalized=True
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                old = out.get(e)
                v = v if old is None else old + v
                if v.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = v
        return Polynomial(self.ring, out, normalized=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Coefficient) -> "Polynomial":
        return self * c

    # -- calculus -------------------------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        ring = self.ring
        if name in ring.geom:
            i = ring.geom_index(name)
            out: dict = {}
            for e, c in self.terms.items():
                k = e[i]
                if k == 0:
                    continue
                v = c * ring.coeff(k)
                if v.is_zero():
                    continue
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                old = out.get(ne)
                v = v if old is None else old + v
                if v.is_zero():
                    out.pop(ne, None)
                else:
                    out[ne] = v
            return Polynomial(ring, out, normalized=True)
        j = ring.param_index(name)
        out = {}
        for e, c in self.terms.items():
            v = c.diff(j)
            if not v.is_zero():
                out[e] = v
        return Polynomial(ring, out, normalized=True)

    def pth_root(self) -> "Polynomial":
        """Inverse Frobenius; requires every geometric exponent divisible by p
        and every coefficient a p-th power in F_p(params)."""
        ring = self.ring
        p = ring.p
        out: dict = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                raise ArithmeticError("geometric exponents not divisible by p")
            out[tuple(x // p for x in e)] = c.pth_root()
        return Polynomial(ring, out, normalized=True)

    def is_pth_power(self) -> bool:
        p = self.ring.p
        return all(
            all(x % p == 0 for x in e) and c.is_pth_power()
            for e, c in self.terms.items()
        )

    # -- substitution ----------------------------------------------------------

    def substitute(self, assignments: dict, target_ring: RingContext | None = None) -> "Polynomial":
        """Simultaneous substitution.  Geometric variables map to Polynomials
        (or ints/Coefficients), parameters map to Coefficients; unmapped
        variables must exist by name in the target ring."""
        ring = self.ring
        if target_ring is None:
            target_ring = ring
            for v in assignments.values():
                if isinstance(v, Polynomial):
                    target_ring = v.ring
                    break
        used_geom = set()
        used_params = set()
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k:
                    used_geom.add(i)
            for mon in list(c.num) + list(c.den):
                for j, k in enumerate(mon):
                    if k:
                        used_params.add(j)
        geom_targets: list[Polynomial | None] = []
        for i, name in enumerate(ring.geom):
            val = assignments.get(name)
            if val is None:
                if i not in used_geom:
                    geom_targets.append(None)
                    continue
                val = Polynomial.variable(target_ring, name)
            elif isinstance(val, (int, Coefficient)):
                val = Polynomial.constant(
                    target_ring,
                    val if isinstance(val, Coefficient) else target_ring.coeff(val),
                )
            elif val.ring != target_ring:
                raise ValueError("substitution targets live in different rings")
            geom_targets.append(val)
        param_targets: list[Coefficient | None] = []
        for j, name in enumerate(ring.params):
            val = assignments.get(name)
            if val is None:
                if j not in used_params:
                    param_targets.append(None)
                    continue
                val = target_ring.coeff_param(name)
            elif isinstance(val, int):
                val = target_ring.coeff(val)
            elif isinstance(val, Polynomial):
                raise ValueError("parameters may only map to coefficients")
            param_targets.append(val)

        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def vpow(i: int, k: int) -> Polynomial:
            key = (i, k)
            got = pow_cache.get(key)
            if got is None:
                got = geom_targets[i] ** k
                pow_cache[key] = got
            return got

        result = Polynomial.zero(target_ring)
        for e, c in self.terms.items():
            cc = _substitute_coeff(c, param_targets, target_ring)
            if cc.is_zero():
                continue
            term = Polynomial.constant(target_ring, cc)
            for i, k in enumerate(e):
                if k:
                    term = term * vpow(i, k)
            result = result + term
        return result

    def change_ring(self, ring: RingContext) -> "Polynomial":
        """Rename-free embedding into a ring containing the same variables."""
        return self.substitute({}, target_ring=ring)

    def dehomogenize(self, name: str) -> "Polynomial":
        """Set a weight-1 geometric variable to 1 and drop it from the ring."""
        ring = self.ring
        i = ring.geom_index(name)
        if ring.weights[i] != 1:
            raise ValueError("dehomogenization requires a weight-1 variable")
        new_ring = ring.without_geom_var(name)
        out: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1 :]
            old = out.get(ne)
            v = c if old is None else old + c
            if v.is_zero():
                out.pop(ne, None)
            else:
                out[ne] = v
        return Polynomial(new_ring, out, normalized=True)

    # -- grading ---------------------------------------------------------------

    def weighted_degree(self):
        """Degree under the ring grading: an int for a single grading row, a
        tuple for a multigrading, INHOMOGENEOUS when terms disagree."""
        grading = self.ring.effective_grading()
        if self.is_zero():
            return tuple(0 for _ in grading) if len(grading) > 1 else 0
        degs = None
        for e in self.terms:
            d = tuple(sum(x * w for x, w in zip(e, row)) for row in grading)
            if degs is None:
                degs = d
            elif degs != d:
                return INHOMOGENEOUS
        return degs if len(grading) > 1 else degs[0]

    def total_degree(self) -> int:
        if self.is_zero():
            return 0
        return max(sum(e) for e in self.terms)

    # -- plumbing ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.params
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = []
            for i, x in enumerate(e):
                if x == 0:
                    continue
                nm = self.ring.geom[i]
                mono.append(nm if x == 1 else f"{nm}^{x}")
            cs = c.format(names)
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append("*".join(mono))
            else:
                if "+" in cs or ("/" in cs and not cs.startswith("(")):
                    cs = f"({cs})"
                parts.append("*".join([cs] + mono))
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


@dataclass(frozen=True)
class Substitution:
    """A named bundle of substitution targets, applied with .apply(f)."""

    assignments: tuple[tuple[str, object], ...]
    target_ring: RingContext | None = None

    def apply(self, f: Polynomial) -> Polynomial:
        return f.substitute(dict(self.assignments), target_ring=self.target_ring)


def _substitute_coeff(c: Coefficient, targets: list[Coefficient], ring: RingContext) -> Coefficient:
    num = _eval_pp(c.num, targets, ring)
    den = _eval_pp(c.den, targets, ring)
    return num / den


def _eval_pp(a: dict, targets: list[Coefficient], ring: RingContext) -> Coefficient:
    total = ring.coeff_zero()
    for e, cv in a.items():
        part = ring.coeff(cv)
        for i, k in enumerate(e):
            if k:
                base = targets[i]
                for _ in range(k):
                    part = part * base
        total = total + part
    return total


def arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Binary arithmetic with an explicit operation name."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
