"""Base rings for the toolkit.

Everything downstream works over the field F_p(params): geometric polynomial
coefficients are reduced fractions of sparse parameter polynomials.  A
parameter polynomial is a dict mapping exponent tuples (one slot per declared
parameter) to nonzero residues mod p.  Fractions are kept in canonical form
(numerator and denominator coprime, denominator monic under a fixed grevlex
order on the parameters) so that equal field elements compare equal
structurally.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

_WORK = threading.local()


def work_done() -> int:
    """Monotone per-thread counter of coefficient-arithmetic effort, counted
    in term-product units.  Budgeted computations sample it before and after
    a step; raw step counts cannot see gcd or fraction-normalization cost."""
    return getattr(_WORK, "n", 0)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# sparse parameter polynomials: dict[tuple[int, ...], int], values in 1..p-1
# ---------------------------------------------------------------------------

PP = dict  # alias for readability in signatures


def pp_zero() -> PP:
    return {}


def pp_const(c: int, p: int, nvars: int) -> PP:
    c %= p
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def pp_is_const(a: PP) -> bool:
    return len(a) == 0 or (len(a) == 1 and not any(next(iter(a))))


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def pp_lead(a: PP):
    """Leading (exponents, coefficient) under grevlex on the parameters."""
    e = max(a, key=_grevlex_key)
    return e, a[e]


def pp_add(a: PP, b: PP, p: int) -> PP:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pp_neg(a: PP, p: int) -> PP:
    return {e: (-c) % p for e, c in a.items()}


def pp_sub(a: PP, b: PP, p: int) -> PP:
    return pp_add(a, pp_neg(b, p), p)


def pp_scale(a: PP, c: int, p: int) -> PP:
    c %= p
    if c == 0:
        return {}
    if c == 1:
        return a
    return {e: (v * c) % p for e, v in a.items()}


def pp_mul(a: PP, b: PP, p: int) -> PP:
    if not a or not b:
        return {}
    try:
        _WORK.n += len(a) * len(b)
    except AttributeError:
        _WORK.n = len(a) * len(b)
    out: PP = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = (out.get(e, 0) + ca * cb) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pp_pow(a: PP, n: int, p: int) -> PP:
    if n < 0:
        raise ValueError("negative power")
    nv = len(next(iter(a))) if a else 0
    out = pp_const(1, p, nv)
    base = a
    while n:
        if n & 1:
            out = pp_mul(out, base, p)
        base = pp_mul(base, base, p)
        n >>= 1
    return out


def pp_monic(a: PP, p: int) -> PP:
    if not a:
        return a
    _, c = pp_lead(a)
    if c == 1:
        return a
    return pp_scale(a, pow(c, -1, p), p)


def pp_divexact(a: PP, b: PP, p: int) -> PP:
    """Exact division a/b; raises ArithmeticError when b does not divide a."""
    if not b:
        raise ZeroDivisionError("parameter polynomial division by zero")
    if not a:
        return {}
    be, bc = pp_lead(b)
    binv = pow(bc, -1, p)
    q: PP = {}
    r = dict(a)
    while r:
        re, rc = pp_lead(r)
        de = tuple(x - y for x, y in zip(re, be))
        if any(x < 0 for x in de):
            raise ArithmeticError("inexact parameter polynomial division")
        qc = (rc * binv) % p
        q[de] = qc
        r = pp_sub(r, pp_mul({de: qc}, b, p), p)
    return q


def pp_diff(a: PP, i: int, p: int) -> PP:
    out: PP = {}
    for e, c in a.items():
        if e[i] == 0:
            continue
        v = (c * e[i]) % p
        if v:
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            nv = (out.get(ne, 0) + v) % p
            if nv:
                out[ne] = nv
            else:
                out.pop(ne, None)
    return out


def pp_is_pth_power(a: PP, p: int) -> bool:
    return all(all(x % p == 0 for x in e) for e in a)


def pp_pth_root(a: PP, p: int) -> PP:
    """p-th root; valid since c^p = c for c in F_p.  Raises if not a power."""
    if not pp_is_pth_power(a, p):
        raise ArithmeticError("not a p-th power")
    return {tuple(x // p for x in e): c for e, c in a.items()}


def _support_vars(a: PP, b: PP):
    used = set()
    for src in (a, b):
        for e in src:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
    return sorted(used)


def _to_univar(a: PP, i: int):
    """View a as univariate in slot i with parameter-poly coefficients."""
    out: dict[int, PP] = {}
    for e, c in a.items():
        d = e[i]
        ne = e[:i] + (0,) + e[i + 1 :]
        coeff = out.setdefault(d, {})
        coeff[ne] = c
    return out


def _from_univar(u: dict[int, PP], i: int, p: int) -> PP:
    out: PP = {}
    for d, coeff in u.items():
        for e, c in coeff.items():
            ne = e[:i] + (d,) + e[i + 1 :]
            v = (out.get(ne, 0) + c) % p
            if v:
                out[ne] = v
    return out


def _uv_content(u: dict[int, PP], p: int) -> PP:
    g: PP = {}
    for coeff in u.values():
        g = pp_gcd(g, coeff, p)
        if pp_is_const(g) and g:
            return g
    return g


def _uv_primitive(u: dict[int, PP], p: int):
    cont = _uv_content(u, p)
    if not cont or (pp_is_const(cont) and cont[next(iter(cont))] == 1):
        return u, cont
    return {d: pp_divexact(c, cont, p) for d, c in u.items()}, cont


def _uv_prem(a: dict[int, PP], b: dict[int, PP], p: int) -> dict[int, PP]:
    """Pseudo-remainder of a by b in the main variable."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        k = dr - db
        # r <- lb*r - lr*x^k*b
        nr: dict[int, PP] = {}
        for d, c in r.items():
            nr[d] = pp_mul(c, lb, p)
        for d, c in b.items():
            t = pp_mul(c, lr, p)
            nd = d + k
            nr[nd] = pp_sub(nr.get(nd, {}), t, p)
        r = {d: c for d, c in nr.items() if c}
    return r


def _dense_rem(r: list[int], b: list[int], p: int) -> list[int]:
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    r = r[:]
    while len(r) - 1 >= db:
        f = (r[-1] * inv) % p
        k = len(r) - 1 - db
        for j in range(db + 1):
            r[j + k] = (r[j + k] - f * b[j]) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _pp_gcd_one_var(a: PP, b: PP, i: int, p: int) -> PP:
    """Monic Euclidean gcd when only parameter slot i occurs: F_p coefficients
    are invertible, so no pseudo-remainders are needed."""
    nv = len(next(iter(a)))

    def dense(x: PP) -> list[int]:
        out = [0] * (max(e[i] for e in x) + 1)
        for e, c in x.items():
            out[e[i]] = c % p
        return out

    fa, fb = dense(a), dense(b)
    try:
        _WORK.n += len(fa) * len(fb)
    except AttributeError:
        _WORK.n = len(fa) * len(fb)
    while fb:
        fa, fb = fb, _dense_rem(fa, fb, p)
    inv = pow(fa[-1], -1, p)
    out: PP = {}
    for d, c in enumerate(fa):
        v = (c * inv) % p
        if v:
            out[(0,) * i + (d,) + (0,) * (nv - i - 1)] = v
    return out


def pp_gcd(a: PP, b: PP, p: int) -> PP:
    """Monic gcd via content/primitive-part recursion and pseudo-remainders;
    single-variable operands take a dense Euclidean shortcut."""
    if not a:
        return pp_monic(b, p)
    if not b:
        return pp_monic(a, p)
    if pp_is_const(a) or pp_is_const(b):
        nv = len(next(iter(a)))
        return pp_const(1, p, nv)
    if a == b:
        return pp_monic(a, p)
    used = _support_vars(a, b)
    if len(used) == 1:
        return _pp_gcd_one_var(a, b, used[0], p)
    main = used[-1]
    ua, ub = _to_univar(a, main), _to_univar(b, main)
    pa, ca = _uv_primitive(ua, p)
    pb, cb = _uv_primitive(ub, p)
    cont = pp_gcd(ca, cb, p)
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        if not pb:
            g = pa
            break
        if max(pb) == 0:
            g = {0: pp_const(1, p, len(next(iter(a))))}
            break
        r = _uv_prem(pa, pb, p)
        r, _ = _uv_primitive(r, p)
        pa, pb = pb, r
    gp = _from_univar(g, main, p)
    return pp_monic(pp_mul(cont, gp, p), p)


# ---------------------------------------------------------------------------
# fraction field F_p(params)
# ---------------------------------------------------------------------------


class Coefficient:
    """A reduced fraction of parameter polynomials over F_p.

    The denominator is monic, numerator and denominator are coprime, so the
    representation is canonical and __eq__ is structural.
    """

    __slots__ = ("p", "num", "den", "_hash")

    def __init__(self, p: int, num: PP, den: PP, reduced: bool = False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                den = {_zexp(den): 1}
            else:
                g = pp_gcd(num, den, p)
                if not pp_is_const(g):
                    num = pp_divexact(num, g, p)
                    den = pp_divexact(den, g, p)
                _, lc = pp_lead(den)
                if lc != 1:
                    inv = pow(lc, -1, p)
                    num = pp_scale(num, inv, p)
                    den = pp_scale(den, inv, p)
        self.p = p
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, nparams: int) -> "Coefficient":
        return cls(p, {}, {(0,) * nparams: 1}, reduced=True)

    @classmethod
    def from_const(cls, c: int, p: int, nparams: int) -> "Coefficient":
        return cls(p, pp_const(c, p, nparams), {(0,) * nparams: 1}, reduced=True)

    @classmethod
    def from_param(cls, i: int, p: int, nparams: int) -> "Coefficient":
        e = tuple(1 if j == i else 0 for j in range(nparams))
        return cls(p, {e: 1}, {(0,) * nparams: 1}, reduced=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return pp_is_const(self.den) and self.num == self.den

    def is_const(self) -> bool:
        return pp_is_const(self.num) and pp_is_const(self.den)

    def is_polynomial(self) -> bool:
        return pp_is_const(self.den)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Coefficient") -> "Coefficient":
        p = self.p
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return Coefficient(p, pp_add(self.num, other.num, p), self.den)
        num = pp_add(
            pp_mul(self.num, other.den, p), pp_mul(other.num, self.den, p), p
        )
        return Coefficient(p, num, pp_mul(self.den, other.den, p))

    def __neg__(self) -> "Coefficient":
        return Coefficient(self.p, pp_neg(self.num, self.p), self.den, reduced=True)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        p = self.p
        if not self.num or not other.num:
            return Coefficient.zero(p, _nparams_of(self))
        num = pp_mul(self.num, other.num, p)
        den = pp_mul(self.den, other.den, p)
        return Coefficient(p, num, den)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        if not other.num:
            raise ZeroDivisionError("division by zero coefficient")
        p = self.p
        num = pp_mul(self.num, other.den, p)
        den = pp_mul(self.den, other.num, p)
        return Coefficient(p, num, den)

    def inverse(self) -> "Coefficient":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Coefficient(self.p, self.den, self.num)

    # -- calculus ------------------------------------------------------------

    def diff(self, i: int) -> "Coefficient":
        """Derivative with respect to parameter slot i (quotient rule)."""
        p = self.p
        dn = pp_diff(self.num, i, p)
        dd = pp_diff(self.den, i, p)
        num = pp_sub(pp_mul(dn, self.den, p), pp_mul(self.num, dd, p), p)
        den = pp_mul(self.den, self.den, p)
        return Coefficient(p, num, den)

    def pth_root(self) -> "Coefficient":
        p = self.p
        return Coefficient(
            p, pp_pth_root(self.num, p), pp_pth_root(self.den, p), reduced=True
        )

    def is_pth_power(self) -> bool:
        return pp_is_pth_power(self.num, self.p) and pp_is_pth_power(self.den, self.p)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coefficient)
            and self.p == other.p
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.p, frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    def __repr__(self):
        return f"Coefficient({self.format(None)})"

    def format(self, names) -> str:
        num = format_pp(self.num, names)
        if pp_is_const(self.den):
            return num
        den = format_pp(self.den, names)
        ns = num if (len(self.num) == 1 and "+" not in num) else f"({num})"
        ds = den if (len(self.den) == 1 and "+" not in den) else f"({den})"
        return f"{ns}/{ds}"


def _zexp(a: PP):
    return (0,) * len(next(iter(a)))


def _nparams_of(c: Coefficient) -> int:
    return len(next(iter(c.den)))


def format_pp(a: PP, names) -> str:
    if not a:
        return "0"
    parts = []
    for e in sorted(a, key=_grevlex_key, reverse=True):
        c = a[e]
        factors = []
        if c != 1 or not any(e):
            factors.append(str(c))
        for i, x in enumerate(e):
            if x == 0:
                continue
            nm = names[i] if names else f"p{i}"
            factors.append(nm if x == 1 else f"{nm}^{x}")
        parts.append("*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# ring context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingContext:
    """Declares the ambient polynomial ring: characteristic, geometric
    variables with weights, parameter variables, and an optional multigrading
    (tuple of weight rows).  grading=None means the single row given by the
    weights; grading=() marks an ungraded (affine chart) ring.
    """

    p: int
    geom: tuple[str, ...]
    weights: tuple[int, ...]
    params: tuple[str, ...] = ()
    grading: tuple[tuple[int, ...], ...] | None = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        names = self.geom + self.params
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if len(self.weights) != len(self.geom):
            raise ValueError("one weight per geometric variable required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.grading is not None:
            for row in self.grading:
                if len(row) != len(self.geom):
                    raise ValueError("grading row length mismatch")

    # -- lookups -------------------------------------------------------------

    @property
    def ngeom(self) -> int:
        return len(self.geom)

    @property
    def nparams(self) -> int:
        return len(self.params)

    def effective_grading(self) -> tuple[tuple[int, ...], ...]:
        if self.grading is None:
            return (self.weights,)
        return self.grading

    def geom_index(self, name: str) -> int:
        try:
            return self.geom.index(name)
        except ValueError:
            raise KeyError(f"no geometric variable {name!r}") from None

    def param_index(self, name: str) -> int:
        try:
            return self.params.index(name)
        except ValueError:
            raise KeyError(f"no parameter {name!r}") from None

    # -- coefficient helpers ------------------------------------------------

    def coeff_zero(self) -> Coefficient:
        return Coefficient.zero(self.p, self.nparams)

    def coeff(self, c: int) -> Coefficient:
        return Coefficient.from_const(c, self.p, self.nparams)

    def coeff_param(self, name: str) -> Coefficient:
        return Coefficient.from_param(self.param_index(name), self.p, self.nparams)

    # -- derived rings -------------------------------------------------------

    def without_geom_var(self, name: str) -> "RingContext":
        i = self.geom_index(name)
        return RingContext(
            p=self.p,
            geom=self.geom[:i] + self.geom[i + 1 :],
            weights=self.weights[:i] + self.weights[i + 1 :],
            params=self.params,
            grading=(),
        )

    def with_extra_geom_vars(self, names: tuple[str, ...]) -> "RingContext":
        return RingContext(
            p=self.p,
            geom=self.geom + tuple(names),
            weights=self.weights + (1,) * len(names),
            params=self.params,
            grading=(),
        )

    def fresh_name(self, base: str) -> str:
        taken = set(self.geom) | set(self.params)
        name = base
        while name in taken:
            name += "_"
        return name
