"""Text grammar for rings, polynomials, and surface-model declarations.

Ring declaration:

    ring p=3 geom x0:1 x1:1 y:2 z:3 params s0 s1 s2 s3

Polynomial expressions are whitespace-insensitive, use ^ for powers and
require explicit *; identifiers may contain apostrophes (x').  Model texts
stack further declarations on top of a ring line:

    ambient wproj                      # weights taken from the ring
    ambient multiproj 2 1              # factor dimensions, all weights 1
    hypersurface EXPR
    extrachart name=U coords x0 x1 u invert u eq EXPR
    blowup parent=ID chart=NAME center EXPR ; EXPR
    localize EXPR
    doublecover bidegree 1 1 section EXPR
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .poly import Polynomial
from .ring import RingContext

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*|\d+|\^|\+|\-|\*|/|\(|\))")


def tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad character in expression: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, ring: RingContext, tokens: list[str]):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, t):
        got = self.next()
        if got != t:
            raise ValueError(f"expected {t!r}, got {got!r}")

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens: {self.toks[self.i:]}")
        return f

    def expr(self) -> Polynomial:
        if self.peek() == "-":
            self.next()
            f = -self.term()
        else:
            f = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            g = self.factor()
            if op == "*":
                f = f * g
                continue
            # division only by invertible scalars, i.e. parameter expressions
            if not g.is_unit_constant():
                raise ValueError(f"cannot divide by {g}")
            f = f * g.constant_coefficient().inverse()
        return f

    def factor(self) -> Polynomial:
        f = self.atom()
        if self.peek() == "^":
            self.next()
            n = self.next()
            if n is None or not n.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            f = f ** int(n)
        return f

    def atom(self) -> Polynomial:
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            f = self.expr()
            self.expect(")")
            return f
        if t.isdigit():
            return Polynomial.constant(self.ring, int(t))
        if t in self.ring.geom or t in self.ring.params:
            return Polynomial.variable(self.ring, t)
        raise ValueError(f"unknown variable {t!r}")


def parse_poly(ring: RingContext, text: str) -> Polynomial:
    return _ExprParser(ring, tokenize(text)).parse()


def parse_ring(line: str) -> RingContext:
    words = line.split()
    if not words or words[0] != "ring":
        raise ValueError("ring declaration must start with 'ring'")
    if len(words) < 2 or not words[1].startswith("p="):
        raise ValueError("ring declaration needs p=<prime>")
    p = int(words[1][2:])
    geom: list[str] = []
    weights: list[int] = []
    params: list[str] = []
    section = None
    for w in words[2:]:
        if w == "geom":
            section = "geom"
        elif w == "params":
            section = "params"
        elif section == "geom":
            if ":" in w:
                name, wt = w.split(":", 1)
                geom.append(name)
                weights.append(int(wt))
            else:
                geom.append(w)
                weights.append(1)
        elif section == "params":
            params.append(w)
        else:
            raise ValueError(f"unexpected token {w!r} in ring declaration")
    return RingContext(p=p, geom=tuple(geom), weights=tuple(weights), params=tuple(params))


def parse_ideal_lines(ring: RingContext, text: str) -> list[Polynomial]:
    """Polynomial-per-line format; 'poly NAME = EXPR' and bare EXPR both work."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring "):
            continue
        if line.startswith("poly "):
            _, rest = line.split(" ", 1)
            if "=" not in rest:
                raise ValueError(f"malformed poly line: {raw!r}")
            rest = rest.split("=", 1)[1]
            out.append(parse_poly(ring, rest))
        else:
            out.append(parse_poly(ring, line))
    return out


# ---------------------------------------------------------------------------
# model declarations
# ---------------------------------------------------------------------------


@dataclass
class ExtraChartDecl:
    name: str
    coords: tuple[str, ...]
    invert: tuple[str, ...]
    equations: tuple[str, ...]


@dataclass
class ModelDecl:
    ring: RingContext
    ambient: str | None = None  # "wproj" | "multiproj"
    factors: tuple[int, ...] = ()
    hypersurfaces: tuple[Polynomial, ...] = ()
    blowup_parent: str | None = None
    blowup_chart: str | None = None
    blowup_center: tuple[str, str] | None = None  # raw texts, parsed in the chart ring
    localize: str | None = None
    cover_bidegree: tuple[int, int] | None = None
    cover_section: Polynomial | None = None
    extra_chart_decls: tuple[ExtraChartDecl, ...] = field(default=())


def parse_model(text: str) -> ModelDecl:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("ring "):
        raise ValueError("model text must start with a ring declaration")
    ring = parse_ring(lines[0])
    decl = ModelDecl(ring=ring)
    hyps: list[Polynomial] = []
    charts: list[ExtraChartDecl] = []
    for line in lines[1:]:
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "ambient":
            words = rest.split()
            decl.ambient = words[0]
            decl.factors = tuple(int(w) for w in words[1:])
            if decl.ambient == "multiproj":
                if sum(decl.factors) + len(decl.factors) != ring.ngeom:
                    raise ValueError("factor dimensions do not match the ring")
                rows = []
                start = 0
                for d in decl.factors:
                    row = [0] * ring.ngeom
                    for i in range(start, start + d + 1):
                        row[i] = 1
                    rows.append(tuple(row))
                    start += d + 1
                decl.ring = replace(ring, grading=tuple(rows))
                ring = decl.ring
        elif head == "hypersurface":
            hyps.append(parse_poly(ring, rest))
        elif head == "extrachart":
            charts.append(_parse_extrachart(rest))
        elif head == "blowup":
            _parse_blowup(decl, rest)
        elif head == "localize":
            decl.localize = rest
        elif head == "doublecover":
            _parse_doublecover(decl, ring, rest)
        else:
            raise ValueError(f"unknown model declaration {head!r}")
    decl.hypersurfaces = tuple(hyps)
    decl.extra_chart_decls = tuple(charts)
    return decl


def _parse_extrachart(rest: str) -> ExtraChartDecl:
    if " eq " not in rest:
        raise ValueError("extrachart needs an 'eq' expression")
    headpart, eq_text = rest.split(" eq ", 1)
    words = headpart.split()
    name = None
    coords: list[str] = []
    invert: list[str] = []
    section = None
    for w in words:
        if w.startswith("name="):
            name = w[5:]
        elif w == "coords":
            section = "coords"
        elif w == "invert":
            section = "invert"
        elif section == "coords":
            coords.append(w)
        elif section == "invert":
            invert.append(w)
        else:
            raise ValueError(f"unexpected token {w!r} in extrachart")
    return ExtraChartDecl(
        name=name or "extra",
        coords=tuple(coords),
        invert=tuple(invert),
        equations=(eq_text.strip(),),
    )


def _parse_blowup(decl: ModelDecl, rest: str) -> None:
    words = rest.split()
    center_idx = None
    for i, w in enumerate(words):
        if w.startswith("parent="):
            decl.blowup_parent = w[7:]
        elif w.startswith("chart="):
            decl.blowup_chart = w[6:]
        elif w == "center":
            center_idx = i
            break
        else:
            raise ValueError(f"unexpected token {w!r} in blowup")
    if center_idx is None:
        raise ValueError("blowup needs a center")
    center_text = rest.split("center", 1)[1]
    parts = [s.strip() for s in center_text.split(";")]
    if len(parts) != 2:
        raise ValueError("blowup center takes exactly two generators")
    # store the raw texts; the builder parses them in the chart ring
    decl.blowup_center = tuple(parts)  # type: ignore[assignment]


def _parse_doublecover(decl: ModelDecl, ring: RingContext, rest: str) -> None:
    words = rest.split()
    if words[0] != "bidegree":
        raise ValueError("doublecover starts with bidegree")
    b1, b2 = int(words[1]), int(words[2])
    if words[3] != "section":
        raise ValueError("doublecover needs a section")
    sec = rest.split("section", 1)[1].strip()
    decl.cover_bidegree = (b1, b2)
    decl.cover_section = parse_poly(ring, sec)
