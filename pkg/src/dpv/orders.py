"""Monomial orders on geometric exponent tuples.

grevlex is the default everywhere; lex and block elimination orders exist
only because variable elimination needs them.
"""

from __future__ import annotations

from dataclasses import dataclass


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "grevlex" | "lex" | "elim"
    n: int
    block: tuple[int, ...] = ()  # dominant variable slots for "elim"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "elim" and not self.block:
            raise ValueError("elimination order needs a dominant block")

    def key(self, e):
        if self.kind == "grevlex":
            return grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        eb = tuple(e[i] for i in self.block)
        rest = tuple(x for i, x in enumerate(e) if i not in self._blockset())
        return (grevlex_key(eb), grevlex_key(rest))

    def _blockset(self):
        return frozenset(self.block)

    def sort_terms(self, exps, reverse: bool = True):
        return sorted(exps, key=self.key, reverse=reverse)


def grevlex(n: int) -> MonomialOrder:
    return MonomialOrder("grevlex", n)


def lex(n: int) -> MonomialOrder:
    return MonomialOrder("lex", n)


def elimination(n: int, block: tuple[int, ...]) -> MonomialOrder:
    """Block order making the given slots dominant; a leading monomial free
    of the block certifies the whole polynomial is (used for elimination)."""
    return MonomialOrder("elim", n, tuple(sorted(block)))
