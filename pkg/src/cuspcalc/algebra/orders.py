"""Monomial orders on exponent tuples."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class OrderKind(str, Enum):
    LEX = "Lex"
    DEGREVLEX = "DegRevLex"
    NEGDEGREVLEX = "NegDegRevLex"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``priority`` lists variable indices from most to least significant;
    ``None`` keeps the ring's own variable order.  Orders compare through
    :meth:`key`: a larger key means a larger monomial.
    """

    kind: OrderKind
    priority: tuple[int, ...] | None = None

    @property
    def is_global(self) -> bool:
        return self.kind is not OrderKind.NEGDEGREVLEX

    def _permute(self, exp):
        if self.priority is None:
            return exp
        return tuple(exp[i] for i in self.priority)

    def key(self, exp: tuple[int, ...]):
        e = self._permute(exp)
        if self.kind is OrderKind.LEX:
            return e
        rev = tuple(-x for x in reversed(e))
        if self.kind is OrderKind.DEGREVLEX:
            return (sum(e), rev)
        return (-sum(e), rev)

    def __str__(self):
        return self.kind.value


LEX = MonomialOrder(OrderKind.LEX)
DEGREVLEX = MonomialOrder(OrderKind.DEGREVLEX)
NEGDEGREVLEX = MonomialOrder(OrderKind.NEGDEGREVLEX)


def lex_order(priority: tuple[int, ...]) -> MonomialOrder:
    return MonomialOrder(OrderKind.LEX, tuple(priority))
