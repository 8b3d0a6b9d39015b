"""Well-behaved width measures.

A well-behaved measure assigns a value to every vertex set of a hypergraph
and satisfies five axioms (unit singletons, subadditivity, additivity across
non-adjacent parts, monotonicity, bounded-budget decidability).  Two concrete
instances are provided: independence number of the Gaifman graph (alpha) and
edge cover number (rho).  rho* (fractional cover) is declared but not
implemented; it would need exact rational LP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .decomposition import _alpha_at_least, alpha_set, rho_set
from .errors import InputError
from .hypergraph import Hypergraph


class _CapExceeded:
    """Marker returned by measure_value when no k <= cap decides true."""

    __slots__ = ()

    def __repr__(self):
        return "CAP_EXCEEDED"


CAP_EXCEEDED = _CapExceeded()


@dataclass(frozen=True)
class WellBehavedMeasure:
    name: str
    decide_fn: Callable[[Hypergraph, int, int], bool]
    value_fn: Callable[[Hypergraph, int], object]

    def decide(self, h: Hypergraph, s: int, k: int) -> bool:
        """True iff the measure of S in H is at most k."""
        if s & ~h.vertex_mask:
            raise InputError("S contains an unknown vertex id")
        if k < 0:
            return False
        return self.decide_fn(h, s, k)

    def value(self, h: Hypergraph, s: int):
        """Exact measure of S (int, or math.inf for undefined rho)."""
        if s & ~h.vertex_mask:
            raise InputError("S contains an unknown vertex id")
        return self.value_fn(h, s)


def alpha_decide(h: Hypergraph, s: int, k: int) -> bool:
    """True iff the Gaifman graph has no independent (k+1)-subset of S."""
    return not _alpha_at_least(h.gaifman_adj(), s, k + 1)


def rho_decide(h: Hypergraph, s: int, k: int) -> bool:
    """True iff k edges of H cover S; false for every k if S is uncoverable."""
    val = rho_set(h, s, cap=k)
    return val is not math.inf and val <= k


def _rho_value(h: Hypergraph, s: int):
    v = rho_set(h, s)
    return math.inf if v == float("inf") else v


ALPHA = WellBehavedMeasure("alpha", alpha_decide, lambda h, s: alpha_set(h, s))
RHO = WellBehavedMeasure("rho", rho_decide, _rho_value)

MEASURES = {"alpha": ALPHA, "rho": RHO}


def get_measure(name: str) -> WellBehavedMeasure:
    try:
        return MEASURES[name]
    except KeyError:
        raise InputError(f"unknown measure {name!r}; pick one of {sorted(MEASURES)}")


def measure_value(m: WellBehavedMeasure, h: Hypergraph, s: int, cap: int):
    """Least k <= cap with decide true, or the CAP_EXCEEDED marker."""
    if cap < 0:
        raise InputError("cap must be nonnegative")
    for k in range(cap + 1):
        if m.decide(h, s, k):
            return k
    return CAP_EXCEEDED


@dataclass
class MeasureContext:
    """A hypergraph paired with a measure and a memo of exact values."""

    h: Hypergraph
    measure: WellBehavedMeasure
    _memo: dict = field(default_factory=dict)

    def value(self, s: int):
        got = self._memo.get(s)
        if got is None:
            got = self._memo[s] = self.measure.value(self.h, s)
        return got

    def at_most(self, s: int, k) -> bool:
        got = self._memo.get(s)
        if got is not None:
            return got <= k
        return self.measure.decide(self.h, s, k) if isinstance(k, int) \
            else self.value(s) <= k
