"""E1 page of the fixed-point Floer spectral sequence and the quantities read off it.

The page is assembled from cover homology: divisor ``i`` in ``S_m`` with
``k_i = m / ord_i`` contributes ``H_d`` of its cover in column ``p = -k_i w_i``
and total degree ``p + q = n - 2 k_i (a_i + 1) - d``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MissingData, NotSeparating
from .invariants import hf_euler, md_plus, multiplicity, s_m
from .model import INF, ResolutionData
from .separating import is_separating

HF_VANISHES = "HF-vanishes"


@dataclass(frozen=True)
class E1Entry:
    p: int
    q: int
    divisor: str
    homology_degree: int
    rank: int

    @property
    def total_degree(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class E1Page:
    m: int
    n: int
    entries: tuple[E1Entry, ...]
    weights: dict = field(default_factory=dict)
    weights_defaulted: bool = False

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "weights": dict(sorted(self.weights.items())),
            "weights_defaulted": self.weights_defaulted,
            "entries": [
                {"p": e.p, "q": e.q, "divisor": e.divisor, "degree": e.homology_degree, "rank": e.rank}
                for e in self.entries
            ],
        }


@dataclass(frozen=True)
class DegenerationReport:
    top_total_degree: int | float
    column_tops: dict
    hypothesis_holds: bool
    conclusion: str  # "nonzero-at-top" | "vanishes" | "inconclusive"

    def to_json(self) -> dict:
        top = self.top_total_degree
        return {
            "top_total_degree": None if top == -INF else top,
            "column_tops": {str(p): k for p, k in sorted(self.column_tops.items())},
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion": self.conclusion,
        }


def _require_separating(resolution, m):
    if not is_separating(resolution, m):
        raise NotSeparating(f"resolution is not multiplicity-{m} separating; run separate -m {m}")


def mu(resolution: ResolutionData, m: int):
    _require_separating(resolution, m)
    by_id = resolution.by_id
    values = [(m // by_id[i].ord) * (by_id[i].discrepancy + 1) for i in s_m(resolution, m)]
    return min(values, default=INF)


def nu(resolution: ResolutionData, m: int):
    """Top nonvanishing Floer degree ``n - 2 mu``, or :data:`HF_VANISHES`."""
    value = mu(resolution, m)
    if value == INF:
        return HF_VANISHES
    return resolution.n - 2 * value


def e1_page(resolution: ResolutionData, m: int, weights: dict | None = None) -> E1Page:
    _require_separating(resolution, m)
    by_id = resolution.by_id
    members = sorted(s_m(resolution, m))
    chosen: dict[str, int] = {}
    defaulted = False
    for i in members:
        if weights and i in weights:
            w = weights[i]
        elif by_id[i].weight is not None:
            w = by_id[i].weight
        else:
            w = 1
            defaulted = True
        if w < 1:
            raise ValueError(f"weight of {i!r} must be positive")
        chosen[i] = w
    entries = []
    n = resolution.n
    for i in members:
        d = by_id[i]
        if d.cover_betti is None:
            raise MissingData(f"divisor {i!r} has no cover homology; run from-poly or supply cover data")
        k = m // d.ord
        p = -k * chosen[i]
        for degree, rank in enumerate(d.cover_betti):
            if rank == 0:
                continue
            q = n - p - 2 * k * (d.discrepancy + 1) - degree
            entries.append(E1Entry(p, q, i, degree, rank))
    entries.sort(key=lambda e: (e.p, -e.q, e.divisor))
    return E1Page(m, n, tuple(entries), chosen, defaulted)


def page_euler(page: E1Page) -> int:
    return sum(-e.rank if (e.p + e.q) % 2 else e.rank for e in page.entries)


def e1_euler_check(page: E1Page, resolution: ResolutionData) -> tuple[int, bool]:
    euler = page_euler(page)
    return euler, euler == hf_euler(resolution, page.m)


def degeneration_check(page: E1Page) -> DegenerationReport:
    """Apply the top-degree survival lemma to the support of an E1 page."""
    nonzero = [e for e in page.entries if e.rank > 0]
    if not nonzero:
        return DegenerationReport(-INF, {}, True, "vanishes")
    top = max(e.total_degree for e in nonzero)
    column_tops: dict[int, int] = {}
    for e in nonzero:
        column_tops[e.p] = max(column_tops.get(e.p, e.total_degree), e.total_degree)
    holds = all(k != top - 1 for k in column_tops.values())
    return DegenerationReport(top, column_tops, holds, "nonzero-at-top" if holds else "inconclusive")


def multiplicity_via_floer(resolution: ResolutionData) -> int:
    """Smallest m at which the Floer group is nonzero, i.e. ``md_plus`` is finite."""
    bound = multiplicity(resolution)
    for m in range(1, bound + 1):
        if md_plus(resolution, m) != INF:
            return m
    raise AssertionError("md_plus must be finite at the minimal order")


def lct_via_floer(resolution: ResolutionData, m_max: int) -> Fraction:
    """Truncated liminf: ``min over m <= m_max of min(1, md_plus(m)/m)``."""
    if m_max < 1:
        raise ValueError("m_max must be positive")
    best = Fraction(1)
    for m in range(1, m_max + 1):
        value = md_plus(resolution, m)
        if value != INF:
            best = min(best, Fraction(value, m))
    return best


def total_degree_bound(resolution: ResolutionData, m: int):
    """``nu`` as an integer or ``-inf``; convenient for comparisons with page tops."""
    value = nu(resolution, m)
    return -math.inf if value == HF_VANISHES else value
