"""Blowups along pair strata and the loop producing multiplicity-m separating resolutions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import OutOfScope, UnknownStratum
from .model import INF, DivisorRecord, ResolutionData


@dataclass(frozen=True)
class PairSumReport:
    a_Y: int | float
    b_Y: int
    witnesses: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class BlowupStep:
    pair: tuple[str, str]
    components: int
    new_divisors: tuple[tuple[str, int, int], ...]  # (id, ord, discrepancy)

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "components": self.components,
            "new_divisors": [
                {"id": i, "ord": o, "discrepancy": a} for i, o, a in self.new_divisors
            ],
        }


@dataclass(frozen=True)
class BlowupTrace:
    steps: tuple[BlowupStep, ...] = field(default_factory=tuple)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def is_separating(resolution: ResolutionData, m: int) -> bool:
    """True when every intersecting pair of divisors has order sum greater than m."""
    by_id = resolution.by_id
    return all(
        sum(by_id[i].ord for i in pair) > m for pair in resolution.pairs()
    )


def min_pair_sum(resolution: ResolutionData) -> PairSumReport:
    by_id = resolution.by_id
    sums = {pair: sum(by_id[i].ord for i in pair) for pair in resolution.pairs()}
    if not sums:
        return PairSumReport(INF, 0, ())
    a_y = min(sums.values())
    achieving = sorted(tuple(sorted(p)) for p, s in sums.items() if s == a_y)
    b_y = sum(resolution.strata[frozenset(p)] for p in achieving)
    return PairSumReport(a_y, b_y, tuple(achieving))


def _fresh_ids(existing, count):
    out = []
    k = 1
    while len(out) < count:
        candidate = f"X{k}"
        if candidate not in existing:
            out.append(candidate)
        k += 1
    return out


def blow_up_pair(resolution: ResolutionData, pair, count: int | str = "all") -> ResolutionData:
    """Blow up ``count`` connected components of the stratum ``E_i ∩ E_j``.

    Each blown-up component becomes a new exceptional divisor with order
    ``ord_i + ord_j`` and discrepancy ``a_i + a_j + 1``, meeting ``E_i`` and
    ``E_j`` once each and nothing else.
    """
    return _blow_up(resolution, pair, count)[0]


def _blow_up(resolution, pair, count):
    key = frozenset(pair)
    if len(key) != 2 or key not in resolution.strata:
        raise UnknownStratum(f"no pair stratum {sorted(key)} in the nerve")
    available = resolution.strata[key]
    if count == "all":
        count = available
    if not isinstance(count, int) or not 1 <= count <= available:
        raise ValueError(f"count must be 'all' or between 1 and {available}, got {count!r}")
    if resolution.n >= 2:
        blocking = sorted(sorted(s) for s in resolution.strata if len(s) >= 3 and key < s)
        if blocking:
            raise OutOfScope(
                f"pair {sorted(key)} lies in higher strata {blocking}; "
                "component-level incidence is needed to blow it up"
            )
    by_id = resolution.by_id
    i, j = sorted(key)
    di, dj = by_id[i], by_id[j]
    new_ord = di.ord + dj.ord
    new_a = di.discrepancy + dj.discrepancy + 1

    # A cover of the new divisor is only known for curves (gcd rule).
    components = betti = None
    has_cover = all(d.cover_betti is not None for d in resolution.exceptional)
    if resolution.n == 1 and has_cover:
        components = math.gcd(di.ord, dj.ord)
        betti = (components, components)

    new_ids = _fresh_ids(set(by_id), count)
    new_records = [
        DivisorRecord(
            id=new_id,
            ord=new_ord,
            discrepancy=new_a,
            is_star=False,
            euler_open=0,
            cover_components=components,
            cover_betti=betti,
        )
        for new_id in new_ids
    ]
    strata = dict(resolution.strata)
    if count == available:
        del strata[key]
    else:
        strata[key] = available - count
    for new_id in new_ids:
        strata[frozenset((i, new_id))] = 1
        strata[frozenset((j, new_id))] = 1
    out = replace(resolution, divisors=resolution.divisors + tuple(new_records), strata=strata)
    step = BlowupStep((i, j), count, tuple((r.id, r.ord, r.discrepancy) for r in new_records))
    return out, step


def separate(resolution: ResolutionData, m: int):
    """Blow up minimal-sum pairs until the resolution is multiplicity-m separating.

    Among pairs achieving the minimum the lexicographically smallest sorted id
    pair is chosen, and all its components are blown up at once.  Every new
    pair created has a strictly larger order sum than the pair it replaces, so
    the loop terminates.
    """
    if m < 1:
        raise ValueError("m must be positive")
    steps = []
    current = resolution
    while True:
        report = min_pair_sum(current)
        if report.a_Y > m:
            break
        current, step = _blow_up(current, report.witnesses[0], "all")
        steps.append(step)
    return current, BlowupTrace(tuple(steps))
