"""Numerical invariants of resolution data: multiplicity, lct, md_m, A'Campo numbers.

``md`` and ``md_plus`` minimise a weighted sum of (log) discrepancies over
every admissible stratum ``I`` and coefficient vector ``k >= 1`` with
``sum(k_j * ord_j) == m``.  Per stratum this is an exact-change problem that
is solved by :func:`singres.kernels.min_cost_change`; ``md_bruteforce`` is an
independent enumeration used as the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .errors import BoundExceeded, MissingData
from .kernels import min_cost_change
from .model import INF, ResolutionData

StarPolicy = Literal["allow-mixed", "exclude-star"]
STAR_POLICIES = ("allow-mixed", "exclude-star")
BRUTEFORCE_BOUND = 64


@dataclass(frozen=True)
class MdWitness:
    subset: frozenset
    coefficients: dict
    value: int


def multiplicity(resolution: ResolutionData) -> int:
    return min(d.ord for d in resolution.exceptional)


def lct(resolution: ResolutionData) -> Fraction:
    """Minimum of ``(a+1)/ord`` over all divisors; the star term is exactly 1."""
    return min(Fraction(d.discrepancy + 1, d.ord) for d in resolution.divisors)


def s_m(resolution: ResolutionData, m: int) -> frozenset:
    _check_m(m)
    return frozenset(d.id for d in resolution.exceptional if m % d.ord == 0)


def lefschetz(resolution: ResolutionData, m: int) -> int:
    """A'Campo's count: sum of ``ord * euler_open`` over divisors whose order divides m."""
    total = 0
    for divisor_id in sorted(s_m(resolution, m)):
        d = resolution.divisor(divisor_id)
        if d.euler_open is None:
            raise MissingData(f"divisor {d.id!r} has no euler_open")
        total += d.ord * d.euler_open
    return total


def hf_euler(resolution: ResolutionData, m: int) -> int:
    return (-1) ** resolution.n * lefschetz(resolution, m)


def monodromy_zeta(resolution: ResolutionData) -> dict[int, int]:
    """Exponent of ``(1 - t^ord)`` per order: minus the summed Euler characteristics."""
    factors: dict[int, int] = {}
    for d in resolution.exceptional:
        if d.euler_open is None:
            raise MissingData(f"divisor {d.id!r} has no euler_open")
        factors[d.ord] = factors.get(d.ord, 0) - d.euler_open
    return factors


def lefschetz_from_zeta(factors: dict[int, int], m: int) -> int:
    _check_m(m)
    return sum(-order * exponent for order, exponent in factors.items() if m % order == 0)


# -- minimal multiplicity-m discrepancy ------------------------------------


def admissible_subsets(resolution: ResolutionData, star_policy: StarPolicy = "allow-mixed") -> list[frozenset]:
    """Singletons of exceptional divisors plus nerve strata, in a fixed order.

    ``{star}`` alone is never admissible; strata containing the star are
    admissible only under ``allow-mixed``.
    """
    if star_policy not in STAR_POLICIES:
        raise ValueError(f"unknown star policy {star_policy!r}")
    star_id = resolution.star.id
    subsets = [frozenset([d.id]) for d in resolution.exceptional]
    for subset in resolution.strata:
        if star_id in subset and star_policy == "exclude-star":
            continue
        subsets.append(subset)
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def _minimize(resolution, m, star_policy, log_discrepancy):
    _check_m(m)
    by_id = resolution.by_id
    best_value = INF
    best_witness = None
    for subset in admissible_subsets(resolution, star_policy):
        ids = sorted(subset)
        coins = [by_id[i].ord for i in ids]
        costs = [by_id[i].discrepancy + (1 if log_discrepancy else 0) for i in ids]
        remainder = m - sum(coins)
        if remainder < 0:
            continue
        table, choice = min_cost_change(coins, costs, remainder)
        if table[remainder] < 0:
            continue
        value = sum(costs) + table[remainder]
        if value < best_value:
            k = [1] * len(ids)
            t = remainder
            while t > 0:
                j = choice[t]
                k[j] += 1
                t -= coins[j]
            best_value = value
            best_witness = MdWitness(subset, dict(zip(ids, k)), value)
    return best_value, best_witness


def md(resolution: ResolutionData, m: int, star_policy: StarPolicy = "allow-mixed"):
    """Minimal multiplicity-m discrepancy and a minimising witness (``None`` if infinite)."""
    return _minimize(resolution, m, star_policy, log_discrepancy=False)


def md_plus(resolution: ResolutionData, m: int):
    """Same minimisation with log discrepancies ``a+1``; the star contributes 1 per unit."""
    return _minimize(resolution, m, "allow-mixed", log_discrepancy=True)[0]


def md_plus_witness(resolution: ResolutionData, m: int):
    return _minimize(resolution, m, "allow-mixed", log_discrepancy=True)


def md_bruteforce(
    resolution: ResolutionData,
    m: int,
    star_policy: StarPolicy = "allow-mixed",
    bound: int = BRUTEFORCE_BOUND,
    log_discrepancy: bool = False,
):
    """Exhaustive enumeration of ``(I, k)``; independent of the DP path in :func:`md`."""
    _check_m(m)
    if m > bound:
        raise BoundExceeded(f"m={m} exceeds the enumeration bound {bound}")
    if star_policy not in STAR_POLICIES:
        raise ValueError(f"unknown star policy {star_policy!r}")
    by_id = resolution.by_id
    star_id = resolution.star.id
    candidates = [frozenset([d.id]) for d in resolution.exceptional]
    candidates += [
        s for s in resolution.strata if not (star_policy == "exclude-star" and star_id in s)
    ]
    best = INF
    for subset in candidates:
        records = sorted((by_id[i] for i in subset), key=lambda r: r.id)
        for ks in _compositions(m, [r.ord for r in records]):
            value = sum(k * (r.discrepancy + log_discrepancy) for k, r in zip(ks, records))
            best = min(best, value)
    return best


def _compositions(total, parts):
    """All ``k >= 1`` with ``sum(k_i * parts_i) == total``."""
    if not parts:
        if total == 0:
            yield ()
        return
    head, rest = parts[0], parts[1:]
    reserve = sum(rest)
    for k in range(1, (total - reserve) // head + 1):
        for tail in _compositions(total - k * head, rest):
            yield (k,) + tail


def _check_m(m):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
