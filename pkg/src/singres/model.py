"""Combinatorial resolution data: divisors, the intersection nerve, and the JSON file format.

A :class:`ResolutionData` records, for each resolution divisor, its order of
vanishing and its discrepancy, plus which intersections of divisors are
nonempty (and in how many connected components).  Nothing about the ambient
manifold is stored.

Construction never validates; call :func:`validate` (total, returns a list of
violations) or :func:`parse_resolution` (raises on violations).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError, ValidationFailed

INF = math.inf

__all__ = [
    "INF",
    "DivisorRecord",
    "ResolutionData",
    "Violation",
    "validate",
    "parse_resolution",
    "serialize_resolution",
    "format_extended",
    "format_rational",
]


@dataclass(frozen=True)
class DivisorRecord:
    id: str
    ord: int
    discrepancy: int
    is_star: bool = False
    euler_open: int | None = None
    weight: int | None = None
    cover_components: int | None = None
    cover_betti: tuple[int, ...] | None = None
    cover_torsion: tuple[tuple[int, ...], ...] | None = None

    @property
    def log_discrepancy(self) -> int:
        return self.discrepancy + 1


@dataclass(frozen=True)
class ResolutionData:
    """Divisors of a log resolution together with their nerve.

    ``strata`` maps each subset ``I`` (``|I| >= 2``) with ``E_I`` nonempty to
    its number of connected components.  Absent subsets are empty.
    """

    n: int
    divisors: tuple[DivisorRecord, ...]
    strata: Mapping[frozenset, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        object.__setattr__(
            self, "strata", {frozenset(k): v for k, v in dict(self.strata).items()}
        )

    def __hash__(self):
        return hash((self.n, self.divisors, frozenset(self.strata.items())))

    # -- lookups -----------------------------------------------------------
    def divisor(self, divisor_id: str) -> DivisorRecord:
        for d in self.divisors:
            if d.id == divisor_id:
                return d
        raise KeyError(divisor_id)

    @property
    def by_id(self) -> dict[str, DivisorRecord]:
        return {d.id: d for d in self.divisors}

    @property
    def star(self) -> DivisorRecord:
        for d in self.divisors:
            if d.is_star:
                return d
        raise ValueError("resolution has no star divisor")

    @property
    def exceptional(self) -> tuple[DivisorRecord, ...]:
        return tuple(d for d in self.divisors if not d.is_star)

    def pairs(self) -> dict[frozenset, int]:
        return {k: v for k, v in self.strata.items() if len(k) == 2}

    def neighbors(self, divisor_id: str) -> list[tuple[str, int]]:
        """Nerve neighbours of a divisor with the component count of each pair stratum."""
        out = []
        for pair, count in self.pairs().items():
            if divisor_id in pair:
                (other,) = pair - {divisor_id}
                out.append((other, count))
        return sorted(out)

    def with_divisors(self, divisors: Iterable[DivisorRecord]) -> ResolutionData:
        return replace(self, divisors=tuple(divisors))


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


def validate(resolution: ResolutionData, allow_any_discrepancy: bool = False) -> list[Violation]:
    """Return every structural violation; an empty list means valid.

    Never raises on well-typed input.  ``allow_any_discrepancy`` drops the
    requirement that exceptional divisors have discrepancy at least one.
    """
    out: list[Violation] = []

    def bad(code, message):
        out.append(Violation(code, message))

    if not isinstance(resolution.n, int) or resolution.n < 1:
        bad("n-not-positive", f"n must be a positive integer, got {resolution.n!r}")

    seen: set[str] = set()
    for d in resolution.divisors:
        label = d.id or "<empty>"
        if not d.id:
            bad("empty-id", "divisor id must be nonempty")
        if d.id in seen:
            bad("duplicate-id", f"divisor id {d.id!r} appears twice")
        seen.add(d.id)
        if d.ord < 1:
            bad("ord-not-positive", f"{label}: ord must be >= 1, got {d.ord}")
        if d.discrepancy < 0:
            bad("discrepancy-negative", f"{label}: discrepancy must be >= 0, got {d.discrepancy}")
        if d.is_star:
            if d.ord != 1:
                bad("star-order-not-one", f"{label}: star divisor must have ord 1, got {d.ord}")
            if d.discrepancy != 0:
                bad(
                    "star-discrepancy-not-zero",
                    f"{label}: star divisor must have discrepancy 0, got {d.discrepancy}",
                )
        elif d.discrepancy < 1 and not allow_any_discrepancy:
            bad(
                "exceptional-discrepancy-zero",
                f"{label}: exceptional divisor over a smooth space needs discrepancy >= 1",
            )
        if d.weight is not None and d.weight < 1:
            bad("weight-not-positive", f"{label}: weight must be >= 1, got {d.weight}")
        if d.cover_components is not None and d.cover_components < 1:
            bad("cover-components-not-positive", f"{label}: cover components must be >= 1")
        if d.cover_betti is not None:
            if d.cover_components is None:
                bad("cover-betti-without-components", f"{label}: cover betti given without components")
            if any(b < 0 for b in d.cover_betti):
                bad("cover-betti-negative", f"{label}: cover betti numbers must be >= 0")
            if not d.cover_betti:
                bad("cover-betti-empty", f"{label}: cover betti list is empty")
            elif d.cover_components is not None and d.cover_betti[0] != d.cover_components:
                bad(
                    "cover-betti0-mismatch",
                    f"{label}: betti[0]={d.cover_betti[0]} differs from components={d.cover_components}",
                )
            if d.euler_open is not None and d.cover_betti:
                chi = sum((-1) ** k * b for k, b in enumerate(d.cover_betti))
                if chi != d.ord * d.euler_open:
                    bad(
                        "cover-euler-mismatch",
                        f"{label}: cover Euler characteristic {chi} != ord*euler_open "
                        f"= {d.ord * d.euler_open}",
                    )
        if d.cover_torsion is not None and any(t < 2 for row in d.cover_torsion for t in row):
            bad("cover-torsion-invalid", f"{label}: torsion coefficients must be >= 2")

    stars = [d for d in resolution.divisors if d.is_star]
    if len(stars) != 1:
        bad("star-count", f"exactly one star divisor required, found {len(stars)}")
    if not any(not d.is_star for d in resolution.divisors):
        bad("no-exceptional", "at least one exceptional divisor is required")

    ids = {d.id for d in resolution.divisors}
    n = resolution.n if isinstance(resolution.n, int) else 0
    strata = resolution.strata
    for subset, count in strata.items():
        label = "{" + ",".join(sorted(subset)) + "}"
        if len(subset) < 2:
            bad("stratum-too-small", f"stratum {label} must involve at least two divisors")
            continue
        unknown = sorted(subset - ids)
        if unknown:
            bad("stratum-unknown-id", f"stratum {label} references unknown ids {unknown}")
        if count < 1:
            bad("stratum-count-not-positive", f"stratum {label} has component count {count}")
        if len(subset) > n + 1:
            bad(
                "stratum-exceeds-dimension",
                f"stratum {label} has {len(subset)} divisors but at most n+1={n + 1} can meet",
            )
        if len(subset) >= 3:
            for drop in subset:
                face = subset - {drop}
                if face not in strata:
                    bad(
                        "nerve-not-downward-closed",
                        f"stratum {label} present but its face "
                        "{" + ",".join(sorted(face)) + "} is missing",
                    )
    # connectivity of the dual graph
    if len(ids) >= 2:
        adj: dict[str, set[str]] = {i: set() for i in ids}
        for subset in strata:
            if len(subset) == 2 and subset <= ids:
                a, b = tuple(subset)
                adj[a].add(b)
                adj[b].add(a)
        start = next(iter(sorted(ids)))
        reached = {start}
        stack = [start]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in reached:
                    reached.add(nb)
                    stack.append(nb)
        if reached != ids:
            bad("nerve-disconnected", f"dual graph is disconnected; unreachable: {sorted(ids - reached)}")
    return out


# -- serialization -----------------------------------------------------------

_TOP_KEYS = {"n", "divisors", "strata"}
_DIV_KEYS = {"id", "ord", "discrepancy", "is_star", "euler_open", "weight", "cover"}
_COVER_KEYS = {"components", "betti", "torsion"}
_STRATUM_KEYS = {"divisors", "components"}


def _expect_int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ParseError(f"{where}: unknown keys {unknown}")
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(f"{where}: missing keys {missing}")


def _divisor_from_json(obj, index) -> DivisorRecord:
    where = f"divisors[{index}]"
    _check_keys(obj, _DIV_KEYS, {"id", "ord", "discrepancy", "is_star"}, where)
    if not isinstance(obj["id"], str):
        raise ParseError(f"{where}.id: expected a string")
    if not isinstance(obj["is_star"], bool):
        raise ParseError(f"{where}.is_star: expected a boolean")
    components = betti = torsion = None
    if "cover" in obj:
        cover = obj["cover"]
        _check_keys(cover, _COVER_KEYS, {"components"}, f"{where}.cover")
        components = _expect_int(cover["components"], f"{where}.cover.components")
        if "betti" in cover:
            if not isinstance(cover["betti"], list):
                raise ParseError(f"{where}.cover.betti: expected a list")
            betti = tuple(_expect_int(b, f"{where}.cover.betti") for b in cover["betti"])
        if "torsion" in cover:
            if not isinstance(cover["torsion"], list) or not all(
                isinstance(row, list) for row in cover["torsion"]
            ):
                raise ParseError(f"{where}.cover.torsion: expected a list of lists")
            torsion = tuple(
                tuple(_expect_int(t, f"{where}.cover.torsion") for t in row) for row in cover["torsion"]
            )
    optional = {}
    for key in ("euler_open", "weight"):
        if key in obj:
            optional[key] = _expect_int(obj[key], f"{where}.{key}")
    return DivisorRecord(
        id=obj["id"],
        ord=_expect_int(obj["ord"], f"{where}.ord"),
        discrepancy=_expect_int(obj["discrepancy"], f"{where}.discrepancy"),
        is_star=obj["is_star"],
        cover_components=components,
        cover_betti=betti,
        cover_torsion=torsion,
        **optional,
    )


def parse_resolution(text: bytes | str, allow_any_discrepancy: bool = False) -> ResolutionData:
    """Parse a resolution document and validate it.

    Raises :class:`ParseError` for malformed JSON or schema breaches and
    :class:`ValidationFailed` when the decoded data violates an invariant.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("document is not valid UTF-8", exc.start) from None
    if not text.strip():
        raise ParseError("empty document", (1, 1))
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, (exc.lineno, exc.colno)) from None
    _check_keys(obj, _TOP_KEYS, _TOP_KEYS, "document")
    n = _expect_int(obj["n"], "n")
    if not isinstance(obj["divisors"], list):
        raise ParseError("divisors: expected a list")
    if not isinstance(obj["strata"], list):
        raise ParseError("strata: expected a list")
    divisors = [_divisor_from_json(d, i) for i, d in enumerate(obj["divisors"])]
    strata: dict[frozenset, int] = {}
    for i, s in enumerate(obj["strata"]):
        where = f"strata[{i}]"
        _check_keys(s, _STRATUM_KEYS, _STRATUM_KEYS, where)
        if not isinstance(s["divisors"], list) or not all(isinstance(x, str) for x in s["divisors"]):
            raise ParseError(f"{where}.divisors: expected a list of ids")
        key = frozenset(s["divisors"])
        if len(key) != len(s["divisors"]):
            raise ParseError(f"{where}.divisors: repeated id")
        if key in strata:
            raise ParseError(f"{where}: duplicate stratum")
        strata[key] = _expect_int(s["components"], f"{where}.components")
    resolution = ResolutionData(n=n, divisors=tuple(divisors), strata=strata)
    report = validate(resolution, allow_any_discrepancy=allow_any_discrepancy)
    if report:
        raise ValidationFailed(report)
    return resolution


def resolution_to_json(resolution: ResolutionData) -> dict:
    divisors = []
    for d in sorted(resolution.divisors, key=lambda d: d.id):
        obj = {"id": d.id, "ord": d.ord, "discrepancy": d.discrepancy, "is_star": d.is_star}
        if d.euler_open is not None:
            obj["euler_open"] = d.euler_open
        if d.weight is not None:
            obj["weight"] = d.weight
        if d.cover_components is not None:
            cover = {"components": d.cover_components}
            if d.cover_betti is not None:
                cover["betti"] = list(d.cover_betti)
            if d.cover_torsion is not None:
                cover["torsion"] = [list(row) for row in d.cover_torsion]
            obj["cover"] = cover
        divisors.append(obj)
    strata = [
        {"divisors": sorted(k), "components": v}
        for k, v in sorted(resolution.strata.items(), key=lambda kv: sorted(kv[0]))
    ]
    return {"n": resolution.n, "divisors": divisors, "strata": strata}


def serialize_resolution(resolution: ResolutionData) -> bytes:
    """Canonical UTF-8 JSON: sorted keys, divisors by id, strata by sorted id tuple."""
    text = json.dumps(resolution_to_json(resolution), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# -- formatting helpers shared by the CLI and reports -------------------------


def format_extended(value) -> str:
    return "inf" if value == INF else str(value)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
