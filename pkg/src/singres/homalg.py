"""Exact integer homological algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so all
arithmetic is arbitrary precision.  A boundary matrix for degree ``d`` has
shape ``(rank of target degree, rank of d)``.

Covers Smith normal form, homology of finite free complexes, the spectral
sequence of a filtered complex, and a checker for the collapse lemma for
complexes of the form ``A_- ⊗ Z[u] ⊕ A_+ ⊗ Z[u]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import HypothesisFailed, InvalidFiltration, NotAComplex, TruncationTooSmall

# -- matrices ----------------------------------------------------------------


def int_matrix(rows, shape=None) -> np.ndarray:
    """Build an object-dtype integer matrix; ``shape`` is needed for empty ones."""
    arr = np.array(rows, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    elif arr.ndim == 1:
        arr = arr.reshape((len(arr), 0) if len(arr) == 0 else (1, len(arr)))
    return arr


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def determinant(a: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: np.ndarray):
    """Return ``(D, U, V)`` with ``U @ a @ V == D`` diagonal and ``d_1 | d_2 | ...``.

    Pivot choice: smallest nonzero absolute value in the active block, first
    in row-major order.  ``U`` and ``V`` are unimodular.
    """
    a = int_matrix(a) if not isinstance(a, np.ndarray) else a.astype(object).copy()
    rows, cols = a.shape
    u, v = identity(rows), identity(cols)
    for s in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(s, rows):
                for j in range(s, cols):
                    x = a[i, j]
                    if x != 0 and (pivot is None or abs(x) < abs(a[pivot])):
                        pivot = (i, j)
            if pivot is None:
                return a, u, v
            pi, pj = pivot
            if pi != s:
                a[[s, pi]] = a[[pi, s]]
                u[[s, pi]] = u[[pi, s]]
            if pj != s:
                a[:, [s, pj]] = a[:, [pj, s]]
                v[:, [s, pj]] = v[:, [pj, s]]
            p = a[s, s]
            clean = True
            for i in range(s + 1, rows):
                if a[i, s] != 0:
                    q = a[i, s] // p
                    a[i] = a[i] - q * a[s]
                    u[i] = u[i] - q * u[s]
                    clean = clean and a[i, s] == 0
            for j in range(s + 1, cols):
                if a[s, j] != 0:
                    q = a[s, j] // p
                    a[:, j] = a[:, j] - q * a[:, s]
                    v[:, j] = v[:, j] - q * v[:, s]
                    clean = clean and a[s, j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(s + 1, rows) for j in range(s + 1, cols) if a[i, j] % p != 0),
                None,
            )
            if offender is not None:
                a[s] = a[s] + a[offender]
                u[s] = u[s] + u[offender]
                continue
            break
        if a[s, s] < 0:
            a[s] = -a[s]
            u[s] = -u[s]
    return a, u, v


def smith_diagonal(a: np.ndarray) -> list[int]:
    d, _, _ = smith_normal_form(a)
    return [int(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0]


# -- rational linear algebra (pages r >= 2) ------------------------------------


def _echelon(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon basis of the span of ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        row = row[:]
        for prow, pc in zip(out, pivots):
            if row[pc] != 0:
                f = row[pc]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((c for c in range(width) if row[c] != 0), None)
        if lead is None:
            continue
        inv = 1 / row[lead]
        row = [x * inv for x in row]
        for k, prow in enumerate(out):
            if prow[lead] != 0:
                f = prow[lead]
                out[k] = [x - f * y for x, y in zip(prow, row)]
        out.append(row)
        pivots.append(lead)
    return out


def rational_rank(a: np.ndarray) -> int:
    return len(_echelon([[Fraction(int(x)) for x in row] for row in a]))


def nullspace(a: np.ndarray) -> list[list[Fraction]]:
    """Basis of ``{x : a x = 0}`` over the rationals."""
    cols = a.shape[1]
    basis = _echelon([[Fraction(int(x)) for x in row] for row in a])
    pivots = [next(c for c in range(cols) if row[c] != 0) for row in basis]
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for row, pc in zip(basis, pivots):
            vec[pc] = -row[f]
        out.append(vec)
    return out


def span_dimension(vectors) -> int:
    return len(_echelon([list(v) for v in vectors]))


# -- chain complexes ---------------------------------------------------------


@dataclass
class ChainComplex:
    """Finite free complex.  ``cohomological`` boundaries raise degree by one."""

    ranks: dict[int, int]
    boundaries: dict[int, np.ndarray] = field(default_factory=dict)
    cohomological: bool = True

    def __post_init__(self):
        self.ranks = {int(k): int(v) for k, v in self.ranks.items() if v}
        fixed = {}
        for d, mat in self.boundaries.items():
            src, tgt = self.rank(int(d)), self.rank(self.target(int(d)))
            fixed[int(d)] = int_matrix(mat, (tgt, src)) if not isinstance(mat, np.ndarray) else mat.reshape((tgt, src))
        self.boundaries = fixed

    def rank(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def target(self, degree: int) -> int:
        return degree + 1 if self.cohomological else degree - 1

    def source(self, degree: int) -> int:
        return degree - 1 if self.cohomological else degree + 1

    def boundary(self, degree: int) -> np.ndarray:
        mat = self.boundaries.get(degree)
        if mat is None:
            return zeros(self.rank(self.target(degree)), self.rank(degree))
        return mat

    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    def check(self):
        for d in self.degrees():
            comp = matmul(self.boundary(self.target(d)), self.boundary(d))
            if any(x != 0 for x in comp.flat):
                raise NotAComplex(f"boundary squared is nonzero starting in degree {d}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self.ranks.items())


@dataclass(frozen=True)
class HomologySummary:
    betti: dict
    torsion: dict

    def at(self, degree: int) -> tuple[int, tuple[int, ...]]:
        return self.betti.get(degree, 0), self.torsion.get(degree, ())

    def nonzero(self) -> dict:
        out = {}
        for d in sorted(set(self.betti) | set(self.torsion)):
            b, t = self.at(d)
            if b or t:
                out[d] = (b, t)
        return out

    def to_json(self) -> dict:
        return {str(d): {"betti": b, "torsion": list(t)} for d, (b, t) in self.nonzero().items()}


def homology(complex_: ChainComplex) -> HomologySummary:
    complex_.check()
    betti, torsion = {}, {}
    for d in complex_.degrees():
        outgoing = complex_.boundary(d)
        incoming = complex_.boundary(complex_.source(d))
        diag_in = smith_diagonal(incoming)
        rank_out = len(smith_diagonal(outgoing))
        betti[d] = complex_.rank(d) - rank_out - len(diag_in)
        torsion[d] = tuple(x for x in diag_in if x > 1)
    return HomologySummary(betti, torsion)


# -- filtered complexes -------------------------------------------------------


@dataclass
class FilteredComplex:
    """A complex whose generators carry filtration levels; ``F_p`` is spanned by levels >= p."""

    complex: ChainComplex
    filtration: dict[int, list[int]]

    def level(self, degree: int) -> list[int]:
        return list(self.filtration.get(degree, [0] * self.complex.rank(degree)))

    def levels(self) -> list[int]:
        vals = {lv for d in self.complex.degrees() for lv in self.level(d)}
        return sorted(vals)

    def check(self):
        self.complex.check()
        for d in self.complex.degrees():
            if len(self.level(d)) != self.complex.rank(d):
                raise InvalidFiltration(f"degree {d}: {self.complex.rank(d)} generators but "
                                        f"{len(self.level(d))} levels")
            if any(lv < 0 for lv in self.level(d)):
                raise InvalidFiltration(f"degree {d}: filtration levels must be natural numbers")
        for d in self.complex.degrees():
            src, tgt = self.level(d), self.level(self.complex.target(d))
            mat = self.complex.boundary(d)
            for t in range(mat.shape[0]):
                for s in range(mat.shape[1]):
                    if mat[t, s] != 0 and tgt[t] < src[s]:
                        raise InvalidFiltration(
                            f"boundary from degree {d} generator {s} (level {src[s]}) hits "
                            f"generator {t} at lower level {tgt[t]}"
                        )


@dataclass(frozen=True)
class Page:
    r: int
    ranks: dict  # (p, q) -> rank
    torsion: dict = field(default_factory=dict)  # (p, q) -> torsion coefficients, r <= 1 only

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * r for (p, q), r in self.ranks.items())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "entries": [
                {"p": p, "q": q, "rank": r, "torsion": list(self.torsion.get((p, q), ()))}
                for (p, q), r in sorted(self.ranks.items())
                if r or self.torsion.get((p, q))
            ],
        }


def _z_basis(fc: FilteredComplex, degree: int, p: int, r: int) -> list[list[Fraction]]:
    """``{x in F_p : d x in F_{p+r}}`` in ``degree`` as full-length rational vectors."""
    cx = fc.complex
    src_levels = fc.level(degree)
    tgt_levels = fc.level(cx.target(degree))
    cols = [i for i, lv in enumerate(src_levels) if lv >= p]
    rows = [i for i, lv in enumerate(tgt_levels) if lv < p + r]
    mat = cx.boundary(degree)
    sub = int_matrix([[mat[i, j] for j in cols] for i in rows], (len(rows), len(cols)))
    out = []
    for vec in nullspace(sub):
        full = [Fraction(0)] * cx.rank(degree)
        for j, x in zip(cols, vec):
            full[j] = x
        out.append(full)
    return out


def _apply(mat: np.ndarray, vec: list[Fraction]) -> list[Fraction]:
    return [sum((Fraction(int(mat[i, j])) * vec[j] for j in range(mat.shape[1])), Fraction(0))
            for i in range(mat.shape[0])]


def _rational_page(fc: FilteredComplex, r: int) -> Page:
    cx = fc.complex
    ranks = {}
    for degree in cx.degrees():
        src = cx.source(degree)
        for p in sorted(set(fc.level(degree))):
            z = _z_basis(fc, degree, p, r)
            z_next = _z_basis(fc, degree, p + 1, r - 1)
            boundaries = [_apply(cx.boundary(src), y) for y in _z_basis(fc, src, p - r + 1, r - 1)] \
                if cx.rank(src) else []
            dim = len(z) - span_dimension(z_next + boundaries)
            ranks[(p, degree - p)] = dim
    return Page(r, ranks)


def graded_piece(fc: FilteredComplex, p: int) -> ChainComplex:
    """The quotient complex ``F_p / F_{p+1}``."""
    cx = fc.complex
    idx = {d: [i for i, lv in enumerate(fc.level(d)) if lv == p] for d in cx.degrees()}
    ranks = {d: len(v) for d, v in idx.items() if v}
    bounds = {}
    for d in ranks:
        t = cx.target(d)
        if t in ranks:
            mat = cx.boundary(d)
            bounds[d] = int_matrix([[mat[i, j] for j in idx[d]] for i in idx[t]], (len(idx[t]), len(idx[d])))
    return ChainComplex(ranks, bounds, cx.cohomological)


def filtration_pages(filtered: FilteredComplex, r_max: int) -> list[Page]:
    """Pages ``E_0 .. E_{r_max}``.

    ``E_0`` and ``E_1`` are integral (``E_1`` is the homology of the graded
    pieces, torsion included); pages from ``E_2`` on carry rational ranks.
    Entries are keyed by ``(p, q)`` with ``p`` the filtration level and
    ``p + q`` the degree.
    """
    if r_max < 0:
        raise ValueError("r_max must be nonnegative")
    filtered.check()
    cx = filtered.complex
    pages = []
    e0 = {}
    for d in cx.degrees():
        for lv in filtered.level(d):
            e0[(lv, d - lv)] = e0.get((lv, d - lv), 0) + 1
    pages.append(Page(0, e0))
    if r_max >= 1:
        e1, tors = {}, {}
        for p in filtered.levels():
            h = homology(graded_piece(filtered, p))
            for d in graded_piece(filtered, p).degrees():
                b, t = h.at(d)
                e1[(p, d - p)] = b
                if t:
                    tors[(p, d - p)] = t
        pages.append(Page(1, e1, tors))
    for r in range(2, r_max + 1):
        pages.append(_rational_page(filtered, r))
    return pages


def limit_page(filtered: FilteredComplex) -> Page:
    """``E_infinity``: the page at which every differential has left the filtration range."""
    levels = filtered.levels() or [0]
    r = max(2, levels[-1] - levels[0] + 2)
    return filtration_pages(filtered, r)[-1]


# -- collapse lemma --------------------------------------------------------


@dataclass
class CollapseInstance:
    """Data for ``B_- ⊕ B_+ = (A_- ⊕ A_+) ⊗ Z[u]`` truncated in u-degree.

    ``d0`` acts on ``A = A_- ⊕ A_+`` (minus generators first) at every power
    of ``u``; ``d1[k-1]`` acts on ``A`` and lowers the power of ``u`` by ``k``.
    A generator ``x u^j`` has degree ``deg(x) + j * u_degree`` and level
    ``level(x)``.  ``B_-`` keeps powers ``u^0 .. u^{N-1}`` and ``B_+`` keeps
    ``u^0 .. u^{N-2}``, which is a subcomplex on which ``d1`` pairs
    ``u B_-`` with ``B_+`` exactly.
    """

    minus_degrees: list[int]
    plus_degrees: list[int]
    minus_levels: list[int]
    plus_levels: list[int]
    d0: np.ndarray
    d1: list[np.ndarray]
    truncation: int | None = None
    u_degree: int = -2

    @property
    def n_levels(self) -> int:
        return len(set(self.minus_levels) | set(self.plus_levels))

    @property
    def N(self) -> int:
        return self.truncation if self.truncation is not None else self.n_levels + 1


def _collapse_generators(inst: CollapseInstance):
    gens = []  # (side, index, u_power)
    for j in range(inst.N):
        gens += [("-", i, j) for i in range(len(inst.minus_degrees))]
    for j in range(inst.N - 1):
        gens += [("+", i, j) for i in range(len(inst.plus_degrees))]
    return gens


def _collapse_total(inst: CollapseInstance):
    """Total truncated complex as a filtered complex, plus the generator list per degree."""
    r_minus = len(inst.minus_degrees)
    base_deg = list(inst.minus_degrees) + list(inst.plus_degrees)
    base_lv = list(inst.minus_levels) + list(inst.plus_levels)
    gens = _collapse_generators(inst)

    def flat(g):
        side, i, _ = g
        return i if side == "-" else r_minus + i

    def degree(g):
        return base_deg[flat(g)] + g[2] * inst.u_degree

    position = {g: k for k, g in enumerate(gens)}
    total = len(gens)
    big = zeros(total, total)
    ops = [(0, inst.d0)] + [(k + 1, m) for k, m in enumerate(inst.d1)]
    for g in gens:
        col = position[g]
        for shift, mat in ops:
            j = g[2] - shift
            if j < 0:
                continue
            for row_flat in range(mat.shape[0]):
                c = mat[row_flat, flat(g)]
                if c == 0:
                    continue
                side = "-" if row_flat < r_minus else "+"
                idx = row_flat if side == "-" else row_flat - r_minus
                target = (side, idx, j)
                if target not in position:
                    raise NotAComplex(f"differential leaves the truncated complex at {target}")
                if degree(target) != degree(g) + 1:
                    raise NotAComplex(f"differential is not of degree +1 from {g} to {target}")
                big[position[target], col] += c
    by_degree: dict[int, list] = {}
    for g in gens:
        by_degree.setdefault(degree(g), []).append(g)
    ranks = {d: len(v) for d, v in by_degree.items()}
    bounds = {}
    for d, src in by_degree.items():
        tgt = by_degree.get(d + 1, [])
        bounds[d] = int_matrix([[big[position[t], position[s]] for s in src] for t in tgt], (len(tgt), len(src)))
    filtration = {d: [base_lv[flat(g)] for g in v] for d, v in by_degree.items()}
    fc = FilteredComplex(ChainComplex(ranks, bounds, True), filtration)
    return fc, by_degree, big, position


def collapse_check(instance: CollapseInstance):
    """Check the collapse hypotheses and compare ``H(B_- ⊕ B_+)`` with ``H(A_-, d0)``.

    Returns ``(verdict, homology of A_-)``.  Raises :class:`HypothesisFailed`
    naming the first level whose ``d1`` block is not unimodular.
    """
    inst = instance
    if inst.N <= inst.n_levels or inst.N < 2:
        raise TruncationTooSmall(f"truncation {inst.N} must exceed the {inst.n_levels} filtration levels")
    r_minus, r_plus = len(inst.minus_degrees), len(inst.plus_degrees)
    d0 = inst.d0
    if any(d0[r_minus + i, j] != 0 for i in range(r_plus) for j in range(r_minus)):
        raise HypothesisFailed("d0 does not preserve A_-")
    fc, _, big, position = _collapse_total(inst)
    try:
        fc.check()
    except InvalidFiltration as exc:
        raise HypothesisFailed(f"levels do not define a filtration: {exc}") from None

    for level in sorted(set(inst.minus_levels) | set(inst.plus_levels)):
        sources = [("-", i, j) for j in range(1, inst.N) for i in range(r_minus) if inst.minus_levels[i] == level]
        targets = [("+", i, j) for j in range(inst.N - 1) for i in range(r_plus) if inst.plus_levels[i] == level]
        # d1 part only: entries that lower the u power
        block = int_matrix(
            [[big[position[t], position[s]] if t[2] < s[2] else 0 for s in sources] for t in targets],
            (len(targets), len(sources)),
        )
        if block.shape[0] != block.shape[1] or abs(determinant(block)) != 1:
            raise HypothesisFailed(f"d1 from u*V_-^{level} to V_+^{level} is not an isomorphism")

    minus_by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(inst.minus_degrees):
        minus_by_degree.setdefault(d, []).append(i)
    a_ranks = {d: len(v) for d, v in minus_by_degree.items()}
    a_bounds = {
        d: int_matrix([[d0[t, s] for s in v] for t in minus_by_degree.get(d + 1, [])],
                      (len(minus_by_degree.get(d + 1, [])), len(v)))
        for d, v in minus_by_degree.items()
    }
    h_minus = homology(ChainComplex(a_ranks, a_bounds, True))
    h_total = homology(fc.complex)
    return h_total.nonzero() == h_minus.nonzero(), h_minus


# -- JSON ------------------------------------------------------------------


def complex_from_json(obj) -> FilteredComplex | ChainComplex:
    """Decode ``{"convention", "ranks", "boundaries", "filtration"?}``.

    Boundaries are row-major integer arrays keyed by source degree.
    """
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    unknown = set(obj) - {"convention", "ranks", "boundaries", "filtration"}
    if unknown:
        raise ValueError(f"unknown keys {sorted(unknown)}")
    convention = obj.get("convention", "cohomological")
    if convention not in ("cohomological", "homological"):
        raise ValueError(f"unknown convention {convention!r}")
    ranks = {int(k): int(v) for k, v in obj["ranks"].items()}
    cx = ChainComplex(ranks, {}, convention == "cohomological")
    bounds = {}
    for k, rows in obj.get("boundaries", {}).items():
        d = int(k)
        bounds[d] = int_matrix(rows, (cx.rank(cx.target(d)), cx.rank(d)))
    cx = ChainComplex(ranks, bounds, convention == "cohomological")
    if "filtration" in obj:
        return FilteredComplex(cx, {int(k): list(v) for k, v in obj["filtration"].items()})
    return cx


def complex_to_json(cx: ChainComplex | FilteredComplex) -> dict:
    fc = cx if isinstance(cx, FilteredComplex) else None
    base = fc.complex if fc else cx
    out = {
        "convention": "cohomological" if base.cohomological else "homological",
        "ranks": {str(d): r for d, r in sorted(base.ranks.items())},
        "boundaries": {
            str(d): [[int(x) for x in row] for row in base.boundary(d)]
            for d in base.degrees() if base.rank(base.target(d))
        },
    }
    if fc:
        out["filtration"] = {str(d): fc.level(d) for d in base.degrees()}
    return out
