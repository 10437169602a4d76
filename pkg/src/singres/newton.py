"""Plane-curve front end: polynomial parsing, Newton polygon, toric resolution data.

For a convenient, Newton-nondegenerate ``f(x, y)`` the regular subdivision of
the dual fan of the Newton polygon gives a log resolution whose combinatorics
are read off the rays:

* interior ray ``(p, q)``: ``ord = min(p*a + q*b)`` over the support,
  discrepancy ``p + q - 1``;
* consecutive interior rays meet once;
* the ray normal to an edge of lattice length ``L`` meets the strict
  transform of the curve in ``L`` points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import Degenerate, MissingData, NonzeroConstantTerm, NotConvenient, ParseError, ZeroPolynomial
from .model import DivisorRecord, ResolutionData

STAR_ID = "star"


# -- polynomials -------------------------------------------------------------


@dataclass(frozen=True)
class LatticePolynomial:
    terms: dict  # (a, b) -> Fraction, no zero coefficients
    variables: tuple[str, str] = ("x", "y")

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.terms)

    def __str__(self):
        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                s for s in (
                    self.variables[0] + (f"^{a}" if a > 1 else "") if a else "",
                    self.variables[1] + (f"^{b}" if b > 1 else "") if b else "",
                ) if s
            )
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{coef}{mono}")
        return "+".join(parts).replace("+-", "-")


class _PolyParser:
    """Recursive descent over the whitespace-stripped text.

    poly   := [sign] term (sign term)*
    term   := coef ['*'] factor (['*'] factor)* | coef | factor (['*'] factor)*
    factor := var ['^' uint]
    coef   := uint ['/' uint]
    """

    def __init__(self, text, variables):
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0
        self.variables = variables
        self.original = text

    def peek(self):
        return self.chars[self.pos][1] if self.pos < len(self.chars) else None

    def where(self):
        return self.chars[self.pos][0] if self.pos < len(self.chars) else len(self.original)

    def fail(self, message):
        raise ParseError(message, self.where())

    def uint(self):
        start = self.pos
        while self.peek() is not None and self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an unsigned integer")
        return int("".join(ch for _, ch in self.chars[start:self.pos]))

    def factor(self):
        ch = self.peek()
        if ch not in self.variables:
            self.fail(f"expected one of {'/'.join(self.variables)}")
        self.pos += 1
        exp = 1
        if self.peek() == "^":
            self.pos += 1
            exp = self.uint()
        return (exp, 0) if ch == self.variables[0] else (0, exp)

    def term(self):
        coef = Fraction(1)
        has_coef = False
        if self.peek() is not None and self.peek().isdigit():
            num = self.uint()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.uint()
                if den == 0:
                    self.fail("zero denominator")
            coef = Fraction(num, den)
            has_coef = True
            if self.peek() == "*":
                self.pos += 1
                if self.peek() not in self.variables:
                    self.fail("expected a variable after '*'")
        a = b = 0
        if self.peek() in self.variables:
            while True:
                da, db = self.factor()
                a, b = a + da, b + db
                if self.peek() == "*":
                    self.pos += 1
                    if self.peek() not in self.variables:
                        self.fail("expected a variable after '*'")
                elif self.peek() not in self.variables:
                    break
        elif not has_coef:
            self.fail("expected a term")
        return (a, b), coef

    def parse(self):
        if not self.chars:
            raise ParseError("empty polynomial", 0)
        terms: dict = {}
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            mono, coef = self.term()
            terms[mono] = terms.get(mono, Fraction(0)) + sign * coef
            ch = self.peek()
            if ch is None:
                break
            if ch not in "+-":
                self.fail(f"unexpected character {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return terms


def parse_poly(text: str, variables: tuple[str, str] = ("x", "y")) -> LatticePolynomial:
    terms = _PolyParser(text, variables).parse()
    terms = {k: v for k, v in terms.items() if v != 0}
    if not terms:
        raise ZeroPolynomial(f"{text!r} is the zero polynomial")
    if (0, 0) in terms:
        raise NonzeroConstantTerm(f"{text!r} does not vanish at the origin")
    return LatticePolynomial(terms, variables)


# -- Newton polygon ----------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    start: tuple[int, int]  # vertex with larger first coordinate
    end: tuple[int, int]
    normal: tuple[int, int]
    lattice_length: int


@dataclass(frozen=True)
class NewtonPolygon:
    support: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]  # first coordinate descending
    edges: tuple[Edge, ...]
    convenient: bool


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: LatticePolynomial) -> NewtonPolygon:
    """Compact faces of the convex hull of ``support + R_{>=0}^2``."""
    pts = sorted(set(f.terms))
    # minimal b for each a, then the lower-left convex chain from the
    # leftmost point to the lowest point
    chain: list[tuple[int, int]] = []
    lowest_b = min(b for _, b in pts)
    end_a = min(a for a, b in pts if b == lowest_b)
    best_b: dict[int, int] = {}
    for a, b in pts:
        best_b[a] = min(best_b.get(a, b), b)
    running = math.inf
    candidates = []
    for a in sorted(best_b):
        if best_b[a] < running and a <= end_a:
            candidates.append((a, best_b[a]))
            running = best_b[a]
    for pt in candidates:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) <= 0:
            chain.pop()
        chain.append(pt)
    vertices = tuple(reversed(chain))
    edges = []
    for (a0, b0), (a1, b1) in zip(vertices, vertices[1:]):
        da, db = a0 - a1, b1 - b0
        length = math.gcd(da, db)
        edges.append(Edge((a0, b0), (a1, b1), (db // length, da // length), length))
    convenient = any(b == 0 for a, b in vertices) and any(a == 0 for a, b in vertices)
    return NewtonPolygon(tuple(pts), vertices, tuple(edges), convenient)


# -- nondegeneracy -----------------------------------------------------------


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _poly_trim(a)
    return a


def poly_gcd(a, b):
    """Monic gcd of two univariate polynomials (coefficient lists, constant first)."""
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


@dataclass(frozen=True)
class EdgeCheck:
    edge: Edge
    coefficients: tuple  # edge polynomial, constant term first
    squarefree: bool


@dataclass(frozen=True)
class NondegeneracyReport:
    ok: bool
    edges: tuple[EdgeCheck, ...]

    def __bool__(self):
        return self.ok

    def failing(self) -> list[EdgeCheck]:
        return [e for e in self.edges if not e.squarefree]


def edge_polynomial(f: LatticePolynomial, edge: Edge) -> list[Fraction]:
    (a0, b0), (a1, b1) = edge.start, edge.end
    L = edge.lattice_length
    da, db = (a1 - a0) // L, (b1 - b0) // L
    return [f.terms.get((a0 + k * da, b0 + k * db), Fraction(0)) for k in range(L + 1)]


def nondegeneracy_check(f: LatticePolynomial) -> NondegeneracyReport:
    """Each edge polynomial must have distinct roots (gcd with its derivative is constant)."""
    polygon = newton_polygon(f)
    if not polygon.convenient:
        raise NotConvenient(f"{f} is not convenient: its Newton polygon misses an axis")
    checks = []
    for edge in polygon.edges:
        coeffs = edge_polynomial(f, edge)
        deriv = [k * c for k, c in enumerate(coeffs)][1:]
        g = poly_gcd(coeffs, deriv)
        checks.append(EdgeCheck(edge, tuple(coeffs), len(g) <= 1))
    return NondegeneracyReport(all(c.squarefree for c in checks), tuple(checks))


# -- fan -----------------------------------------------------------------------


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class FanRays:
    rays: tuple[tuple[int, int], ...]
    edge_normals: frozenset

    @property
    def interior(self) -> tuple[tuple[int, int], ...]:
        return self.rays[1:-1]


def _cone_boundary(u, v):
    """Lattice points on the compact faces of conv(cone(u, v) ∩ Z^2 minus 0), u to v."""
    D = _det(u, v)
    corners = [(0, 0), u, v, (u[0] + v[0], u[1] + v[1])]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            w = (x, y)
            if w == (0, 0):
                continue
            lam, mu = _det(w, v), _det(u, w)  # D * coefficients of u and v
            if 0 <= lam <= D and 0 <= mu <= D:
                pts.append(w)
    # angular order from u to v; at equal angle keep the point nearest the origin
    pts.sort(key=lambda w: (Fraction(_det(u, w), _det(w, v)) if _det(w, v) else math.inf,
                            abs(w[0]) + abs(w[1])))
    hull: list[tuple[int, int]] = []
    for w in pts:
        if hull and _det(hull[-1], w) == 0:
            continue
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], w) >= 0:
            hull.pop()
        hull.append(w)
    out = [hull[0]]
    for a, b in zip(hull, hull[1:]):
        g = math.gcd(b[0] - a[0], b[1] - a[1])
        step = ((b[0] - a[0]) // g, (b[1] - a[1]) // g)
        out += [(a[0] + k * step[0], a[1] + k * step[1]) for k in range(1, g + 1)]
    return out


def fan_subdivision(polygon: NewtonPolygon) -> FanRays:
    """Regular subdivision of the quadrant fan refined by the edge normals."""
    if not polygon.convenient:
        raise NotConvenient("fan subdivision needs a convenient Newton polygon")
    normals = sorted((e.normal for e in polygon.edges), key=lambda r: Fraction(r[1], r[0]))
    coarse = [(1, 0)] + normals + [(0, 1)]
    rays = [coarse[0]]
    for u, v in zip(coarse, coarse[1:]):
        rays += _cone_boundary(u, v)[1:] if _det(u, v) > 1 else [v]
    for u, v in zip(rays, rays[1:]):
        if _det(u, v) != 1:
            raise AssertionError(f"subdivision is not regular between {u} and {v}")
    return FanRays(tuple(rays), frozenset(normals))


# -- resolution data -----------------------------------------------------------


def _ray_id(ray):
    return f"E{ray[0]}_{ray[1]}"


def cover_components_oracle(order: int, adjacent_orders) -> int:
    """Index of the subgroup of Z/order generated by the adjacent orders, by explicit closure."""
    adjacent = list(adjacent_orders)
    if not adjacent:
        raise ValueError("need at least one adjacent order")
    subgroup = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in adjacent:
            y = (x + g) % order
            if y not in subgroup:
                subgroup.add(y)
                frontier.append(y)
    return order // len(subgroup)


def curve_cover_data(resolution: ResolutionData) -> ResolutionData:
    """Fill cover component counts and Betti numbers for every exceptional curve.

    The cover of ``E_i^o`` splits into ``gcd(ord_i, adjacent orders)``
    components (the star counts with order 1); it is an open surface, so
    ``b_0 = components`` and ``b_1 = b_0 - ord_i * euler_open``.
    """
    if resolution.n != 1:
        raise ValueError("curve cover data needs n = 1")
    by_id = resolution.by_id
    out = []
    for d in resolution.divisors:
        if d.is_star:
            out.append(d)
            continue
        if d.euler_open is None:
            raise MissingData(f"divisor {d.id!r} has no euler_open")
        g = d.ord
        for other, _ in resolution.neighbors(d.id):
            g = math.gcd(g, by_id[other].ord)
        betti = (g, g - d.ord * d.euler_open)
        out.append(replace(d, cover_components=g, cover_betti=betti))
    return resolution.with_divisors(out)


def resolution_from_curve(f: LatticePolynomial) -> ResolutionData:
    polygon = newton_polygon(f)
    if not polygon.convenient:
        raise NotConvenient(f"{f} is not convenient: its Newton polygon misses an axis")
    report = nondegeneracy_check(f)
    if not report.ok:
        bad = report.failing()
        detail = ", ".join(f"{e.edge.start}-{e.edge.end}" for e in bad)
        raise Degenerate(f"degenerate edge(s) {detail}: edge polynomial has a repeated root", bad)
    fan = fan_subdivision(polygon)
    interior = fan.interior
    star_count = {e.normal: e.lattice_length for e in polygon.edges}
    strata: dict[frozenset, int] = {}
    for u, v in zip(interior, interior[1:]):
        strata[frozenset((_ray_id(u), _ray_id(v)))] = 1
    divisors = [DivisorRecord(STAR_ID, 1, 0, is_star=True)]
    for k, ray in enumerate(interior):
        p, q = ray
        order = min(p * a + q * b for a, b in f.terms)
        neighbours = (k > 0) + (k < len(interior) - 1)
        stars = star_count.get(ray, 0)
        if stars:
            strata[frozenset((_ray_id(ray), STAR_ID))] = stars
        divisors.append(
            DivisorRecord(_ray_id(ray), order, p + q - 1, euler_open=2 - neighbours - stars)
        )
    resolution = ResolutionData(n=1, divisors=tuple(divisors), strata=strata)
    return curve_cover_data(resolution)


def lct_weighted_homogeneous(weights, degree: int) -> Fraction:
    if not weights or degree < 1:
        raise ValueError("need nonempty weights and a positive degree")
    return min(Fraction(1), Fraction(sum(weights), degree))
