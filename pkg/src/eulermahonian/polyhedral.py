"""Half-open simplices, simplicial cones and their integer-point transforms.

Coordinates are 1-based for the cube (``x1..xn``); cones live one dimension
up with the grading coordinate at index 0. A simplex is described by a chain

    scale >= y_1 >= y_2 >= ... >= y_n >= 0,   y_k = sign_k * x_{coord_k}

where some links are strict. Link ``k < n`` sits between ``y_k`` and
``y_{k+1}``; link ``n`` is ``y_n >= 0``. The top bound is never strict.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .colored_perm import ColoredPermutation, GroupSpec, enumerate_group
from .series import S, W, Z, Polynomial, RationalExpr, TruncatedSeries, VarId, monomial
from .statistics import OrderFlavor, classical_descents, descent_set

__all__ = [
    "HalfOpenSimplex",
    "SimplicialCone",
    "Cube",
    "Location",
    "UnsupportedConeError",
    "triangulate_cube",
    "triangulate_signed_cube",
    "signed_simplex",
    "locate",
    "scaling_scheme",
    "cone_over",
    "cube_cone",
    "determinant",
    "fpp_points",
    "point_monomial",
    "sigma_rational",
    "sigma_bruteforce",
    "parse_point",
]


class UnsupportedConeError(ValueError):
    pass


@dataclass(frozen=True)
class HalfOpenSimplex:
    """A simplex of a braid-arrangement triangulation.

    Unsigned (``signs is None``): ``0 <= x_{perm[n]} <= ... <= x_{perm[1]} <= scale``
    with ``x_{perm[j+1]} < x_{perm[j]}`` for ``j`` in ``strict`` and
    ``x_{perm[n]} > 0`` when ``n`` is in ``strict``.

    Signed: ``0 <= e_1 x_{perm[1]} <= ... <= e_n x_{perm[n]} <= scale`` with the
    link after position ``j`` strict for ``j`` in ``strict`` (``j = 0`` is the
    link to zero).
    """

    perm: tuple[int, ...]
    strict: frozenset[int]
    scale: int = 1
    signs: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "strict", frozenset(self.strict))
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation")
        if self.scale < 1:
            raise ValueError("scale must be positive")
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(self.signs))
            if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
                raise ValueError("signs must be a +-1 vector of length n")
            if not self.strict <= set(range(n)):
                raise ValueError("signed strict positions lie in 0..n-1")
        elif not self.strict <= set(range(1, n + 1)):
            raise ValueError("strict positions lie in 1..n")

    @property
    def n(self) -> int:
        return len(self.perm)

    def chain(self) -> tuple[list[tuple[int, int]], set[int]]:
        """``(coords, strict_links)`` with coords ``(coordinate, sign)`` listed top to bottom."""
        n = self.n
        if self.signs is None:
            return [(a, 1) for a in self.perm], set(self.strict)
        coords = [(self.perm[i], self.signs[i]) for i in range(n - 1, -1, -1)]
        return coords, {n - j for j in self.strict}

    def contains(self, x: Sequence, height=1) -> bool:
        """Membership of ``x`` (1-based coords, ``x[0]`` unused if ``len == n+1``) in ``height * simplex``."""
        if len(x) == self.n + 1:
            x = x[1:]
        coords, links = self.chain()
        y = [s * x[c - 1] for c, s in coords] + [0]
        if y[0] > self.scale * height:
            return False
        for k in range(1, self.n + 1):
            a, b = y[k - 1], y[k]
            if a < b or (k in links and a == b):
                return False
        return True

    def inequalities(self) -> str:
        """Chain written bottom to top, e.g. ``0 < -x2 <= x3 < -x1 <= 1``."""
        coords, links = self.chain()
        n = self.n
        out = "0"
        for k in range(n, 0, -1):
            c, s = coords[k - 1]
            out += (" < " if k in links else " <= ") + ("-" if s < 0 else "") + f"x{c}"
        return out + f" <= {self.scale}"

    def vertex_directions(self) -> list[tuple[int, ...]]:
        """Minimal homogenized vertices ``e0 + scale * (sign_1 e_{c_1} + ... + sign_k e_{c_k})``."""
        coords, _ = self.chain()
        out = []
        v = [1] + [0] * self.n
        out.append(tuple(v))
        for c, s in coords:
            v[c] += s * self.scale
            out.append(tuple(v))
        return out

    @property
    def negative_count(self) -> int:
        return 0 if self.signs is None else sum(1 for s in self.signs if s < 0)


@dataclass(frozen=True)
class Cube:
    """``[0, r]^n`` or, when ``signed``, ``[-1, 1]^n``."""

    n: int
    r: int = 1
    signed: bool = False

    def contains(self, x: Sequence, height=1) -> bool:
        lo = -height if self.signed else 0
        hi = height if self.signed else self.r * height
        return all(lo <= v <= hi for v in x)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    M = [list(r) for r in rows]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def _transpose(vs):
    return [list(col) for col in zip(*vs)]


def _inverse_fraction(cols: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Inverse of the matrix whose columns are ``cols``."""
    d = len(cols)
    A = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(int(i == k)) for k in range(d)] for i in range(d)]
    for c in range(d):
        p = next(i for i in range(c, d) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for i in range(d):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[d:] for row in A]


def _hermite_diagonal_basis(cols: Sequence[Sequence[int]]) -> list[list[int]]:
    """Lower-triangular basis (as columns) of the lattice spanned by ``cols``."""
    d = len(cols)
    B = [list(c) for c in cols]
    for i in range(d):
        # clear row i in columns i+1.. via gcd column operations
        for j in range(i + 1, d):
            while B[j][i] != 0:
                q = B[i][i] // B[j][i]
                B[i] = [a - q * b for a, b in zip(B[i], B[j])]
                B[i], B[j] = B[j], B[i]
        if B[i][i] < 0:
            B[i] = [-a for a in B[i]]
        if B[i][i] == 0:
            raise UnsupportedConeError("generators are linearly dependent")
    return B


@dataclass(frozen=True)
class SimplicialCone:
    """Cone with ordered generators ``scaling[j] * base[j]`` and per-generator openness.

    ``open[j]`` means the facet opposite generator ``j`` is removed.
    ``simplex`` carries the inequality description used by the brute-force
    oracle; it is never consulted when building the rational form.
    """

    base: tuple[tuple[int, ...], ...]
    scaling: tuple[int, ...]
    open: tuple[bool, ...]
    simplex: HalfOpenSimplex | None = None
    sign_weight: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(tuple(v) for v in self.base))
        object.__setattr__(self, "scaling", tuple(self.scaling))
        object.__setattr__(self, "open", tuple(bool(o) for o in self.open))
        d = len(self.base)
        if any(len(v) != d for v in self.base):
            raise ValueError("need dim+1 generators of length dim+1")
        if len(self.scaling) != d or len(self.open) != d:
            raise ValueError("scaling and open flags must match the generator count")
        if any(c < 1 for c in self.scaling):
            raise ValueError("scalings must be positive integers")
        if determinant(self.base) == 0:
            raise ValueError("generators are linearly dependent")

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c * x for x in v) for c, v in zip(self.scaling, self.base))

    @property
    def dim(self) -> int:
        return len(self.base)

    @property
    def determinant(self) -> int:
        return abs(determinant(_transpose(self.generators)))

    @property
    def unimodular_base(self) -> bool:
        return abs(determinant(_transpose(self.base))) == 1


def triangulate_cube(n: int, r: int = 1) -> list[HalfOpenSimplex]:
    """Disjoint simplices ``Delta_pi`` of ``[0, r]^n``, one per ``pi`` in lex order."""
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    return [
        HalfOpenSimplex(p, classical_descents(p), r)
        for p in itertools.permutations(range(1, n + 1))
    ]


def signed_simplex(g: ColoredPermutation) -> HalfOpenSimplex:
    """``Delta_(pi, eps)`` inside ``[-1, 1]^n`` for a signed permutation."""
    if g.r != 2:
        raise ValueError("signed simplices need r = 2")
    return HalfOpenSimplex(
        g.letters,
        descent_set(g, OrderFlavor.NATURAL),
        1,
        tuple(-1 if c else 1 for c in g.colors),
    )


def triangulate_signed_cube(n: int) -> list[HalfOpenSimplex]:
    """``2^n n!`` disjoint simplices covering ``[-1, 1]^n``, in group enumeration order."""
    return [signed_simplex(g) for g in enumerate_group(GroupSpec(2, n))]


class Location(NamedTuple):
    perm: tuple[int, ...]
    simplex: HalfOpenSimplex
    chain: str


def parse_point(text: str) -> list[Fraction]:
    """Comma-separated ``p/q`` (or integer) tokens."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty coordinate in {text!r}")
        if tok.count("/") > 1 or "." in tok or "e" in tok.lower():
            raise ValueError(f"coordinates must be integers or p/q fractions, got {tok!r}")
        out.append(Fraction(tok))
    return out


def locate(x: Sequence, n: int, r: int = 1) -> Location:
    """The unique ``Delta_pi`` of ``triangulate_cube(n, r)`` containing ``x``."""
    x = [Fraction(v) for v in x]
    if len(x) != n:
        raise ValueError(f"point has {len(x)} coordinates, expected {n}")
    if any(v < 0 or v > r for v in x):
        raise ValueError("point lies outside the cube")
    perm = tuple(sorted(range(1, n + 1), key=lambda i: (-x[i - 1], i)))
    simplex = HalfOpenSimplex(perm, classical_descents(perm), r)
    if not simplex.contains(x):  # pragma: no cover - guarded by the tie rule
        raise AssertionError("tie-breaking produced a non-containing simplex")
    # ascending chain, ties listed as in the sorted order read backwards
    parts = []
    asc = list(reversed(perm))
    for k, i in enumerate(asc):
        if k:
            parts.append("=" if x[i - 1] == x[asc[k - 1] - 1] else "<")
        parts.append(f"x{i}")
    return Location(perm, simplex, "".join(parts))


def scaling_scheme(name: str, n: int, r: int = 1) -> tuple[int, ...]:
    """``unit`` (all 1), ``wreath`` (1, r, ..., r) or ``typeD`` (1, 2, ..., 2, 1)."""
    if name == "unit":
        return (1,) * (n + 1)
    if name == "wreath":
        return (1,) + (r,) * n
    if name == "typeD":
        if n < 1:
            raise ValueError("typeD scaling needs n >= 1")
        return (1,) + (2,) * (n - 1) + (1,)
    raise ValueError(f"unknown scaling scheme {name!r}")


def cone_over(s: HalfOpenSimplex, scaling: Sequence[int] | None = None) -> SimplicialCone:
    """Cone over ``s`` with generator ``j`` equal to ``scaling[j]`` times the ``j``-th vertex direction."""
    n = s.n
    scaling = tuple(scaling) if scaling is not None else (1,) * (n + 1)
    if len(scaling) != n + 1:
        raise ValueError(f"need {n + 1} scalings, got {len(scaling)}")
    if any(c <= 0 for c in scaling):
        raise ValueError("scalings must be positive")
    _, links = s.chain()
    open_flags = tuple(j in links for j in range(n + 1))
    return SimplicialCone(s.vertex_directions(), scaling, open_flags, s, s.negative_count)


def cube_cone(n: int, r: int = 1, signed: bool = False) -> Cube:
    return Cube(n, r, signed)


def _closed_points_unimodular(c: SimplicialCone):
    d = c.dim
    for alpha in itertools.product(*(range(k) for k in c.scaling)):
        p = [0] * d
        for a, v in zip(alpha, c.base):
            if a:
                for i in range(d):
                    p[i] += a * v[i]
        yield alpha, p


def _lattice_points(c: SimplicialCone, half_open: bool):
    """Integer points of the parallelepiped via coset representatives modulo the generator lattice."""
    gens = c.generators
    d = c.dim
    inv = _inverse_fraction(gens)
    H = _hermite_diagonal_basis(gens)
    diag = [H[i][i] for i in range(d)]
    out = []
    for x in itertools.product(*(range(h) for h in diag)):
        lam = [sum(inv[j][i] * x[i] for i in range(d)) for j in range(d)]
        shift = []
        for j in range(d):
            if half_open and c.open[j]:
                shift.append(math.ceil(lam[j]) - 1)
            else:
                shift.append(math.floor(lam[j]))
        p = [x[i] - sum(shift[j] * gens[j][i] for j in range(d)) for i in range(d)]
        out.append(([lam[j] - shift[j] for j in range(d)], p))
    return out


def fpp_points(c: SimplicialCone, method: str = "shiftWhole") -> list[tuple[int, ...]]:
    """Integer points of the half-open fundamental parallelepiped, sorted.

    ``shiftWhole`` translates every closed-parallelepiped point by the sum of
    the minimal generators opposite removed facets (unimodular base only).
    ``shiftOffBoundary`` moves only the points lying on removed facets, each
    by the full generators of those facets. ``direct`` reduces coset
    representatives straight into the half-open region; it serves as an
    independent check for bases that are not unimodular.
    """
    d = c.dim
    if method == "shiftWhole":
        if not c.unimodular_base:
            raise UnsupportedConeError("shifting the whole parallelepiped needs a unimodular base")
        shift = [sum(v[i] for v, o in zip(c.base, c.open) if o) for i in range(d)]
        pts = [tuple(p[i] + shift[i] for i in range(d)) for _, p in _closed_points_unimodular(c)]
    elif method == "shiftOffBoundary":
        gens = c.generators
        pts = []
        if c.unimodular_base:
            closed = ((tuple(Fraction(a, k) for a, k in zip(alpha, c.scaling)), p)
                      for alpha, p in _closed_points_unimodular(c))
        else:
            closed = _lattice_points(c, half_open=False)
        for lam, p in closed:
            p = list(p)
            for j in range(d):
                if c.open[j] and lam[j] == 0:
                    for i in range(d):
                        p[i] += gens[j][i]
            pts.append(tuple(p))
    elif method == "direct":
        pts = [tuple(p) for _, p in _lattice_points(c, half_open=True)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(pts)


def point_monomial(p: Sequence[int], sign_weight: int | None = None) -> int:
    """``z0^{p0} * prod z_i^{p_i}`` with negative coordinates sent to ``w_i^{-p_i}``.

    ``sign_weight`` is the power of ``s``; by default the number of negative coordinates.
    """
    ex: dict[VarId, int] = {Z(0): p[0]}
    negs = 0
    for i in range(1, len(p)):
        if p[i] > 0:
            ex[Z(i)] = p[i]
        elif p[i] < 0:
            ex[W(i)] = -p[i]
            negs += 1
    if sign_weight is None:
        sign_weight = negs
    if sign_weight:
        ex[S] = sign_weight
    return monomial(ex)


def sigma_rational(c: SimplicialCone, method: str | None = None) -> RationalExpr:
    """Integer-point transform as parallelepiped numerator over ``prod(1 - z^{v_j})``."""
    if method is None:
        method = "shiftWhole" if c.unimodular_base else "shiftOffBoundary"
    num = Polynomial.from_monomials(
        point_monomial(p, c.sign_weight) for p in fpp_points(c, method)
    )
    den = tuple(point_monomial(v, 0) for v in c.generators)
    return RationalExpr(num, den)


def _height_points(shape, m0: int):
    if isinstance(shape, Cube):
        lo, hi = (-m0, m0) if shape.signed else (0, shape.r * m0)
        yield from itertools.product(range(lo, hi + 1), repeat=shape.n)
        return
    n = shape.n
    hi = shape.scale * m0
    signs = shape.signs or (1,) * n
    ranges = [None] * n
    for a, s in zip(shape.perm, signs):
        ranges[a - 1] = range(0, hi + 1) if s > 0 else range(-hi, 1)
    yield from itertools.product(*ranges)


def sigma_bruteforce(shape, K: int) -> TruncatedSeries:
    """Sum of one monomial per lattice point with ``x0 <= K``, tested against inequalities only."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if isinstance(shape, SimplicialCone):
        if shape.simplex is None:
            raise ValueError("cone carries no inequality description")
        shape = shape.simplex
    terms: dict[int, int] = {}
    for m0 in range(K + 1):
        for x in _height_points(shape, m0):
            if shape.contains(x, m0):
                m = point_monomial((m0,) + tuple(x))
                terms[m] = terms.get(m, 0) + 1
    return TruncatedSeries(Polynomial(terms), K, Z(0))
