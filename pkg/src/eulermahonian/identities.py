"""Registry of generating-function identities and an exact checker for them.

Every identity has the shape ``sum_k f_k * x**k = N / prod(1 - m_i)`` where
``x`` is ``t`` (bivariate forms) or ``z0`` (multivariate forms). The left side
comes from :func:`series.lhs_series`; the right side is assembled by summing
statistics over a group. Multivariate forms have a second, geometric route
that sums integer-point transforms of cones over a triangulation.
"""
from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._kernels import wreath_statistics
from .colored_perm import (
    GroupSpec,
    enumerate_group,
    enumerate_increasing,
    group_order,
    inverse,
)
from .polyhedral import (
    cone_over,
    scaling_scheme,
    sigma_rational,
    triangulate_cube,
    triangulate_signed_cube,
)
from .series import (
    Q,
    S,
    T,
    W,
    Z,
    Polynomial,
    RationalExpr,
    TruncatedSeries,
    VarId,
    expand,
    lhs_series,
    monomial,
)
from .statistics import (
    OrderFlavor,
    classical_descents,
    color_change_vector,
    descent_set,
    neg_set,
    nneg_multiset,
)

__all__ = [
    "IdentityId",
    "IdentityReport",
    "BudgetExceeded",
    "BUDGET",
    "STAT_PAIRS",
    "REGISTRY",
    "lhs_of",
    "lhs",
    "rhs_series",
    "verify",
    "distribution",
    "group_arrays",
    "perturbable",
]

BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class IdentityId(str, enum.Enum):
    EULERIAN_A = "eulerianA"
    CARLITZ = "carlitz"
    MULTIVARIATE_A = "multivariateA"
    WREATH_EULERIAN = "wreathEulerian"
    WREATH_NEG = "wreathNeg"
    WREATH_FLAG = "wreathFlag"
    WREATH_NEG_MULTI = "wreathNegMulti"
    WREATH_FLAG_MULTI = "wreathFlagMulti"
    WREATH_FLAG_RK = "wreathFlagRk"
    WREATH_FLAG_RK_MULTI = "wreathFlagRkMulti"
    CHOW_GESSEL = "chowGessel"
    CHOW_GESSEL_FLAG = "chowGesselFlag"
    B_NATURAL_MULTI = "bNaturalMulti"
    B_FLAG_MULTI = "bFlagMulti"
    D_EULERIAN = "dEulerian"
    D_NEG = "dNeg"
    D_NEG_MULTI = "dNegMulti"


@dataclass(frozen=True)
class _Entry:
    lhs: str
    group: str  # "A" (r = 1), "W" (any r), "B" (r = 2), "D" (r = 2, even)
    multivariate: bool
    stats: tuple[tuple[str, VarId], ...] = ()
    min_n: int = 1


REGISTRY: dict[IdentityId, _Entry] = {
    IdentityId.EULERIAN_A: _Entry("power", "A", False, (("desA", T),)),
    IdentityId.CARLITZ: _Entry("qPower", "A", False, (("desA", T), ("majA", Q))),
    IdentityId.MULTIVARIATE_A: _Entry("productK1", "A", True),
    IdentityId.WREATH_EULERIAN: _Entry("powerRK", "W", False, (("des", T),)),
    IdentityId.WREATH_NEG: _Entry("qPower", "W", False, (("ndes", T), ("nmajor", Q))),
    IdentityId.WREATH_FLAG: _Entry("qPower", "W", False, (("fdes", T), ("fmajor", Q))),
    IdentityId.WREATH_NEG_MULTI: _Entry("productK1", "W", True),
    IdentityId.WREATH_FLAG_MULTI: _Entry("productK1", "W", True),
    IdentityId.WREATH_FLAG_RK: _Entry("qPowerRK", "W", False, (("des", T), ("fmajor", Q))),
    IdentityId.WREATH_FLAG_RK_MULTI: _Entry("productRK1", "W", True),
    IdentityId.CHOW_GESSEL: _Entry(
        "signedQ", "B", False, (("neg", S), ("natdes", T), ("natmaj", Q))
    ),
    IdentityId.CHOW_GESSEL_FLAG: _Entry("q2k1", "B", False, (("natdes", T), ("natfmaj", Q))),
    IdentityId.B_NATURAL_MULTI: _Entry("signedMulti", "B", True),
    IdentityId.B_FLAG_MULTI: _Entry("productRK1", "B", True),
    IdentityId.D_EULERIAN: _Entry("typeD", "D", False, (("dnatdes", T),), min_n=2),
    IdentityId.D_NEG: _Entry("qPower", "D", False, (("dndes", T), ("dnmajor", Q)), min_n=2),
    IdentityId.D_NEG_MULTI: _Entry("productK1", "D", True, min_n=2),
}

WREATH_EULERIAN_VARIANTS = ("des", "stdes", "natdes")

# statistic pairs for `distribution`; a single name means the q-exponent is 0
STAT_PAIRS: dict[str, tuple[str, ...]] = {
    "des-maj": ("desA", "majA"),
    "ndes-nmajor": ("ndes", "nmajor"),
    "fdes-fmajor": ("fdes", "fmajor"),
    "des-fmajor": ("des", "fmajor"),
    "natdes-natfmaj": ("natdes", "natfmaj"),
    "natdes-natmaj": ("natdes", "natmaj"),
    "dndes-dnmajor": ("dndes", "dnmajor"),
    "des-only": ("des",),
    "stdes-only": ("stdes",),
    "natdes-only": ("natdes",),
    "dnatdes-only": ("dnatdes",),
}
_R2_STATS = {"natdes", "natmaj", "natfmaj", "dnatdes", "dndes", "dnmajor"}
_D_STATS = {"dnatdes", "dndes", "dnmajor"}


def _as_id(ident) -> IdentityId:
    try:
        return IdentityId(getattr(ident, "value", ident))
    except ValueError:
        raise ValueError(f"unknown identity {ident!r}") from None


def _check_params(ident: IdentityId, spec: GroupSpec) -> _Entry:
    e = REGISTRY[ident]
    if e.group == "A" and spec.r != 1:
        raise ValueError(f"{ident.value} is indexed by S_n and needs r = 1")
    if e.group in ("B", "D") and spec.r != 2:
        raise ValueError(f"{ident.value} needs r = 2")
    if spec.n < e.min_n:
        raise ValueError(f"{ident.value} needs n >= {e.min_n}")
    if group_order(spec) > BUDGET:
        raise BudgetExceeded(
            f"{spec.r}^{spec.n}*{spec.n}! = {group_order(spec)} elements exceeds the budget of {BUDGET}"
        )
    return e


def lhs_of(ident) -> str:
    return REGISTRY[_as_id(ident)].lhs


def lhs(ident, spec: GroupSpec, K: int) -> TruncatedSeries:
    ident = _as_id(ident)
    _check_params(ident, spec)
    return lhs_series(REGISTRY[ident].lhs, spec.r, spec.n, K)


def perturbable(ident, variant: str = "des") -> tuple[str, ...]:
    """Names accepted by the ``perturb`` argument of :func:`rhs_series`."""
    ident = _as_id(ident)
    e = REGISTRY[ident]
    if e.multivariate:
        return ("z0", "z1")
    if ident is IdentityId.WREATH_EULERIAN:
        return (variant,)
    return tuple(name for name, _ in e.stats)


# -- group tables ---------------------------------------------------------------


def group_arrays(spec: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """``(letters, colors)`` rows for the whole group in enumeration order."""
    n, r = spec.n, spec.r
    perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64)
    cols = np.array(list(itertools.product(range(r), repeat=n)), dtype=np.int64).reshape(-1, n)
    letters = np.repeat(perms, len(cols), axis=0)
    colors = np.tile(cols, (len(perms), 1))
    return letters, colors


def _table(spec: GroupSpec, names: Iterable[str], type_d: bool = False) -> dict[str, np.ndarray]:
    if group_order(spec) > BUDGET:
        raise BudgetExceeded(f"group of order {group_order(spec)} exceeds the budget of {BUDGET}")
    letters, colors = group_arrays(spec)
    if type_d:
        keep = colors.sum(axis=1) % 2 == 0
        letters, colors = letters[keep], colors[keep]
    stats = wreath_statistics(letters, colors, spec.r)
    return {name: stats[name] for name in names}


def _tally(columns: list[tuple[np.ndarray, VarId]]) -> Polynomial:
    stack = np.stack([c for c, _ in columns], axis=1)
    rows, counts = np.unique(stack, axis=0, return_counts=True)
    units = [v.unit for _, v in columns]
    terms = {}
    for row, cnt in zip(rows.tolist(), counts.tolist()):
        m = sum(e * u for e, u in zip(row, units))
        terms[m] = terms.get(m, 0) + cnt
    return Polynomial(terms)


def distribution(spec: GroupSpec, pair: str) -> Polynomial:
    """``sum over the group of T**stat1 * Q**stat2``; type-D pairs sum over D_n only."""
    if pair not in STAT_PAIRS:
        raise ValueError(f"unknown statistic pair {pair!r}; choose from {sorted(STAT_PAIRS)}")
    names = STAT_PAIRS[pair]
    if set(names) & _R2_STATS and spec.r != 2:
        raise ValueError(f"{pair} needs r = 2")
    type_d = bool(set(names) & _D_STATS)
    if type_d and spec.n < 2:
        raise ValueError(f"{pair} needs n >= 2")
    tab = _table(spec, names, type_d)
    return _tally([(tab[name], v) for name, v in zip(names, (T, Q))])


# -- bivariate right-hand sides ---------------------------------------------------


def _mono(**ex) -> int:
    return monomial({{"t": T, "q": Q}[k]: v for k, v in ex.items() if v})


def _bivariate_denominator(ident: IdentityId, r: int, n: int) -> list[int]:
    if ident in (IdentityId.EULERIAN_A, IdentityId.WREATH_EULERIAN, IdentityId.D_EULERIAN):
        return [_mono(t=1)] * (n + 1)
    if ident is IdentityId.CARLITZ or ident is IdentityId.CHOW_GESSEL:
        return [_mono(t=1, q=j) for j in range(n + 1)]
    if ident in (IdentityId.WREATH_NEG, IdentityId.WREATH_FLAG):
        return [_mono(t=1)] + [_mono(t=r, q=r * j) for j in range(1, n + 1)]
    if ident is IdentityId.WREATH_FLAG_RK:
        return [_mono(t=1, q=r * j) for j in range(n + 1)]
    if ident is IdentityId.CHOW_GESSEL_FLAG:
        return [_mono(t=1, q=2 * j) for j in range(n + 1)]
    if ident is IdentityId.D_NEG:
        return [_mono(t=1), _mono(t=1, q=n)] + [_mono(t=2, q=2 * j) for j in range(1, n)]
    raise AssertionError(ident)


def _bivariate_rhs(ident, spec, K, variant, perturb) -> TruncatedSeries:
    e = REGISTRY[ident]
    stats = e.stats
    if ident is IdentityId.WREATH_EULERIAN:
        if variant not in WREATH_EULERIAN_VARIANTS:
            raise ValueError(f"variant must be one of {WREATH_EULERIAN_VARIANTS}")
        if variant == "natdes" and spec.r != 2:
            raise ValueError("the natdes variant needs r = 2")
        stats = ((variant, T),)
    names = [name for name, _ in stats]
    if perturb is not None and perturb not in names:
        raise ValueError(f"cannot perturb {perturb!r}; choose from {names}")
    tab = _table(spec, names, e.group == "D")
    cols = [(tab[name] + (name == perturb), v) for name, v in stats]
    num = _tally(cols)
    return expand(RationalExpr(num, _bivariate_denominator(ident, spec.r, spec.n)), K, T)


# -- multivariate right-hand sides: statistics route ---------------------------------


def _prefix_units(perm) -> list[int]:
    """``P_j = z_{pi(1)} ... z_{pi(j)}`` as packed monomials, ``j = 0..n``."""
    out, acc = [0], 0
    for a in perm:
        acc += Z(a).unit
        out.append(acc)
    return out


_Z0 = Z(0).unit


def _terms_multivariate_a(spec):
    n = spec.n
    for perm in itertools.permutations(range(1, n + 1)):
        P = _prefix_units(perm)
        V = [_Z0 + p for p in P]
        yield sum(V[j] for j in classical_descents(perm)), V


def _terms_wreath_neg(spec):
    n, r = spec.n, spec.r
    incs = [nneg_multiset(inverse(rho)) for rho in enumerate_increasing(spec)]
    for perm in itertools.permutations(range(1, n + 1)):
        P = _prefix_units(perm)
        V = [_Z0 + p for p in P]
        den = [_Z0] + [r * V[j] for j in range(1, n + 1)]
        base = sum(V[j] for j in classical_descents(perm))
        for m in incs:
            yield base + sum(k * V[j] for j, k in m.items), den


def _terms_wreath_flag(spec):
    n, r = spec.n, spec.r
    for g in enumerate_group(spec):
        P = _prefix_units(g.letters)
        V = [_Z0 + p for p in P]
        den = [_Z0] + [r * V[j] for j in range(1, n + 1)]
        a = color_change_vector(g.colors, r).a
        num = sum(a[j - 1] * V[j] for j in range(1, n + 1))
        num += sum(r * V[j] for j in classical_descents(g.letters) if a[j - 1] == 0)
        yield num, den


def _terms_wreath_flag_rk(spec):
    n, r = spec.n, spec.r
    for g in enumerate_group(spec):
        P = _prefix_units(g.letters)
        den = [_Z0 + r * p for p in P]
        a = color_change_vector(g.colors, r).a
        num = -(-sum(a) // r) * _Z0 + sum(a[j - 1] * P[j] for j in range(1, n + 1))
        num += sum(_Z0 + r * P[j] for j in classical_descents(g.letters) if a[j - 1] == 0)
        yield num, den


def _terms_b_natural(spec):
    n = spec.n
    for g in enumerate_group(spec):
        # tails T_j = prod_{i > j} of z_{pi(i)} (positive) or w_{pi(i)} (negative)
        tails = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            a, c = g.letters[j], g.colors[j]
            tails[j] = tails[j + 1] + (W(a).unit if c else Z(a).unit)
        den = [_Z0 + t for t in tails]
        num = sum(g.colors) * S.unit + sum(den[j] for j in descent_set(g, OrderFlavor.NATURAL))
        yield num, den


def _terms_d_neg(spec):
    n = spec.n
    incs = [neg_set(inverse(rho)) for rho in enumerate_increasing(spec, even=True)]
    for perm in itertools.permutations(range(1, n + 1)):
        P = _prefix_units(perm)
        V = [_Z0 + p for p in P]
        den = [_Z0, V[n]] + [2 * V[j] for j in range(1, n)]
        base = sum(V[j] for j in classical_descents(perm))
        for negs in incs:
            yield base + sum(V[j - 1] for j in negs if j != 1), den


_MULTI_TERMS = {
    IdentityId.MULTIVARIATE_A: _terms_multivariate_a,
    IdentityId.WREATH_NEG_MULTI: _terms_wreath_neg,
    IdentityId.WREATH_FLAG_MULTI: _terms_wreath_flag,
    IdentityId.WREATH_FLAG_RK_MULTI: _terms_wreath_flag_rk,
    IdentityId.B_FLAG_MULTI: _terms_wreath_flag_rk,
    IdentityId.B_NATURAL_MULTI: _terms_b_natural,
    IdentityId.D_NEG_MULTI: _terms_d_neg,
}


def _sum_rational_terms(terms, K: int, bump: int = 0) -> TruncatedSeries:
    """Group numerator monomials by denominator, then expand each group once."""
    groups: dict[tuple[int, ...], dict[int, int]] = {}
    for num, den in terms:
        key = tuple(sorted(den))
        bucket = groups.setdefault(key, {})
        m = num + bump
        bucket[m] = bucket.get(m, 0) + 1
    total = Polynomial()
    for den, num in groups.items():
        total = total + expand(RationalExpr(Polynomial(num), den), K, Z(0)).poly
    return TruncatedSeries(total, K, Z(0))


# -- multivariate right-hand sides: geometric route ---------------------------------


def _cones(ident: IdentityId, spec: GroupSpec):
    n, r = spec.n, spec.r
    if ident is IdentityId.MULTIVARIATE_A:
        return [cone_over(s) for s in triangulate_cube(n)]
    if ident in (IdentityId.WREATH_NEG_MULTI, IdentityId.WREATH_FLAG_MULTI):
        return [cone_over(s, scaling_scheme("wreath", n, r)) for s in triangulate_cube(n)]
    if ident in (IdentityId.WREATH_FLAG_RK_MULTI, IdentityId.B_FLAG_MULTI):
        return [cone_over(s) for s in triangulate_cube(n, r)]
    if ident is IdentityId.B_NATURAL_MULTI:
        return [cone_over(s) for s in triangulate_signed_cube(n)]
    if ident is IdentityId.D_NEG_MULTI:
        return [cone_over(s, scaling_scheme("typeD", n)) for s in triangulate_cube(n)]
    raise ValueError(f"{ident.value} has no geometric construction")


def _geometric_rhs(ident, spec, K) -> TruncatedSeries:
    total = Polynomial()
    for c in _cones(ident, spec):
        total = total + expand(sigma_rational(c), K, Z(0)).poly
    return TruncatedSeries(total, K, Z(0))


# -- public entry points ---------------------------------------------------------


def rhs_series(
    ident,
    spec: GroupSpec,
    K: int,
    *,
    route: str = "statistics",
    variant: str = "des",
    perturb: str | None = None,
) -> TruncatedSeries:
    """Right-hand side expanded to degree ``K``.

    ``route="geometric"`` (multivariate identities only) sums cone transforms
    instead of statistics. ``perturb`` names one statistic to raise by one in
    every numerator term; it exists to show that comparisons are not vacuous.
    """
    ident = _as_id(ident)
    e = _check_params(ident, spec)
    if K < 0:
        raise ValueError("K must be >= 0")
    if route not in ("statistics", "geometric"):
        raise ValueError(f"unknown route {route!r}")
    if not e.multivariate:
        if route != "statistics":
            raise ValueError(f"{ident.value} has no geometric construction")
        return _bivariate_rhs(ident, spec, K, variant, perturb)
    if route == "geometric":
        if perturb is not None:
            raise ValueError("perturbation applies to the statistics route")
        return _geometric_rhs(ident, spec, K)
    bump = 0
    if perturb is not None:
        if perturb not in ("z0", "z1"):
            raise ValueError(f"cannot perturb {perturb!r}; choose z0 or z1")
        bump = Z(int(perturb[1:])).unit
    return _sum_rational_terms(_MULTI_TERMS[ident](spec), K, bump)


@dataclass
class IdentityReport:
    id: str
    r: int
    n: int
    K: int
    match: bool
    first_mismatch: tuple[str, int, int] | None
    elapsed_ms: float
    route: str = "statistics"
    variant: str | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "r": self.r,
            "n": self.n,
            "K": self.K,
            "match": self.match,
            "route": self.route,
            "elapsedMs": round(self.elapsed_ms, 3),
        }
        if self.variant is not None:
            out["variant"] = self.variant
        if self.first_mismatch is not None:
            m, a, b = self.first_mismatch
            out["firstMismatch"] = {"monomial": m, "lhs": a, "rhs": b}
        return out


def verify(
    ident,
    spec: GroupSpec,
    K: int,
    *,
    route: str = "statistics",
    variant: str = "des",
    perturb: str | None = None,
) -> IdentityReport:
    ident = _as_id(ident)
    start = time.perf_counter()
    left = lhs(ident, spec, K)
    right = rhs_series(ident, spec, K, route=route, variant=variant, perturb=perturb)
    diff = left.first_difference(right)
    mismatch = None
    if diff is not None:
        m, a, b = diff
        mismatch = (Polynomial({m: 1}).to_string(), a, b)
    return IdentityReport(
        ident.value,
        spec.r,
        spec.n,
        K,
        diff is None,
        mismatch,
        (time.perf_counter() - start) * 1000.0,
        route,
        variant if ident is IdentityId.WREATH_EULERIAN else None,
    )
