"""Exact multivariate polynomials and truncated power series.

Monomials are packed into a single Python int: every variable owns a fixed
bit field of width ``SLOT_BITS``, so multiplying monomials is integer
addition. Coefficients are Python ints (arbitrary precision). Series are
truncated by the degree of one grading variable, ``z0`` by default.

Variables: ``Z(i)`` for ``i >= 0``, ``W(j)`` for ``j >= 1`` (standing for
``z_{-j}^{-1}``, so no negative exponents are ever needed), and ``S``,
``T``, ``Q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._kernels import geom_expand, mul_trunc

__all__ = [
    "VarId",
    "Z",
    "W",
    "S",
    "T",
    "Q",
    "SLOT_BITS",
    "monomial",
    "unpack",
    "grade_of",
    "Polynomial",
    "TruncatedSeries",
    "RationalExpr",
    "q_integer",
    "expand",
    "specialize",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "evaluate_rational_poly",
    "lhs_series",
    "LHS_KINDS",
]

SLOT_BITS = 24
_MASK = (1 << SLOT_BITS) - 1


@dataclass(frozen=True, order=True)
class VarId:
    kind: str  # 'z', 'w', 's', 't', 'q'
    index: int = 0

    def __post_init__(self):
        if self.kind not in "zwstq" or len(self.kind) != 1:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.kind == "z" and self.index < 0:
            raise ValueError("z index must be >= 0")
        if self.kind == "w" and self.index < 1:
            raise ValueError("w index must be >= 1")

    @property
    def slot(self) -> int:
        if self.kind == "t":
            return 0
        if self.kind == "q":
            return 1
        if self.kind == "s":
            return 2
        if self.kind == "z":
            return 3 + 2 * self.index
        return 2 + 2 * self.index

    @property
    def shift(self) -> int:
        return self.slot * SLOT_BITS

    @property
    def unit(self) -> int:
        return 1 << self.shift

    def sort_key(self) -> tuple[int, int]:
        # printing order z0, z1, ..., w1, w2, ..., s, t, q
        return ("zwstq".index(self.kind), self.index)

    def __str__(self) -> str:
        return self.kind + (str(self.index) if self.kind in "zw" else "")

    def __repr__(self) -> str:
        return str(self)


def Z(i: int) -> VarId:
    return VarId("z", i)


def W(j: int) -> VarId:
    return VarId("w", j)


S = VarId("s")
T = VarId("t")
Q = VarId("q")


def _var_of_slot(slot: int) -> VarId:
    if slot == 0:
        return T
    if slot == 1:
        return Q
    if slot == 2:
        return S
    if slot % 2:
        return Z((slot - 3) // 2)
    return W((slot - 2) // 2)


def monomial(exponents: Mapping[VarId, int] | Iterable[tuple[VarId, int]] = ()) -> int:
    """Pack ``{var: exponent}`` into a monomial key."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    out = 0
    for v, e in items:
        if e < 0:
            raise ValueError(f"negative exponent {e} for {v}")
        if e > _MASK:
            raise OverflowError(f"exponent {e} of {v} exceeds the packed limit")
        out += e << v.shift
    return out


def unpack(m: int) -> dict[VarId, int]:
    out = {}
    slot = 0
    while m:
        e = m & _MASK
        if e:
            out[_var_of_slot(slot)] = e
        m >>= SLOT_BITS
        slot += 1
    return out


def grade_of(m: int, grade: VarId) -> int:
    return (m >> grade.shift) & _MASK


def _max_exponent(terms: dict[int, int]) -> int:
    best = 0
    for m in terms:
        while m:
            e = m & _MASK
            if e > best:
                best = e
            m >>= SLOT_BITS
    return best


def _mono_str(m: int) -> str:
    parts = []
    for v, e in sorted(unpack(m).items(), key=lambda ve: ve[0].sort_key()):
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _print_key(m: int) -> tuple:
    ex = unpack(m)
    vs = sorted(ex, key=lambda v: v.sort_key())
    # negated variable keys make tuple comparison agree with exponent-vector lex order
    return tuple((tuple(-k for k in v.sort_key()), ex[v]) for v in vs)


def _lex_vector(m: int, variables: Sequence[VarId]) -> tuple[int, ...]:
    ex = unpack(m)
    return tuple(ex.get(v, 0) for v in variables)


class Polynomial:
    """Sparse polynomial with integer coefficients; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}

    # construction
    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({0: c})

    @classmethod
    def var(cls, v: VarId, power: int = 1) -> "Polynomial":
        return cls({monomial({v: power}): 1})

    @classmethod
    def from_monomials(cls, monos: Iterable[int]) -> "Polynomial":
        terms: dict[int, int] = {}
        for m in monos:
            terms[m] = terms.get(m, 0) + 1
        return cls(terms)

    @property
    def terms(self) -> dict[int, int]:
        return self._terms

    def items(self):
        return self._terms.items()

    def coefficient(self, m: int | Mapping[VarId, int]) -> int:
        if not isinstance(m, int):
            m = monomial(m)
        return self._terms.get(m, 0)

    def variables(self) -> list[VarId]:
        seen = set()
        for m in self._terms:
            seen.update(unpack(m))
        return sorted(seen, key=lambda v: v.sort_key())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if _max_exponent(self._terms) + _max_exponent(other._terms) > _MASK:
            raise OverflowError("product exponent exceeds the packed monomial limit")
        return Polynomial(mul_trunc(self._terms, other._terms, 0, -1))

    __rmul__ = __mul__

    def mul_monomial(self, m: int, coeff: int = 1) -> "Polynomial":
        return Polynomial({k + m: c * coeff for k, c in self._terms.items()})

    def truncate(self, grade: VarId, K: int) -> "Polynomial":
        sh = grade.shift
        return Polynomial({m: c for m, c in self._terms.items() if (m >> sh) & _MASK <= K})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m in sorted(self._terms, key=_print_key, reverse=True):
            c = self._terms[m]
            ms = _mono_str(m)
            if not ms:
                body = str(abs(c))
            elif abs(c) == 1:
                body = ms
            else:
                body = f"{abs(c)}*{ms}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        head = ("-" if out[0][0] == "-" else "") + out[0][1]
        return head + "".join(f" {s} {b}" for s, b in out[1:])

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()})"

    def to_table(self, row: VarId, column: VarId) -> list[list[int]]:
        """Dense coefficient table, rows indexed by ``row`` degree."""
        extra = [v for v in self.variables() if v not in (row, column)]
        if extra:
            raise ValueError(f"table needs a bivariate polynomial, found {extra}")
        if not self._terms:
            return [[0]]
        rmax = max(grade_of(m, row) for m in self._terms)
        cmax = max(grade_of(m, column) for m in self._terms)
        table = [[0] * (cmax + 1) for _ in range(rmax + 1)]
        for m, c in self._terms.items():
            table[grade_of(m, row)][grade_of(m, column)] = c
        return table


class TruncatedSeries:
    """Power series known up to degree ``K`` in the grading variable."""

    __slots__ = ("poly", "K", "grade")

    def __init__(self, poly: Polynomial | Mapping[int, int], K: int, grade: VarId = Z(0)):
        if K < 0:
            raise ValueError("truncation order must be >= 0")
        if not isinstance(poly, Polynomial):
            poly = Polynomial(poly)
        self.poly = poly.truncate(grade, K)
        self.K = K
        self.grade = grade

    @property
    def terms(self) -> dict[int, int]:
        return self.poly.terms

    def coefficient(self, m) -> int:
        return self.poly.coefficient(m)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.grade != other.grade:
            raise ValueError(f"grading mismatch: {self.grade} vs {other.grade}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(self.poly + other.poly, min(self.K, other.K), self.grade)
        if isinstance(other, (Polynomial, int)):
            return TruncatedSeries(self.poly + other, self.K, self.grade)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.poly, self.K, self.grade)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.poly * other, self.K, self.grade)
        if isinstance(other, TruncatedSeries):
            self._check(other)
            K = min(self.K, other.K)
            other_terms = other.terms
        elif isinstance(other, Polynomial):
            K = self.K
            other_terms = other.terms
        else:
            return NotImplemented
        out = mul_trunc(self.terms, other_terms, self.grade.shift, K)
        return TruncatedSeries(Polynomial(out), K, self.grade)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.K == other.K and self.grade == other.grade and self.poly == other.poly

    def __hash__(self):
        return hash((self.K, self.grade, self.poly))

    def variables(self) -> list[VarId]:
        return self.poly.variables()

    def first_difference(self, other: "TruncatedSeries"):
        """Lexicographically smallest monomial where the two differ, or ``None``.

        Returns ``(monomial, self_coefficient, other_coefficient)``.
        """
        self._check(other)
        a, b = self.terms, other.terms
        diff = [m for m in set(a) | set(b) if a.get(m, 0) != b.get(m, 0)]
        if not diff:
            return None
        variables = sorted(
            {v for m in diff for v in unpack(m)} | {self.grade}, key=lambda v: v.sort_key()
        )
        m = min(diff, key=lambda m: _lex_vector(m, variables))
        return m, a.get(m, 0), b.get(m, 0)

    def __str__(self) -> str:
        return f"{self.poly.to_string()} + O({self.grade}^{self.K + 1})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"


@dataclass(frozen=True)
class RationalExpr:
    """``numerator / prod(1 - m for m in denominator)`` with packed monomials ``m``."""

    numerator: Polynomial
    denominator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "denominator", tuple(self.denominator))

    def check(self, grade: VarId) -> None:
        for m in self.denominator:
            if grade_of(m, grade) < 1:
                raise ValueError(
                    f"denominator factor 1 - {_mono_str(m) or '1'} has no {grade} and cannot be expanded"
                )

    def denominator_polynomial(self) -> Polynomial:
        out = Polynomial.constant(1)
        for m in self.denominator:
            out = out * Polynomial({0: 1, m: -1})
        return out


def expand(expr: RationalExpr, K: int, grade: VarId = Z(0)) -> TruncatedSeries:
    """Expand ``expr`` as a power series up to ``grade``-degree ``K``."""
    if K < 0:
        raise ValueError("truncation order must be >= 0")
    expr.check(grade)
    sh = grade.shift
    terms = {m: c for m, c in expr.numerator.terms.items() if (m >> sh) & _MASK <= K}
    for m in sorted(expr.denominator):
        terms = geom_expand(terms, m, sh, K)
    return TruncatedSeries(Polynomial(terms), K, grade)


def specialize(p, mapping: Mapping[VarId, tuple[VarId, int]]):
    """Substitute ``v -> target**power`` for every ``v`` in ``mapping``.

    Variables not in ``mapping`` are left alone. A :class:`TruncatedSeries`
    keeps its truncation order; its grading variable must map to itself.
    """
    delta = {}
    for v, (target, power) in mapping.items():
        if power < 1:
            raise ValueError("specialization powers must be positive")
        delta[v.slot] = power * target.unit

    def image(m: int) -> int:
        out = 0
        slot = 0
        while m:
            e = m & _MASK
            if e:
                out += e * delta.get(slot, 1 << (slot * SLOT_BITS))
            m >>= SLOT_BITS
            slot += 1
        return out

    def sub(poly: Polynomial) -> Polynomial:
        terms: dict[int, int] = {}
        for m, c in poly.terms.items():
            k = image(m)
            terms[k] = terms.get(k, 0) + c
        return Polynomial(terms)

    if isinstance(p, TruncatedSeries):
        g = mapping.get(p.grade, (p.grade, 1))
        if g != (p.grade, 1):
            raise ValueError("the grading variable must be left unchanged")
        return TruncatedSeries(sub(p.poly), p.K, p.grade)
    if isinstance(p, Polynomial):
        return sub(p)
    raise TypeError(f"cannot specialize {type(p).__name__}")


def q_integer(m: int, v: VarId = Q) -> Polynomial:
    """``1 + v + ... + v**(m-1)``; zero when ``m == 0``."""
    if m < 0:
        raise ValueError("q-integers need m >= 0")
    u = v.unit
    return Polynomial({i * u: 1 for i in range(m)})


# -- Bernoulli ------------------------------------------------------------------


def bernoulli_numbers(n: int) -> list[Fraction]:
    """``B_0..B_n`` with ``B_1 = -1/2``."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def bernoulli_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of ``B_n(x)``, lowest degree first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    B = bernoulli_numbers(n)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * B[k]
    return tuple(coeffs)


def evaluate_rational_poly(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- left-hand sides ----------------------------------------------------------

LHS_KINDS = (
    "power",
    "powerRK",
    "productK1",
    "productRK1",
    "qPower",
    "qPowerRK",
    "signedQ",
    "signedMulti",
    "typeD",
    "q2k1",
)


def _power(p: Polynomial, n: int, grade: VarId, K: int) -> Polynomial:
    out = Polynomial.constant(1)
    for _ in range(n):
        out = Polynomial(mul_trunc(out.terms, p.terms, grade.shift, K))
    return out


def _type_d_coefficient(n: int, k: int) -> int:
    bp = bernoulli_polynomial(n)
    val = (2 * k + 1) ** n - 2 ** (n - 1) * (
        evaluate_rational_poly(bp, k + 1) - evaluate_rational_poly(bp, 0)
    )
    if val.denominator != 1:
        raise ArithmeticError(f"type-D coefficient for n={n}, k={k} is not integral: {val}")
    return int(val)


def lhs_series(kind: str, r: int, n: int, K: int) -> TruncatedSeries:
    """``sum_{k<=K} f_k * grade**k`` for the summand ``f_k`` named by ``kind``.

    Multivariate kinds are graded by ``z0``; the others by ``t``.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    multivariate = kind in ("productK1", "productRK1", "signedMulti")
    grade = Z(0) if multivariate else T
    total = Polynomial()
    for k in range(K + 1):
        gk = grade.unit * k
        if kind == "power":
            f = Polynomial.constant((k + 1) ** n)
        elif kind == "powerRK":
            f = Polynomial.constant((r * k + 1) ** n)
        elif kind == "typeD":
            f = Polynomial.constant(_type_d_coefficient(n, k))
        elif kind == "qPower":
            f = _power(q_integer(k + 1), n, grade, K)
        elif kind == "qPowerRK":
            f = _power(q_integer(r * k + 1), n, grade, K)
        elif kind == "q2k1":
            f = _power(q_integer(2 * k + 1), n, grade, K)
        elif kind == "signedQ":
            f = _power(q_integer(k + 1) + q_integer(k) * Polynomial.var(S), n, grade, K)
        elif kind in ("productK1", "productRK1"):
            m = k + 1 if kind == "productK1" else r * k + 1
            f = Polynomial.constant(1)
            for j in range(1, n + 1):
                f = f * q_integer(m, Z(j))
        elif kind == "signedMulti":
            f = Polynomial.constant(1)
            for j in range(1, n + 1):
                neg_part = q_integer(k, W(j)).mul_monomial(W(j).unit + S.unit)
                f = f * (q_integer(k + 1, Z(j)) + neg_part)
        else:
            raise ValueError(f"unknown left-hand side kind {kind!r}")
        total = total + f.mul_monomial(gk)
    return TruncatedSeries(total, K, grade)
