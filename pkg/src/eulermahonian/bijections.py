"""Bijection carrying (ndes, nmajor) to (fdes, fmajor) on Z_r wr S_n.

The map runs through two encodings of the same lattice point of the cone
over ``[0, r]^n``: ``alpha`` records it against the minimal generators of the
negative-statistics parallelepiped, ``beta`` against those of the flag one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .colored_perm import ColoredPermutation, GroupSpec, decompose, inverse
from .statistics import classical_descents, color_change_vector, nneg_multiset

__all__ = [
    "AlphaEncoding",
    "BetaEncoding",
    "encode_alpha",
    "decode_alpha",
    "alpha_to_beta",
    "beta_to_alpha",
    "encode_beta",
    "decode_beta",
    "neg_flag_bijection",
    "flag_neg_bijection",
    "alpha_point",
    "beta_point",
]


@dataclass(frozen=True)
class AlphaEncoding:
    plain: tuple[int, ...]
    alpha: tuple[int, ...]
    r: int


@dataclass(frozen=True)
class BetaEncoding:
    plain: tuple[int, ...]
    beta: tuple[int, ...]
    r: int


def encode_alpha(g: ColoredPermutation) -> AlphaEncoding:
    """``alpha_j`` is the multiplicity of ``j`` in ``NNeg(g^-1)``."""
    plain = decompose(g).plain.letters
    m = nneg_multiset(inverse(g))
    return AlphaEncoding(plain, tuple(m.multiplicity(j) for j in range(1, g.n + 1)), g.r)


def decode_alpha(a: AlphaEncoding) -> ColoredPermutation:
    """Rebuild the element from its plain part and ``NNeg`` multiplicities."""
    n, r = len(a.plain), a.r
    spec = GroupSpec(r, n)
    # letter i carries color (r - m_i) mod r in the increasing part
    colors_by_letter = [(r - a.alpha[i - 1]) % r for i in range(1, n + 1)]
    entries = sorted(range(1, n + 1), key=lambda i: (-colors_by_letter[i - 1], i))
    inc = ColoredPermutation(
        spec, tuple(entries), tuple(colors_by_letter[i - 1] for i in entries)
    )
    return inc * ColoredPermutation(spec, a.plain, (0,) * n)


def alpha_to_beta(a: AlphaEncoding) -> BetaEncoding:
    d = classical_descents(a.plain)
    beta = tuple((x + (j in d)) % a.r for j, x in enumerate(a.alpha, start=1))
    return BetaEncoding(a.plain, beta, a.r)


def beta_to_alpha(b: BetaEncoding) -> AlphaEncoding:
    d = classical_descents(b.plain)
    alpha = tuple((x - (j in d)) % b.r for j, x in enumerate(b.beta, start=1))
    return AlphaEncoding(b.plain, alpha, b.r)


def decode_beta(b: BetaEncoding) -> ColoredPermutation:
    """Letters from ``plain``; color at position ``j`` is the tail sum of ``beta`` mod r."""
    n, r = len(b.plain), b.r
    colors = [0] * n
    acc = 0
    for j in range(n - 1, -1, -1):
        acc += b.beta[j]
        colors[j] = acc % r
    return ColoredPermutation(GroupSpec(r, n), tuple(b.plain), tuple(colors))


def encode_beta(g: ColoredPermutation) -> BetaEncoding:
    return BetaEncoding(g.letters, color_change_vector(g.colors, g.r).a, g.r)


def neg_flag_bijection(g: ColoredPermutation) -> ColoredPermutation:
    return decode_beta(alpha_to_beta(encode_alpha(g)))


def flag_neg_bijection(h: ColoredPermutation) -> ColoredPermutation:
    return decode_alpha(beta_to_alpha(encode_beta(h)))


def _plain_generators(plain: tuple[int, ...]) -> list[list[int]]:
    """``u_j = e_0 + e_{pi(1)} + ... + e_{pi(j)}`` for ``j = 0..n``."""
    n = len(plain)
    out, v = [], [1] + [0] * n
    out.append(list(v))
    for a in plain:
        v[a] += 1
        out.append(list(v))
    return out


def alpha_point(a: AlphaEncoding) -> tuple[int, ...]:
    """Lattice point ``sum_j alpha_j u_j + sum_{j in Des} u_j`` of the negative-side parallelepiped."""
    u = _plain_generators(a.plain)
    d = classical_descents(a.plain)
    p = [0] * len(u)
    for j in range(1, len(u)):
        k = a.alpha[j - 1] + (j in d)
        for i in range(len(p)):
            p[i] += k * u[j][i]
    return tuple(p)


def beta_point(b: BetaEncoding) -> tuple[int, ...]:
    """Lattice point ``sum_j beta_j u_j + r * sum_{j in Des, beta_j = 0} u_j`` of the flag-side parallelepiped."""
    u = _plain_generators(b.plain)
    d = classical_descents(b.plain)
    p = [0] * len(u)
    for j in range(1, len(u)):
        k = b.beta[j - 1] + (b.r if j in d and b.beta[j - 1] == 0 else 0)
        for i in range(len(p)):
            p[i] += k * u[j][i]
    return tuple(p)
