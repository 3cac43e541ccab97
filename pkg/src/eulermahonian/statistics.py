"""Descent and major-index statistics on S_n, Z_r wr S_n, B_n and D_n.

Window positions are 1-based throughout; position 0 refers to the left
sentinel. Four total orders on colored letters are supported, see
:class:`OrderFlavor`. Sentinels live here, never inside windows.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .colored_perm import ColoredPermutation, inverse, is_in_D

__all__ = [
    "OrderFlavor",
    "PositionMultiset",
    "ColorChangeVector",
    "DescentCause",
    "classical_descents",
    "classical_maj",
    "compare_letters",
    "descent_set",
    "des",
    "stdes",
    "natdes",
    "natmaj",
    "dnatdes",
    "type_a_descents",
    "type_a_major",
    "neg_set",
    "neg",
    "col",
    "nneg_multiset",
    "ndes_multiset",
    "ndes",
    "nmajor",
    "color_change_vector",
    "color_changes",
    "ch",
    "fdes",
    "fmajor",
    "nat_type_a_major",
    "natfmaj",
    "dndes_multiset",
    "dndes",
    "dnmajor",
    "classify_descents",
    "color_change_descents",
    "all_statistics",
]


class OrderFlavor(str, enum.Enum):
    """Total orders on colored letters.

    ``WREATH``: higher color is smaller, ties by letter.
    ``STEINGRIMSSON``: higher color is larger, ties by letter.
    ``NATURAL`` (r = 2): -n < ... < -1 < 1 < ... < n.
    ``NATURAL_D`` (r = 2): -1 < ... < -n < 1 < ... < n for type-A descents.
    """

    WREATH = "wreath"
    STEINGRIMSSON = "steingrimsson"
    NATURAL = "natural"
    NATURAL_D = "naturalD"


def _flavor(order) -> OrderFlavor:
    return order if isinstance(order, OrderFlavor) else OrderFlavor(order)


def _key(order: OrderFlavor, letter: int, color: int):
    if order is OrderFlavor.WREATH:
        return (-color, letter)
    if order is OrderFlavor.STEINGRIMSSON:
        return (color, letter)
    if order is OrderFlavor.NATURAL:
        return -letter if color else letter
    # NATURAL_D
    return (0 if color else 1, letter)


def _signed(letter: int, color: int) -> int:
    return -letter if color else letter


class PositionMultiset:
    """Multiset of window positions kept as sorted ``(position, multiplicity)`` pairs."""

    __slots__ = ("_items",)

    def __init__(self, elements: Iterable[int] = ()):
        counts = Counter(elements)
        self._items = tuple(sorted((p, m) for p, m in counts.items() if m > 0))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "PositionMultiset":
        out = cls()
        out._items = tuple(sorted((p, m) for p, m in mult.items() if m > 0))
        return out

    @property
    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def multiplicity(self, position: int) -> int:
        return dict(self._items).get(position, 0)

    def elements(self) -> list[int]:
        return [p for p, m in self._items for _ in range(m)]

    def __len__(self) -> int:
        return sum(m for _, m in self._items)

    @property
    def total(self) -> int:
        return sum(p * m for p, m in self._items)

    def __or__(self, other: "PositionMultiset") -> "PositionMultiset":
        # multiset union adds multiplicities
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return PositionMultiset.from_multiplicities(dict(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, PositionMultiset):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


@dataclass(frozen=True)
class ColorChangeVector:
    a: tuple[int, ...]

    @property
    def ch(self) -> int:
        return sum(self.a)


@dataclass(frozen=True)
class DescentCause:
    """Per-position tags for positions ``0..n-1``: ``zero``, ``standard``, ``colorChange`` or ``none``."""

    tags: tuple[str, ...]

    def positions(self, tag: str) -> set[int]:
        return {j for j, t in enumerate(self.tags) if t == tag}


# -- classical S_n ---------------------------------------------------------


def _plain_window(pi) -> tuple[int, ...]:
    if isinstance(pi, ColoredPermutation):
        if not pi.is_plain:
            raise ValueError("classical statistics need a color-free permutation")
        return pi.letters
    return tuple(pi)


def classical_descents(pi) -> set[int]:
    w = _plain_window(pi)
    return {j for j in range(1, len(w)) if w[j - 1] > w[j]}


def classical_maj(pi) -> int:
    return sum(classical_descents(pi))


# -- orders and descent sets ----------------------------------------------


def compare_letters(a: tuple[int, int], b: tuple[int, int], order) -> int:
    """Three-way comparison of colored letters ``(letter, color)``: -1, 0 or 1."""
    order = _flavor(order)
    ka, kb = _key(order, *a), _key(order, *b)
    return (ka > kb) - (ka < kb)


def _require_r2(g: ColoredPermutation, order: OrderFlavor) -> None:
    if g.r != 2:
        raise ValueError(f"order {order.value} requires r = 2, got r = {g.r}")


def descent_set(g: ColoredPermutation, flavor) -> set[int]:
    """Descent positions of ``g`` under ``flavor``, sentinels included.

    ``WREATH`` and ``NATURAL`` scan positions ``0..n-1`` with left sentinel
    ``0^0``. ``STEINGRIMSSON`` scans ``1..n`` with right sentinel ``(n+1)^0``.
    ``NATURAL_D`` gives the type-D natural descents: positions ``0..n-1`` in
    the natural order with left sentinel ``-g(2)``; it needs ``n >= 2`` and
    ``g`` in ``D_n``.
    """
    flavor = _flavor(flavor)
    n = g.n
    w = list(g.window)
    if flavor is OrderFlavor.WREATH:
        seq = [(0, 0)] + w
        return {j for j in range(n) if _key(flavor, *seq[j]) > _key(flavor, *seq[j + 1])}
    if flavor is OrderFlavor.STEINGRIMSSON:
        seq = [(0, 0)] + w + [(n + 1, 0)]
        return {j for j in range(1, n + 1) if _key(flavor, *seq[j]) > _key(flavor, *seq[j + 1])}
    _require_r2(g, flavor)
    vals = [_signed(a, c) for a, c in w]
    if flavor is OrderFlavor.NATURAL:
        seq = [0] + vals
    else:
        if n < 2:
            raise ValueError("type-D descents need n >= 2")
        if not is_in_D(g):
            raise ValueError(f"{g} is not in D_{n}")
        seq = [-vals[1]] + vals
    return {j for j in range(n) if seq[j] > seq[j + 1]}


def des(g: ColoredPermutation) -> int:
    return len(descent_set(g, OrderFlavor.WREATH))


def stdes(g: ColoredPermutation) -> int:
    return len(descent_set(g, OrderFlavor.STEINGRIMSSON))


def natdes(g: ColoredPermutation) -> int:
    return len(descent_set(g, OrderFlavor.NATURAL))


def natmaj(g: ColoredPermutation) -> int:
    return sum(descent_set(g, OrderFlavor.NATURAL))


def dnatdes(g: ColoredPermutation) -> int:
    return len(descent_set(g, OrderFlavor.NATURAL_D))


def type_a_descents(g: ColoredPermutation, order=OrderFlavor.WREATH) -> set[int]:
    """Descents at interior positions ``1..n-1`` only, no sentinels."""
    order = _flavor(order)
    if order in (OrderFlavor.NATURAL, OrderFlavor.NATURAL_D):
        _require_r2(g, order)
    keys = [_key(order, a, c) for a, c in g.window]
    return {j for j in range(1, g.n) if keys[j - 1] > keys[j]}


def type_a_major(g: ColoredPermutation, order=OrderFlavor.WREATH) -> int:
    return sum(type_a_descents(g, order))


# -- colors -----------------------------------------------------------------


def neg_set(g: ColoredPermutation) -> set[int]:
    return {i for i, c in enumerate(g.colors, start=1) if c}


def neg(g: ColoredPermutation) -> int:
    return len(neg_set(g))


def col(g: ColoredPermutation) -> int:
    return sum(g.colors)


def nneg_multiset(g: ColoredPermutation) -> PositionMultiset:
    """Position ``i`` repeated ``c_i`` times.

    Callers wanting the negative inverse multiset pass ``inverse(g)``.
    """
    return PositionMultiset.from_multiplicities(
        {i: c for i, c in enumerate(g.colors, start=1)}
    )


def ndes_multiset(g: ColoredPermutation) -> PositionMultiset:
    return PositionMultiset(type_a_descents(g)) | nneg_multiset(inverse(g))


def ndes(g: ColoredPermutation) -> int:
    return len(ndes_multiset(g))


def nmajor(g: ColoredPermutation) -> int:
    return ndes_multiset(g).total


def color_change_vector(colors: Sequence[int], r: int) -> ColorChangeVector:
    ext = list(colors) + [0]
    return ColorChangeVector(tuple((ext[j] - ext[j + 1]) % r for j in range(len(colors))))


def color_changes(g: ColoredPermutation) -> ColorChangeVector:
    return color_change_vector(g.colors, g.r)


def ch(g: ColoredPermutation) -> int:
    return color_changes(g).ch


def fdes(g: ColoredPermutation) -> int:
    return g.r * len(type_a_descents(g)) + g.colors[0]


def fmajor(g: ColoredPermutation) -> int:
    return g.r * type_a_major(g) + col(g)


def nat_type_a_major(g: ColoredPermutation) -> int:
    return type_a_major(g, OrderFlavor.NATURAL)


def natfmaj(g: ColoredPermutation) -> int:
    if g.r != 2:
        raise ValueError("natfmaj is defined for r = 2 only")
    return 2 * nat_type_a_major(g) + neg(g)


# -- type D -------------------------------------------------------------------


def dndes_multiset(g: ColoredPermutation) -> PositionMultiset:
    if g.r != 2 or not is_in_D(g):
        raise ValueError(f"{g} is not an element of D_n")
    if g.n < 2:
        raise ValueError("type-D statistics need n >= 2")
    shifted = [j - 1 for j in neg_set(inverse(g)) if j != 1]
    return PositionMultiset(type_a_descents(g, OrderFlavor.NATURAL_D)) | PositionMultiset(shifted)


def dndes(g: ColoredPermutation) -> int:
    return len(dndes_multiset(g))


def dnmajor(g: ColoredPermutation) -> int:
    return dndes_multiset(g).total


# -- causes of descents --------------------------------------------------------


def color_change_descents(colors: Sequence[int], r: int) -> set[int]:
    """Positions found by reading partial sums of color changes right to left.

    A descent sits at ``k`` whenever the suffix sum ``A_k`` reaches a new
    multiple of ``r`` that ``A_{k+1}`` had not reached.
    """
    a = color_change_vector(colors, r).a
    n = len(a)
    out = set()
    suffix = 0
    for k in range(n, 0, -1):
        prev = suffix
        suffix += a[k - 1]
        if suffix // r > prev // r:
            out.add(k)
    return out


def classify_descents(g: ColoredPermutation) -> DescentCause:
    """Tag each wreath-order descent by its cause."""
    n, c, w = g.n, g.colors, g.letters
    tags = ["none"] * n
    if c[0]:
        tags[0] = "zero"
    for k in color_change_descents(c, g.r):
        if k < n:
            tags[k] = "colorChange"
    for j in range(1, n):
        if c[j - 1] == c[j] and w[j - 1] > w[j]:
            tags[j] = "standard"
    return DescentCause(tuple(tags))


def all_statistics(g: ColoredPermutation) -> dict:
    """Every statistic that applies to ``g`` keyed by name."""
    out = {
        "element": str(g),
        "r": g.r,
        "n": g.n,
        "des": des(g),
        "Des": sorted(descent_set(g, OrderFlavor.WREATH)),
        "stdes": stdes(g),
        "StDes": sorted(descent_set(g, OrderFlavor.STEINGRIMSSON)),
        "DesA": sorted(type_a_descents(g)),
        "desA": len(type_a_descents(g)),
        "majorA": type_a_major(g),
        "Neg": sorted(neg_set(g)),
        "neg": neg(g),
        "col": col(g),
        "NNegInverse": nneg_multiset(inverse(g)).elements(),
        "NDes": ndes_multiset(g).elements(),
        "ndes": ndes(g),
        "nmajor": nmajor(g),
        "fdes": fdes(g),
        "fmajor": fmajor(g),
        "colorChanges": list(color_changes(g).a),
        "ch": ch(g),
    }
    causes = classify_descents(g)
    out["descentCauses"] = {
        t: sorted(causes.positions(t)) for t in ("zero", "colorChange", "standard")
    }
    if g.r == 2:
        out.update(
            natdes=natdes(g),
            natmaj=natmaj(g),
            NatDes=sorted(descent_set(g, OrderFlavor.NATURAL)),
            natdesA=len(type_a_descents(g, OrderFlavor.NATURAL)),
            natmajorA=nat_type_a_major(g),
            natfmaj=natfmaj(g),
        )
        if is_in_D(g) and g.n >= 2:
            out.update(
                dnatdes=dnatdes(g),
                DNDes=dndes_multiset(g).elements(),
                dndes=dndes(g),
                dnmajor=dnmajor(g),
            )
    return out
