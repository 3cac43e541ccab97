"""Colored permutations: elements of the wreath product Z_r wr S_n.

An element is stored in window notation, position by position: position
``j`` (1-based) holds the letter ``pi(j)`` together with its color ``c_j``.
Products compose right to left, ``compose(g, h)`` applies ``h`` first, and
colors add modulo ``r`` exactly as in the product of generalized permutation
matrices.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "GroupSpec",
    "ColoredPermutation",
    "Factorization",
    "WindowSyntaxError",
    "parse_window",
    "format_window",
    "identity",
    "from_plain",
    "compose",
    "inverse",
    "decompose",
    "enumerate_group",
    "enumerate_increasing",
    "group_order",
    "is_in_D",
    "reverse_negative_entries",
    "wreath_key",
    "natural_key",
]


class WindowSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    r: int
    n: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"color count r must be a positive integer, got {self.r!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"letter count n must be a positive integer, got {self.n!r}")

    @property
    def order(self) -> int:
        return group_order(self)


@dataclass(frozen=True)
class ColoredPermutation:
    spec: GroupSpec
    letters: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        n, r = self.spec.n, self.spec.r
        if len(self.letters) != n or len(self.colors) != n:
            raise ValueError(f"window must have exactly {n} entries")
        if sorted(self.letters) != list(range(1, n + 1)):
            raise ValueError(f"letters {self.letters} are not a permutation of 1..{n}")
        for c in self.colors:
            if not 0 <= c < r:
                raise ValueError(f"color {c} out of range for r={r}")

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def r(self) -> int:
        return self.spec.r

    @property
    def window(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.letters, self.colors))

    @property
    def is_plain(self) -> bool:
        return not any(self.colors)

    def __str__(self) -> str:
        return format_window(self)

    def __mul__(self, other: "ColoredPermutation") -> "ColoredPermutation":
        return compose(self, other)


class Factorization(NamedTuple):
    """``increasing`` composed with ``plain`` (applied first) gives the element."""

    increasing: ColoredPermutation
    plain: ColoredPermutation


_TOKEN = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:\^(0|[1-9][0-9]*))?$")


def parse_window(text: str, spec: GroupSpec) -> ColoredPermutation:
    """Parse ``[t1 t2 ... tn]`` where each token is ``j`` or ``j^c``.

    For ``r == 2`` the token ``-j`` is accepted as an alias of ``j^1``.

    >>> str(parse_window("[4^1 1 2^1 3^1]", GroupSpec(2, 4)))
    '[4^1 1 2^1 3^1]'
    """
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise WindowSyntaxError(f"window must be enclosed in brackets: {text!r}")
    body = s[1:-1].replace(",", " ").split()
    letters, colors = [], []
    for tok in body:
        m = _TOKEN.match(tok)
        if m is None:
            raise WindowSyntaxError(f"bad token {tok!r} in {text!r}")
        minus, letter, color = m.group(1), int(m.group(2)), m.group(3)
        if minus:
            if spec.r != 2:
                raise WindowSyntaxError("'-j' tokens are only allowed when r = 2")
            if color is not None:
                raise WindowSyntaxError(f"token {tok!r} mixes '-' with an explicit color")
            c = 1
        else:
            c = 0 if color is None else int(color)
        if c >= spec.r:
            raise WindowSyntaxError(f"color {c} in token {tok!r} is not below r={spec.r}")
        letters.append(letter)
        colors.append(c)
    if len(letters) != spec.n:
        raise WindowSyntaxError(f"expected {spec.n} tokens, got {len(letters)} in {text!r}")
    if sorted(letters) != list(range(1, spec.n + 1)):
        raise WindowSyntaxError(f"letters of {text!r} are not a permutation of 1..{spec.n}")
    return ColoredPermutation(spec, tuple(letters), tuple(colors))


def format_window(g: ColoredPermutation) -> str:
    toks = (str(a) if c == 0 else f"{a}^{c}" for a, c in zip(g.letters, g.colors))
    return "[" + " ".join(toks) + "]"


def identity(spec: GroupSpec) -> ColoredPermutation:
    return ColoredPermutation(spec, tuple(range(1, spec.n + 1)), (0,) * spec.n)


def from_plain(perm: Sequence[int], r: int = 1) -> ColoredPermutation:
    """Color-free element of ``Z_r wr S_n`` with the given one-line window."""
    perm = tuple(perm)
    return ColoredPermutation(GroupSpec(r, len(perm)), perm, (0,) * len(perm))


def _check_same(g: ColoredPermutation, h: ColoredPermutation) -> None:
    if g.spec != h.spec:
        raise ValueError(f"group mismatch: {g.spec} vs {h.spec}")


def compose(g: ColoredPermutation, h: ColoredPermutation) -> ColoredPermutation:
    """Return ``g o h`` (apply ``h`` first, then ``g``)."""
    _check_same(g, h)
    r = g.spec.r
    gl, gc = g.letters, g.colors
    letters = tuple(gl[a - 1] for a in h.letters)
    colors = tuple((c + gc[a - 1]) % r for a, c in zip(h.letters, h.colors))
    return ColoredPermutation(g.spec, letters, colors)


def inverse(g: ColoredPermutation) -> ColoredPermutation:
    n, r = g.spec.n, g.spec.r
    letters = [0] * n
    colors = [0] * n
    for pos, (a, c) in enumerate(zip(g.letters, g.colors), start=1):
        letters[a - 1] = pos
        colors[a - 1] = (r - c) % r
    return ColoredPermutation(g.spec, tuple(letters), tuple(colors))


def wreath_key(letter: int, color: int) -> tuple[int, int]:
    # higher color is smaller; ties broken by letter
    return (-color, letter)


def natural_key(letter: int, color: int) -> int:
    # -n < ... < -1 < 1 < ... < n, color 1 read as a minus sign
    return -letter if color else letter


def decompose(g: ColoredPermutation) -> Factorization:
    """Split ``g`` as ``increasing o plain`` with ``increasing`` in ``I_{r,n}``."""
    entries = sorted(g.window, key=lambda e: wreath_key(*e))
    rank = {e: i for i, e in enumerate(entries, start=1)}
    inc = ColoredPermutation(
        g.spec, tuple(a for a, _ in entries), tuple(c for _, c in entries)
    )
    plain = ColoredPermutation(g.spec, tuple(rank[e] for e in g.window), (0,) * g.spec.n)
    return Factorization(inc, plain)


def group_order(spec: GroupSpec) -> int:
    out = spec.r**spec.n
    for k in range(2, spec.n + 1):
        out *= k
    return out


def enumerate_group(spec: GroupSpec) -> Iterator[ColoredPermutation]:
    """All elements: plain windows in lex order, then color vectors in lex order."""
    colorings = list(itertools.product(range(spec.r), repeat=spec.n))
    for perm in itertools.permutations(range(1, spec.n + 1)):
        for colors in colorings:
            yield ColoredPermutation(spec, perm, colors)


def enumerate_increasing(
    spec: GroupSpec, order: str = "wreath", even: bool = False
) -> Iterator[ColoredPermutation]:
    """Elements with no type-A descent under ``order``.

    Each one is fixed by a color per letter; those assignments are produced
    in lex order (color of letter 1 first). ``even`` keeps only elements with
    an even number of colored letters (``r = 2``), giving ``I*_{2,n}``.
    """
    order = getattr(order, "value", order)
    if order in ("natural",):
        if spec.r != 2:
            raise ValueError("natural order requires r = 2")

        def key(e):
            return natural_key(*e)

    elif order in ("wreath", "naturalD"):
        if order == "naturalD" and spec.r != 2:
            raise ValueError("naturalD order requires r = 2")

        def key(e):
            return wreath_key(*e)

    else:
        raise ValueError(f"unsupported order for increasing elements: {order!r}")
    if even and spec.r != 2:
        raise ValueError("the even-sign filter requires r = 2")
    for assignment in itertools.product(range(spec.r), repeat=spec.n):
        if even and sum(assignment) % 2:
            continue
        entries = sorted(zip(range(1, spec.n + 1), assignment), key=key)
        yield ColoredPermutation(
            spec, tuple(a for a, _ in entries), tuple(c for _, c in entries)
        )


def _require_r2(g: ColoredPermutation, what: str) -> None:
    if g.spec.r != 2:
        raise ValueError(f"{what} requires r = 2, got r = {g.spec.r}")


def is_in_D(g: ColoredPermutation) -> bool:
    _require_r2(g, "type D membership")
    return sum(g.colors) % 2 == 0


def reverse_negative_entries(g: ColoredPermutation) -> ColoredPermutation:
    """Reverse the order of the negative letters; signs stay put.

    The k-th smallest negative letter is replaced by the k-th largest, so the
    wreath comparisons among negatives become natural-order comparisons and
    every descent position is kept.
    """
    _require_r2(g, "reversal of negative entries")
    neg = sorted(a for a, c in g.window if c)
    swap = dict(zip(neg, reversed(neg)))
    letters = tuple(swap.get(a, a) if c else a for a, c in g.window)
    return ColoredPermutation(g.spec, letters, g.colors)
