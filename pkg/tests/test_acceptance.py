"""Acceptance suite: one check per criterion, exact arithmetic throughout.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script; each
criterion prints a single ``PASS``/``FAIL`` line.
"""
from __future__ import annotations

import functools
import itertools
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from eulermahonian.bijections import (  # noqa: E402
    AlphaEncoding,
    BetaEncoding,
    alpha_to_beta,
    decode_beta,
    encode_alpha,
    neg_flag_bijection,
)
from eulermahonian.cli import acceptance_grid  # noqa: E402
from eulermahonian.colored_perm import (  # noqa: E402
    GroupSpec,
    decompose,
    enumerate_group,
    enumerate_increasing,
    inverse,
    is_in_D,
    parse_window,
    reverse_negative_entries,
)
from eulermahonian.identities import (  # noqa: E402
    REGISTRY,
    WREATH_EULERIAN_VARIANTS,
    IdentityId,
    _cones,
    distribution,
    perturbable,
    verify,
)
from eulermahonian.polyhedral import (  # noqa: E402
    Cube,
    HalfOpenSimplex,
    SimplicialCone,
    UnsupportedConeError,
    cone_over,
    fpp_points,
    locate,
    scaling_scheme,
    sigma_bruteforce,
    sigma_rational,
    signed_simplex,
    triangulate_cube,
    triangulate_signed_cube,
)
from eulermahonian.series import Polynomial, TruncatedSeries, expand  # noqa: E402
from eulermahonian.statistics import (  # noqa: E402
    OrderFlavor,
    ch,
    classical_descents,
    classify_descents,
    col,
    color_change_descents,
    color_change_vector,
    color_changes,
    compare_letters,
    des,
    descent_set,
    dndes_multiset,
    dnmajor,
    fdes,
    fmajor,
    natdes,
    natfmaj,
    ndes,
    ndes_multiset,
    neg_set,
    nmajor,
    nneg_multiset,
    stdes,
    type_a_descents,
    type_a_major,
)

G6 = "[1^3 4^0 2^1 3^0 6^2 5^1]"


def W(text, r, n):
    return parse_window(text, GroupSpec(r, n))


def _report(k: int, failures: list[str], elapsed: float) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"{status} criterion {k} ({elapsed:.2f}s)"
    if failures:
        line += ": " + "; ".join(failures[:5])
    print(line, flush=True)


def _sorted_letters(r, n, flavor):
    letters = [(a, c) for a in range(1, n + 1) for c in range(r)]
    cmp = functools.partial(compare_letters, order=flavor)
    return sorted(letters, key=functools.cmp_to_key(cmp))


def _grid_groups() -> list[GroupSpec]:
    specs = {(r, n) for _, r, n, _ in acceptance_grid()}
    return [GroupSpec(r, n) for r, n in sorted(specs)]


# -- criterion 1 -------------------------------------------------------------------


def criterion_1() -> list[str]:
    g6 = W(G6, 4, 6)
    h13 = W("[1^1 2^3 5^0 3^0 4^1 6^0]", 4, 6)
    d5 = W("[2^1 4^1 5^0 1^1 3^1]", 2, 5)
    fac = decompose(W("[4^1 1^1 5 3^1 6 2]", 2, 6))
    half = SimplicialCone([(1, 0, 0), (1, 1, 0), (1, 1, 1)], (2, 2, 3), (True, True, False))
    closed = SimplicialCone([(1, 0, 0), (1, 1, 0), (1, 1, 1)], (2, 2, 3), (False, False, False))
    x9 = [Fraction(v, 10) for v in (2, 1, 2, 3, 1, 1, 3, 3, 2)]
    box = W("[2^1 1^1 3^0]", 2, 3)
    boxes = {
        signed_simplex(box * W("[" + " ".join(map(str, t)) + "]", 2, 3)).inequalities()
        for t in itertools.permutations((1, 2, 3))
    }
    checks = [
        ("window", W("[4^1 1 2^1 3^1]", 2, 4).window, ((4, 1), (1, 0), (2, 1), (3, 1))),
        ("colors", g6.colors, (3, 0, 1, 0, 2, 1)),
        ("compose", str(W("[4^1 1 2^1 3^1]", 2, 4) * W("[3 1^1 4^1 2]", 2, 4)), "[2^1 4 3 1]"),
        ("inverse B", str(inverse(W("[4^1 1 2^1 3^1]", 2, 4))), "[2 3^1 4^1 1^1]"),
        ("inverse W", inverse(g6), W("[1^1 3^3 4^0 2^0 6^3 5^2]", 4, 6)),
        ("increasing part", str(fac.increasing), "[1^1 3^1 4^1 2 5 6]"),
        ("plain part", fac.plain.letters, (3, 1, 5, 2, 6, 4)),
        ("plain part W", decompose(g6).plain.letters, (1, 6, 3, 5, 2, 4)),
        ("increasing member", W("[1^1 3^1 4^1 2 5 6]", 2, 6) in set(enumerate_increasing(GroupSpec(2, 6))), True),
        ("in D", is_in_D(d5), True),
        ("reversal", str(reverse_negative_entries(d5)), "[3^1 1^1 5 4^1 2^1]"),
        ("wreath order", _sorted_letters(3, 3, OrderFlavor.WREATH),
         [(1, 2), (2, 2), (3, 2), (1, 1), (2, 1), (3, 1), (1, 0), (2, 0), (3, 0)]),
        ("steingrimsson order", _sorted_letters(3, 3, OrderFlavor.STEINGRIMSSON),
         [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)]),
        ("Des wreath", descent_set(W("[3^2 2^0 1^1]", 3, 3), OrderFlavor.WREATH), {0, 2}),
        ("Des steingrimsson", descent_set(W("[2^2 3^2 1^1]", 3, 3), OrderFlavor.STEINGRIMSSON), {2, 3}),
        ("Des natural", descent_set(W("[3^1 2 1^1 4^1]", 2, 4), OrderFlavor.NATURAL), {0, 2, 3}),
        ("DesA", type_a_descents(g6), {2, 4}),
        ("majorA", type_a_major(g6), 6),
        ("DesA type D", type_a_descents(d5, OrderFlavor.NATURAL_D), {3}),
        ("Neg", neg_set(g6), {1, 3, 5, 6}),
        ("col", col(g6), 7),
        ("NNeg inverse", nneg_multiset(inverse(g6)).elements(), [1, 2, 2, 2, 5, 5, 5, 6, 6]),
        ("NNeg multiplicity of 5", nneg_multiset(inverse(g6)).multiplicity(5), (4 - g6.colors[5]) % 4),
        ("NDes", ndes_multiset(g6).elements(), [1, 2, 2, 2, 2, 4, 5, 5, 5, 6, 6]),
        ("ndes,nmajor", (ndes(g6), nmajor(g6)), (11, 40)),
        ("a vector", color_changes(g6).a, (3, 3, 1, 2, 1, 1)),
        ("ch", ch(g6), 11),
        ("a vector r=5", color_change_vector((4, 1, 2, 3, 0, 1, 1, 3, 1), 5).a, (3, 4, 4, 3, 4, 0, 3, 2, 1)),
        ("fdes,fmajor", (fdes(g6), fmajor(g6)), (11, 31)),
        ("fdes,fmajor 13/37", (fdes(h13), fmajor(h13)), (13, 37)),
        ("reversal natfmaj", (natdes(reverse_negative_entries(d5)), natfmaj(reverse_negative_entries(d5))), (2, 10)),
        ("reversal des,fmajor", (des(d5), fmajor(d5)), (2, 10)),
        ("DNDes", dndes_multiset(d5).elements(), [1, 2, 3, 3]),
        ("dnmajor", dnmajor(d5), 9),
        ("colorChange causes", classify_descents(h13).positions("colorChange"), {1, 4}),
        ("standard causes", classify_descents(h13).positions("standard"), {3}),
        ("zero causes", classify_descents(h13).positions("zero"), {0}),
        ("color-change descents", color_change_descents((4, 1, 2, 3, 0, 1, 1, 3, 1), 5), {7, 5, 3, 2}),
        ("alpha", (encode_alpha(g6).plain, encode_alpha(g6).alpha), ((1, 6, 3, 5, 2, 4), (1, 3, 0, 0, 3, 2))),
        ("beta", alpha_to_beta(AlphaEncoding((1, 6, 3, 5, 2, 4), (1, 3, 0, 0, 3, 2), 4)).beta, (1, 0, 0, 1, 3, 2)),
        ("decode beta", str(decode_beta(BetaEncoding((1, 6, 3, 5, 2, 4), (1, 0, 0, 1, 3, 2), 4))),
         "[1^3 6^2 3^2 5^2 2^1 4^2]"),
        ("bijection image", str(neg_flag_bijection(g6)), "[1^3 6^2 3^2 5^2 2^1 4^2]"),
        ("bijection transport", (fdes(neg_flag_bijection(g6)), fmajor(neg_flag_bijection(g6))), (11, 40)),
        ("fpp intersection", set(fpp_points(half)) & set(fpp_points(closed)), {(2, 1, 0), (3, 2, 1), (4, 3, 2)}),
        ("fpp difference", set(fpp_points(half)) - set(fpp_points(closed)),
         {(4, 2, 0), (5, 3, 1), (6, 4, 2), (3, 1, 0), (3, 2, 0), (4, 3, 1), (5, 3, 2), (5, 4, 2), (4, 2, 1)}),
        ("locate", locate(x9, 9).perm, (4, 7, 8, 1, 3, 9, 2, 5, 6)),
        ("signed simplex", signed_simplex(W("[2^1 3 1^1]", 2, 3)).inequalities(), "0 < -x2 <= x3 < -x1 <= 1"),
        ("box simplices", boxes, {
            "0 < -x2 <= -x1 <= x3 <= 1",
            "0 < -x1 < -x2 <= x3 <= 1",
            "0 < -x2 <= x3 < -x1 <= 1",
            "0 <= x3 < -x1 < -x2 <= 1",
            "0 < -x1 <= x3 < -x2 <= 1",
            "0 <= x3 < -x2 <= -x1 <= 1",
        }),
        ("descent cone numerator", str(sigma_rational(cone_over(HalfOpenSimplex((1, 2), {1}))).numerator), "z0*z1"),
        ("neg/flag tables", distribution(GroupSpec(2, 3), "ndes-nmajor"), distribution(GroupSpec(2, 3), "fdes-fmajor")),
        ("carlitz n=3", verify("carlitz", GroupSpec(1, 3), 5).match, True),
        ("multivariateA n=3", verify("multivariateA", GroupSpec(1, 3), 3).match, True),
    ]
    return [f"{name}: got {got!r}, want {want!r}" for name, got, want in checks if got != want]


# -- criterion 2 -------------------------------------------------------------------


def criterion_2() -> list[str]:
    failures = []
    for ident, r, n, K in acceptance_grid():
        spec = GroupSpec(r, n)
        runs = [{}]
        if ident == "wreathEulerian":
            runs = [{"variant": v} for v in WREATH_EULERIAN_VARIANTS if v != "natdes" or r == 2]
        if REGISTRY[IdentityId(ident)].multivariate:
            runs.append({"route": "geometric"})
        for kw in runs:
            rep = verify(ident, spec, K, **kw)
            if not rep.match:
                failures.append(f"{ident} r={r} n={n} K={K} {kw}: {rep.first_mismatch}")
    return failures


# -- criterion 3 -------------------------------------------------------------------


def criterion_3() -> list[str]:
    K = 3
    failures = []
    for n in range(1, 5):
        for s in triangulate_cube(n):
            for scheme, r in (("unit", 1), ("wreath", 2), ("wreath", 3), ("typeD", 2)):
                c = cone_over(s, scaling_scheme(scheme, n, r))
                if expand(sigma_rational(c), K) != sigma_bruteforce(c, K):
                    failures.append(f"oracle {scheme} r={r} perm={s.perm}")
    for n, r in ((1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (2, 3)):
        total = Polynomial()
        for s in triangulate_cube(n, r):
            total = total + expand(sigma_rational(cone_over(s)), K).poly
        if TruncatedSeries(total, K) != sigma_bruteforce(Cube(n, r), K):
            failures.append(f"cube sum n={n} r={r}")
    for n in range(1, 4):
        total = Polynomial()
        for s in triangulate_signed_cube(n):
            total = total + expand(sigma_rational(cone_over(s)), K).poly
        if TruncatedSeries(total, K) != sigma_bruteforce(Cube(n, signed=True), K):
            failures.append(f"signed cube sum n={n}")
    return failures


# -- criterion 4 -------------------------------------------------------------------


def criterion_4() -> list[str]:
    failures = []
    for r, n in ((2, 4), (3, 3), (4, 3)):
        group = list(enumerate_group(GroupSpec(r, n)))
        images = [neg_flag_bijection(g) for g in group]
        if len(set(images)) != len(group):
            failures.append(f"not injective r={r} n={n}")
        bad = [g for g, h in zip(group, images) if (ndes(g), nmajor(g)) != (fdes(h), fmajor(h))]
        if bad:
            failures.append(f"transport r={r} n={n}: {bad[0]}")
        left = Counter((ndes(g), nmajor(g)) for g in group)
        right = Counter((fdes(h), fmajor(h)) for h in group)
        if left != right:
            failures.append(f"distributions r={r} n={n}")
        spec = GroupSpec(r, n)
        if distribution(spec, "ndes-nmajor") != distribution(spec, "fdes-fmajor"):
            failures.append(f"distribution tables r={r} n={n}")
    return failures


# -- criterion 5 -------------------------------------------------------------------


def _decomposition_failures(g) -> list[str]:
    r, n = g.r, g.n
    a = color_changes(g).a
    plain = decompose(g).plain.letters
    d0 = [j for j in classical_descents(plain) if a[j - 1] == 0]
    ccd = color_change_descents(g.colors, r)
    flag_sum = sum(j * x for j, x in enumerate(a, 1))
    checks = {
        "fdes": fdes(g) == r * len(d0) + sum(a),
        "fmajor": fmajor(g) == r * sum(d0) + flag_sum,
        "des": des(g) == -(-ch(g) // r) + len(d0),
        "weighted sum": flag_sum == col(g) + r * sum(ccd),
        "partial sums": all(
            sum(a[i - 1:]) == g.colors[i - 1] + r * sum(1 for k in ccd if k >= i)
            for i in range(1, n + 1)
        ),
    }
    return [f"{name} at {g}" for name, ok in checks.items() if not ok]


def criterion_5() -> list[str]:
    failures = []
    for spec in _grid_groups():
        for g in enumerate_group(spec):
            failures += _decomposition_failures(g)
    colors = (4, 1, 2, 3, 0, 1, 1, 3, 1)
    a = color_change_vector(colors, 5).a
    tail = sum(1 for k in color_change_descents(colors, 5) if k >= 4)
    if not (sum(a[3:]) == 13 == colors[3] + 5 * tail and tail == 2):
        failures.append("partial-sum instance 13 = 3 + 5*2")
    return failures


# -- criterion 6 -------------------------------------------------------------------


def criterion_6() -> list[str]:
    failures = []
    for spec in _grid_groups():
        group = list(enumerate_group(spec))
        d = Counter(map(des, group))
        if d != Counter(map(stdes, group)):
            failures.append(f"des/stdes r={spec.r} n={spec.n}")
        if spec.r == 2 and d != Counter(map(natdes, group)):
            failures.append(f"des/natdes n={spec.n}")
    for n in range(1, 5):
        group = list(enumerate_group(GroupSpec(2, n)))
        rev = [reverse_negative_entries(g) for g in group]
        if len(set(rev)) != len(group):
            failures.append(f"reversal not bijective n={n}")
        if any((des(g), fmajor(g)) != (natdes(h), natfmaj(h)) for g, h in zip(group, rev)):
            failures.append(f"reversal transport n={n}")
        if distribution(GroupSpec(2, n), "des-fmajor") != distribution(GroupSpec(2, n), "natdes-natfmaj"):
            failures.append(f"joint distributions n={n}")
    return failures


# -- criterion 7 -------------------------------------------------------------------


def _constructed_cones():
    yield SimplicialCone([(1, 0, 0), (1, 1, 0), (1, 1, 1)], (2, 2, 3), (True, True, False))
    yield SimplicialCone([(1, 0, 0), (1, 1, 0), (1, 1, 1)], (2, 2, 3), (False, False, False))
    for n in range(1, 5):
        for s in triangulate_cube(n):
            for r in (1, 2, 3, 4):
                yield cone_over(s, scaling_scheme("wreath", n, r))
            yield cone_over(s, scaling_scheme("typeD", n))
        for r in (2, 3):
            for s in triangulate_cube(n, r):
                yield cone_over(s)
    for n in range(1, 4):
        for s in triangulate_signed_cube(n):
            yield cone_over(s)
    for ident in IdentityId:
        if REGISTRY[ident].multivariate:
            r = {"A": 1, "W": 3, "B": 2, "D": 2}[REGISTRY[ident].group]
            yield from _cones(ident, GroupSpec(r, 3))


def criterion_7() -> list[str]:
    failures = []
    count = 0
    for c in _constructed_cones():
        count += 1
        off = fpp_points(c, "shiftOffBoundary")
        direct = fpp_points(c, "direct")
        if off != direct:
            failures.append(f"shiftOffBoundary/direct differ on {c.generators}")
        try:
            whole = fpp_points(c, "shiftWhole")
        except UnsupportedConeError:
            whole = None
            if c.unimodular_base:
                failures.append(f"shiftWhole refused a unimodular base {c.generators}")
        if whole is not None and whole != off:
            failures.append(f"shiftWhole/shiftOffBoundary differ on {c.generators}")
        if not (len(off) == len(set(off)) == abs(c.determinant)):
            failures.append(f"|points| != |det| on {c.generators}")
    if count == 0:
        failures.append("no cones constructed")
    return failures


# -- criterion 8 -------------------------------------------------------------------


def criterion_8() -> list[str]:
    failures = []
    grid = acceptance_grid()
    for ident in IdentityId:
        points = [p for p in grid if p[0] == ident.value]
        variants = WREATH_EULERIAN_VARIANTS if ident is IdentityId.WREATH_EULERIAN else ("des",)
        for variant in variants:
            for name in perturbable(ident, variant):
                caught = False
                for _, r, n, K in points:
                    if variant == "natdes" and r != 2:
                        continue
                    if not verify(ident, GroupSpec(r, n), K, variant=variant, perturb=name).match:
                        caught = True
                        break
                if not caught:
                    failures.append(f"{ident.value} perturb {name} ({variant}) undetected")
    return failures


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    start = time.perf_counter()
    failures = CRITERIA[k]()
    with capsys.disabled():
        print()
        _report(k, failures, time.perf_counter() - start)
    assert not failures, failures[:5]


if __name__ == "__main__":
    ok = True
    for k, fn in CRITERIA.items():
        start = time.perf_counter()
        failures = fn()
        _report(k, failures, time.perf_counter() - start)
        ok = ok and not failures
    sys.exit(0 if ok else 1)
