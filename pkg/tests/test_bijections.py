import itertools
from collections import Counter

import pytest
from hypothesis import given

from conftest import colored_perms
from eulermahonian.bijections import (
    AlphaEncoding,
    BetaEncoding,
    alpha_point,
    alpha_to_beta,
    beta_point,
    beta_to_alpha,
    decode_alpha,
    decode_beta,
    encode_alpha,
    encode_beta,
    flag_neg_bijection,
    neg_flag_bijection,
)
from eulermahonian.colored_perm import (
    GroupSpec,
    decompose,
    enumerate_group,
    format_window,
    identity,
    parse_window,
    reverse_negative_entries,
)
from eulermahonian.statistics import (
    color_changes,
    des,
    fdes,
    fmajor,
    natdes,
    natfmaj,
    ndes,
    nmajor,
)

EXHAUSTIVE = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)]
G = "[1^3 4^0 2^1 3^0 6^2 5^1]"
IMAGE = "[1^3 6^2 3^2 5^2 2^1 4^2]"


def _g(text, r, n):
    return parse_window(text, GroupSpec(r, n))


class TestWorkedExample:
    def test_alpha(self):
        a = encode_alpha(_g(G, 4, 6))
        assert a.plain == (1, 6, 3, 5, 2, 4)
        assert a.alpha == (1, 3, 0, 0, 3, 2)

    def test_beta(self):
        b = alpha_to_beta(AlphaEncoding((1, 6, 3, 5, 2, 4), (1, 3, 0, 0, 3, 2), 4))
        assert b.beta == (1, 0, 0, 1, 3, 2)

    def test_decode(self):
        h = decode_beta(BetaEncoding((1, 6, 3, 5, 2, 4), (1, 0, 0, 1, 3, 2), 4))
        assert format_window(h) == IMAGE

    def test_transport(self):
        g = _g(G, 4, 6)
        h = neg_flag_bijection(g)
        assert format_window(h) == IMAGE
        assert (ndes(g), nmajor(g)) == (11, 40)
        assert (fdes(h), fmajor(h)) == (11, 40)
        assert flag_neg_bijection(h) == g

    def test_same_lattice_point(self):
        a = encode_alpha(_g(G, 4, 6))
        assert alpha_point(a) == beta_point(alpha_to_beta(a))


class TestTrivial:
    def test_identity(self):
        e = identity(GroupSpec(3, 4))
        assert encode_alpha(e).alpha == (0, 0, 0, 0)
        assert neg_flag_bijection(e) == e

    def test_zero_beta(self):
        h = decode_beta(BetaEncoding((2, 1, 3), (0, 0, 0), 3))
        assert h.colors == (0, 0, 0) and h.letters == (2, 1, 3)

    def test_zero_alpha_no_descents(self):
        assert alpha_to_beta(AlphaEncoding((1, 2, 3), (0, 0, 0), 5)).beta == (0, 0, 0)


@pytest.mark.parametrize("r,n", EXHAUSTIVE)
def test_exhaustive(r, n):
    group = list(enumerate_group(GroupSpec(r, n)))
    images = set()
    for g in group:
        a = encode_alpha(g)
        assert decode_alpha(a) == g
        h = neg_flag_bijection(g)
        images.add(h)
        assert (ndes(g), nmajor(g)) == (fdes(h), fmajor(h))
        assert h.letters == decompose(g).plain.letters
        assert flag_neg_bijection(h) == g
        assert alpha_point(a) == beta_point(alpha_to_beta(a))
    assert len(images) == len(group)


@pytest.mark.parametrize("r,n", [(2, 3), (3, 3), (4, 2)])
def test_distributions_equal(r, n):
    group = list(enumerate_group(GroupSpec(r, n)))
    assert Counter((ndes(g), nmajor(g)) for g in group) == Counter(
        (fdes(g), fmajor(g)) for g in group
    )


def test_coset_preserved():
    spec = GroupSpec(3, 3)
    for pi in itertools.permutations((1, 2, 3)):
        coset = [g for g in enumerate_group(spec) if decompose(g).plain.letters == pi]
        images = {neg_flag_bijection(g) for g in coset}
        assert len(images) == 27
        assert {h.letters for h in images} == {pi}


@given(colored_perms())
def test_beta_round_trip(g):
    b = encode_beta(g)
    assert decode_beta(b) == g
    assert color_changes(decode_beta(b)).a == b.beta
    assert alpha_to_beta(beta_to_alpha(b)) == b


@given(colored_perms())
def test_random_transport(g):
    h = neg_flag_bijection(g)
    assert (ndes(g), nmajor(g)) == (fdes(h), fmajor(h))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reversal_equidistribution(n):
    group = list(enumerate_group(GroupSpec(2, n)))
    for g in group:
        rg = reverse_negative_entries(g)
        assert (des(g), fmajor(g)) == (natdes(rg), natfmaj(rg))
    assert len({reverse_negative_entries(g) for g in group}) == len(group)
