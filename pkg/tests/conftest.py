import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from eulermahonian.colored_perm import ColoredPermutation, GroupSpec

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def colored_perms(draw, r=None, n=None, max_r=4, max_n=6):
    r = draw(st.integers(1, max_r)) if r is None else r
    n = draw(st.integers(1, max_n)) if n is None else n
    letters = draw(st.permutations(range(1, n + 1)))
    colors = draw(st.lists(st.integers(0, r - 1), min_size=n, max_size=n))
    return ColoredPermutation(GroupSpec(r, n), tuple(letters), tuple(colors))


@st.composite
def colored_pairs(draw, max_r=4, max_n=6):
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(1, max_n))
    return draw(colored_perms(r, n)), draw(colored_perms(r, n))
