import hypothesis.strategies as st
from hypothesis import settings

from autshift.symbolic import BiConfiguration, OmegaPoint

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def words(n, min_size=0, max_size=6):
    return st.lists(st.integers(0, n - 1), min_size=min_size, max_size=max_size).map(tuple)


@st.composite
def biconfigs(draw, n=3, constant_left=False):
    left = (draw(st.integers(0, n - 1)),) if constant_left else draw(words(n, 1, 3))
    core = draw(words(n, 0, 6))
    anchor = draw(st.integers(-5, 5))
    right = draw(words(n, 1, 3))
    return BiConfiguration(left, core, anchor, right)


@st.composite
def omega_points(draw, n=3, a=None):
    x0 = draw(st.integers(0, n - 1)) if a is None else a
    x1 = draw(st.integers(0, n - 1).filter(lambda s: s != x0))
    rest = draw(words(n, 0, 5))
    tail = draw(words(n, 1, 3))
    return OmegaPoint((x0, x1) + rest, tail)


def reference_window(x: BiConfiguration, lo, hi):
    """Independent reading of a configuration, straight from the layout rule."""
    out = []
    for m in range(lo, hi):
        if m < x.anchor:
            out.append(x.left[(m - x.anchor) % len(x.left)])
        elif m < x.anchor + len(x.core):
            out.append(x.core[m - x.anchor])
        else:
            out.append(x.right[(m - x.anchor - len(x.core)) % len(x.right)])
    return tuple(out)
