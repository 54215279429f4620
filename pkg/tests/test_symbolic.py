import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from autshift.errors import ConstantConfiguration, InvariantViolation, NotEventuallyConstantLeft, NotInOmegaZero
from autshift.symbolic import (
    BASE_POINT,
    BiConfiguration,
    CmClass,
    OmegaPoint,
    ell,
    enumerate_cm,
    normalize,
    omega_distance,
    phi_embed,
    psi_collapse,
    r_value,
    shift_config,
)

from conftest import biconfigs, omega_points, reference_window


def test_layout_reads_tails_and_core():
    x = BiConfiguration((0, 1), (2, 3), 4, (1,))
    assert x.window(0, 9) == (0, 1, 0, 1, 2, 3, 1, 1, 1)
    assert x[3] == 1 and x[4] == 2


def test_normalize_absorbs_core_into_tails():
    x = BiConfiguration((0, 1), (0, 1, 0, 1), 0, (1,))
    assert repr(normalize(x)) == '(01)* "" @4 (1)*'


def test_globally_periodic_form():
    x = BiConfiguration((0, 1), (0, 1), 3, (0, 1))
    c = normalize(x)
    assert c.core == () and c.anchor == 0 and c.left == c.right
    assert c.right[0] == x[0]


def test_tails_must_be_nonempty():
    with pytest.raises(InvariantViolation):
        BiConfiguration((), (1,), 0, (0,))


@given(biconfigs())
def test_normalize_idempotent_and_faithful(x):
    c = normalize(x)
    assert normalize(c) == c
    assert (c.left, c.core, c.anchor, c.right) == (normalize(c).left, normalize(c).core, normalize(c).anchor, normalize(c).right)
    assert reference_window(c, -30, 30) == reference_window(x, -30, 30)


@given(biconfigs(), st.integers(1, 3), st.integers(0, 4))
def test_random_rerepresentation_is_equal(x, reps, unroll):
    # repeat the tails and move part of them into the core
    left = x.left * reps
    right = x.right * reps
    u = unroll % len(left)
    core = left[len(left) - u:] if u else ()
    left = left[len(left) - u:] + left[:len(left) - u]
    y = BiConfiguration(left, core + x.core + right[:unroll], x.anchor - len(core), right[unroll:] + right[:unroll])
    assert y == x
    assert hash(y) == hash(x)


@given(biconfigs(), biconfigs())
def test_equality_matches_window_oracle(x, y):
    same = reference_window(x, -40, 40) == reference_window(y, -40, 40)
    assert (x == y) == same


@given(biconfigs(n=3, constant_left=True), st.integers(-10, 10))
def test_ell_shift_law(x, k):
    if x.is_constant:
        with pytest.raises(ConstantConfiguration):
            ell(x)
        return
    assert ell(shift_config(x, k)) == ell(x) - k
    e = ell(x)
    assert x[e] != x[e + 1]
    assert all(x[m] == x[e] for m in range(e - 10, e + 1))


def test_ell_requires_constant_left():
    with pytest.raises(NotEventuallyConstantLeft):
        ell(BiConfiguration((0, 1), (2,), 0, (0,)))


@given(omega_points())
def test_psi_phi_identity(omega):
    assert psi_collapse(phi_embed(omega)) == omega


@given(omega_points(), st.integers(-6, 6))
def test_shift_acts_trivially_through_psi(omega, m):
    x = phi_embed(omega)
    assert psi_collapse(shift_config(x, m)) == psi_collapse(x)


def test_phi_embed_layout():
    x = phi_embed(OmegaPoint((0, 1, 1), (2,)))
    assert x.window(-3, 5) == (0, 0, 0, 0, 1, 1, 2, 2)


def test_omega_point_requires_change():
    with pytest.raises(InvariantViolation):
        OmegaPoint((1, 1), (0,))


@given(omega_points(n=2), omega_points(n=2), omega_points(n=2))
def test_ultrametric(a, b, c):
    dab, dbc, dac = omega_distance(a, b), omega_distance(b, c), omega_distance(a, c)
    assert 0 <= dab <= 1
    assert dab == omega_distance(b, a)
    assert (dab == 0) == (a == b)
    assert dac <= max(dab, dbc)


def test_distance_is_exact_dyadic():
    a = OmegaPoint((0, 1, 1, 0), (1,))
    assert omega_distance(a, BASE_POINT) == Fraction(1, 8)


def test_r_value():
    assert r_value(BASE_POINT) == math.inf
    assert r_value(OmegaPoint((0, 1, 1, 0), (2,))) == 2
    assert r_value(OmegaPoint((0, 1), (0, 1, 1))) == 1
    with pytest.raises(NotInOmegaZero):
        r_value(OmegaPoint((1, 0), (1,)))


def _cm_oracle(m, depth, n, tails):
    """Brute force: every prefix of every length, deduplicated by a long reading."""
    seen = {}
    for length in range(depth + 1):
        for prefix in itertools.product(range(n), repeat=length):
            for tail in tails:
                seq = lambda i: prefix[i] if i < length else tail[(i - length) % len(tail)]
                if seq(0) != 0 or seq(1) == 0:
                    continue
                run = 0
                while run < 200 and seq(run + 1) == 1:
                    run += 1
                if run == m:
                    seen[tuple(seq(i) for i in range(200))] = (prefix, tail)
    return len(seen)


@pytest.mark.parametrize("m,depth,n", [(1, 3, 2), (1, 4, 2), (2, 5, 2), (1, 4, 3), (3, 6, 2)])
def test_enumerate_cm_matches_oracle(m, depth, n):
    tails = ((0,), (1,), (1, 0))
    pts = enumerate_cm(m, depth, n, tails)
    assert len(pts) == _cm_oracle(m, depth, n, tails)
    assert all(r_value(p) == m for p in pts)


def test_enumerate_cm_small_cases():
    assert [repr(p) for p in enumerate_cm(1, 3, 2)] == ['"0" (10)*', '"01" (0)*', '"010" (1)*']
    assert len(enumerate_cm(1, 4, 2)) == 7  # frozen from the brute-force oracle


@given(omega_points(n=3, a=0))
def test_cm_partition(omega):
    hits = [m for m in range(0, 12) if omega in CmClass(m)]
    if omega == BASE_POINT:
        assert hits == [] and omega in CmClass(math.inf)
    else:
        assert len(hits) == 1
