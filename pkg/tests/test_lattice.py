import itertools

import pytest
from hypothesis import given, strategies as st

from autshift.codes import LocalRule1D, RuleCode, compose, equal_codes, identity_code, shift_code
from autshift.errors import CollisionConstraint, InjectivityRadiusInsufficient
from autshift import lattice as lt
from autshift.symbolic import BiConfiguration

from conftest import biconfigs


def test_basis():
    b = lt.basis_mk(2, 3)
    assert b.rows == ((1, 3), (0, 1))
    assert b.v == (0, 1)
    for d in range(2, 6):
        for k in range(1, 7):
            assert lt.basis_mk(d, k).determinant() == 1


def test_integer_det_oracle():
    assert lt._integer_det([[2, 1], [1, 1]]) == 1
    assert lt._integer_det([[0, 1], [1, 0]]) == -1
    assert lt._integer_det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


def test_decompose_examples():
    b = lt.basis_mk(2, 3)
    dec = lt.decompose((1, 2), b)
    assert dec.coefficients == (1,) and dec.ell == -1
    assert lt.decompose((0, 7), b).ell == 7
    b3 = lt.basis_mk(3, 4)
    for i, row in enumerate(b3.sublattice_rows):
        dec = lt.decompose(row, b3)
        assert dec.ell == 0 and dec.coefficients == tuple(int(j == i) for j in range(2))


@pytest.mark.parametrize("d,k", [(2, 2), (2, 5), (3, 3), (4, 2)])
def test_reconstruction(d, k):
    b = lt.basis_mk(d, k)
    for p in lt.ball(d, 4):
        dec = lt.decompose(p, b)
        assert dec.reconstruct(b) == p
        assert dec.ell == b.ell(p)


def test_min_norm():
    assert lt.min_norm_uk(2, 3, 10) == (3, (1, 3))
    assert lt.min_norm_uk(3, 2, 8)[0] == 2
    for d, k in [(2, 2), (2, 4), (3, 3), (4, 2)]:
        value, wit = lt.min_norm_uk(d, k, 4)
        assert value >= k
        assert lt.in_sublattice(wit, lt.basis_mk(d, k))
        assert lt.min_norm_uk_bruteforce(d, k, value) == value


def test_in_sublattice():
    b = lt.basis_mk(2, 3)
    assert lt.in_sublattice((2, 6), b)
    assert not lt.in_sublattice((0, 1), b)
    assert not lt.in_sublattice((1, 2), b)


def test_injectivity_threshold():
    res = lt.coset_injectivity_threshold(2, 3, 3)
    assert res.threshold == 1
    p, q = res.witnesses[3]
    assert lt.in_sublattice(tuple(a - c for a, c in zip(p, q)), lt.basis_mk(2, 3))
    assert max(abs(c) for c in p) <= 3
    for k in range(2, 7):
        assert lt.coset_injectivity_threshold(2, k, k).threshold == lt.injectivity_threshold_bruteforce(2, k, k)
        assert lt.coset_injectivity_threshold(2, k, k).threshold == (k - 1) // 2
    assert lt.coset_injectivity_threshold(3, 3, 2).threshold == lt.injectivity_threshold_bruteforce(3, 3, 2)


def test_complete_pattern():
    b = lt.basis_mk(2, 3)
    zero = lt.PatternOnBall.from_function(2, 1, lambda p: 0)
    assert lt.project_pi(lt.complete_pattern(zero, b)) == BiConfiguration.constant(0)
    pat = lt.PatternOnBall.from_function(2, 1, lambda p: (p[0] + 2 * p[1]) % 3)
    y = lt.complete_pattern(pat, b)
    assert all(y[p] == s for p, s in pat.items())
    p, q = lt.coset_injectivity_threshold(2, 3, 3).witnesses[3]
    clash = lt.PatternOnBall.from_function(2, 3, lambda r: 1 if r == p else 0)
    with pytest.raises(CollisionConstraint) as err:
        lt.complete_pattern(clash, b)
    assert set(err.value.symbols) == {0, 1}


def test_complete_pattern_every_pattern_at_threshold():
    b = lt.basis_mk(2, 3)
    for values in itertools.product(range(2), repeat=9):
        pat = lt.PatternOnBall(2, 1, values)
        y = lt.complete_pattern(pat, b)
        assert all(y[p] == s for p, s in pat.items())


@given(biconfigs(n=3))
def test_pi_round_trip(z):
    b = lt.basis_mk(2, 3)
    y = lt.lift_pi_inverse(z, b)
    assert lt.project_pi(y) == z
    assert y[(1, 2)] == z[-1]
    assert y[(0, 5)] == z[5]


def test_phi_k_of_shifts():
    b = lt.basis_mk(2, 3)
    assert equal_codes(lt.phi_k(lt.ZdShift(3, (0, 1)), b), shift_code(3, 1))
    assert equal_codes(lt.phi_k(lt.ZdShift(3, (1, 3)), b), identity_code(3))
    for a in range(-3, 4):
        for u in [(0, 0), (1, 3), (-2, -6), (1, 3)]:
            t = (u[0], u[1] + a)
            assert equal_codes(lt.phi_k(lt.ZdShift(3, t), b), shift_code(3, a))


def test_phi_k_of_cross_swap_explicit():
    b = lt.basis_mk(2, 3)
    h = lt.phi_k(lt.build_cross_swap(3), b)

    def rule(cell):
        v = cell(0)
        if v in (1, 2) and all(cell(j) == 0 for j in (-3, -1, 1, 3)):
            return 3 - v
        return v

    assert equal_codes(h, RuleCode(3, LocalRule1D(3, rule)))


def test_cross_swap():
    cs = lt.build_cross_swap(3)
    assert lt.equal_codes_zd(lt.compose_zd(cs, cs), lt.ZdShift(3, (0, 0)))
    b = lt.basis_mk(2, 3)
    isolated = lt.lift_pi_inverse(BiConfiguration((0,), (1,), 0, (0,)), b)
    out = lt.apply_zd(cs, isolated)
    assert out[(0, 0)] == 2 and out[(1, 3)] == 2 and out[(0, 1)] == 0
    zero = lt.lift_pi_inverse(BiConfiguration.constant(0), b)
    assert lt.apply_zd(cs, zero) == zero
    with pytest.raises(ValueError):
        lt.build_cross_swap(2)


def test_memory_and_shift_detection():
    cs = lt.build_cross_swap(3)
    assert lt.memory_radius_zd(lt.ZdShift(3, (0, 0))) == 0
    assert lt.memory_radius_zd(cs) == 1
    assert lt.memory_radius_zd(lt.ZdShift(3, (2, -1))) == 2
    assert lt.in_memory_class(cs, 2) and not lt.in_memory_class(cs, 1)
    assert lt.is_shift_zd(lt.ZdShift(3, (1, -2))) == (1, -2)
    assert lt.is_shift_zd(lt.ZdShift(3, (0, 0))) == (0, 0)
    assert lt.is_shift_zd(cs) is None
    assert lt.is_shift_zd(lt.ZdTruncated(lt.ZdShift(3, (1, 1)), 3)) == (1, 1)


def test_lk_uniqueness():
    cs = lt.build_cross_swap(3)
    res = lt.check_lk_uniqueness(cs, lt.basis_mk(2, 5))
    assert res["reconstructed_equal"] and res["memory_radius"] == 1
    assert lt.check_lk_uniqueness(lt.ZdShift(3, (0, 1)), lt.basis_mk(2, 3))["reconstructed_equal"]
    with pytest.raises(InjectivityRadiusInsufficient) as err:
        lt.check_lk_uniqueness(cs, lt.basis_mk(2, 2))
    assert err.value.threshold == 0


def test_radical_reduction():
    assert lt.radical_reduction_check(lt.ZdShift(3, (1, 1)))["t"] == [1, 1]
    res = lt.radical_reduction_check(lt.build_cross_swap(3))
    assert res["verdict"] == "not-a-shift"
    assert res["certificate"]["phi_k_min_radius"] == 3
    forced = lt.radical_reduction_check(lt.ZdShift(3, (1, 3)), k=3)
    assert forced["phi_k_shift"] == 0 and forced["t"] == [1, 3]


def test_radical_reduction_3d():
    cs = lt.build_cross_swap(3, d=3)
    assert lt.radical_reduction_check(cs)["verdict"] == "not-a-shift"
    assert lt.radical_reduction_check(lt.ZdShift(3, (1, 0, -1)))["t"] == [1, 0, -1]


def test_homomorphism_small_panel():
    b = lt.basis_mk(2, 3)
    cs = lt.build_cross_swap(3)
    s = lt.ZdShift(3, (1, 0))
    for g, h in [(cs, s), (s, cs), (cs, cs)]:
        assert equal_codes(lt.phi_k(lt.compose_zd(g, h), b), compose(lt.phi_k(g, b), lt.phi_k(h, b)))
