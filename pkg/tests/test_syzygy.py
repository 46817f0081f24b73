import itertools
from fractions import Fraction

import pytest

from momentsq import (REAL, BudgetExceededError, Curve, cell_tuple,
                      is_syzygy_nonarch, padic, padic_scale, permutation_orbit,
                      permutation_predicate, real_scale, scan_strong_diagonal,
                      syzygy_bound, syzygy_set_nonarch, syzygy_set_real)
from momentsq.bounds import bezout_syzygy_bound
from momentsq.syzygy import SyzygyMethod


def q5_tuple(*idx, s=1):
    return cell_tuple(padic(5), padic_scale(5, s), idx)


def q3_tuple(*idx, s=1):
    return cell_tuple(padic(3), padic_scale(3, s), idx)


def test_membership_examples():
    assert is_syzygy_nonarch(q3_tuple(0, 1), q3_tuple(0, 1))      # I = J
    assert is_syzygy_nonarch(q3_tuple(0, 1), q3_tuple(1, 0))      # permutation
    assert not is_syzygy_nonarch(q3_tuple(0, 0), q3_tuple(0, 1))  # multiset mismatch


def test_set_examples():
    rep = syzygy_set_nonarch(q5_tuple(0, 1))
    assert rep.member_indices == [(0, 1), (1, 0)]
    assert rep.cardinality == 2
    assert rep.epsilon == Fraction(1, 25)
    assert rep.method is SyzygyMethod.CONGRUENCE_EXACT

    rep = syzygy_set_nonarch(q5_tuple(2, 2))
    assert rep.member_indices == [(2, 2)]

    rep = syzygy_set_nonarch(q3_tuple(0, 1, 2))
    assert rep.cardinality == 6 <= 27


def test_permutation_predicate():
    assert permutation_predicate(q5_tuple(0, 1), q5_tuple(1, 0))
    assert not permutation_predicate(q5_tuple(0, 0), q5_tuple(0, 1))
    assert permutation_predicate(q5_tuple(2, 2), q5_tuple(2, 2))
    with pytest.raises(ValueError):
        permutation_predicate(q5_tuple(0, 1), q3_tuple(0, 1))


def test_symmetry_and_reflexivity():
    pairs = list(itertools.product(range(5), repeat=2))
    for i in pairs[:12]:
        base = q5_tuple(*i)
        assert is_syzygy_nonarch(base, base)
        for j in pairs:
            other = q5_tuple(*j)
            assert is_syzygy_nonarch(base, other) == is_syzygy_nonarch(other, base)


def test_set_matches_pairwise_decision():
    # the global index and the per-pair meet-in-the-middle agree
    base = q5_tuple(1, 3)
    members = set(syzygy_set_nonarch(base).member_indices)
    for j in itertools.product(range(5), repeat=2):
        assert (j in members) == is_syzygy_nonarch(base, q5_tuple(*j))


def test_oracle_equivalence_small_configs():
    for p, n, s in [(5, 2, 1), (7, 2, 1), (5, 3, 1), (5, 2, 2)]:
        scan = scan_strong_diagonal(p, n, s)
        assert scan.all_match_permutations, scan.mismatches[:3]
        assert scan.within_bound
        assert scan.max_cardinality <= scan.bound


def test_scan_cardinalities_are_orbit_sizes():
    scan = scan_strong_diagonal(5, 2, 1)
    for code, card in enumerate(scan.cardinalities):
        idx = (code % 5, code // 5)
        assert card == len(set(itertools.permutations(idx)))


def test_small_prime_enumeration_runs_without_bound_claim():
    # p <= n: enumerate and report; no n^n assertion is made for these
    scan = scan_strong_diagonal(2, 3, 1)
    assert scan.bases == 8
    assert scan.max_cardinality >= 1


def test_budget_guard():
    with pytest.raises(BudgetExceededError):
        syzygy_set_nonarch(q5_tuple(0, 1, s=9))
    with pytest.raises(BudgetExceededError):
        is_syzygy_nonarch(q5_tuple(0, 1, s=9), q5_tuple(1, 0, s=9))


def test_non_moment_curve_rejected():
    from momentsq import polys
    bent = Curve((polys.poly([0, 2]), polys.poly([0, 0, 1])))
    with pytest.raises(ValueError):
        syzygy_set_nonarch(q5_tuple(0, 1), curve=bent)


def test_bound_values():
    assert syzygy_bound(padic(7), 3) == 27
    assert syzygy_bound(REAL, 3) == 343 * 27
    assert syzygy_bound(REAL, 7) == 5 ** 7 * 7 ** 7


def test_real_sampler_permutations_and_soundness():
    curve = Curve.moment(2)
    base = cell_tuple(REAL, real_scale(8), (2, 5))
    rep = syzygy_set_real(curve, base)
    members = set(rep.member_indices)
    assert {(2, 5), (5, 2)} <= members
    assert rep.cardinality <= bezout_syzygy_bound(curve, REAL) == 50
    assert rep.method is SyzygyMethod.REAL_SAMPLED


def test_real_sampler_vacuous_epsilon():
    # eps at least n * sup |gamma| makes the constraint vacuous
    curve = Curve.moment(2)
    base = cell_tuple(REAL, real_scale(4), (1, 2))
    rep = syzygy_set_real(curve, base, epsilon=Fraction(3))
    assert rep.cardinality == 16


def test_real_sampler_grid_validation():
    curve = Curve.moment(2)
    base = cell_tuple(REAL, real_scale(8), (0, 1))
    with pytest.raises(ValueError):
        syzygy_set_real(curve, base, grid_step=Fraction(1, 16))  # > delta/8


def test_permutation_orbit():
    orbit = permutation_orbit(q5_tuple(0, 1, s=1))
    assert [t.indices for t in orbit] == [(0, 1), (1, 0)]


def test_oracle_report_matches_exact_enumeration():
    from momentsq import syzygy_set_oracle
    for idx in [(0, 1), (2, 2), (4, 1)]:
        base = q5_tuple(*idx)
        oracle = syzygy_set_oracle(base)
        exact = syzygy_set_nonarch(base)
        assert oracle.method is SyzygyMethod.PERMUTATION_ORACLE
        assert oracle.member_indices == exact.member_indices
        assert oracle.epsilon == exact.epsilon
