from fractions import Fraction

import numpy as np
import pytest

from momentsq import (REAL, AtomicComb, Cell, LocallyConstant, QuadratureSpec,
                      comb_ratio, extension_op, padic, padic_scale,
                      random_locally_constant, real_scale, square_function,
                      weighted_norms)
from momentsq.extension import (_padic_extensions_on_grid, fejer_weight)


def indicator(field, precision):
    count = field.prime ** precision
    return LocallyConstant(field, precision, (1 + 0j,) * count)


def test_extension_trivial_values():
    f5 = padic(5)
    one = indicator(f5, 1)
    assert extension_op(one, None, (Fraction(0), Fraction(0))) == pytest.approx(1)
    # any x in O^n: the phase gamma(xi) . x stays in O, where e = 1
    assert extension_op(one, None, (Fraction(2), Fraction(-7))) == pytest.approx(1)
    comb = AtomicComb(REAL, 2)
    assert extension_op(comb, None, (0.0, 0.0)) == pytest.approx(2)


def test_square_function_trivial():
    f5 = padic(5)
    sc = padic_scale(5, 1)
    one = indicator(f5, 1)
    x0 = (Fraction(0), Fraction(0))
    assert square_function(one, sc, x0) == pytest.approx(5 ** -0.5)
    # f supported on a single cell: S = |E_J f| = |E_O f|
    single = LocallyConstant(f5, 1, (0, 0, 1 + 1j, 0, 0))
    x = (Fraction(1, 25), Fraction(3, 25))
    assert square_function(single, sc, x) == pytest.approx(abs(extension_op(single, None, x)))
    zero = LocallyConstant(f5, 1, (0,) * 5)
    assert square_function(zero, sc, x) == 0


def test_extension_linearity():
    f5 = padic(5)
    fa = random_locally_constant(f5, 2, seed=1)
    fb = random_locally_constant(f5, 2, seed=2)
    fab = LocallyConstant(f5, 2, tuple(a + b for a, b in zip(fa.values, fb.values)))
    for x in [(Fraction(3, 25), Fraction(4, 5)), (Fraction(0), Fraction(1, 125))]:
        lhs = extension_op(fab, None, x)
        rhs = extension_op(fa, None, x) + extension_op(fb, None, x)
        assert abs(lhs - rhs) < 1e-10


def test_modulus_bound():
    f5 = padic(5)
    f = random_locally_constant(f5, 2, seed=3)
    mass = sum(abs(v) for v in f.values) / 25
    cell = Cell(f5, padic_scale(5, 1), 2)
    cell_mass = sum(abs(f.values[a]) for a in range(25) if a % 5 == 2) / 25
    for x in [(Fraction(1, 5), Fraction(2, 25)), (Fraction(7, 125), Fraction(0))]:
        assert abs(extension_op(f, None, x)) <= mass + 1e-12
        assert abs(extension_op(f, cell, x)) <= cell_mass + 1e-12


def test_pointwise_cauchy_schwarz():
    f5 = padic(5)
    sc = padic_scale(5, 1)
    for seed in range(5):
        f = random_locally_constant(f5, 2, seed=seed)
        for x in [(Fraction(0), Fraction(0)), (Fraction(1, 25), Fraction(8, 25))]:
            assert abs(extension_op(f, None, x)) <= 5 ** 0.5 * square_function(f, sc, x) + 1e-12


def test_grid_route_matches_pointwise():
    # the FFT coset-grid evaluation agrees with direct pointwise summation
    f5 = padic(5)
    sc = padic_scale(5, 1)
    f = random_locally_constant(f5, 2, seed=9)
    stack = _padic_extensions_on_grid(f, sc, (Fraction(0), Fraction(0)), 2, 10 ** 8)
    e_full = stack.sum(axis=0)
    for j1, j2 in [(0, 0), (3, 7), (24, 1), (13, 19)]:
        x = (Fraction(j1, 25), Fraction(j2, 25))
        assert abs(e_full[j1, j2] - extension_op(f, None, x)) < 1e-9
        cell = Cell(f5, sc, 2)
        assert abs(stack[2][j1, j2] - extension_op(f, cell, x)) < 1e-9


def test_weighted_norms_match_pointwise_oracle():
    # independent route: direct pointwise sums over every coset of the ball
    f3 = padic(3)
    sc = padic_scale(3, 1)
    f = random_locally_constant(f3, 1, seed=21)
    q = 9
    lhs4 = rhs4 = 0.0
    for j1 in range(q):
        for j2 in range(q):
            x = (Fraction(j1, q), Fraction(j2, q))
            lhs4 += abs(extension_op(f, None, x)) ** 4
            rhs4 += square_function(f, sc, x) ** 4
    fast = weighted_norms(f, sc, n=2)
    assert fast.lhs == pytest.approx(lhs4 ** 0.25, rel=1e-12)
    assert fast.rhs == pytest.approx(rhs4 ** 0.25, rel=1e-12)


def test_weighted_norms_center_modulation_identity():
    # recentering the ball is the same as modulating the cell values
    import cmath
    from momentsq.local_field import padic_fractional_part
    f5 = padic(5)
    sc = padic_scale(5, 1)
    f = random_locally_constant(f5, 2, seed=13)
    center = (Fraction(2, 5), Fraction(3, 25))
    shifted = weighted_norms(f, sc, center=center)
    modulated_vals = []
    for a in range(25):
        ph = sum(padic_fractional_part(a ** k * c, 5) for k, c in enumerate(center, 1))
        modulated_vals.append(f.values[a] * cmath.exp(2j * cmath.pi * (ph % 1)))
    fmod = LocallyConstant(f5, 2, tuple(modulated_vals))
    plain = weighted_norms(fmod, sc, n=2)
    assert shifted.lhs == pytest.approx(plain.lhs, rel=1e-11)
    assert shifted.rhs == pytest.approx(plain.rhs, rel=1e-11)
    assert shifted.ratio <= 2 ** 0.25 + 1e-9


def test_weighted_norms_ratio_bound_other_prime():
    f7 = padic(7)
    sc = padic_scale(7, 1)
    for seed in range(5):
        f = random_locally_constant(f7, 1, seed=seed)
        assert weighted_norms(f, sc, n=2).ratio <= 2 ** 0.25 + 1e-9


def test_real_grid_route_matches_pointwise():
    import numpy as np
    from momentsq.extension import _assemble, _real_extensions_on_grid
    f = random_locally_constant(REAL, 8, seed=17)  # finer than the partition
    scale = real_scale(4)
    grids = [np.array([0.5, 3.25]), np.array([1.0, 7.75])]
    factors = _real_extensions_on_grid(f, scale, grids)
    shape = (2, 2)
    for j in range(4):
        ej = _assemble(factors[j], shape)
        cell = Cell(REAL, scale, j)
        for a, x1 in enumerate(grids[0]):
            for b, x2 in enumerate(grids[1]):
                direct = extension_op(f, cell, (x1, x2))
                assert abs(ej[a, b] - direct) < 1e-9


def test_weighted_norms_single_cell_ratio_one():
    f5 = padic(5)
    sc = padic_scale(5, 1)
    single = LocallyConstant(f5, 1, (0, 0.7 - 0.2j, 0, 0, 0))
    r = weighted_norms(single, sc, n=2)
    assert r.ratio == pytest.approx(1, abs=1e-12)
    # real field too
    fr = LocallyConstant(REAL, 4, (0, 1.5 + 0.5j, 0, 0))
    rr = weighted_norms(fr, real_scale(4), n=2)
    assert rr.ratio == pytest.approx(1, abs=1e-9)


def test_weighted_norms_zero_function_error():
    f5 = padic(5)
    zero = LocallyConstant(f5, 1, (0,) * 5)
    with pytest.raises(ValueError, match="zero"):
        weighted_norms(zero, padic_scale(5, 1), n=2)


def test_weighted_norms_ratio_bound_qp():
    f5 = padic(5)
    sc = padic_scale(5, 1)
    for seed in range(10):
        f = random_locally_constant(f5, 2, seed=seed)
        r = weighted_norms(f, sc, n=2)
        assert r.ratio <= 2 ** 0.25 + 1e-9


def test_weighted_norms_real_ratio_bound():
    for seed in range(5):
        f = random_locally_constant(REAL, 4, seed=seed)
        r = weighted_norms(f, real_scale(4), n=2)
        assert r.ratio <= 2 * 1.02  # pointwise CS: sqrt(#cells)


def test_fejer_weight_on_unit_interval():
    u = np.linspace(0, 1, 101)
    w = fejer_weight(u)
    assert np.all(w >= 1 - 1e-12)
    assert fejer_weight(0.5) == pytest.approx((np.pi / 2) ** 2)
    assert fejer_weight(0.0) == pytest.approx(1)
    assert fejer_weight(1.0) == pytest.approx(1)


def test_comb_ratio_single_atom():
    assert comb_ratio(2, 1) == pytest.approx(1)


def test_comb_ratio_matches_counting_identity():
    # period-cell quadrature must reproduce J(N) / (N^2 + 2) exactly
    for N in (5, 10):
        expected = ((2 * N * N - N) / (N * N + 2)) ** 0.25
        assert comb_ratio(2, N) == pytest.approx(expected, abs=1e-9)


def test_comb_ratio_monotone():
    r10, r20, r40 = (comb_ratio(2, N) for N in (10, 20, 40))
    assert r10 <= r20 + 0.02 and r20 <= r40 + 0.02
    assert abs(r40 - 2 ** 0.25) / 2 ** 0.25 <= 0.15


def test_atomic_comb_rejected_over_padic():
    with pytest.raises(ValueError):
        AtomicComb(padic(5), 4)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(grid_step=Fraction(1, 2))


def test_weight_spec_wiring():
    from momentsq import WeightProfile, WeightSpec
    f5 = padic(5)
    sc = padic_scale(5, 1)
    f = random_locally_constant(f5, 2, seed=4)
    w = WeightSpec.standard(f5, 2, sc)
    assert w.profile is WeightProfile.INDICATOR_BALL
    assert weighted_norms(f, sc, weight=w).ratio == weighted_norms(f, sc, n=2).ratio
    with pytest.raises(ValueError):
        WeightSpec(f5, (Fraction(0), Fraction(0)), Fraction(25), WeightProfile.SHIFTED_FEJER)
    with pytest.raises(ValueError):
        weighted_norms(f, padic_scale(5, 2), weight=w)  # radius mismatch
