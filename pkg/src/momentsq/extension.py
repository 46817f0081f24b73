"""The extension operator, square function, and weighted-norm experiments.

E_I f(x) = integral over I of f(xi) e(gamma(xi) . x) d xi along the moment
curve, S_delta f(x) the l2 aggregate of |E_J f(x)| over the scale-delta
partition, and the L^{2n} norm ratio that the cardinality bounds control.

Over Q_p the computation is exact: a locally constant f makes the
integrand locally constant at precision n*s over the ball |x - c| <= p^{ns},
so the norm integral is a finite average over coset representatives, and
that grid sum is a lattice character sum evaluated with an FFT.  Over R
the xi-integrals use composite Gauss-Legendre panels sized to the phase
bandwidth, and the norm quadrature is the midpoint rule on the weighted
box; step 1/4 resolves every frequency the quartic integrand contains.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .budget import DEFAULT_ENUMERATION_BUDGET, check_budget
from .local_field import (REAL, Cell, FieldKind, FieldSpec, Scale,
                          padic_fractional_part, padic_valuation, real_scale)


@dataclass(frozen=True)
class LocallyConstant:
    """f constant on the cells of a fine partition.

    Over Q_p, precision m means p^m cells (values[a] on a + p^m O); over R,
    precision M means M equal cells of [0, 1).
    """

    field: FieldSpec
    precision: int
    values: tuple[complex, ...]

    def __post_init__(self):
        expected = (self.field.prime ** self.precision
                    if self.field.kind is FieldKind.PADIC else self.precision)
        if len(self.values) != expected:
            raise ValueError(f"need {expected} cell values, got {len(self.values)}")

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class AtomicComb:
    """N unit point masses at i/N, i = 1..N, over R.

    The extension of the atomic measure is the plain exponential sum; the
    atom at 1.0 belongs to the last partition cell by convention.
    """

    field: FieldSpec
    atom_count: int

    def __post_init__(self):
        if self.field.kind is not FieldKind.REAL:
            raise ValueError("atomic combs are a real-field test function")
        if self.atom_count < 1:
            raise ValueError("need at least one atom")

    @property
    def atoms(self) -> list[Fraction]:
        return [Fraction(i, self.atom_count) for i in range(1, self.atom_count + 1)]


TestFunction = LocallyConstant | AtomicComb


class WeightProfile(Enum):
    INDICATOR_BALL = "indicator_ball"
    SHIFTED_FEJER = "shifted_fejer"


@dataclass(frozen=True)
class WeightSpec:
    """The weight W((x - c) / radius_scale) for the norm integrals.

    Non-Archimedean: the indicator of the ball of radius radius_scale.
    Real: the product of shifted Fejer-type factors
    w(u) = (pi/2)^2 sinc^2(u - 1/2), which is >= 1 on [0, 1] and whose
    transform is supported in [-1, 1] and vanishes at the endpoints.
    """

    field: FieldSpec
    center: tuple
    radius_scale: Fraction
    profile: WeightProfile

    def __post_init__(self):
        non_arch = self.field.kind is FieldKind.PADIC
        if non_arch != (self.profile is WeightProfile.INDICATOR_BALL):
            raise ValueError("indicator-ball weights go with non-Archimedean fields")
        if self.profile is WeightProfile.SHIFTED_FEJER:
            # the profile must dominate 1 on the unit box; sampled check
            u = np.linspace(0.0, 1.0, 33)
            if not np.all(fejer_weight(u) >= 1 - 1e-12):
                raise ValueError("weight profile drops below 1 on the unit box")

    @classmethod
    def standard(cls, field: FieldSpec, n: int, scale: Scale) -> "WeightSpec":
        profile = (WeightProfile.INDICATOR_BALL
                   if field.kind is FieldKind.PADIC else WeightProfile.SHIFTED_FEJER)
        return cls(field, (Fraction(0),) * n, Fraction(1) / scale.delta ** n, profile)


@dataclass(frozen=True)
class QuadratureSpec:
    grid_step: Fraction = Fraction(1, 4)   # R: midpoint step for the x-grid
    precision: int | None = None           # Q_p: forced to n*s when None

    def __post_init__(self):
        if self.grid_step > Fraction(1, 4):
            raise ValueError("grid_step must be at most 1/4")


def fejer_weight(u: np.ndarray | float) -> np.ndarray | float:
    """(pi/2)^2 sinc^2(u - 1/2); at least 1 on [0, 1]."""
    return (np.pi / 2) ** 2 * np.sinc(np.asarray(u, dtype=float) - 0.5) ** 2


@dataclass(frozen=True)
class NormRatio:
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------

def _cell_range(f: TestFunction, cell: Cell | None):
    """Normalize the integration range I: a partition cell or all of O."""
    if cell is None:
        return None
    if cell.field != f.field:
        raise ValueError("cell and test function live over different fields")
    return cell


def extension_op(f: TestFunction, cell: Cell | None, x) -> complex:
    """E_I f(x), with I a cell or (cell=None) the whole ring of integers.

    AtomicComb uses the measure convention: a sum of unit phases with no
    1/N factor.
    """
    cell = _cell_range(f, cell)
    if f.field.kind is FieldKind.PADIC:
        return _extension_padic(f, cell, x)
    return _extension_real(f, cell, x)


def _extension_padic(f: LocallyConstant, cell: Cell | None, x) -> complex:
    if not isinstance(f, LocallyConstant):
        raise ValueError("p-adic test functions are locally constant")
    p = f.field.prime
    n = len(x)
    xs = [Fraction(v) for v in x]
    v_min = min((padic_valuation(v, p) for v in xs if v != 0), default=0)
    m_eval = max(f.precision, max(0, -v_min), 1)
    if cell is not None:
        m_eval = max(m_eval, cell.scale.exponent)
    lo, hi, step = 0, p ** m_eval, 1
    if cell is not None:
        s = cell.scale.exponent
        lo, step = cell.index, p ** s
    total = 0j
    mod_f = p ** f.precision
    for a in range(lo, hi, step):
        phase = Fraction(0)
        tp = 1
        for k in range(n):
            tp *= a
            if xs[k]:
                phase += padic_fractional_part(tp * xs[k], p)
        total += f.values[a % mod_f] * cmath.exp(2j * cmath.pi * (phase % 1))
    return total / p ** m_eval


def _real_xi_nodes(a: float, b: float, x, order: int = 16):
    """Gauss-Legendre nodes/weights on [a, b], paneled to the phase bandwidth.

    The phase xi*x_1 + ... + xi^n*x_n has at most sum_k k*|x_k| cycles per
    unit; order-16 panels hold ~4 cycles each with headroom.
    """
    rate = sum(k * abs(float(v)) for k, v in enumerate(x, start=1)) + 1.0
    panels = max(1, math.ceil((b - a) * rate / 4.0))
    nodes, wts = np.polynomial.legendre.leggauss(order)
    xi = np.concatenate([a + (i + (nodes + 1) / 2) * (b - a) / panels
                         for i in range(panels)])
    ww = np.tile(wts * (b - a) / (2 * panels), panels)
    return xi, ww


def _extension_real(f: TestFunction, cell: Cell | None, x) -> complex:
    xf = [float(v) for v in x]
    n = len(xf)
    if isinstance(f, AtomicComb):
        lo = Fraction(0) if cell is None else cell.index * cell.scale.delta
        hi = Fraction(1) if cell is None else lo + cell.scale.delta
        last = cell is not None and cell.index == int(1 / cell.scale.delta) - 1
        total = 0j
        for atom in f.atoms:
            inside = lo <= atom < hi or (atom == 1 and (cell is None or last))
            if inside:
                phase = sum(float(atom) ** k * xf[k - 1] for k in range(1, n + 1))
                total += cmath.exp(-2j * cmath.pi * phase)
        return total
    res = f.precision
    lo_cell, hi_cell = 0, res
    if cell is not None:
        frac = cell.scale.delta * res
        if frac.denominator != 1:
            raise ValueError("cell boundaries must align with the f resolution")
        per = int(frac)
        lo_cell, hi_cell = cell.index * per, (cell.index + 1) * per
    total = 0j
    for j in range(lo_cell, hi_cell):
        xi, ww = _real_xi_nodes(j / res, (j + 1) / res, xf)
        phase = np.zeros_like(xi)
        xp = np.ones_like(xi)
        for k in range(n):
            xp = xp * xi
            phase += xp * xf[k]
        total += f.values[j] * np.sum(ww * np.exp(-2j * np.pi * phase))
    return complex(total)


def square_function(f: TestFunction, scale: Scale, x) -> float:
    """S_delta f(x) = (sum over J in P_delta of |E_J f(x)|^2)^(1/2)."""
    if f.field.kind is FieldKind.PADIC:
        cells = f.field.prime ** scale.exponent
    else:
        cells = scale.delta.denominator
    return math.sqrt(sum(abs(extension_op(f, Cell(f.field, scale, j), x)) ** 2
                         for j in range(cells)))


# ---------------------------------------------------------------------------
# Q_p norms: exact coset-grid quadrature via FFT
# ---------------------------------------------------------------------------

def _padic_cell_fields(f: LocallyConstant, scale: Scale, center, n: int):
    p = f.field.prime
    s = scale.exponent
    q = p ** (n * s)
    m_eval = max(f.precision, n * s, 1)
    reps = np.arange(p ** m_eval, dtype=np.int64)
    g = np.asarray(f.values, dtype=complex)[reps % (p ** f.precision)]
    if any(Fraction(c) != 0 for c in center):
        phases = np.empty(len(reps), dtype=complex)
        for a in reps:
            ph = Fraction(0)
            tp = 1
            for k in range(n):
                tp *= int(a)
                if center[k]:
                    ph += padic_fractional_part(tp * Fraction(center[k]), p)
            phases[a] = cmath.exp(2j * cmath.pi * (ph % 1))
        g = g * phases
    coords = []
    acc = np.ones(len(reps), dtype=np.int64)
    for _ in range(n):
        acc = (acc * (reps % q)) % q
        coords.append(acc.copy())
    cells = reps % (p ** s)
    return q, m_eval, g, coords, cells


def _padic_extensions_on_grid(f: LocallyConstant, scale: Scale, center, n: int,
                              budget: int):
    """E_J f on the coset grid of the ball |x - c| <= p^{ns}, for every J.

    The grid point (j_1, ..., j_n)/q + c represents its Z_p^n coset; the
    character sum over representatives is an n-dimensional inverse DFT.
    """
    p = f.field.prime
    s = scale.exponent
    q = p ** (n * s)
    check_budget(q ** n, budget, "p-adic norm grid")
    _, m_eval, g, coords, cells = _padic_cell_fields(f, scale, center, n)
    ncells = p ** s
    stack = np.zeros((ncells,) + (q,) * n, dtype=complex)
    for J in range(ncells):
        mask = cells == J
        np.add.at(stack[J], tuple(c[mask] for c in coords), g[mask])
    axes = tuple(range(1, n + 1))
    stack = np.fft.ifftn(stack, axes=axes) * (q ** n) / (p ** m_eval)
    return stack  # stack[J] = E_J f on the grid


def _weighted_norms_padic(f: LocallyConstant, scale: Scale, center, n: int,
                          budget: int) -> NormRatio:
    stack = _padic_extensions_on_grid(f, scale, center, n, budget)
    e_full = stack.sum(axis=0)
    sq = np.sum(np.abs(stack) ** 2, axis=0)
    # each grid point carries Haar measure 1 and indicator weight 1
    lhs = float(np.sum(np.abs(e_full) ** (2 * n))) ** (1 / (2 * n))
    rhs = float(np.sum(sq ** n)) ** (1 / (2 * n))
    return NormRatio(lhs, rhs)


# ---------------------------------------------------------------------------
# R norms: Gauss-Legendre kernels + weighted midpoint box quadrature
# ---------------------------------------------------------------------------

def _real_grids(center, radius: float, step: float, n: int, budget: int):
    counts = int(round(radius / step))
    check_budget(counts ** n, budget, "real norm grid")
    return [np.asarray(center[k], dtype=float) + (np.arange(counts) + 0.5) * step
            for k in range(n)]


def _real_extensions_on_grid(f: TestFunction, scale: Scale, grids):
    """Per-cell E_J f on the tensor grid, each as a list of rank-1 factors."""
    n = len(grids)
    if isinstance(f, AtomicComb):
        ncells = scale.delta.denominator
        factors = {J: [] for J in range(ncells)}
        for atom in f.atoms:
            J = min(int(atom / scale.delta), ncells - 1)
            fac = [np.exp(-2j * np.pi * float(atom) ** (k + 1) * grids[k])
                   for k in range(n)]
            factors[J].append((1.0 + 0j, fac))
        return factors
    res = f.precision
    ncells = scale.delta.denominator
    per = res * scale.delta
    if per.denominator != 1:
        raise ValueError("f resolution must refine the partition")
    per = int(per)
    rate = sum((k + 1) * float(np.max(np.abs(g))) for k, g in enumerate(grids)) + 1.0
    panels = max(1, math.ceil(rate / (4.0 * res)))
    nodes, wts = np.polynomial.legendre.leggauss(16)
    factors = {J: [] for J in range(ncells)}
    for j in range(res):
        a = j / res
        width = 1.0 / res
        xi = np.concatenate([a + (i + (nodes + 1) / 2) * width / panels
                             for i in range(panels)])
        ww = np.tile(wts * width / (2 * panels), panels)
        J = j // per
        for t, w in zip(xi, ww):
            fac = [np.exp(-2j * np.pi * t ** (k + 1) * grids[k]) for k in range(n)]
            factors[J].append((f.values[j] * w, fac))
    return factors


def _assemble(factors_list, shape):
    out = np.zeros(shape, dtype=complex)
    n = len(shape)
    for coeff, fac in factors_list:
        term = fac[0] * coeff
        for k in range(1, n):
            term = np.multiply.outer(term, fac[k])
        out += term
    return out


def _weighted_norms_real(f: TestFunction, scale: Scale, center, n: int,
                         quad: QuadratureSpec, budget: int) -> NormRatio:
    radius = float(Fraction(1) / scale.delta ** n)
    step = float(quad.grid_step)
    grids = _real_grids(center, radius, step, n, budget)
    shape = tuple(len(g) for g in grids)
    factors = _real_extensions_on_grid(f, scale, grids)
    e_full = np.zeros(shape, dtype=complex)
    sq = np.zeros(shape, dtype=float)
    for J, fl in factors.items():
        ej = _assemble(fl, shape)
        e_full += ej
        sq += np.abs(ej) ** 2
    w = np.ones(shape)
    for k in range(n):
        u = (grids[k] - float(center[k])) / radius
        wk = fejer_weight(u)
        w = w * wk.reshape((1,) * k + (-1,) + (1,) * (n - k - 1))
    vol = step ** n
    lhs = float(np.sum(np.abs(e_full) ** (2 * n) * w) * vol) ** (1 / (2 * n))
    rhs = float(np.sum(sq ** n * w) * vol) ** (1 / (2 * n))
    return NormRatio(lhs, rhs)


def weighted_norms(f: TestFunction, scale: Scale, center=None,
                   quad: QuadratureSpec | None = None, n: int | None = None,
                   weight: WeightSpec | None = None,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> NormRatio:
    """L^{2n} norms of E_O f and S_delta f against the standard weight.

    Q_p: the integrands are locally constant on Z_p^n cosets, so the sum
    over coset representatives of the ball of radius p^{ns} IS the
    integral; no quadrature error beyond float rounding.  R: midpoint rule
    with the quad grid step over the box of side delta^{-n} anchored at
    the center, against the Fejer-type weight.
    """
    if quad is None:
        quad = QuadratureSpec()
    if weight is not None:
        if n is not None and n != len(weight.center):
            raise ValueError("n disagrees with the weight's center point")
        if center is not None and tuple(center) != tuple(weight.center):
            raise ValueError("center disagrees with the weight's center point")
        center = weight.center
        n = len(center)
        if weight.field != f.field:
            raise ValueError("weight and test function live over different fields")
        if weight.radius_scale != Fraction(1) / scale.delta ** n:
            raise ValueError("weight radius must be delta^(-n) for this scale")
    if n is None:
        if center is None:
            raise ValueError("give n, a center point, or a weight spec")
        n = len(center)
    if center is None:
        center = (Fraction(0),) * n
    if isinstance(f, LocallyConstant) and f.is_zero:
        raise ValueError("zero function: the ratio is undefined")
    if f.field.kind is FieldKind.PADIC:
        out = _weighted_norms_padic(f, scale, center, n, budget)
    elif f.field.kind is FieldKind.REAL:
        out = _weighted_norms_real(f, scale, center, n, quad, budget)
    else:
        raise ValueError("norms are computed over R and Q_p")
    if out.rhs == 0:
        if out.lhs != 0:
            raise RuntimeError("rhs = 0 with lhs != 0: quadrature bug")
        raise ValueError("zero function: the ratio is undefined")
    return out


# ---------------------------------------------------------------------------
# the atomic-comb lower-bound experiment
# ---------------------------------------------------------------------------

def comb_ratio(n: int, N: int, quad: QuadratureSpec | None = None,
               budget: int = DEFAULT_ENUMERATION_BUDGET) -> float:
    """Norm ratio for the N-atom comb at scale delta = 1/N over R.

    |E_J f| and |E_O f| are periodic with period N^k in x_k, and the
    standard weight's transform vanishes at every nonzero frequency the
    periodization samples, so the weighted ratio over R^n equals the plain
    ratio over one period cell.  The quartic integrands are trigonometric
    polynomials with fewer than 2 N^k / N^k = 2 cycles per unit, so the
    midpoint rule at step <= 1/4 integrates them exactly.
    """
    if quad is None:
        quad = QuadratureSpec()
    step = float(quad.grid_step)
    per_axis = [int(round(N ** k / step)) for k in range(1, n + 1)]
    check_budget(math.prod(per_axis), budget, "comb period-cell grid")
    grids = [(np.arange(m) + 0.5) * step for m in per_axis]
    f = AtomicComb(REAL, N)
    scale = real_scale(N)
    shape = tuple(per_axis)
    factors = _real_extensions_on_grid(f, scale, grids)
    e_full = np.zeros(shape, dtype=complex)
    sq = np.zeros(shape, dtype=float)
    for J, fl in factors.items():
        if not fl:
            continue
        ej = _assemble(fl, shape)
        e_full += ej
        sq += np.abs(ej) ** 2
    lhs = float(np.mean(np.abs(e_full) ** (2 * n))) ** (1 / (2 * n))
    rhs = float(np.mean(sq ** n)) ** (1 / (2 * n))
    return lhs / rhs


# ---------------------------------------------------------------------------
# seeded test functions
# ---------------------------------------------------------------------------

def random_locally_constant(field: FieldSpec, precision: int, seed: int) -> LocallyConstant:
    """A reproducible random test function: complex standard normal cell
    values drawn from numpy's default (PCG64) generator with the given seed."""
    rng = np.random.default_rng(seed)
    count = field.prime ** precision if field.kind is FieldKind.PADIC else precision
    vals = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    return LocallyConstant(field, precision, tuple(complex(v) for v in vals))
