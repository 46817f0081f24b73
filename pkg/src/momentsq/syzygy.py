"""Exact enumeration of the near-coincidence sets S(delta, I; eps).

For a base tuple I of partition cells, S(delta, I; eps) collects the cell
tuples J admitting points s in I, t in J with

    | sum_i ( gamma(t_i) - gamma(s_i) ) | <= eps,

for the moment curve gamma.  Over Q_p with eps = delta^n this condition is
a congruence: |x|_p <= p^{-ns} iff x = 0 mod p^{ns}, and t^k mod p^{ns}
depends only on t mod p^{ns}, so representatives at precision m = n*s
decide membership exactly.  Over R the decision is sampled on a rational
grid, which gives a sound lower approximation (every reported member has
an exact rational witness).

The p-adic engine enumerates all residue tuples mod p^{ns} once per
(p, n, s), grouping them by their power-sum vector; tuples sharing a group
are exactly the mutually related ones.  The index is cached, so scanning
every base tuple (the strong-diagonal experiment) costs one enumeration.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd as int_gcd

import numpy as np

from .budget import DEFAULT_ENUMERATION_BUDGET, BudgetExceededError, check_budget
from .curves import Curve
from .local_field import CellTuple, FieldKind, FieldSpec, cell_tuple
from . import bounds


class SyzygyMethod(Enum):
    CONGRUENCE_EXACT = "congruence_exact"
    PERMUTATION_ORACLE = "permutation_oracle"
    REAL_SAMPLED = "real_sampled"


@dataclass(frozen=True)
class SyzygyReport:
    base: CellTuple
    epsilon: Fraction
    members: tuple[CellTuple, ...]
    method: SyzygyMethod

    def __post_init__(self):
        if self.base not in self.members:
            raise ValueError("the base tuple must be a member (reflexivity)")

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def member_indices(self) -> list[tuple]:
        return [m.indices for m in self.members]


def syzygy_bound(field: FieldSpec, n: int) -> int:
    """The proven cardinality bound C_{K,n} * n^n."""
    if n < 2:
        raise ValueError("n >= 2")
    return bounds.field_constant(field, n) * n ** n


def permutation_predicate(base: CellTuple, other: CellTuple) -> bool:
    """True iff the two tuples agree as multisets of cells."""
    if base.field != other.field or base.scale != other.scale or base.n != other.n:
        raise ValueError("tuples must share field, scale and length")
    return sorted(base.indices) == sorted(other.indices)


def permutation_orbit(base: CellTuple) -> list[CellTuple]:
    """All distinct reorderings of a tuple, sorted by index vector."""
    seen = sorted(set(itertools.permutations(base.indices)))
    return [cell_tuple(base.field, base.scale, idx) for idx in seen]


def syzygy_set_oracle(base: CellTuple) -> SyzygyReport:
    """The permutation-oracle prediction for S(delta, I; delta^n): the
    distinct reorderings of the base tuple."""
    return SyzygyReport(
        base=base,
        epsilon=base.scale.delta ** base.n,
        members=tuple(permutation_orbit(base)),
        method=SyzygyMethod.PERMUTATION_ORACLE,
    )


# ---------------------------------------------------------------------------
# non-Archimedean engine
# ---------------------------------------------------------------------------

def _require_padic_moment(base: CellTuple, curve: Curve | None):
    if base.field.kind is not FieldKind.PADIC:
        raise ValueError("exact enumeration runs over Q_p")
    if curve is not None and not curve.is_moment:
        raise ValueError("the exact congruence path supports the moment curve only")
    if curve is not None and curve.n != base.n:
        raise ValueError("curve dimension does not match tuple length")


def _encode(indices, ncells: int) -> int:
    code = 0
    for i in reversed(indices):
        code = code * ncells + i
    return code


def _decode(code: int, ncells: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(code % ncells)
        code //= ncells
    return tuple(out)


@dataclass
class _KeyIndex:
    """All residue tuples mod q = p^{ns}, grouped by power-sum vector.

    keys:    sorted distinct packed power-sum vectors
    offsets: group boundaries into `tuples`
    tuples:  cell-tuple codes, grouped by key
    """

    p: int
    n: int
    s: int
    q: int
    ncells: int
    keys: np.ndarray
    offsets: np.ndarray
    tuples: np.ndarray


_INDEX_CACHE: dict[tuple[int, int, int], _KeyIndex] = {}


def _power_tables(p: int, n: int, s: int):
    q = p ** (n * s)
    r = np.arange(q, dtype=np.int64)
    tables = []
    acc = np.ones(q, dtype=np.int64)
    for _ in range(n):
        acc = (acc * r) % q
        tables.append(acc.copy())
    return q, tables


def _pack_keys(component_sums, q: int) -> np.ndarray:
    """Pack componentwise sums mod q into one integer, lowest power first."""
    key = np.zeros_like(component_sums[0])
    radix = 1
    for comp in component_sums:
        key = key + radix * (comp % q)
        radix *= q
    return key


def _build_key_index(p: int, n: int, s: int, threads: int = 1,
                     budget: int = DEFAULT_ENUMERATION_BUDGET) -> _KeyIndex:
    q = p ** (n * s)
    check_budget(q ** n, budget, f"enumeration of (Z/{q})^{n}")
    if q ** (n + 1) >= 2 ** 62:
        raise BudgetExceededError("packed keys would overflow 64-bit integers")
    ncells = p ** s
    _, tables = _power_tables(p, n, s)
    cell = (np.arange(q, dtype=np.int64) % ncells)

    # Sums and cell codes over the trailing n-1 coordinates, built once.
    # Power-sum keys are symmetric in the coordinates, so the pair set is
    # closed under coordinate permutation and any fixed axis->digit
    # assignment enumerates it; the one used here keeps each newly added
    # axis in the low digit.
    tails = [t.copy() for t in tables]
    tail_tup = cell.copy()
    for _ in range(n - 2):
        tails = [np.add.outer(t, tt).ravel() for t, tt in zip(tables, tails)]
        tail_tup = np.add.outer(cell, tail_tup * ncells).ravel()

    def slab(r1: int) -> np.ndarray:
        comps = [t[r1] + tt for t, tt in zip(tables, tails)]
        key = _pack_keys(comps, q)
        tup = cell[r1] + ncells * tail_tup
        return np.unique(tup * np.int64(q ** n) + key)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(slab, range(q)))
    else:
        chunks = [slab(r1) for r1 in range(q)]
    codes = np.unique(np.concatenate(chunks))
    del chunks

    key = codes % (q ** n)
    tup = codes // (q ** n)
    del codes
    order = np.argsort(key, kind="stable")
    key = key[order]
    tup = tup[order]
    boundary = np.flatnonzero(np.concatenate(([True], key[1:] != key[:-1])))
    keys = key[boundary]
    offsets = np.concatenate((boundary, [len(key)])).astype(np.int64)
    return _KeyIndex(p, n, s, q, ncells, keys, offsets, tup)


def _get_index(p: int, n: int, s: int, threads: int = 1,
               budget: int = DEFAULT_ENUMERATION_BUDGET) -> _KeyIndex:
    key = (p, n, s)
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = _build_key_index(p, n, s, threads=threads, budget=budget)
    return _INDEX_CACHE[key]


def clear_index_cache():
    _INDEX_CACHE.clear()


def _tuple_keys(indices, p: int, n: int, s: int,
                budget: int = DEFAULT_ENUMERATION_BUDGET) -> np.ndarray:
    """Sorted distinct packed power-sum vectors of all point tuples in a cell
    tuple, at precision n*s."""
    q = p ** (n * s)
    per_cell = p ** ((n - 1) * s)
    check_budget(per_cell ** n, budget, "per-tuple representative enumeration")
    ncells = p ** s
    _, tables = _power_tables(p, n, s)
    comps = None
    for idx in indices:
        reps = np.arange(idx, q, ncells, dtype=np.int64)
        cell_comps = [t[reps] for t in tables]
        if comps is None:
            comps = cell_comps
        else:
            comps = [np.add.outer(a, b).ravel() for a, b in zip(cell_comps, comps)]
    return np.unique(_pack_keys(comps, q))


def is_syzygy_nonarch(base: CellTuple, other: CellTuple, curve: Curve | None = None,
                      budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    """Exact membership test: do some s in I, t in J satisfy the congruence
    sum_i t_i^k = sum_i s_i^k mod p^{ns} for k = 1..n?

    Decided by meeting the two representative enumerations in the middle:
    hash the power-sum vectors from one side, probe with the other.
    """
    _require_padic_moment(base, curve)
    if base.field != other.field or base.scale != other.scale or base.n != other.n:
        raise ValueError("tuples must share field, scale and length")
    p, n, s = base.field.prime, base.n, base.scale.exponent
    kt = _tuple_keys(other.indices, p, n, s, budget=budget)
    ks = _tuple_keys(base.indices, p, n, s, budget=budget)
    return bool(np.intersect1d(kt, ks, assume_unique=True).size)


def _gather_groups(index: _KeyIndex, keys: np.ndarray) -> np.ndarray:
    """Union of the tuple groups attached to the given (present) keys."""
    pos = np.searchsorted(index.keys, keys)
    starts = index.offsets[pos]
    lengths = index.offsets[pos + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    out_idx = (np.arange(total, dtype=np.int64)
               - np.repeat(np.cumsum(lengths) - lengths, lengths)
               + np.repeat(starts, lengths))
    return np.unique(index.tuples[out_idx])


def syzygy_set_nonarch(base: CellTuple, curve: Curve | None = None,
                       threads: int = 1,
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> SyzygyReport:
    """Enumerate S(delta, I; delta^n) exactly over Q_p.

    Members are every tuple sharing a power-sum vector mod p^{ns} with the
    base, read off the cached global index; sorted by index vector.
    """
    _require_padic_moment(base, curve)
    p, n, s = base.field.prime, base.n, base.scale.exponent
    index = _get_index(p, n, s, threads=threads, budget=budget)
    keys = _tuple_keys(base.indices, p, n, s, budget=budget)
    member_codes = _gather_groups(index, keys)
    members = sorted(_decode(int(c), index.ncells, n) for c in member_codes)
    return SyzygyReport(
        base=base,
        epsilon=base.scale.delta ** n,
        members=tuple(cell_tuple(base.field, base.scale, m) for m in members),
        method=SyzygyMethod.CONGRUENCE_EXACT,
    )


@dataclass(frozen=True)
class StrongDiagonalScan:
    """Result of comparing S(delta, I; delta^n) with the permutation orbit
    for every base tuple I at one (p, n, s)."""

    p: int
    n: int
    s: int
    bases: int
    all_match_permutations: bool
    mismatches: tuple[tuple, ...]
    max_cardinality: int
    cardinalities: tuple[int, ...]  # indexed by encoded base tuple
    bound: int

    @property
    def within_bound(self) -> bool:
        return self.max_cardinality <= self.bound


def scan_strong_diagonal(p: int, n: int, s: int, threads: int = 1,
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> StrongDiagonalScan:
    """Enumerate S(delta, I; delta^n) for every I in P_delta^n and compare
    with the permutation oracle."""
    field = FieldSpec(FieldKind.PADIC, p)
    index = _get_index(p, n, s, threads=threads, budget=budget)
    ncells = index.ncells
    cards = []
    mismatches = []
    for code in range(ncells ** n):
        idx = _decode(code, ncells, n)
        keys = _tuple_keys(idx, p, n, s, budget=budget)
        member_codes = _gather_groups(index, keys)
        members = {_decode(int(c), ncells, n) for c in member_codes}
        oracle = set(itertools.permutations(idx))
        cards.append(len(members))
        if members != oracle:
            mismatches.append(idx)
    return StrongDiagonalScan(
        p=p, n=n, s=s,
        bases=ncells ** n,
        all_match_permutations=not mismatches,
        mismatches=tuple(mismatches),
        max_cardinality=max(cards),
        cardinalities=tuple(cards),
        bound=syzygy_bound(field, n),
    )


# ---------------------------------------------------------------------------
# real sampler
# ---------------------------------------------------------------------------

def syzygy_set_real(curve: Curve, base: CellTuple, epsilon: Fraction | None = None,
                    grid_step: Fraction | None = None,
                    budget: int = DEFAULT_ENUMERATION_BUDGET) -> SyzygyReport:
    """Sampled lower approximation of S(delta, I; eps) over R.

    Pairs (s, t) range over a rational grid of pitch grid_step inside the
    cells; a tuple J is reported iff some pair satisfies the max-norm bound
    |sum_i (gamma(t_i) - gamma(s_i))| <= eps.  Every reported member is a
    true member: its witness pair is re-verified in exact rational
    arithmetic before the report is returned.
    """
    if base.field.kind is not FieldKind.REAL:
        raise ValueError("the sampler runs over R")
    if curve.n != base.n:
        raise ValueError("curve dimension does not match tuple length")
    n = base.n
    delta = base.scale.delta
    ncells = delta.denominator
    if epsilon is None:
        epsilon = delta ** n
    epsilon = Fraction(epsilon)
    if grid_step is None:
        grid_step = delta / 8
    grid_step = Fraction(grid_step)
    if grid_step > delta / 8:
        raise ValueError("grid_step must be at most delta/8")
    per_cell = delta / grid_step
    if per_cell.denominator != 1 or grid_step.numerator != 1:
        raise ValueError("grid_step must divide delta with 1/grid_step an integer")
    per_cell = int(per_cell)
    G = grid_step.denominator  # grid points are a/G
    npts = ncells * per_cell
    check_budget(npts ** n * (per_cell ** n), budget, "real grid enumeration")

    # Clear denominators: coordinate k compares integers
    #   V_k(a) = gamma_k(a/G) * G^{d_k} * L_k   against   eps * G^{d_k} * L_k.
    degs = curve.degrees()
    lcms = []
    for coeffs in curve.coords:
        l = 1
        for c in coeffs:
            l = l * c.denominator // int_gcd(l, c.denominator)
        lcms.append(l)
    pts = np.arange(npts, dtype=np.int64)  # the grid point is pts/G
    for coeffs, lc, d in zip(curve.coords, lcms, degs):
        peak = sum(abs(c) for c in coeffs) * lc * G ** d * n
        if peak >= 2 ** 62:
            raise BudgetExceededError("rescaled grid values would overflow 64-bit integers")
    values = []
    thresholds = []
    for coeffs, d, lc in zip(curve.coords, degs, lcms):
        v = np.zeros(npts, dtype=np.int64)
        for j, c in enumerate(coeffs):
            v += int(Fraction(c) * lc * G ** (d - j)) * pts ** j
        values.append(v)
        thresholds.append(int(epsilon * lc * G ** d))
    cell_of = pts // per_cell

    # Coordinate sums over the product grid.  Each newly added axis becomes
    # the leading axis and the low cell digit, so the linear index reads
    # big-endian in the coordinates.
    sums = [v.copy() for v in values]
    codes = cell_of.copy()
    for _ in range(n - 1):
        sums = [np.add.outer(v, acc).ravel() for v, acc in zip(values, sums)]
        codes = np.add.outer(cell_of, codes * ncells).ravel()

    base_code = _encode(base.indices, ncells)
    base_pos = np.flatnonzero(codes == base_code)
    hits = np.abs(sums[0][:, None] - sums[0][base_pos][None, :]) <= thresholds[0]
    for v, thr in zip(sums[1:], thresholds[1:]):
        hits &= np.abs(v[:, None] - v[base_pos][None, :]) <= thr
    found: dict[int, tuple[int, int]] = {}
    for t_lin in np.flatnonzero(hits.any(axis=1)):
        code = int(codes[t_lin])
        if code not in found:
            s_lin = int(base_pos[int(np.argmax(hits[t_lin]))])
            found[code] = (int(t_lin), s_lin)

    members = []
    for code, (t_lin, s_lin) in sorted(found.items()):
        t_pt = [Fraction(a, G) for a in _grid_tuple(t_lin, npts, n)]
        s_pt = [Fraction(a, G) for a in _grid_tuple(s_lin, npts, n)]
        member = _decode(code, ncells, n)
        # exact re-check: the witness lies in its cells and satisfies the bound
        for t, j in zip(t_pt, member):
            if not j * delta <= t < (j + 1) * delta:
                raise RuntimeError("sampled witness left its cell")
        for s_val, i in zip(s_pt, base.indices):
            if not i * delta <= s_val < (i + 1) * delta:
                raise RuntimeError("sampled witness left its cell")
        for k in range(n):
            diff = (sum(curve.evaluate(t)[k] for t in t_pt)
                    - sum(curve.evaluate(s)[k] for s in s_pt))
            if abs(diff) > epsilon:
                raise RuntimeError("sampled witness failed the exact re-check")
        members.append(member)
    return SyzygyReport(
        base=base,
        epsilon=epsilon,
        members=tuple(cell_tuple(base.field, base.scale, m) for m in sorted(members)),
        method=SyzygyMethod.REAL_SAMPLED,
    )


def _grid_tuple(lin: int, npts: int, n: int) -> tuple[int, ...]:
    """Invert the outer-product linearization (big-endian: the leading axis
    is coordinate 0)."""
    out = []
    for _ in range(n):
        out.append(lin % npts)
        lin //= npts
    return tuple(reversed(out))
