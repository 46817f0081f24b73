"""Exact counting of integer solutions of the translation-dilation system.

J(N) counts the tuples (s_1, t_1, ..., s_n, t_n) in (Z intersect [1, N])^2n
with sum_i gamma(t_i) = sum_i gamma(s_i).  For the moment curve this is
sum_v m(v)^2 over the level sets m(v) = #{t : sum_i gamma(t_i) = v}, which
the hash join computes in N^n work instead of N^2n; the brute-force path
compares all pairs of tuples and is the oracle the fast paths are checked
against.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product

import numpy as np

from .budget import DEFAULT_COUNT_BUDGET, check_budget
from .curves import Curve


class CountMethod(Enum):
    HASH_JOIN = "hash_join"
    BRUTE_FORCE = "brute_force"
    PERMUTATION_FORMULA = "permutation_formula"


@dataclass(frozen=True)
class CountResult:
    n: int
    N: int
    count: int
    method: CountMethod
    elapsed: float

    def __post_init__(self):
        if not self.N ** self.n <= self.count <= self.N ** (2 * self.n):
            raise ValueError("count outside [N^n, N^2n]")


def diagonal_count(n: int, N: int) -> int:
    """The diagonal contribution N^n (t a reordering of itself, s = t)."""
    if N < 1:
        raise ValueError("N >= 1")
    return N ** n


def _partitions(n: int, largest: int | None = None):
    """Partitions of n as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def permutation_count(n: int, N: int) -> int:
    """sum over ordered s in [1,N]^n of the number of distinct reorderings
    of s, via multinomials over partition patterns (O(p(n)) work)."""
    if N < 1:
        raise ValueError("N >= 1")
    total = 0
    for lam in _partitions(n):
        r = len(lam)
        # #multisets with multiplicity pattern lam: choose r values ordered
        # by which part they take, unordered among equal part sizes
        mult_counts: dict[int, int] = {}
        for part in lam:
            mult_counts[part] = mult_counts.get(part, 0) + 1
        denom = math.prod(math.factorial(a) for a in mult_counts.values())
        multisets = math.perm(N, r) // denom
        orderings = math.factorial(n) // math.prod(math.factorial(p) for p in lam)
        total += multisets * orderings * orderings
    return total


def _moment_keys_int64(n: int, N: int, threads: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct packed power-sum keys with multiplicities over [1,N]^n.

    Packing: since the k-th component sum is below R_k = n*N^k + 1, the
    digits sum without carrying and the packed key of a tuple is the sum of
    a single per-point contribution phi(t) = sum_k t^k * prefix_k.
    """
    t = np.arange(1, N + 1, dtype=np.int64)
    phi = np.zeros(N, dtype=np.int64)
    prefix = 1
    power = np.ones(N, dtype=np.int64)
    for k in range(1, n + 1):
        power = power * t
        phi += prefix * power
        prefix *= n * N ** k + 1
    acc = phi.copy()
    for _ in range(n - 2):
        acc = np.add.outer(phi, acc).ravel()

    def shard(chunk: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        keys = np.add.outer(chunk, acc).ravel() if n >= 2 else chunk
        return np.unique(keys, return_counts=True)

    chunks = np.array_split(phi, max(1, min(threads * 4, N))) if n >= 2 else [phi]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(shard, chunks))
    else:
        parts = [shard(c) for c in chunks]
    keys = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts])
    order = np.argsort(keys, kind="stable")
    keys, counts = keys[order], counts[order]
    boundary = np.concatenate(([True], keys[1:] != keys[:-1]))
    starts = np.flatnonzero(boundary)
    merged = np.add.reduceat(counts, starts)
    return keys[starts], merged


def _hash_join_count(curve: Curve, n: int, N: int, threads: int, budget: int) -> int:
    check_budget(N ** n, budget, f"hash join over [1,{N}]^{n}")
    packed_max = 1
    for k in range(1, n + 1):
        packed_max *= n * N ** k + 1
    if curve.is_moment and packed_max < 2 ** 62:
        _, counts = _moment_keys_int64(n, N, threads)
        return int(np.dot(counts, counts))
    # big-integer fallback: exact for any N and any rational-coefficient curve
    freq: dict[tuple, int] = {}
    for t in product(range(1, N + 1), repeat=n):
        key = tuple(sum(curve.evaluate(x)[k] for x in t) for k in range(n))
        freq[key] = freq.get(key, 0) + 1
    return sum(m * m for m in freq.values())


def _brute_force_count(curve: Curve, n: int, N: int, budget: int) -> int:
    check_budget(N ** (2 * n), budget, f"brute force over [1,{N}]^{2 * n}")
    vectors = [tuple(sum(curve.evaluate(x)[k] for x in t) for k in range(n))
               for t in product(range(1, N + 1), repeat=n)]
    return sum(1 for a in vectors for b in vectors if a == b)


def count_solutions(curve: Curve, n: int, N: int,
                    method: CountMethod | None = None, threads: int = 1,
                    budget: int = DEFAULT_COUNT_BUDGET) -> CountResult:
    """Count J(N) exactly.  Non-moment curves go through BRUTE_FORCE only."""
    if N < 1:
        raise ValueError("N >= 1")
    if curve.n != n:
        raise ValueError("curve dimension does not match n")
    if method is None:
        method = CountMethod.HASH_JOIN if curve.is_moment else CountMethod.BRUTE_FORCE
    if method is CountMethod.PERMUTATION_FORMULA and not curve.is_moment:
        raise ValueError("the permutation formula is proven for the moment curve only")
    start = time.perf_counter()
    if method is CountMethod.HASH_JOIN:
        count = _hash_join_count(curve, n, N, threads, budget)
    elif method is CountMethod.BRUTE_FORCE:
        count = _brute_force_count(curve, n, N, budget)
    else:
        count = permutation_count(n, N)
    return CountResult(n=n, N=N, count=count, method=method,
                       elapsed=time.perf_counter() - start)


@dataclass(frozen=True)
class AsymptoticRow:
    N: int
    count: int
    leading: int          # n! * N^n
    residual: int         # n! * N^n - J(N), nonnegative for the moment curve
    residual_ratio: Fraction  # residual / N^(n-1)
    method: CountMethod


def asymptotic_report(n: int, N_list, threads: int = 1,
                      budget: int = DEFAULT_COUNT_BUDGET) -> list[AsymptoticRow]:
    """Tabulate J(N) against its leading term n! N^n over a list of N."""
    rows = []
    curve = Curve.moment(n)
    for N in N_list:
        if N ** n <= budget:
            res = count_solutions(curve, n, N, CountMethod.HASH_JOIN,
                                  threads=threads, budget=budget)
        else:
            res = count_solutions(curve, n, N, CountMethod.PERMUTATION_FORMULA)
        leading = math.factorial(n) * N ** n
        residual = leading - res.count
        rows.append(AsymptoticRow(
            N=N, count=res.count, leading=leading, residual=residual,
            residual_ratio=Fraction(residual, N ** (n - 1)), method=res.method,
        ))
    return rows
