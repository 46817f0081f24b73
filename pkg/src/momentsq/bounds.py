"""Every explicit constant of the estimates, as a computable function.

Covers the field constants C_{K,n}, the three headline bounds (the n^(1/2)
bound for the moment curve, the Bezout-degree bound for non-degenerate
polynomial curves, the fewnomial bound over R), the combinatorial
refinements of n^n, Lipschitz norms, and Wronskian non-degeneracy
certification.  Certification paths (Sturm counts, Lipschitz sups) are
exact rational arithmetic throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .curves import Curve
from .local_field import FieldKind, FieldSpec
from .polys import Poly


@dataclass(frozen=True)
class BoundReport:
    name: str
    parameters: dict
    value: float | int | Fraction
    formula: str

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError("bound values are positive")


def field_constant(field: FieldSpec, n: int) -> int:
    """C_{K,n}: 1 for non-Archimedean K; 7^n (n <= 6) / 5^n (n >= 7) over R,
    squared over C."""
    if n < 1:
        raise ValueError("n >= 1")
    if field.kind is FieldKind.PADIC:
        return 1
    base = 7 if n <= 6 else 5
    return base ** (n * field.eta)


def theorem1_constant(field: FieldSpec, n: int) -> float:
    """C_{K,n}^(1/2n) * n^(1/2): the moment-curve norm-ratio bound."""
    if n < 2:
        raise ValueError("n >= 2")
    return field_constant(field, n) ** (1 / (2 * n)) * math.sqrt(n)


def lipschitz_norm(curve: Curve, field: FieldSpec | None = None) -> Fraction:
    """The Lipschitz norm sup_i sup_{s != t} |gamma_i(t) - gamma_i(s)| / |t - s|.

    Over R ([0,1], the default) this is sup_i sup |gamma_i'|, computed by
    exact critical-point isolation; the value is exact when the sup sits at
    an endpoint or rational critical point, else a certified upper bound
    within 1e-9.  Over C the cheap upper bound (sum of |coefficients|) *
    degree per coordinate is used; it only enlarges downstream constants.
    """
    if field is not None and field.kind is FieldKind.COMPLEX:
        best = Fraction(0)
        for coeffs in curve.coords:
            if polys.degree(coeffs) >= 1:
                best = max(best, sum(abs(c) for c in coeffs) * polys.degree(coeffs))
        return best
    if field is not None and field.kind is FieldKind.PADIC:
        raise ValueError("Lipschitz norms are computed for Archimedean fields")
    best = Fraction(0)
    for coeffs in curve.coords:
        best = max(best, polys.sup_abs_unit_interval(polys.derivative(coeffs)))
    return best


def _ceil_lipschitz(curve: Curve, field: FieldSpec) -> int:
    return math.ceil(lipschitz_norm(curve, field if field.kind is FieldKind.COMPLEX else None))


def bezout_constant(curve: Curve, field: FieldSpec) -> float:
    """(2*ceil(l) + 1)^(eta/2) * (prod_i deg gamma_i)^(1/2n) for a
    non-degenerate polynomial curve over R or C."""
    if field.kind is FieldKind.PADIC:
        raise ValueError("the Bezout bound applies over R and C")
    if not nondegenerate(curve):
        raise ValueError("curve is degenerate (vanishing Wronskian on [0, 1])")
    n = curve.n
    ell = _ceil_lipschitz(curve, field)
    prod_deg = math.prod(curve.degrees())
    return (2 * ell + 1) ** (field.eta / 2) * prod_deg ** (1 / (2 * n))


def bezout_syzygy_bound(curve: Curve, field: FieldSpec) -> int:
    """The cardinality-level form (2*ceil(l) + 1)^(n*eta) * prod_i deg gamma_i."""
    if field.kind is FieldKind.PADIC:
        raise ValueError("the Bezout bound applies over R and C")
    if not nondegenerate(curve):
        raise ValueError("curve is degenerate (vanishing Wronskian on [0, 1])")
    n = curve.n
    ell = _ceil_lipschitz(curve, field)
    return (2 * ell + 1) ** (n * field.eta) * math.prod(curve.degrees())


def fewnomial_constant(curve: Curve) -> float:
    """(2*ceil(l) + 1)^(1/2) * (2^(M(M-1)/2) * (n+1)^M)^(1/2n) over R, with M
    the total monomial count of the curve."""
    n = curve.n
    m = curve.monomial_count()
    ell = _ceil_lipschitz(curve, FieldSpec(FieldKind.REAL))
    return (2 * ell + 1) ** 0.5 * (2 ** (m * (m - 1) // 2) * (n + 1) ** m) ** (1 / (2 * n))


def fewnomial_syzygy_bound(curve: Curve) -> int:
    n = curve.n
    m = curve.monomial_count()
    ell = _ceil_lipschitz(curve, FieldSpec(FieldKind.REAL))
    return (2 * ell + 1) ** n * 2 ** (m * (m - 1) // 2) * (n + 1) ** m


def factorial_variant_constant(field: FieldSpec, n: int) -> float:
    """(5^(eta*n) * n!)^(1/2n): the sharper Archimedean variant of the
    norm-ratio bound.  Exposed as a computed constant only; no independent
    cardinality enumeration backs it."""
    if field.kind is FieldKind.PADIC:
        raise ValueError("the factorial variant is stated for R and C")
    if n < 2:
        raise ValueError("n >= 2")
    return (5 ** (field.eta * n) * math.factorial(n)) ** (1 / (2 * n))


def falling_factorial(n: int, m: int) -> int:
    out = 1
    for k in range(m):
        out *= n - k
    return out


def diagonal_refinement_max(n: int) -> int:
    """max over m = 1..n of n(n-1)...(n-m+1) * m^(n-m)."""
    if n < 2:
        raise ValueError("n >= 2")
    return max(falling_factorial(n, m) * m ** (n - m) for m in range(1, n + 1))


def refined_diagonal_bound(n: int) -> int:
    """The combinatorial refinement of n^n.

    For n = 2 and 3 the diagonal patterns can be counted exactly and the
    bound collapses to n!; the max-formula is weaker there (12 at n = 3).
    From n = 4 on the max-formula is the best this method gives, and it
    exceeds n!.
    """
    if n < 2:
        raise ValueError("n >= 2")
    if n <= 3:
        return math.factorial(n)
    return diagonal_refinement_max(n)


def stirling2(n: int, m: int) -> int:
    """Stirling numbers of the second kind S(n, m)."""
    if m < 0 or m > n:
        return 0
    row = [1] + [0] * n
    for i in range(1, n + 1):
        new = [0] * (n + 1)
        for j in range(1, i + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[m]


def stirling_variant(n: int) -> int:
    """sum over m of S(n, m) * n(n-1)...(n-m+1).

    This reading of the Stirling-number refinement collapses to n^n
    identically (it counts all maps of an n-set to itself by image size),
    so it refines nothing; kept as the documented interpretation.
    """
    if n < 2:
        raise ValueError("n >= 2")
    return sum(stirling2(n, m) * falling_factorial(n, m) for m in range(1, n + 1))


def wronskian(curve: Curve) -> Poly:
    """det(gamma'(t), gamma''(t), ..., gamma^(n)(t)) as an exact polynomial."""
    n = curve.n
    matrix = []
    for coeffs in curve.coords:
        row = []
        d = coeffs
        for _ in range(n):
            d = polys.derivative(d)
            row.append(d)
        matrix.append(row)
    return _poly_det(matrix)


def _poly_det(matrix: list[list[Poly]]) -> Poly:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    det: Poly = polys.ZERO
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = polys.mul(matrix[0][j], _poly_det(minor))
        det = polys.add(det, term) if j % 2 == 0 else polys.sub(det, term)
    return det


def nondegenerate(curve: Curve) -> bool:
    """True iff the Wronskian has no zero on [0, 1], decided by Sturm counts."""
    w = wronskian(curve)
    if not w:
        return False
    if polys.evaluate(w, 0) == 0 or polys.evaluate(w, 1) == 0:
        return False
    return polys.count_roots_open(w, 0, 1) == 0


def bounds_table(table: str, field: FieldSpec, n_max: int) -> list[BoundReport]:
    """Rows for the CLI tables, n = 2..n_max."""
    rows = []
    for n in range(2, n_max + 1):
        if table == "theorem1":
            rows.append(BoundReport(
                name="theorem1",
                parameters={"field": str(field), "n": n},
                value=theorem1_constant(field, n),
                formula=f"{field_constant(field, n)}^(1/{2 * n})*sqrt({n})",
            ))
        elif table == "bezout":
            curve = Curve.moment(n)
            ell = _ceil_lipschitz(curve, field)
            rows.append(BoundReport(
                name="bezout",
                parameters={"field": str(field), "n": n, "curve": "moment"},
                value=bezout_constant(curve, field),
                formula=f"(2*{ell}+1)^({field.eta}/2)*{math.prod(curve.degrees())}^(1/{2 * n})",
            ))
        elif table == "fewnomial":
            curve = Curve.moment(n)
            m = curve.monomial_count()
            rows.append(BoundReport(
                name="fewnomial",
                parameters={"n": n, "curve": "moment", "monomials": m},
                value=fewnomial_constant(curve),
                formula=f"(2*ceil(l)+1)^(1/2)*(2^{m * (m - 1) // 2}*{n + 1}^{m})^(1/{2 * n})",
            ))
        elif table == "refined":
            rows.append(BoundReport(
                name="refined_diagonal",
                parameters={"n": n},
                value=refined_diagonal_bound(n),
                formula="max_m n!/(n-m)! * m^(n-m), n! exactly for n <= 3",
            ))
        elif table == "wronskian":
            w = wronskian(Curve.moment(n))
            rows.append(BoundReport(
                name="moment_wronskian",
                parameters={"n": n},
                value=abs(polys.evaluate(w, 0)),
                formula="det(gamma', ..., gamma^(n)), constant for the moment curve",
            ))
        else:
            raise ValueError(f"unknown table {table!r}")
    return rows
