"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of Fractions, little-endian: index = power of T.
Everything here is exact; Sturm sequences give certified root counts for
the non-degeneracy and Lipschitz certifications, with no floating point
anywhere in a decision path.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(coeffs) -> Poly:
    """Build a normalized polynomial (trailing zeros stripped)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def monomial(power: int, coeff=1) -> Poly:
    if coeff == 0:
        return ZERO
    return tuple([Fraction(0)] * power + [Fraction(coeff)])


def degree(f: Poly) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def add(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return poly(out)


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(a * c for a in f)


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly(out)


def evaluate(f: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Poly) -> Poly:
    return poly(c * k for k, c in enumerate(f) if k >= 1)


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    r = list(f)
    dg, lead = degree(g), g[-1]
    while len(r) >= len(g) and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        k = len(r) - len(g)
        c = r[-1] / lead
        q[k] += c
        for i, b in enumerate(g):
            r[i + k] -= c * b
        r.pop()
    return poly(q), poly(r)


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    while g:
        f, g = g, divmod_poly(f, g)[1]
    if not f:
        return ZERO
    return scale(f, 1 / f[-1])


def squarefree_part(f: Poly) -> Poly:
    if degree(f) <= 0:
        return f
    g = gcd_poly(f, derivative(f))
    if degree(g) <= 0:
        return f
    return divmod_poly(f, g)[0]


def sturm_sequence(f: Poly) -> list[Poly]:
    chain = [f, derivative(f)]
    while chain[-1]:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        chain.append(neg(rem))
    chain.pop()
    return chain


def _sign_variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _deflate(f: Poly, root) -> Poly:
    """Divide out (T - root); requires f(root) == 0."""
    root = Fraction(root)
    # synthetic division, highest power first
    coeffs = list(reversed(f))
    cur = coeffs[0]
    res = [cur]
    for c in coeffs[1:]:
        cur = c + cur * root
        res.append(cur)
    if res[-1] != 0:
        raise ValueError("not a root")
    return poly(reversed(res[:-1]))


def count_roots_open(f: Poly, a, b) -> int:
    """Number of distinct real roots of f in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        return 0
    f = squarefree_part(f)
    while f and evaluate(f, a) == 0:
        f = _deflate(f, a)
    while f and evaluate(f, b) == 0:
        f = _deflate(f, b)
    if degree(f) <= 0:
        return 0
    chain = sturm_sequence(f)
    va = _sign_variations([evaluate(g, a) for g in chain])
    vb = _sign_variations([evaluate(g, b) for g in chain])
    return va - vb


def isolate_roots(f: Poly, a, b, max_width=Fraction(1, 2 ** 20)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals inside (a, b), each holding one distinct root of f.

    Returned intervals are either exact ([r, r] with f(r) = 0) or open
    isolating intervals narrower than max_width.
    """
    a, b = Fraction(a), Fraction(b)
    fs = squarefree_part(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots_open(fs, lo, hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= max_width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(fs, mid) == 0:
            out.append((mid, mid))
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def _rational_root_in(f: Poly, lo: Fraction, hi: Fraction) -> Fraction | None:
    """Try the rational-root candidates of f inside [lo, hi]; None if absent.

    Skipped (returns None) when the cleared integer coefficients are too
    large to factor cheaply.
    """
    if not f:
        return None
    den = 1
    for c in f:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    k = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        k += 1
    if k and lo <= 0 <= hi:
        return Fraction(0)
    if not ints:
        return None
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10 ** 6 or an > 10 ** 6:
        return None

    def divisors(m):
        ds = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                ds.append(d)
                ds.append(m // d)
            d += 1
        return ds

    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if lo <= cand <= hi and evaluate(f, cand) == 0:
                    return cand
    return None


def sup_abs_unit_interval(f: Poly, tol=Fraction(1, 10 ** 9)) -> Fraction:
    """Certified upper bound for sup of |f| on [0, 1].

    Exact when the sup is attained at an endpoint or at a rational
    critical point; otherwise within tol of the true sup.
    """
    if degree(f) <= 0:
        return abs(f[0]) if f else Fraction(0)
    best = max(abs(evaluate(f, 0)), abs(evaluate(f, 1)))
    fp = derivative(f)
    slope = sum(abs(c) for c in fp)  # bounds |f'| on [0, 1]
    if slope == 0:
        return best
    width = tol / (2 * slope)
    for lo, hi in isolate_roots(fp, 0, 1, max_width=width):
        if lo == hi:
            best = max(best, abs(evaluate(f, lo)))
            continue
        r = _rational_root_in(fp, lo, hi)
        if r is not None:
            best = max(best, abs(evaluate(f, r)))
            continue
        cand = max(abs(evaluate(f, lo)), abs(evaluate(f, hi))) + slope * (hi - lo)
        best = max(best, cand)
    return best
