"""Dense univariate polynomial arithmetic over Fraction.

Polynomials are lists of Fractions in ascending order of degree; the zero
polynomial is the empty list.  Everything here is exact: Sturm sequences and
interval evaluation are the certification primitives for root isolation and
sign determination in `numfield`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]


def poly(coeffs: Iterable) -> Poly:
    """Build a normalized polynomial (trailing zeros stripped)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    qd, qlc = degree(q), q[-1]
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(r) >= len(q):
        c = r[-1] / qlc
        k = len(r) - len(q)
        quo[k] = c
        for i in range(len(q)):
            r[k + i] -= c * q[i]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return poly(quo), poly(r)


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    a, b = p, q
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) <= 0


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_interval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Certified enclosure of p([lo, hi]) by Horner in interval arithmetic."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        cand = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cand) + c, max(cand) + c
    return alo, ahi


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        seq.append(neg(rem(seq[-2], seq[-1])))
    return seq[:-1]


def _sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = []
    for q in seq:
        v = evaluate(q, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction, seq: list[Poly] | None = None) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi]."""
    if seq is None:
        seq = sturm_sequence(p)
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: all real roots lie in [-B, B]."""
    lc = abs(p[-1])
    return 1 + max((abs(c) for c in p[:-1]), default=Fraction(0)) / lc


def isolate_root_near(p: Poly, approx: Fraction, radius: Fraction) -> tuple[Fraction, Fraction]:
    """Isolating interval for the unique root of squarefree p within `radius`
    of `approx`.  Raises KeyError-style failures via count mismatches; callers
    wrap these in domain errors."""
    seq = sturm_sequence(p)
    lo, hi = approx - radius, approx + radius
    # widen zero-endpoint accidents
    while evaluate(p, lo) == 0:
        lo -= radius / 64
    while evaluate(p, hi) == 0:
        hi += radius / 64
    n = count_roots(p, lo, hi, seq)
    if n == 0:
        raise LookupError("no root in window")
    # bisect until exactly one root remains, preferring the half nearer approx
    while n > 1:
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            mid += (hi - lo) / 64
        left = count_roots(p, lo, mid, seq)
        right = n - left
        if left and right:
            # pick the side containing the point closest to approx
            if abs(approx - lo) <= abs(hi - approx):
                hi, n = mid, left
            else:
                lo, n = mid, right
        elif left:
            hi, n = mid, left
        else:
            lo, n = mid, right
    return refine_root(p, lo, hi, Fraction(1, 10**6))


def refine_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction,
                seq: list[Poly] | None = None) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of squarefree p below `width` by bisection."""
    flo = evaluate(p, lo)
    if flo == 0:
        raise ValueError("endpoint is a root; widen first")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = evaluate(p, mid)
        if fmid == 0:
            # nudge: mid is rational root; split just off it
            eps = (hi - lo) / 1024
            if (flo > 0) != (evaluate(p, mid - eps) > 0):
                lo, hi = lo, mid - eps
            else:
                lo, hi = mid - eps, mid + eps if evaluate(p, mid + eps) != 0 else hi
            continue
        if (flo > 0) != (fmid > 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return lo, hi


def from_string(text: str, var: str = "x") -> Poly:
    """Parse integer/rational coefficient lists like "[1,-2,-1,1]" (descending,
    leading first) into ascending order."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected a coefficient list, got {text!r}")
    parts = [s.strip() for s in text[1:-1].split(",") if s.strip()]
    return poly(reversed([Fraction(s) for s in parts]))
