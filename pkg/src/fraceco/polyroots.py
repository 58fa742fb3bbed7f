"""Closed-form roots of monic real polynomials of degree 1-3."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["quadratic_roots", "cubic_roots", "monic_roots", "poly_eval"]


def _cbrt(x: float) -> float:
    return float(np.cbrt(x))


def poly_eval(coeffs, z):
    """Evaluate ``z**n + a1 z**(n-1) + ... + an`` for ``coeffs = (a1, ..., an)``."""
    acc = 1.0
    for a in coeffs:
        acc = acc * z + a
    return acc


def _poly_deriv(coeffs, z):
    n = len(coeffs)
    acc = float(n)
    for i, a in enumerate(coeffs[:-1]):
        acc = acc * z + (n - 1 - i) * a
    return acc


def _polish(coeffs, z, iters: int = 3):
    """Newton steps that are kept only while the residual decreases."""
    best = z
    best_res = abs(poly_eval(coeffs, z))
    for _ in range(iters):
        d = _poly_deriv(coeffs, best)
        if d == 0:
            break
        cand = best - poly_eval(coeffs, best) / d
        if isinstance(best, float):
            cand = float(cand.real) if isinstance(cand, complex) else cand
        res = abs(poly_eval(coeffs, cand))
        if res >= best_res:
            break
        best, best_res = cand, res
    return best


def quadratic_roots(b: float, c: float) -> list:
    """Roots of ``z**2 + b z + c``; real roots are returned as floats."""
    disc = b * b - 4.0 * c
    if disc >= 0:
        sq = math.sqrt(disc)
        # avoid cancellation: q = -(b + sign(b) sq)/2, roots q and c/q
        q = -0.5 * (b + math.copysign(sq, b))
        if q == 0.0:
            return [0.0, 0.0]
        r1, r2 = q, c / q
        return sorted([r1, r2])
    sq = math.sqrt(-disc)
    re = -0.5 * b
    im = 0.5 * sq
    return [complex(re, -im), complex(re, im)]


def cubic_roots(a: float, b: float, c: float) -> list:
    """Roots of ``z**3 + a z**2 + b z + c``.

    Trigonometric form when all three roots are real, Cardano otherwise.
    Real roots come back as floats (ascending), followed by any conjugate
    pair as complex numbers.
    """
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if p == 0.0 and q == 0.0:
        roots = [-shift] * 3
    elif disc < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]
    else:
        sq = math.sqrt(disc)
        u = _cbrt(-q / 2.0 - math.copysign(sq, q))
        v = -p / (3.0 * u) if u != 0.0 else _cbrt(-q)
        t1 = u + v
        re = -0.5 * t1 - shift
        im = 0.5 * math.sqrt(3.0) * (u - v)
        if im == 0.0:
            roots = [t1 - shift, re, re]
        else:
            real = _polish((a, b, c), t1 - shift)
            # deflate by the real root for the pair
            bq = a + real
            cq = b + real * bq
            pair = quadratic_roots(bq, cq)
            if all(isinstance(r, complex) for r in pair):
                return [real] + [_polish((a, b, c), r) for r in pair]
            roots = [real] + list(pair)
    roots = [_polish((a, b, c), float(r)) for r in roots]
    return sorted(roots)


def monic_roots(coeffs) -> list:
    """Roots of the monic polynomial with lower coefficients ``coeffs``."""
    coeffs = tuple(float(a) for a in coeffs)
    n = len(coeffs)
    if n == 1:
        return [-coeffs[0]]
    if n == 2:
        return quadratic_roots(*coeffs)
    if n == 3:
        return cubic_roots(*coeffs)
    raise ValueError(f"degree {n} not supported (1-3 only)")
