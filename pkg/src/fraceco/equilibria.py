"""Stationary points of the dimensionless predator-prey systems.

Everything is closed form except the full-coexistence point of the
three-species system, whose prey density is the positive root of a cubic.
Degenerate parameter combinations never raise; the affected point is
returned with ``feasible=False`` and a short diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .models import Params2, Params3, rhs2, rhs3
from .polyroots import cubic_roots

__all__ = ["EquilibriumPoint", "equilibria2", "equilibria3", "solve_e5", "e5_cubic_coeffs", "residual"]

_NEG_TOL = 1e-12


@dataclass(frozen=True)
class EquilibriumPoint:
    label: str
    coords: tuple[float, ...]
    feasible: bool
    aux: dict = field(default_factory=dict)
    diagnostic: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "coords": list(self.coords),
            "feasible": self.feasible,
            "aux": dict(self.aux),
            "diagnostic": self.diagnostic,
        }


def _point(label, coords, aux=None, diagnostic="") -> EquilibriumPoint:
    coords = tuple(float(c) for c in coords)
    ok = all(math.isfinite(c) for c in coords)
    feasible = ok and all(c >= -_NEG_TOL for c in coords)
    if feasible:
        # clamp rounding noise on boundary points
        coords = tuple(max(c, 0.0) for c in coords)
    elif not diagnostic:
        diagnostic = "non-finite coordinate" if not ok else "negative coordinate"
    return EquilibriumPoint(label, coords, feasible, dict(aux or {}), diagnostic)


def _nan_point(label, dim, aux, diagnostic) -> EquilibriumPoint:
    return EquilibriumPoint(label, (math.nan,) * dim, False, aux, diagnostic)


def equilibria2(p: Params2) -> list[EquilibriumPoint]:
    """E1 (extinction), E2 (prey only), E3 (coexistence) of the two-species system."""
    pts = [
        _point("E1", (0.0, 0.0)),
        _point("E2", (1.0 - p.eps1 / p.rho, 0.0)),
    ]
    denom = p.psi - p.phi * (1.0 + p.eps2)
    if denom <= 0:
        pts.append(
            _nan_point("E3", 2, {}, "psi <= phi*(1+eps2): no positive prey density")
        )
    else:
        omega = (1.0 + p.eps2) / denom
        pts.append(_point("E3", (omega, p.rho * (1.0 - omega) - p.eps1), {"omega": omega}))
    return pts


def e5_cubic_coeffs(p: Params3) -> tuple[float, float, float, float]:
    """Coefficients (highest first) of the cubic whose roots are E5's prey density.

    Clearing denominators in the prey balance at full coexistence gives
    ``rho w^3 - (rho - eps1 + eta) w^2 + c (phi phi1 w^2 + (phi + phi1) w + 1)``
    with ``c = eps2 eps3 / (beta psi)``.
    """
    c = p.eps2 * p.eps3 / (p.beta * p.psi)
    return (
        p.rho,
        -(p.rho - p.eps1 + p.eta) + c * p.phi * p.phi1,
        c * (p.phi + p.phi1),
        c,
    )


def _e5_fixed_point_residual(p: Params3, w: float) -> float:
    gg1 = p.eps2 * p.eps3 * (1 + p.phi * w) * (1 + p.phi1 * w) / (p.beta * p.psi * w * w)
    return w - (1.0 - (gg1 + p.eps1 - p.eta) / p.rho)


def solve_e5(p: Params3) -> list[float]:
    """Positive real prey densities of the full-coexistence point, ascending."""
    c3, c2, c1, c0 = e5_cubic_coeffs(p)
    roots = cubic_roots(c2 / c3, c1 / c3, c0 / c3)
    out = []
    for r in roots:
        if isinstance(r, complex) or r <= 0:
            continue
        res = abs(_e5_fixed_point_residual(p, r))
        if res > 1e-10 * max(1.0, r):
            continue
        out.append(float(r))
    return sorted(out)


def equilibria3(p: Params3) -> list[EquilibriumPoint]:
    """E1..E5 of the three-species system (E5 may appear 0, 1 or 2 times)."""
    pts = [
        _point("E1", (0.0, 0.0, 0.0)),
        _point("E2", (1.0 - p.eps1 / p.rho, 0.0, 0.0)),
    ]

    d3 = p.psi - p.eps2 * p.phi
    if d3 == 0:
        pts.append(_nan_point("E3", 3, {}, "psi == eps2*phi"))
    else:
        w = p.eps2 / d3
        g = p.rho * (1.0 - w) - p.eps1
        pts.append(_point("E3", (w, g, 0.0), {"omega": w, "gamma": g}))

    d4 = p.eta * p.beta - p.phi1 * p.eps3
    if d4 == 0:
        pts.append(_nan_point("E4", 3, {}, "eta*beta == phi1*eps3"))
    else:
        w = p.eps3 / d4
        g = p.rho * (1.0 - w) - p.eps1
        pts.append(_point("E4", (w, 0.0, g / p.eta), {"omega": w, "gamma": g}))

    roots = solve_e5(p)
    if not roots:
        pts.append(_nan_point("E5", 3, {}, "no positive real root of the coexistence cubic"))
    for w in roots:
        gamma = p.eps3 * (1.0 + p.phi1 * w) / (p.beta * w)
        gamma1 = p.eps2 * (1.0 + p.phi * w) / (p.psi * w)
        omega1 = 1.0 - (gamma * gamma1 + p.eps1 - p.eta) / p.rho
        aux = {"omega": w, "gamma": gamma, "gamma1": gamma1, "omega1": omega1}
        pts.append(_point("E5", (w, gamma - p.eta, gamma1 - 1.0), aux))
    return pts


def residual(p: Params2 | Params3, point: EquilibriumPoint) -> float:
    """Max-norm of the right-hand side at ``point``."""
    f = rhs2 if isinstance(p, Params2) else rhs3
    return float(np.max(np.abs(f(p, point.coords))))
