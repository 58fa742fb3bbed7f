"""Quick built-in oracle checks, run by ``fraceco validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..equilibria import equilibria2, equilibria3, residual
from ..fraccalc import TimeGrid, caputo_derivative_of_samples, mittag_leffler, solve_caputo_ivp
from ..models import Params2, Params3, rhs2, rhs3
from ..polyroots import cubic_roots
from ..stability import jacobian2, jacobian3

DAMPED = Params2(rho=1.0, psi=19.0, phi=2.0, eps1=0.4, eps2=1.0)
MUTUALIST = Params3(rho=0.61, psi=1.0, beta=7.0, eta=0.01, phi=1.4, phi1=0.02, eps1=0.12, eps2=0.43, eps3=0.06)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _ml_half() -> Check:
    # E_{1/2}(x) = exp(x^2) erfc(-x)
    xs = np.linspace(-3.0, 2.0, 11)
    ref = [math.exp(x * x) * math.erfc(-x) for x in xs]
    err = max(abs(mittag_leffler(0.5, x) - r) / r for x, r in zip(xs, ref))
    return Check("mittag-leffler E_1/2 vs erfc", err < 1e-12, f"max rel err {err:.2e}")


def _relaxation(alpha: float) -> Check:
    grid = TimeGrid(0.0, 2e-3, 1000)
    traj = solve_caputo_ivp(lambda t, y: -y, alpha, [1.0], grid)
    t = traj.times
    exact = np.exp(-t) if alpha == 1 else mittag_leffler(alpha, -(t**alpha))
    err = float(np.max(np.abs(traj.states[:, 0] - exact) / np.abs(exact)))
    tol = 1e-5 if alpha == 1 else 1e-3
    return Check(f"relaxation D^{alpha:g} x = -x", err < tol, f"max rel err {err:.2e}")


def _caputo_square() -> Check:
    grid = TimeGrid(0.0, 1e-3, 1000)
    d = caputo_derivative_of_samples(grid.times() ** 2, 0.5, grid)[-1]
    exact = math.gamma(3.0) / math.gamma(2.5)
    err = abs(d - exact) / exact
    return Check("caputo D^0.5 t^2 at t=1", err < 1e-3, f"rel err {err:.2e}")


def _cubics() -> Check:
    rng = np.random.default_rng(7)
    worst = 0.0
    for a, b, c in rng.uniform(-5, 5, size=(200, 3)):
        ours = np.sort_complex(np.array(cubic_roots(a, b, c), dtype=complex))
        ref = np.sort_complex(np.roots([1.0, a, b, c]))
        worst = max(worst, float(np.max(np.abs(ours - ref))))
    return Check("cubic roots vs companion matrix", worst < 1e-6, f"max diff {worst:.2e}")


def _fd_jacobian(f: Callable, x, step=1e-6) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = step
        cols.append((f(x + e) - f(x - e)) / (2 * step))
    return np.column_stack(cols)


def _jacobians() -> Check:
    worst = 0.0
    for p, eqs, rhs, jac in (
        (DAMPED, equilibria2(DAMPED), rhs2, jacobian2),
        (MUTUALIST, equilibria3(MUTUALIST), rhs3, jacobian3),
    ):
        for pt in eqs:
            if not pt.feasible:
                continue
            fd = _fd_jacobian(lambda y: rhs(p, y), pt.coords)
            worst = max(worst, float(np.max(np.abs(jac(p, pt.coords) - fd))))
    return Check("analytic vs finite-difference Jacobians", worst < 1e-6, f"max diff {worst:.2e}")


def _residuals() -> Check:
    worst = 0.0
    for p, eqs in ((DAMPED, equilibria2(DAMPED)), (MUTUALIST, equilibria3(MUTUALIST))):
        worst = max([worst] + [residual(p, pt) for pt in eqs if pt.feasible])
    return Check("equilibrium residuals", worst <= 1e-10, f"max |f| {worst:.2e}")


CHECKS = (
    _ml_half,
    lambda: _relaxation(0.8),
    lambda: _relaxation(1.0),
    _caputo_square,
    _cubics,
    _jacobians,
    _residuals,
)


def run_checks() -> list[Check]:
    return [check() for check in CHECKS]
