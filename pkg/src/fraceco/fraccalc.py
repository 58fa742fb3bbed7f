"""Fractional-calculus numerics: gamma, Mittag-Leffler, Caputo quadrature and
a Caputo initial-value solver.

All derivatives are of Caputo type with order ``0 < alpha <= 1``; ``alpha = 1``
is the ordinary first derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

__all__ = [
    "NonFiniteStateError",
    "TimeGrid",
    "Trajectory",
    "frac_order",
    "gamma_fn",
    "mittag_leffler",
    "caputo_derivative_of_samples",
    "solve_caputo_ivp",
]

ML_MAX_ABS_ARG = 40.0
_ML_REL_TOL = 1e-15
_ML_MAX_TERMS = 20_000
# accept the double-precision sum when its estimated relative error is below this
_ML_DOUBLE_REL_ERR = 1e-13
_ML_MAX_DIGITS = 400


class NonFiniteStateError(FloatingPointError):
    """Raised when an integration produces NaN or inf."""

    def __init__(self, step: int, time: float):
        super().__init__(f"non-finite state at step {step} (t = {time:.17g})")
        self.step = step
        self.time = time


def frac_order(alpha: float, *, allow_one: bool = True) -> float:
    """Validate a fractional order and return it as a float."""
    alpha = float(alpha)
    upper_ok = alpha <= 1.0 if allow_one else alpha < 1.0
    if not (alpha > 0.0 and upper_ok):
        bound = "(0, 1]" if allow_one else "(0, 1)"
        raise ValueError(f"fractional order must lie in {bound}, got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class TimeGrid:
    t0: float
    h: float
    n_steps: int

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"step size must be positive and finite, got {self.h!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "h", float(self.h))

    @classmethod
    def from_span(cls, t0: float, t_end: float, h: float) -> "TimeGrid":
        """Uniform grid on ``[t0, t_end]``; ``t_end - t0`` must be a multiple of ``h``."""
        n = round((t_end - t0) / h)
        if n < 1 or not math.isclose(t0 + n * h, t_end, rel_tol=1e-9, abs_tol=1e-12):
            raise ValueError(f"span [{t0}, {t_end}] is not a positive multiple of h={h}")
        return cls(t0, h, n)

    @property
    def t_end(self) -> float:
        return self.t0 + self.n_steps * self.h

    def times(self) -> np.ndarray:
        # t0 + i*h, never a running sum
        return self.t0 + self.h * np.arange(self.n_steps + 1, dtype=float)

    def time(self, i: int) -> float:
        return self.t0 + i * self.h


@dataclass(frozen=True)
class Trajectory:
    grid: TimeGrid
    states: np.ndarray

    def __post_init__(self):
        states = np.asarray(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] != self.grid.n_steps + 1:
            raise ValueError(
                f"states must have shape ({self.grid.n_steps + 1}, dim), got {states.shape}"
            )
        if not np.all(np.isfinite(states)):
            raise ValueError("trajectory contains non-finite entries")
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.grid.times()

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def gamma_fn(x: float) -> float:
    """Gamma function; raises ``ValueError`` at the poles 0, -1, -2, ..."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise ValueError(f"gamma function has a pole at {x!r}")
    return math.gamma(x)


def _recip_gamma(x: float) -> float:
    if x <= 0 and x == math.floor(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _ml_log_peak(alpha: float, beta: float, log_abs_x: float) -> float:
    """log of the largest series term magnitude (scan up to the decay point)."""
    peak = -math.inf
    for k in range(_ML_MAX_TERMS):
        arg = k * alpha + beta
        if arg <= 0.0:
            continue
        lm = k * log_abs_x - math.lgamma(arg)
        if lm > peak:
            peak = lm
        elif lm < peak - 40.0:
            break
    return peak


def _ml_series_double(alpha: float, beta: float, x: float) -> tuple[float, float]:
    """Double-precision sum and an estimate of its relative rounding error."""
    log_abs_x = math.log(abs(x))
    negative = x < 0
    terms = []
    partial = 0.0
    prev_mag = math.inf
    for k in range(_ML_MAX_TERMS):
        arg = k * alpha + beta
        if arg == 0.0:
            term = 0.0  # 1/Gamma(0)
        else:
            log_mag = k * log_abs_x - math.lgamma(arg)
            if log_mag > 709.0:
                raise OverflowError(
                    f"Mittag-Leffler series terms overflow for alpha={alpha}, x={x}"
                )
            term = math.exp(log_mag)
            if negative and k % 2:
                term = -term
        terms.append(term)
        partial += term
        mag = abs(term)
        if k > 0 and mag <= prev_mag and mag < _ML_REL_TOL * (1.0 + abs(partial)):
            total = math.fsum(terms)
            scale = math.fsum(abs(t) for t in terms)
            rel = 4e-16 * scale / abs(total) if total != 0 else math.inf
            return total, rel
        prev_mag = mag
    raise ArithmeticError(f"Mittag-Leffler series did not converge for x={x}")


def _ml_series_mp(alpha: float, beta: float, x: float, digits: int) -> float:
    with mpmath.workdps(digits):
        a, b, z = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(x)
        tol = mpmath.mpf(10) ** (-digits)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        prev = mpmath.inf
        for k in range(_ML_MAX_TERMS):
            term = power * mpmath.rgamma(k * a + b)
            total += term
            mag = abs(term)
            if k > 0 and mag <= prev and mag < tol * (1 + abs(total)):
                return float(total)
            prev = mag
            power *= z
    raise ArithmeticError(f"Mittag-Leffler series did not converge for x={x}")


def _ml_scalar(alpha: float, beta: float, x: float) -> float:
    if x == 0.0:
        return _recip_gamma(beta)
    if x > 0 or -x < 1.0:
        return _ml_series_double(alpha, beta, x)[0]
    # alternating series: the result can sit many orders below the peak term
    peak = _ml_log_peak(alpha, beta, math.log(-x)) / math.log(10.0)
    if peak < 15.0:
        total, rel = _ml_series_double(alpha, beta, x)
        if rel < _ML_DOUBLE_REL_ERR:
            return total
    digits = int(math.ceil(max(peak, 0.0))) + 25
    if digits > _ML_MAX_DIGITS:
        raise ValueError(
            f"Mittag-Leffler series for alpha={alpha}, x={x} needs ~{digits} digits"
        )
    return _ml_series_mp(alpha, beta, x, digits)


def mittag_leffler(alpha: float, x, beta: float = 1.0):
    """Two-parameter Mittag-Leffler function ``E_{alpha,beta}(x)``.

    Evaluated from the power series ``sum_k x**k / Gamma(k*alpha + beta)``.
    The retained terms are summed in double precision with ``math.fsum``. For
    negative arguments the alternating series can cancel far below its
    largest term; when the estimated relative rounding error exceeds 1e-13
    the series is re-summed with ``mpmath`` at enough digits to cover the
    peak term. Only real ``|x| <= 40`` is accepted, and a ``ValueError`` is
    raised if more than 400 digits would be needed (small ``alpha`` with
    large ``|x|``).

    ``x`` may be a scalar or an array; the return type follows.
    """
    alpha = float(alpha)
    beta = float(beta)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if not beta >= 0:
        raise ValueError(f"beta must be non-negative, got {beta!r}")
    xs = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xs)) or np.any(np.abs(xs) > ML_MAX_ABS_ARG):
        raise ValueError(f"Mittag-Leffler series is only supported for |x| <= {ML_MAX_ABS_ARG}")
    if xs.ndim == 0:
        return _ml_scalar(alpha, beta, float(xs))
    out = np.array([_ml_scalar(alpha, beta, float(v)) for v in xs.ravel()])
    return out.reshape(xs.shape)


def caputo_derivative_of_samples(f_samples, alpha: float, grid: TimeGrid) -> np.ndarray:
    """L1 approximation of the Caputo derivative of sampled data.

    The integrand's derivative is replaced by first differences on each cell
    and the power-law kernel is integrated exactly, giving

        D[n] = h**-alpha / Gamma(2 - alpha) * sum_k w_k (f[n-k] - f[n-k-1])

    with ``w_k = (k+1)**(1-alpha) - k**(1-alpha)``. ``D[0]`` is 0. At
    ``alpha = 1`` this is the backward difference.
    """
    alpha = frac_order(alpha)
    f = np.asarray(f_samples, dtype=float)
    if f.ndim != 1 or f.shape[0] != grid.n_steps + 1:
        raise ValueError(
            f"expected {grid.n_steps + 1} samples on the grid, got shape {f.shape}"
        )
    n = grid.n_steps
    diffs = np.diff(f)
    out = np.zeros(n + 1)
    if alpha == 1.0:
        # limit of the weights (0**0 would zero w_0)
        out[1:] = diffs / grid.h
        return out
    k = np.arange(n, dtype=float)
    w = (k + 1.0) ** (1.0 - alpha) - k ** (1.0 - alpha)
    out[1:] = np.convolve(w, diffs)[:n] * grid.h ** (-alpha) / math.gamma(2.0 - alpha)
    return out


def solve_caputo_ivp(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    alpha: float,
    y0,
    grid: TimeGrid,
    memory: int | None = None,
) -> Trajectory:
    """Solve ``D^alpha y = rhs(t, y)``, ``y(t0) = y0`` on a uniform grid.

    Fractional Adams-Bashforth-Moulton predictor-corrector (PECE, one
    corrector pass) with product-integration weights over the full history.
    At ``alpha = 1`` the corrector is the trapezoidal rule and the scheme is
    second order.

    Parameters
    ----------
    rhs : callable
        ``rhs(t, y) -> dy`` with ``y`` a 1-D array.
    alpha : float
        Order in ``(0, 1]``.
    y0 : array_like
        Initial state.
    grid : TimeGrid
    memory : int, optional
        If given, only the last ``memory`` history points enter the
        convolution sums (short-memory truncation). Default keeps all.

    Raises
    ------
    NonFiniteStateError
        If a state or derivative becomes NaN/inf.
    """
    alpha = frac_order(alpha)
    if memory is not None and memory < 1:
        raise ValueError("memory window must be a positive number of steps")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    if y0.ndim != 1 or not np.all(np.isfinite(y0)):
        raise ValueError("initial state must be a finite 1-D vector")

    n_steps, h, t0 = grid.n_steps, grid.h, grid.t0
    dim = y0.shape[0]
    ys = np.empty((n_steps + 1, dim))
    fs = np.empty((n_steps + 1, dim))
    ys[0] = y0

    def evaluate(step: int, y: np.ndarray) -> np.ndarray:
        f = np.asarray(rhs(grid.time(step), y), dtype=float)
        if f.shape != (dim,) or not np.all(np.isfinite(f)):
            if f.shape != (dim,):
                raise ValueError(f"rhs returned shape {f.shape}, expected ({dim},)")
            raise NonFiniteStateError(step, grid.time(step))
        return f

    fs[0] = evaluate(0, y0)

    k = np.arange(n_steps + 1, dtype=float)
    pred_w = (k[1:] ** alpha - k[:-1] ** alpha)  # b_k = (k+1)^a - k^a
    ap1 = alpha + 1.0
    corr_w = (k[:-1] + 2.0) ** ap1 - 2.0 * (k[:-1] + 1.0) ** ap1 + k[:-1] ** ap1
    pred_c = h**alpha / math.gamma(alpha + 1.0)
    corr_c = h**alpha / math.gamma(alpha + 2.0)

    for n in range(n_steps):
        lo = 0 if memory is None else max(0, n + 1 - memory)
        # predictor: weight b_{n-j} on f_j
        acc = pred_w[n - lo :: -1] @ fs[lo : n + 1] if n - lo >= 0 else 0.0
        y_pred = y0 + pred_c * acc
        if not np.all(np.isfinite(y_pred)):
            raise NonFiniteStateError(n + 1, grid.time(n + 1))
        f_pred = evaluate(n + 1, y_pred)

        # corrector: a_{0} on f_0, c_{n-j} on f_j for 1 <= j <= n, 1 on f_pred
        acc = f_pred.copy()
        if lo == 0:
            acc += (n**ap1 - (n - alpha) * (n + 1.0) ** alpha) * fs[0]
        start = max(lo, 1)
        if n >= start:
            acc += corr_w[n - start :: -1] @ fs[start : n + 1]
        y_new = y0 + corr_c * acc
        if not np.all(np.isfinite(y_new)):
            raise NonFiniteStateError(n + 1, grid.time(n + 1))
        ys[n + 1] = y_new
        fs[n + 1] = evaluate(n + 1, y_new)

    return Trajectory(grid, ys)
