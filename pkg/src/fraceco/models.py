"""Predator-prey systems with constant-effort harvesting.

Two systems are provided, each in dimensional and dimensionless form:

* one prey ``x`` and one predator ``y`` with a saturating predator response;
* one prey ``x`` and two mutualistic predators ``y``, ``z`` whose capture
  rates enhance each other.

The dimensionless right-hand sides are autonomous; ``rhs2``/``rhs3`` take a
parameter set and a state vector and return the time derivative.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

__all__ = [
    "SingularityError",
    "DimParams2",
    "DimParams3",
    "Params2",
    "Params3",
    "Scales",
    "LipschitzBound",
    "nondim2",
    "nondim3",
    "scales2",
    "scales3",
    "rhs2",
    "rhs3",
    "rhs_dim2",
    "rhs_dim3",
    "lipschitz_bound2",
    "lipschitz_bound3",
    "params_from_dict",
]


class SingularityError(ZeroDivisionError):
    """A saturating-response denominator ``1 + phi*x`` vanished."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


class _ParamsMixin:
    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict):
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        missing = names - set(data)
        if unknown or missing:
            raise ValueError(
                f"{cls.__name__}: unknown fields {sorted(unknown)}, missing {sorted(missing)}"
            )
        return cls(**{k: float(v) for k, v in data.items()})

    def replace(self, **changes):
        data = self.to_dict()
        data.update(changes)
        return type(self).from_dict(data)


@dataclass(frozen=True)
class DimParams2(_ParamsMixin):
    """Dimensional prey/predator parameters (harvest ``H1 = h1*X``, ``H2 = h2*Y``)."""

    r: float
    K: float
    a: float
    sigma: float
    k: float
    h1: float = 0.0
    h2: float = 0.0

    def __post_init__(self):
        for name in ("r", "K", "a", "sigma", "k"):
            _require(getattr(self, name) > 0, f"{name} must be positive")
        _require(self.h1 >= 0 and self.h2 >= 0, "harvesting efforts must be non-negative")


@dataclass(frozen=True)
class DimParams3(_ParamsMixin):
    """Dimensional parameters of the prey / two-mutualistic-predator system."""

    r: float
    K: float
    a: float
    b: float
    xi: float
    sigma1: float
    sigma2: float
    k1: float
    k2: float
    h1: float = 0.0
    h2: float = 0.0
    h3: float = 0.0

    def __post_init__(self):
        for name in ("r", "K", "a", "b", "xi", "sigma1", "sigma2", "k1", "k2"):
            _require(getattr(self, name) > 0, f"{name} must be positive")
        _require(
            min(self.h1, self.h2, self.h3) >= 0, "harvesting efforts must be non-negative"
        )


@dataclass(frozen=True)
class Params2(_ParamsMixin):
    """Dimensionless one-prey/one-predator parameters.

    rho = r/k, psi = aK/k, phi = K*sigma, eps1 = h1/k, eps2 = h2/k.
    """

    rho: float
    psi: float
    phi: float
    eps1: float = 0.0
    eps2: float = 0.0

    def __post_init__(self):
        for name in ("rho", "psi", "phi"):
            _require(getattr(self, name) > 0, f"{name} must be positive")
        _require(self.eps1 >= 0 and self.eps2 >= 0, "eps1, eps2 must be non-negative")


@dataclass(frozen=True)
class Params3(_ParamsMixin):
    """Dimensionless one-prey/two-predator parameters.

    Built from dimensional values by :func:`nondim3`, ``eps2 = 1 + h2/k1`` is
    at least 1. Direct construction only requires ``eps2 > 0`` so that
    purely dimensionless sets with ``eps2 < 1`` can still be studied.
    """

    rho: float
    psi: float
    beta: float
    eta: float
    phi: float
    phi1: float
    eps1: float
    eps2: float
    eps3: float

    def __post_init__(self):
        for name in ("rho", "psi", "beta", "eta", "phi", "phi1", "eps2", "eps3"):
            _require(getattr(self, name) > 0, f"{name} must be positive")
        _require(self.eps1 >= 0, "eps1 must be non-negative")

    @property
    def has_dimensional_preimage(self) -> bool:
        return self.eps2 >= 1.0


@dataclass(frozen=True)
class Scales:
    """Linear maps between dimensionless and dimensional variables.

    ``X_i = state_factors[i] * x_i`` and ``T = time_factor * t``.
    """

    state_factors: tuple[float, ...]
    time_factor: float

    def to_dimensional(self, t, states) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(t, dtype=float) * self.time_factor,
            np.asarray(states, dtype=float) * np.asarray(self.state_factors),
        )

    def to_dimensionless(self, T, states) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(T, dtype=float) / self.time_factor,
            np.asarray(states, dtype=float) / np.asarray(self.state_factors),
        )


def nondim2(p: DimParams2) -> Params2:
    return Params2(
        rho=p.r / p.k,
        psi=p.a * p.K / p.k,
        phi=p.K * p.sigma,
        eps1=p.h1 / p.k,
        eps2=p.h2 / p.k,
    )


def scales2(p: DimParams2) -> Scales:
    """X = K x, Y = (k/a) y, T = t/k."""
    return Scales((p.K, p.k / p.a), 1.0 / p.k)


def nondim3(p: DimParams3) -> Params3:
    return Params3(
        rho=p.r / p.k1,
        psi=p.a * p.K / p.k1,
        beta=p.b * p.K / p.k1,
        eta=p.a * p.b / (p.xi * p.k1),
        phi=p.sigma1 * p.K,
        phi1=p.sigma2 * p.K,
        eps1=p.h1 / p.k1,
        eps2=1.0 + p.h2 / p.k1,
        eps3=(p.k2 + p.h3) / p.k1,
    )


def scales3(p: DimParams3) -> Scales:
    """X = K x, Y = (k1/a) y, Z = (a/xi) z, T = t/k1."""
    return Scales((p.K, p.k1 / p.a, p.a / p.xi), 1.0 / p.k1)


def _denom(value: float, what: str) -> float:
    if value == 0.0:
        raise SingularityError(f"{what} vanishes")
    return value


def rhs2(p: Params2, state) -> np.ndarray:
    x, y = state
    d = _denom(1.0 + p.phi * x, "1 + phi*x")
    return np.array(
        [
            p.rho * x * (1.0 - x) - x * y - p.eps1 * x,
            p.psi * x * y / d - y - p.eps2 * y,
        ]
    )


def rhs3(p: Params3, state) -> np.ndarray:
    x, y, z = state
    d1 = _denom(1.0 + p.phi * x, "1 + phi*x")
    d2 = _denom(1.0 + p.phi1 * x, "1 + phi1*x")
    return np.array(
        [
            p.rho * x * (1.0 - x) - x * (y + p.eta * z + y * z) - p.eps1 * x,
            p.psi * x * y * (1.0 + z) / d1 - p.eps2 * y,
            p.beta * x * z * (p.eta + y) / d2 - p.eps3 * z,
        ]
    )


def rhs_dim2(p: DimParams2, state) -> np.ndarray:
    X, Y = state
    d = _denom(1.0 + p.sigma * X, "1 + sigma*X")
    return np.array(
        [
            p.r * X * (1.0 - X / p.K) - p.a * X * Y - p.h1 * X,
            p.a * X * Y / d - p.k * Y - p.h2 * Y,
        ]
    )


def rhs_dim3(p: DimParams3, state) -> np.ndarray:
    X, Y, Z = state
    d1 = _denom(1.0 + p.sigma1 * X, "1 + sigma1*X")
    d2 = _denom(1.0 + p.sigma2 * X, "1 + sigma2*X")
    return np.array(
        [
            p.r * X * (1.0 - X / p.K) - X * (p.a * Y + p.b * Z + p.xi * Y * Z) - p.h1 * X,
            X * Y * (p.a + p.xi * Z) / d1 - p.k1 * Y - p.h2 * Y,
            X * Z * (p.b + p.xi * Y) / d2 - p.k2 * Z - p.h3 * Z,
        ]
    )


@dataclass(frozen=True)
class LipschitzBound:
    M: float
    L_components: tuple[float, ...]

    @property
    def L(self) -> float:
        return max(self.L_components)


def lipschitz_bound2(p: Params2, M: float) -> LipschitzBound:
    """Componentwise Lipschitz constants on ``{0 <= x, y <= M}``."""
    _require(M > 0, "M must be positive")
    L1 = p.rho + p.eps1 + (p.rho + 1.0) * M
    L2 = 1.0 + p.eps2 + p.psi * (1.0 + p.phi * M) * M
    return LipschitzBound(float(M), (L1, L2))


def lipschitz_bound3(p: Params3, M: float) -> LipschitzBound:
    _require(M > 0, "M must be positive")
    L1 = p.rho + p.eps1 + (p.rho + p.eta) * M + M**2
    L2 = 1.0 + p.eps2 + p.psi * (1.0 + (1.0 + p.phi) * M + p.phi * M**2) * M
    L3 = p.eps3 + p.beta * (1.0 + p.eta + p.eta * p.phi1 * M + p.phi1 * M**2) * M
    return LipschitzBound(float(M), (L1, L2, L3))


def params_from_dict(data: dict) -> Params2 | Params3:
    """Pick the parameter class from the field names present."""
    if set(data) == {f.name for f in fields(Params2)}:
        return Params2.from_dict(data)
    return Params3.from_dict(data)
