"""Local stability of equilibria under Caputo dynamics.

A linearised fractional system ``D^alpha u = J u`` is asymptotically stable
when every eigenvalue of ``J`` lies outside the sector ``|arg z| <= alpha*pi/2``
(Matignon's criterion). For ``alpha = 1`` this is the usual left half-plane
test; smaller orders enlarge the stable region.

Besides the eigenvalue test, :func:`stability_report` evaluates the closed-form
inequality checklist for each equilibrium type so that tabulated stability
conditions can be reproduced and compared against the eigenvalue verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .equilibria import EquilibriumPoint
from .fraccalc import frac_order
from .models import Params2, Params3, SingularityError
from .polyroots import monic_roots, poly_eval

__all__ = [
    "CharPoly",
    "Condition",
    "CoefficientTest",
    "StabilityReport",
    "jacobian2",
    "jacobian3",
    "char_poly",
    "eigen",
    "matignon",
    "critical_order",
    "routh_hurwitz2",
    "coefficient_test",
    "stability_report",
    "e3_closed_form",
]

Verdict = Literal["stable", "unstable", "marginal"]
MARGIN_TOL = 1e-12


@dataclass(frozen=True)
class CharPoly:
    """Monic ``lam**n + a1 lam**(n-1) + ... + an`` stored as ``coeffs = (a1, ..., an)``."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if not 1 <= len(self.coeffs) <= 3:
            raise ValueError("only degrees 1-3 are supported")
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def discriminant(self) -> float:
        a = self.coeffs
        if self.degree == 1:
            return 1.0
        if self.degree == 2:
            return a[0] ** 2 - 4.0 * a[1]
        a1, a2, a3 = a
        return (
            18.0 * a1 * a2 * a3
            + (a1 * a2) ** 2
            - 4.0 * a3 * a1**3
            - 4.0 * a2**3
            - 27.0 * a3**2
        )

    def __call__(self, z):
        return poly_eval(self.coeffs, z)


@dataclass(frozen=True)
class Condition:
    name: str
    lhs: float
    relation: str
    rhs: float | tuple[float, float]
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "relation": self.relation,
            "rhs": _jsonable(self.rhs),
            "passed": self.passed,
            "note": self.note,
        }

    def render(self, digits: int = 4) -> str:
        if self.relation == "in":
            lo, hi = self.rhs
            return f"{_fmt(self.lhs, digits)} in ({_fmt(lo, digits)}, {_fmt(hi, digits)})"
        return f"{_fmt(self.lhs, digits)} {self.relation} {_fmt(self.rhs, digits)}"


def _fmt(v, digits):
    return f"{v:.{digits}g}" if isinstance(v, float) else str(v)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


def _cmp(name, lhs, rel, rhs, note="") -> Condition:
    lhs = float(lhs)
    if rel == "in":
        lo, hi = float(rhs[0]), float(rhs[1])
        ok = lo < lhs < hi
        rhs = (lo, hi)
    else:
        rhs = float(rhs)
        ok = {
            "<": lhs < rhs,
            ">": lhs > rhs,
            "<=": lhs <= rhs,
            ">=": lhs >= rhs,
        }[rel]
    return Condition(name, lhs, rel, rhs, bool(ok), note)


# --- Jacobians -------------------------------------------------------------


def jacobian2(p: Params2, point) -> np.ndarray:
    x, y = (float(v) for v in point)
    d = 1.0 + p.phi * x
    if d == 0:
        raise SingularityError("1 + phi*x vanishes")
    return np.array(
        [
            [p.rho * (1.0 - 2.0 * x) - y - p.eps1, -x],
            [p.psi * y / d**2, ((p.psi - p.phi) * x - 1.0) / d - p.eps2],
        ]
    )


def jacobian3(p: Params3, point) -> np.ndarray:
    x, y, z = (float(v) for v in point)
    d1 = 1.0 + p.phi * x
    d2 = 1.0 + p.phi1 * x
    if d1 == 0 or d2 == 0:
        raise SingularityError("saturation denominator vanishes")
    return np.array(
        [
            [
                p.rho * (1.0 - 2.0 * x) - (y * (1.0 + z) + p.eta * z + p.eps1),
                -x * (1.0 + z),
                -x * (p.eta + y),
            ],
            [
                p.psi * y * (1.0 + z) / d1**2,
                p.psi * x * (1.0 + z) / d1 - p.eps2,
                p.psi * x * y / d1,
            ],
            [
                p.beta * z * (p.eta + y) / d2**2,
                p.beta * x * z / d2,
                p.beta * x * (p.eta + y) / d2 - p.eps3,
            ],
        ]
    )


# --- characteristic polynomial and eigenvalues ----------------------------


def char_poly(J) -> CharPoly:
    """Characteristic polynomial from trace, principal minors and determinant."""
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    if J.shape != (n, n) or not 1 <= n <= 3:
        raise ValueError(f"expected a square matrix of size 1-3, got {J.shape}")
    if n == 1:
        return CharPoly((-J[0, 0],))
    if n == 2:
        tr = J[0, 0] + J[1, 1]
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        return CharPoly((-tr, det))
    tr = J[0, 0] + J[1, 1] + J[2, 2]
    minors = (
        J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        + J[0, 0] * J[2, 2] - J[0, 2] * J[2, 0]
        + J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1]
    )
    det = (
        J[0, 0] * (J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1])
        - J[0, 1] * (J[1, 0] * J[2, 2] - J[1, 2] * J[2, 0])
        + J[0, 2] * (J[1, 0] * J[2, 1] - J[1, 1] * J[2, 0])
    )
    return CharPoly((-tr, minors, -det))


def eigen(char) -> list[complex]:
    """Eigenvalues of a 1x1..3x3 matrix, or roots of a :class:`CharPoly`."""
    if not isinstance(char, CharPoly):
        char = char_poly(char)
    return [complex(r) for r in monic_roots(char.coeffs)]


# --- fractional stability tests -------------------------------------------


def _abs_args(eigs: Sequence[complex]) -> list[float]:
    return [abs(math.atan2(complex(z).imag, complex(z).real)) for z in eigs]


def matignon(eigs: Sequence[complex], alpha: float) -> tuple[Verdict, float]:
    """Sector test ``min |arg lam| > alpha*pi/2``.

    Returns the verdict and the margin ``min |arg lam| - alpha*pi/2`` in
    radians. A zero eigenvalue makes the result at best marginal.
    """
    alpha = frac_order(alpha)
    if len(eigs) == 0:
        raise ValueError("empty eigenvalue list")
    args = _abs_args(eigs)
    margin = min(args) - alpha * math.pi / 2.0
    has_zero = any(complex(z) == 0 for z in eigs)
    nonzero_margin = min(
        (a for a, z in zip(args, eigs) if complex(z) != 0), default=math.inf
    ) - alpha * math.pi / 2.0
    if nonzero_margin < -MARGIN_TOL:
        return "unstable", margin
    if has_zero or abs(margin) <= MARGIN_TOL:
        return "marginal", margin
    return "stable", margin


def critical_order(eigs: Sequence[complex], clip: bool = True) -> float | None:
    """Largest order at which the eigenvalues stay in the stable sector.

    ``(2/pi) * min |arg lam|``, clipped to 1 unless ``clip=False``. ``None``
    when an eigenvalue is real and non-negative (no order stabilises).
    """
    if len(eigs) == 0:
        raise ValueError("empty eigenvalue list")
    for z in eigs:
        z = complex(z)
        if z.imag == 0 and z.real >= 0:
            return None
    raw = 2.0 / math.pi * min(_abs_args(eigs))
    return min(1.0, raw) if clip else raw


def routh_hurwitz2(trace: float, det: float) -> str:
    """Planar classification: saddle / stable / unstable / center / degenerate."""
    if det < 0:
        return "saddle"
    if det == 0:
        return "degenerate"
    if trace < 0:
        return "stable"
    if trace > 0:
        return "unstable"
    return "center"


@dataclass(frozen=True)
class CoefficientTest:
    """Which coefficient clauses apply and what they imply.

    Each entry of ``implications`` is ``(clause, kind, lo, hi, closed)``: for
    ``kind == "stable"`` the equilibrium is stable for orders in ``(lo, hi)``,
    or ``(lo, hi]`` when ``closed``; ``"unstable"`` likewise. ``necessary``
    is the ``a_n > 0`` requirement.
    """

    degree: int
    coeffs: tuple[float, ...]
    discriminant: float
    necessary: bool
    implications: tuple[tuple[str, str, float, float, bool], ...]

    @property
    def fired(self) -> tuple[str, ...]:
        return tuple(c for c, *_ in self.implications)

    def satisfied(self, alpha: float) -> bool | None:
        """True/False when some clause decides ``alpha``; None if undecided."""
        if not self.necessary:
            return False
        for _, kind, lo, hi, closed in self.implications:
            if lo < alpha < hi or (closed and alpha == hi):
                return kind == "stable"
        return None

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": list(self.coeffs),
            "discriminant": self.discriminant,
            "necessary": self.necessary,
            "implications": [list(i) for i in self.implications],
        }


def coefficient_test(char: CharPoly) -> CoefficientTest:
    """Coefficient-level stability clauses for degrees 1-3.

    * n = 1: ``a1 > 0`` gives stability for every order.
    * n = 2: Routh-Hurwitz (``a1, a2 > 0``) for every order, or, with
      ``a1 < 0`` and ``4 a2 > a1**2``, stability below
      ``(2/pi) |atan(sqrt(4 a2 - a1**2) / a1)|``.
    * n = 3: with discriminant ``D``:
      ``D > 0`` and Routh-Hurwitz: every order;
      ``D < 0``, ``a1, a2 >= 0``, ``a3 > 0``: orders below 2/3;
      ``D < 0``, ``a1, a2 < 0``: unstable above 2/3;
      ``D < 0``, ``a1, a2 > 0``, ``a1 a2 = a3``: every order below 1.
    * ``a_n > 0`` is necessary in all cases.
    """
    a = char.coeffs
    n = char.degree
    D = char.discriminant
    necessary = a[-1] > 0
    imps: list[tuple[str, str, float, float, bool]] = []
    if n == 1:
        if a[0] > 0:
            imps.append(("a1>0", "stable", 0.0, 1.0, True))
    elif n == 2:
        a1, a2 = a
        if a1 > 0 and a2 > 0:
            imps.append(("RH", "stable", 0.0, 1.0, True))
        elif a1 < 0 and 4 * a2 > a1 * a1:
            bound = 2.0 / math.pi * abs(math.atan(math.sqrt(4 * a2 - a1 * a1) / a1))
            imps.append(("sector", "stable", 0.0, bound, False))
            imps.append(("sector", "unstable", bound, 1.0, True))
    else:
        a1, a2, a3 = a
        if D > 0 and a1 > 0 and a3 > 0 and a1 * a2 > a3:
            imps.append(("D>0,RH", "stable", 0.0, 1.0, True))
        if D < 0 and a1 >= 0 and a2 >= 0 and a3 > 0:
            imps.append(("D<0,a1>=0,a2>=0", "stable", 0.0, 2.0 / 3.0, False))
            if math.isclose(a1 * a2, a3, rel_tol=1e-12, abs_tol=1e-15) and a1 > 0 and a2 > 0:
                imps.append(("D<0,a1a2=a3", "stable", 0.0, 1.0, False))
        if D < 0 and a1 < 0 and a2 < 0:
            imps.append(("D<0,a1<0,a2<0", "unstable", 2.0 / 3.0, 1.0, True))
    return CoefficientTest(n, a, D, necessary, tuple(imps))


# --- per-equilibrium report ------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    equilibrium: EquilibriumPoint
    alpha: float
    jacobian: np.ndarray
    char_poly: CharPoly
    eigenvalues: tuple[complex, ...]
    matignon_margin: float
    verdict: Verdict
    critical_alpha: float | None
    critical_alpha_raw: float | None
    routh_hurwitz: str | None
    coefficient_test: CoefficientTest
    conditions: tuple[Condition, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def checklist_passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "equilibrium": self.equilibrium.to_dict(),
            "alpha": self.alpha,
            "jacobian": self.jacobian.tolist(),
            "char_poly": {
                "coeffs": list(self.char_poly.coeffs),
                "discriminant": self.char_poly.discriminant,
            },
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "matignon_margin": self.matignon_margin,
            "verdict": self.verdict,
            "critical_alpha": self.critical_alpha,
            "critical_alpha_raw": self.critical_alpha_raw,
            "routh_hurwitz": self.routh_hurwitz,
            "coefficient_test": self.coefficient_test.to_dict(),
            "conditions": [c.to_dict() for c in self.conditions],
            "notes": list(self.notes),
        }


def _pair_alpha(re: float, disc_term: float) -> float:
    """(2/pi)|arg(re + i sqrt(disc_term)/2)|; real pair when disc_term < 0."""
    if disc_term >= 0:
        return 2.0 / math.pi * abs(math.atan2(math.sqrt(disc_term) / 2.0, re))
    # real eigenvalues re +- sqrt(-disc)/2: the larger one decides
    lam = re + math.sqrt(-disc_term) / 2.0
    return 2.0 if lam < 0 else (1.0 if lam == 0 else 0.0)


def _safe_sqrt(v: float) -> float:
    return math.sqrt(v) if v >= 0 else math.nan


def _safe_div(a: float, b: float) -> float:
    return a / b if b != 0 else math.copysign(math.inf, a) if a != 0 else math.nan


def e3_closed_form(p: Params2, squared_denominator: bool = True) -> dict:
    """Closed-form trace/determinant quantities at the two-species E3.

    Returns ``omega``, ``b = rho*omega + eps1`` (minus the trace of the
    closed-form E3 Jacobian), ``c`` (its determinant
    ``psi*omega*gamma/(1+phi*omega)**2``) and the unclipped critical order
    ``alpha_1`` of the pair ``-b/2 +- i sqrt(4c - b^2)/2``.

    ``squared_denominator=False`` uses ``(1+phi*omega)`` to the first power.
    """
    rho, psi, phi, e1, e2 = p.rho, p.psi, p.phi, p.eps1, p.eps2
    d0 = psi - phi * (1 + e2)
    w = (1 + e2) / d0 if d0 > 0 else math.nan
    gamma = rho * (1 - w) - e1
    b = rho * w + e1
    c = psi * w * gamma / (1 + phi * w) ** (2 if squared_denominator else 1)
    return {"omega": w, "gamma": gamma, "b": b, "c": c, "alpha_1": _pair_alpha(-b / 2.0, 4 * c - b * b)}


def _conditions2(p: Params2, eq: EquilibriumPoint, alpha: float):
    rho, psi, phi, e1, e2 = p.rho, p.psi, p.phi, p.eps1, p.eps2
    notes: list[str] = []
    if eq.label == "E1":
        conds = [_cmp("rho < eps1", rho, "<", e1), _cmp("alpha <= 1", alpha, "<=", 1.0)]
    elif eq.label == "E2":
        rhs = (1 + e2) * (_safe_div(rho, rho - e1) + phi)
        conds = [
            _cmp("psi < (1+eps2)[rho/(rho-eps1) + phi]", psi, "<", rhs),
            _cmp("alpha <= 1", alpha, "<=", 1.0),
        ]
    else:
        cf = e3_closed_form(p)
        cf_flat = e3_closed_form(p, squared_denominator=False)
        w, b, c = cf["omega"], cf["b"], cf["c"]
        d0 = psi - phi * (1 + e2)
        conds = [
            _cmp("omega < 1 - eps1/rho", w, "<", 1 - e1 / rho),
            _cmp(
                "b^2 - 4c < 0",
                b * b - 4 * c,
                "<",
                0.0,
                note=f"4c = {4 * c:.6g}; {4 * cf_flat['c']:.6g} with an unsquared (1+phi*omega)",
            ),
            _cmp(
                "complex pair: (rho(1+eps2) + eps1 D)^2 < (4/psi)(1+eps2) D^2 ((rho-eps1) D - rho(1+eps2))",
                (rho * (1 + e2) + e1 * d0) ** 2,
                "<",
                4.0 / psi * (1 + e2) * d0**2 * ((rho - e1) * d0 - rho * (1 + e2)),
                note="D = psi - phi(1+eps2); equals b^2 < 4c with b = rho*omega + eps1",
            ),
            _cmp("alpha < alpha_1", alpha, "<", cf["alpha_1"], note="alpha_1 unclipped"),
        ]
        notes.append(
            f"checklist uses b = -trace = rho*omega + eps1 = {b:.6g}; the model Jacobian "
            f"at E3 has J11 = -rho*omega, trace = {-rho * w:.6g}"
        )
        notes.append(
            f"alpha_1 = {cf['alpha_1']:.6g} with (1+phi*omega)^2 in det; "
            f"{cf_flat['alpha_1']:.6g} with it unsquared"
        )
    return conds, notes


def _conditions3(p: Params3, eq: EquilibriumPoint, alpha: float):
    rho, psi, beta, eta = p.rho, p.psi, p.beta, p.eta
    phi, phi1, e1, e2, e3 = p.phi, p.phi1, p.eps1, p.eps2, p.eps3
    notes: list[str] = []
    lab = eq.label
    if lab == "E1":
        return [_cmp("rho < eps1", rho, "<", e1), _cmp("alpha <= 1", alpha, "<=", 1.0)], notes
    if lab == "E2":
        g = rho - e1
        return [
            _cmp("eps1 < rho", e1, "<", rho),
            _cmp("eps2 > psi(rho-eps1)/[rho+phi(rho-eps1)]", e2, ">", psi * g / (rho + phi * g)),
            _cmp(
                "eps3 > beta*eta(rho-eps1)/[rho+phi1(rho-eps1)]",
                e3,
                ">",
                beta * eta * g / (rho + phi1 * g),
            ),
            _cmp("alpha <= 1", alpha, "<=", 1.0),
        ], notes
    if lab == "E3":
        w, g = eq.aux["omega"], eq.aux["gamma"]
        a1 = min(1.0, _pair_alpha(-rho * w / 2, 4 * psi * w * g / (1 + phi * w) ** 2 - (rho * w) ** 2))
        return [
            _cmp("eps1 < rho(1-omega)", e1, "<", rho * (1 - w)),
            _cmp("eps2 < psi/phi", e2, "<", psi / phi),
            _cmp(
                "eps3 > beta*omega(eta+gamma)/(1+phi1*omega)",
                e3,
                ">",
                beta * w * (eta + g) / (1 + phi1 * w),
            ),
            _cmp(
                "rho < 2/(1+phi*omega) sqrt(gamma/omega) psi",
                rho,
                "<",
                2.0 / (1 + phi * w) * _safe_sqrt(g / w) * psi,
                note="a complex pair needs rho < 2 sqrt(psi*gamma/omega)/(1+phi*omega)",
            ),
            _cmp("alpha in (0, alpha_1)", alpha, "in", (0.0, a1)),
        ], notes
    if lab == "E4":
        w, g = eq.aux["omega"], eq.aux["gamma"]
        a1 = min(
            1.0,
            _pair_alpha(-rho * w / 2, 4 * eta * beta * w * g / (1 + phi1 * w) ** 2 - (rho * w) ** 2),
        )
        return [
            _cmp("eps1 < rho(1-omega)", e1, "<", rho * (1 - w)),
            _cmp(
                "eps2 > psi*omega(gamma+1)/[eta(1+phi*omega)]",
                e2,
                ">",
                psi * w * (g + 1) / (eta * (1 + phi * w)),
                note="the transverse eigenvalue changes sign at eps2 = psi*omega(eta+gamma)/[eta(1+phi*omega)]",
            ),
            _cmp("eps3 < eta*beta/phi1", e3, "<", eta * beta / phi1),
            _cmp(
                "rho < 2/(1+phi1*omega) sqrt(gamma/omega) eta*beta",
                rho,
                "<",
                2.0 / (1 + phi1 * w) * _safe_sqrt(g / w) * eta * beta,
            ),
            _cmp("alpha in (0, alpha_1)", alpha, "in", (0.0, a1)),
        ], notes
    # E5
    w, g, g1, w1 = (eq.aux[k] for k in ("omega", "gamma", "gamma1", "omega1"))
    lhs4 = psi * e3**2 + eta * beta * e2**2
    rhs4 = psi * e3**2 * g1 + beta * e2**2 * g - psi * w / (g * g1) * beta * e1 * e2
    return [
        _cmp("eps1 < rho + eta - gamma*gamma1", e1, "<", rho + eta - g * g1),
        _cmp("eps2 > psi*omega1/(1+phi*omega1)", e2, ">", psi * w1 / (1 + phi * w1)),
        _cmp("eps3 > eta*beta*omega1/(1+phi1*omega1)", e3, ">", eta * beta * w1 / (1 + phi1 * w1)),
        _cmp(
            "psi eps3^2 + eta beta eps2^2 > psi eps3^2 gamma1 + beta eps2^2 gamma"
            " - psi omega/(gamma gamma1) beta eps1 eps2",
            lhs4,
            ">",
            rhs4,
        ),
        _cmp("alpha in (0, 1)", alpha, "in", (0.0, 1.0)),
    ], notes


def stability_report(
    p: Params2 | Params3, eq: EquilibriumPoint, alpha: float
) -> StabilityReport:
    """Eigenvalue verdict plus the closed-form condition checklist for ``eq``."""
    alpha = frac_order(alpha)
    if not all(math.isfinite(c) for c in eq.coords):
        raise ValueError(f"{eq.label} has no finite coordinates: {eq.diagnostic}")
    if isinstance(p, Params2):
        J = jacobian2(p, eq.coords)
        conds, notes = _conditions2(p, eq, alpha)
    else:
        J = jacobian3(p, eq.coords)
        conds, notes = _conditions3(p, eq, alpha)
    cp = char_poly(J)
    eigs = tuple(eigen(cp))
    verdict, margin = matignon(eigs, alpha)
    rh = routh_hurwitz2(-cp.coeffs[0], cp.coeffs[1]) if cp.degree == 2 else None
    return StabilityReport(
        equilibrium=eq,
        alpha=alpha,
        jacobian=J,
        char_poly=cp,
        eigenvalues=eigs,
        matignon_margin=margin,
        verdict=verdict,
        critical_alpha=critical_order(eigs),
        critical_alpha_raw=critical_order(eigs, clip=False),
        routh_hurwitz=rh,
        coefficient_test=coefficient_test(cp),
        conditions=tuple(conds),
        notes=tuple(notes),
    )
