import json

import numpy as np
import pytest
from hypothesis import given

from fraceco.equilibria import e5_cubic_coeffs, equilibria2, equilibria3, residual, solve_e5
from fraceco.models import Params2, Params3

from oracles import sign_scan_roots
from strategies import params2, params3

# frozen from the sign-scan oracle on the three-species reference set
E5_ROOTS = (0.0976234, 0.7993118)


def _by_label(points):
    out = {}
    for pt in points:
        out.setdefault(pt.label, []).append(pt)
    return out


def test_two_species_reference_points(damped):
    e1, e2, e3 = equilibria2(damped)
    assert (e1.label, e1.coords, e1.feasible) == ("E1", (0.0, 0.0), True)
    assert e2.coords == pytest.approx((0.6, 0.0))
    assert e3.coords == pytest.approx((2 / 15, 7 / 15), rel=1e-15)
    assert e3.aux["omega"] == pytest.approx(2 / 15)
    assert all(p.feasible for p in (e1, e2, e3))


def test_prey_only_point_infeasible_when_overharvested():
    e2 = equilibria2(Params2(1.0, 5.0, 1.0, eps1=1.5))[1]
    assert not e2.feasible and e2.coords[0] < 0 and e2.diagnostic


def test_coexistence_coincides_with_prey_only_on_boundary():
    _, e2, e3 = equilibria2(Params2(1.0, 2.0, 1.0))
    assert e3.coords == pytest.approx((1.0, 0.0)) and e3.feasible
    assert e3.coords == pytest.approx(e2.coords)


def test_coexistence_missing_when_denominator_nonpositive():
    e3 = equilibria2(Params2(1.0, 2.0, 1.0, eps2=1.0))[2]
    assert not e3.feasible and "psi" in e3.diagnostic
    assert all(np.isnan(e3.coords))


def test_three_species_reference_points(mutualist):
    pts = _by_label(equilibria3(mutualist))
    assert pts["E2"][0].coords == pytest.approx((1 - 0.12 / 0.61, 0.0, 0.0))
    assert not pts["E3"][0].feasible and not pts["E4"][0].feasible
    e5 = pts["E5"]
    assert [p.aux["omega"] for p in e5] == pytest.approx(E5_ROOTS, abs=1e-7)
    for p in e5:
        w = p.coords[0]
        assert p.feasible
        assert p.coords[1] == pytest.approx(0.06 * (1 + 0.02 * w) / (7 * w) - 0.01)
        assert p.coords[2] == pytest.approx(0.43 * (1 + 1.4 * w) / w - 1)
        assert residual(mutualist, p) <= 1e-10


def test_overharvested_prey_leaves_only_extinction():
    p = Params3(0.5, 1.0, 1.0, 0.01, 1.0, 1.0, eps1=0.8, eps2=1.0, eps3=0.5)
    feasible = [pt.label for pt in equilibria3(p) if pt.feasible]
    assert feasible == ["E1"]


def test_degenerate_denominators_flagged():
    p = Params3(1.0, 2.0, 1.0, 0.5, 2.0, 1.0, eps1=0.1, eps2=1.0, eps3=0.5)
    pts = _by_label(equilibria3(p))
    assert not pts["E3"][0].feasible and pts["E3"][0].diagnostic == "psi == eps2*phi"
    assert not pts["E4"][0].feasible and pts["E4"][0].diagnostic == "eta*beta == phi1*eps3"


def test_e5_matches_sign_scan(mutualist):
    coeffs = e5_cubic_coeffs(mutualist)
    assert solve_e5(mutualist) == pytest.approx(sign_scan_roots(coeffs), abs=1e-6)


def test_e5_small_predator_mortality_limit():
    p = Params3(0.8, 1.0, 1.0, 0.05, 1.0, 1.0, eps1=0.2, eps2=1e-6, eps3=1e-6)
    assert max(solve_e5(p)) == pytest.approx(1 - (0.2 - 0.05) / 0.8, rel=1e-9)


def test_e5_absent_when_constant_term_dominates():
    p = Params3(1.0, 0.1, 0.1, 0.1, 1.0, 1.0, eps1=0.1, eps2=2.0, eps3=1.0)
    assert solve_e5(p) == []
    assert sign_scan_roots(e5_cubic_coeffs(p)) == []
    e5 = _by_label(equilibria3(p))["E5"]
    assert len(e5) == 1 and not e5[0].feasible


def test_e5_random_draws_match_sign_scan():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(100):
        rho = rng.uniform(0.3, 2.0)
        p = Params3(
            rho, rng.uniform(0.2, 5), rng.uniform(0.2, 8), rng.uniform(0.001, 0.9 * rho),
            rng.uniform(0.05, 3), rng.uniform(0.01, 3), rng.uniform(0, 0.8 * rho),
            rng.uniform(0.05, 2.5), rng.uniform(0.01, 1.0),
        )
        # with eta < rho every positive root lies below 2
        scan = sign_scan_roots(e5_cubic_coeffs(p), 0.0, 2.0, 1e-6)
        ours = solve_e5(p)
        assert ours == pytest.approx(scan, abs=1e-6)
        checked += bool(ours)
    assert checked > 10


def test_coexistence_shift_with_harvest(damped):
    w = lambda p: equilibria2(p)[2].coords
    assert w(damped.replace(eps1=0.1))[0] == w(damped.replace(eps1=0.3))[0]
    assert w(damped.replace(eps2=0.2))[0] < w(damped.replace(eps2=0.8))[0]
    assert w(damped.replace(eps1=0.1))[1] > w(damped.replace(eps1=0.3))[1]


@given(params2)
def test_feasible_points_are_zeros_2(p):
    for pt in equilibria2(p):
        assert pt.feasible == (all(np.isfinite(pt.coords)) and min(pt.coords) >= 0)
        if pt.feasible:
            assert residual(p, pt) <= 1e-10


@given(params3)
def test_feasible_points_are_zeros_3(p):
    for pt in equilibria3(p):
        assert pt.feasible == (all(np.isfinite(pt.coords)) and min(pt.coords) >= 0)
        if pt.feasible:
            assert residual(p, pt) <= 1e-10


def test_serialization(mutualist):
    data = [pt.to_dict() for pt in equilibria3(mutualist)]
    text = json.dumps(data, sort_keys=True)
    assert set(data[0]) == {"label", "coords", "feasible", "aux", "diagnostic"}
    assert json.loads(text)[-1]["aux"]["omega"] == pytest.approx(E5_ROOTS[1], abs=1e-7)
