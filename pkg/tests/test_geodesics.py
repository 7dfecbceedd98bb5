import csv

import numpy as np
import pytest
from numpy.testing import assert_allclose

from crsphere import geodesics as G
from crsphere.calculus import ScalarField
from crsphere.polynomials import Polynomial
from crsphere.sphere import (
    SpherePoint,
    TangentVector,
    horizontal_frame,
    random_horizontal,
    random_point,
    times_i,
)

E1 = SpherePoint(np.array([1.0, 0.0, 0.0, 0.0]), 1)


def kernel_quadratic(a=0.0, b=1.0):
    m = 4
    terms = {
        (2, 0, 0, 0): a, (0, 0, 2, 0): a, (0, 2, 0, 0): -a, (0, 0, 0, 2): -a,
        (1, 1, 0, 0): 2 * b, (0, 0, 1, 1): 2 * b,
    }
    from fractions import Fraction

    poly = Polynomial(m, {k: Fraction(float(v)) for k, v in terms.items() if v})
    return ScalarField(poly, 1)


# ---------------------------------------------------------------------------
# Closed forms.
# ---------------------------------------------------------------------------


def test_great_circle_values():
    v = TangentVector(E1, np.array([0.0, 1.0, 0.0, 0.0]), True)
    out = G.great_circle(E1, v, np.pi / 2)
    assert_allclose(out.coords, [0.0, 1.0, 0.0, 0.0], atol=1e-15)
    assert_allclose(G.great_circle(E1, v, 0.0).coords, E1.coords)


def test_great_circle_requires_horizontal_unit():
    with pytest.raises(ValueError):
        G.great_circle(E1, np.array([0.0, 2.0, 0.0, 0.0]), 1.0)
    with pytest.raises(ValueError):
        G.great_circle(E1, np.array([0.0, 0.0, 1.0, 0.0]), 1.0)  # Reeb direction


def test_great_circle_stays_lengthy(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    for s in np.linspace(0.0, 2 * np.pi, 25):
        gamma = p.coords * np.cos(s) + v.vec * np.sin(s)
        dgamma = -p.coords * np.sin(s) + v.vec * np.cos(s)
        assert abs(float(times_i(gamma) @ dgamma)) < 1e-14


def test_closed_form_exact_invariants(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    s = np.linspace(0.0, 2 * np.pi, 200)
    pts, vels = G.closed_form_geodesic(p, v.vec, 0.9, s)
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) < 1e-14
    assert np.max(np.abs(np.linalg.norm(vels, axis=1) - 1.0)) < 1e-13
    theta = np.einsum("ij,ij->i", times_i(pts), vels)
    assert np.max(np.abs(theta)) < 1e-13
    pts0, _ = G.closed_form_geodesic(p, v.vec, 0.0, s)
    expected = np.outer(np.cos(s), p.coords) + np.outer(np.sin(s), v.vec)
    assert_allclose(pts0, expected, atol=1e-13)


# ---------------------------------------------------------------------------
# The connection integrator.
# ---------------------------------------------------------------------------


def test_integrator_argument_validation(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    state = G.GeodesicState(p, v, 0.0)
    with pytest.raises(ValueError):
        G.integrate_connection_geodesic(state, 1.0, 0.0)
    with pytest.raises(ValueError):
        G.integrate_connection_geodesic(state, 1.0, 0.5)
    with pytest.raises(ValueError):
        G.GeodesicState(p, TangentVector(p, p.reeb_coords()), 0.0)


def test_integrator_matches_great_circle(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    trace = G.integrate_connection_geodesic(G.GeodesicState(p, v, 0.0), 2 * np.pi, 1e-3)
    target = G.great_circle(p, v, 2 * np.pi)
    assert np.linalg.norm(trace.endpoint() - target.coords) < 1e-6
    assert trace.s[-1] == pytest.approx(2 * np.pi, abs=1e-12)


def test_integrator_conservation_nonzero_b(rng):
    p = random_point(rng, 2)
    v = random_horizontal(rng, p)
    trace = G.integrate_connection_geodesic(G.GeodesicState(p, v, 1.1), 2 * np.pi, 1e-3)
    assert trace.max_lengthiness_violation < 1e-7
    assert trace.max_speed_drift < 1e-7
    assert np.all(trace.b == 1.1)  # the multiplier is frozen on the spheres


def test_integrator_matches_closed_form(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    trace = G.integrate_connection_geodesic(G.GeodesicState(p, v, -0.6), 3.0, 1e-3)
    pts, _ = G.closed_form_geodesic(p, v.vec, -0.6, trace.s)
    assert np.max(np.linalg.norm(trace.points - pts, axis=1)) < 1e-6


def test_integrator_torsion_hook(rng):
    # b' = A(v, v): with a synthetic constant form the multiplier grows
    # linearly; the sphere default leaves it frozen
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    trace = G.integrate_connection_geodesic(
        G.GeodesicState(p, v, 0.2), 1.0, 1e-3, torsion=lambda q, vel: 0.5
    )
    assert_allclose(trace.b, 0.2 + 0.5 * trace.s, atol=1e-12)
    frozen = G.integrate_connection_geodesic(G.GeodesicState(p, v, 0.2), 1.0, 1e-3)
    assert np.all(frozen.b == 0.2)


def test_exp_map(rng):
    p = random_point(rng, 1)
    assert G.exp_map(p, np.zeros(4)) is p
    v = random_horizontal(rng, p)
    w = 0.8 * v.vec
    out = G.exp_map(p, w)
    assert_allclose(out.coords, G.great_circle(p, v, 0.8).coords, atol=1e-14)


# ---------------------------------------------------------------------------
# Cotangent route.
# ---------------------------------------------------------------------------


def test_canonical_lift_pairings(rng):
    p = random_point(rng, 1)
    frame = horizontal_frame(p)
    v = frame.vectors[0]
    lift = G.canonical_lift(p, v)
    chart = G._charts(1)[lift.chart]
    jac = chart.jacobian(lift.x)
    # xi(T) = 1 and xi(X_j) = g(v, X_j); chart covectors pair through the
    # Jacobian columns
    theta_chart = jac.T @ times_i(p.coords)

    def pair(ambient_vec):
        coeff = np.linalg.lstsq(jac, ambient_vec, rcond=None)[0]
        return float(lift.xi @ coeff)

    assert abs(pair(times_i(p.coords)) - 1.0) < 1e-9
    assert abs(pair(frame.vectors[0].vec) - 1.0) < 1e-9
    assert abs(pair(frame.vectors[1].vec)) < 1e-9  # orthogonal frame vector
    # cometric inversion returns the velocity
    vel = jac @ (chart.cometric(lift.x) @ lift.xi)
    assert_allclose(vel, v.vec, atol=1e-9)
    del theta_chart


def test_canonical_lift_zero_velocity(rng):
    p = random_point(rng, 1)
    lift = G.cotangent_lift(p, np.zeros(4), 1.0)
    chart = G._charts(1)[lift.chart]
    jac = chart.jacobian(lift.x)
    vel = jac @ (chart.cometric(lift.x) @ lift.xi)
    assert np.max(np.abs(vel)) < 1e-12  # vanishes on the horizontal space
    assert G.hamiltonian(lift) < 1e-12
    # still pairs to one against the Reeb direction
    coeff = np.linalg.lstsq(jac, times_i(p.coords), rcond=None)[0]
    assert abs(float(lift.xi @ coeff) - 1.0) < 1e-9


def test_hamiltonian_value(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    lift = G.cotangent_lift(p, v, 0.7)
    assert abs(G.hamiltonian(lift) - 0.5) < 1e-12


def test_hj_matches_connection_route(rng):
    for n in (1, 2):
        for b in (0.0, 1.0, -0.8):
            p = random_point(rng, n)
            v = random_horizontal(rng, p)
            conn = G.integrate_connection_geodesic(G.GeodesicState(p, v, b), 1.0, 1e-3)
            hj = G.integrate_hj_geodesic(G.cotangent_lift(p, v, b), 1.0, 1e-3)
            gap = np.max(np.linalg.norm(conn.points - hj.points, axis=1))
            assert gap < 1e-6
            sp = hj.speed
            assert np.max(np.abs(0.5 * sp**2 - 0.5 * sp[0] ** 2)) < 1e-7
            assert hj.max_lengthiness_violation < 1e-7


def test_hj_chart_handoff():
    v = TangentVector(E1, np.array([0.0, 0.0, 0.0, 1.0]), True)
    hj = G.integrate_hj_geodesic(G.cotangent_lift(E1, v, 0.0), 3.0, 1e-3)
    assert hj.events, "trajectory through the pole region must hand off charts"
    assert hj.events[0]["from_chart"] != hj.events[0]["to_chart"]
    conn = G.integrate_connection_geodesic(G.GeodesicState(E1, v, 0.0), 3.0, 1e-3)
    assert np.max(np.linalg.norm(conn.points - hj.points, axis=1)) < 1e-5


def test_hj_reparametrization_invariance(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    lift = G.cotangent_lift(p, v, 1.0)
    doubled = G.CotangentState(lift.x, 2.0 * lift.xi, lift.chart, 1)
    full = G.integrate_hj_geodesic(lift, 1.0, 1e-3)
    half = G.integrate_hj_geodesic(doubled, 0.5, 1e-3)
    assert np.linalg.norm(full.endpoint() - half.endpoint()) < 1e-6


# ---------------------------------------------------------------------------
# Distance estimation.
# ---------------------------------------------------------------------------


def test_cc_distance_coincident_points(rng):
    p = random_point(rng, 1)
    res = G.cc_distance(p, p)
    assert res.estimate == 0.0
    assert res.converged


def test_cc_distance_on_great_circle(rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    for arc in (0.4, 1.2, np.pi / 2):
        y = G.great_circle(p, v, arc)
        res = G.cc_distance(p, y)
        assert res.converged
        assert abs(res.estimate - arc) < 1e-4


def test_cc_distance_dominates_webster_distance(rng):
    for _ in range(15):
        x = random_point(rng, 1)
        y = random_point(rng, 1)
        res = G.cc_distance(x, y)
        assert res.converged
        assert G.riemannian_distance(x, y) <= res.estimate + 1e-6


def test_cc_distance_fiber_point(rng):
    # the i-rotated point is reached in closed form at length pi*sqrt(3)/2
    x = random_point(rng, 1)
    y = SpherePoint(times_i(x.coords), 1)
    res = G.cc_distance(x, y)
    assert res.converged
    assert abs(res.estimate - np.pi * np.sqrt(3) / 2) < 1e-6


def test_cc_distance_budget_exhaustion(rng):
    x = random_point(rng, 1)
    y = random_point(rng, 1)
    tiny = G.ShootingBudget(
        num_directions=2, num_b=1, b_span=0.0, t_max=0.05,
        coarse_samples=10, refine_candidates=1, refine_maxiter=3,
    )
    res = G.cc_distance(x, y, tiny)
    assert not res.converged
    assert res.endpoint_gap > tiny.endpoint_tol


def test_exp_map_distance_consistency(rng):
    x0 = G.s3_max_point(0.0, 1.0)
    frame = horizontal_frame(x0)
    w = frame.vectors[1].vec * (np.pi / 2)
    reached = G.exp_map(x0, w)
    res = G.cc_distance(x0, reached)
    assert res.converged
    assert res.estimate <= np.pi / 2 + 1e-6


# ---------------------------------------------------------------------------
# Profiles along geodesics and the reach set.
# ---------------------------------------------------------------------------


def _profile_trace(f, x0, direction, num=721):
    svals = np.linspace(0.0, 2 * np.pi, num)
    pts = np.array([G.great_circle(x0, direction, s).coords for s in svals])
    return G.GeodesicTrace(svals, pts, np.zeros_like(pts), np.zeros(num))


def test_cosine_profile_at_unit_parameters():
    f = kernel_quadratic(0.0, 1.0)
    x0 = G.s3_max_point(0.0, 1.0)
    assert_allclose(x0.coords, np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2))
    frame = horizontal_frame(x0)
    amp, freq, resid = G.eigen_along_geodesic(f, _profile_trace(f, x0, frame.vectors[0]))
    assert abs(amp - 1.0) < 1e-9
    assert abs(freq - 2.0) < 1e-9
    assert resid < 1e-9


def test_profile_fit_handles_repeated_minima():
    # over a full period the minimum value occurs twice; rounding noise
    # can make the later copy the literal argmin, which must not derail
    # the frequency seeding (regression: a = 0.5, b = 1.5, direction 0)
    f = kernel_quadratic(0.5, 1.5)
    x0 = G.s3_max_point(0.5, 1.5)
    frame = horizontal_frame(x0)
    for direction in frame.vectors:
        amp, freq, resid = G.eigen_along_geodesic(f, _profile_trace(f, x0, direction))
        assert abs(amp - float(np.hypot(0.5, 1.5))) < 1e-9
        assert abs(freq - 2.0) < 1e-9
        assert resid < 1e-9


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (0.5, 1.0), (-0.3, 0.8), (1.0, -2.0)])
def test_amplitude_recovers_alpha(a, b):
    f = kernel_quadratic(a, b)
    alpha = float(np.hypot(a, b))
    x0 = G.s3_max_point(a, b, psi=0.3)
    assert abs(f.value(x0) - alpha) < 1e-12
    frame = horizontal_frame(x0)
    amp, freq, resid = G.eigen_along_geodesic(f, _profile_trace(f, x0, frame.vectors[1]))
    assert abs(amp - alpha) < 1e-9
    assert abs(freq - 2.0) < 1e-9
    assert resid < 1e-9


def test_profile_fit_rejects_constant_field():
    const = ScalarField(Polynomial.constant(4, 1), 1)
    x0 = G.s3_max_point(0.0, 1.0)
    frame = horizontal_frame(x0)
    with pytest.raises(ValueError):
        G.eigen_along_geodesic(const, _profile_trace(const, x0, frame.vectors[0]))


def test_reach_set_requires_nonzero_b():
    with pytest.raises(ValueError):
        G.reach_set_half_pi(1.0, 0.0)
    with pytest.raises(ValueError):
        G.s3_max_point(1.0, 0.0)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (0.7, 1.1)])
def test_reach_set_is_degenerate_critical_circle(a, b):
    alpha = float(np.hypot(a, b))
    samples = G.reach_set_half_pi(a, b, num_samples=48)
    assert len(samples) == 48
    for s in samples:
        assert s.set_residual < 1e-8
        assert abs(s.f_value + alpha) < 1e-9
        assert s.grad_norm < 1e-9
        assert abs(s.hess_tt) < 1e-9


def test_reach_set_zero_a_matches_displayed_circle():
    # with a = 0, b = 1 the target is x2 = -x1, y2 = -y1, x1^2 + y1^2 = 1/2
    for s in G.reach_set_half_pi(0.0, 1.0, num_samples=16):
        x1, x2, y1, y2 = s.point.coords
        assert abs(x2 + x1) < 1e-9
        assert abs(y2 + y1) < 1e-9
        assert abs(x1 * x1 + y1 * y1 - 0.5) < 1e-9


# ---------------------------------------------------------------------------
# Trace export.
# ---------------------------------------------------------------------------


def test_trace_csv_round_trip(tmp_path, rng):
    p = random_point(rng, 1)
    v = random_horizontal(rng, p)
    trace = G.integrate_connection_geodesic(G.GeodesicState(p, v, 0.5), 0.1, 1e-3)
    path = tmp_path / "trace.csv"
    trace.to_csv(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == [
        "s", "x1", "x2", "x3", "x4", "v1", "v2", "v3", "v4",
        "b", "theta_vdot", "speed",
    ]
    assert len(rows) == len(trace.s) + 1
    first = [float(x) for x in rows[1]]
    assert first[0] == 0.0
    assert_allclose(first[1:5], p.coords)
    assert first[9] == 0.5
    last = [float(x) for x in rows[-1]]
    assert_allclose(last[1:5], trace.endpoint())
