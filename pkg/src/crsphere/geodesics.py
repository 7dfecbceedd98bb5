"""Sub-Riemannian and adapted-connection geodesics on the spheres.

Two independent integrations of the same curves:

  * the ambient second-order ODE of the adapted connection,
        gamma'' = -|gamma'|^2 gamma + (2 theta(gamma') - 2 b) i pi_H gamma',
    run with a classical fixed-step fourth-order integrator, the
    position renormalized to the sphere each step;

  * the Hamilton-Jacobi system of H(x, xi) = (1/2) g^ij(x) xi_i xi_j in
    stereographic charts, with the cometric obtained analytically from
    the conformal chart Jacobian and the horizontal projector.

On the spheres the multiplier b is constant along a geodesic, and a
curve solves the connection equation with parameter b exactly when its
cotangent lift carries Reeb component b; the canonical lift is b = 1.
Unit-speed solutions also have the closed form

    gamma(t) = e^(i w1 t) c1 + e^(-i w2 t) c2,
    w1 = sqrt(1+b^2) - b,  w2 = sqrt(1+b^2) + b,

(complex scalar action on C^(n+1)), which stays on the sphere exactly
and is used as the shooting engine for distance estimates and as an
oracle for the integrators.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import optimize

from .calculus import ScalarField
from .polynomials import Polynomial
from .sphere import SpherePoint, TangentVector, horizontal_frame, times_i

MAX_STEP = 1e-2


# ----------------------------------------------------------------------
# States and traces.
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GeodesicState:
    """Initial data (position, horizontal velocity, multiplier b)."""

    x: SpherePoint
    v: TangentVector
    b: float = 0.0

    def __post_init__(self):
        if not self.v.horizontal:
            raise ValueError("geodesic initial velocity must be horizontal")


@dataclass(eq=False)
class GeodesicTrace:
    """Discretized curve with conservation diagnostics."""

    s: np.ndarray
    points: np.ndarray       # (N, 2n+2)
    velocities: np.ndarray   # (N, 2n+2)
    b: np.ndarray            # (N,)
    events: list = field(default_factory=list)

    @property
    def theta_vdot(self):
        return np.einsum("ij,ij->i", times_i(self.points), self.velocities)

    @property
    def speed(self):
        return np.linalg.norm(self.velocities, axis=1)

    @property
    def max_lengthiness_violation(self):
        return float(np.max(np.abs(self.theta_vdot)))

    @property
    def max_speed_drift(self):
        sp = self.speed
        return float(np.max(np.abs(sp - sp[0])))

    def endpoint(self):
        return self.points[-1]

    def to_csv(self, path):
        """One row per sample: s, x..., v..., b, theta_vdot, speed."""
        m = self.points.shape[1]
        header = (
            ["s"]
            + ["x%d" % (k + 1) for k in range(m)]
            + ["v%d" % (k + 1) for k in range(m)]
            + ["b", "theta_vdot", "speed"]
        )
        theta = self.theta_vdot
        speed = self.speed
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for i in range(len(self.s)):
                row = (
                    [repr(float(self.s[i]))]
                    + [repr(float(x)) for x in self.points[i]]
                    + [repr(float(v)) for v in self.velocities[i]]
                    + [repr(float(self.b[i])), repr(float(theta[i])), repr(float(speed[i]))]
                )
                writer.writerow(row)


# ----------------------------------------------------------------------
# Connection geodesics.
# ----------------------------------------------------------------------


def great_circle(x0, v, s):
    """x0 cos s + v sin s: the b = 0 geodesic in closed form."""
    vec = v.vec if isinstance(v, TangentVector) else np.asarray(v, dtype=float)
    if abs(np.linalg.norm(vec) - 1.0) > 1e-9:
        raise ValueError("great_circle expects a unit direction")
    q = x0.coords
    t = times_i(q)
    if abs(float(q @ vec)) > 1e-9 or abs(float(t @ vec)) > 1e-9:
        raise ValueError("great_circle expects a horizontal direction")
    out = q * np.cos(s) + vec * np.sin(s)
    return SpherePoint(out / np.linalg.norm(out), x0.n)


def _connection_rhs(q, v, b, torsion):
    t = times_i(q)
    vh = v - (q @ v) * q - (t @ v) * t
    theta_v = float(t @ v)
    acc = -(v @ v) * q + (2.0 * theta_v - 2.0 * b) * times_i(vh)
    db = torsion(q, v) if torsion is not None else 0.0
    return v, acc, db


def integrate_connection_geodesic(init, s_max, step, torsion=None):
    """Fixed-step RK4 for the connection geodesic ODE.

    The position is renormalized to the sphere after every step (the
    correction is far below the integrator error).  The multiplier
    evolves by b' = A(gamma', gamma'); `torsion` supplies that
    quadratic form, and every sphere model leaves it at its default of
    zero, freezing b along the flow.
    """
    steps = _step_schedule(s_max, step)
    q = init.x.coords.copy()
    v = init.v.vec.copy()
    b = float(init.b)
    svals = np.empty(len(steps) + 1)
    points = np.empty((len(steps) + 1, q.size))
    vels = np.empty((len(steps) + 1, q.size))
    bvals = np.empty(len(steps) + 1)
    svals[0] = 0.0
    points[0] = q
    vels[0] = v
    bvals[0] = b
    s = 0.0
    for i, h in enumerate(steps, start=1):
        k1q, k1v, k1b = _connection_rhs(q, v, b, torsion)
        k2q, k2v, k2b = _connection_rhs(
            q + 0.5 * h * k1q, v + 0.5 * h * k1v, b + 0.5 * h * k1b, torsion
        )
        k3q, k3v, k3b = _connection_rhs(
            q + 0.5 * h * k2q, v + 0.5 * h * k2v, b + 0.5 * h * k2b, torsion
        )
        k4q, k4v, k4b = _connection_rhs(q + h * k3q, v + h * k3v, b + h * k3b, torsion)
        q = q + (h / 6.0) * (k1q + 2 * k2q + 2 * k3q + k4q)
        v = v + (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)
        b = b + (h / 6.0) * (k1b + 2 * k2b + 2 * k3b + k4b)
        q = q / np.linalg.norm(q)
        s += h
        svals[i] = s
        points[i] = q
        vels[i] = v
        bvals[i] = b
    return GeodesicTrace(svals, points, vels, bvals)


def _step_schedule(s_max, step):
    """Fixed steps, with one shorter final step landing exactly on s_max."""
    if step <= 0:
        raise ValueError("step must be positive")
    if step > MAX_STEP:
        raise ValueError("step must be <= %g" % MAX_STEP)
    if s_max <= 0:
        raise ValueError("the integration length must be positive")
    nfull = int(s_max / step)
    rem = s_max - nfull * step
    steps = [step] * nfull
    if rem > 1e-12:
        steps.append(rem)
    return steps


def closed_form_geodesic(x0, v, b, s):
    """Unit-speed connection geodesic in closed form.

    Returns (points, velocities) sampled at the parameter values s;
    exact up to floating point, stays on the sphere identically.
    """
    q = x0.coords if isinstance(x0, SpherePoint) else np.asarray(x0, dtype=float)
    vec = v.vec if isinstance(v, TangentVector) else np.asarray(v, dtype=float)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    half = q.size // 2
    z0 = q[:half] + 1j * q[half:]
    w0 = vec[:half] + 1j * vec[half:]
    root = np.sqrt(1.0 + b * b)
    w1 = root - b
    w2 = root + b
    c1 = (w2 * z0 - 1j * w0) / (w1 + w2)
    c2 = (w1 * z0 + 1j * w0) / (w1 + w2)
    e1 = np.exp(1j * w1 * s)[:, None]
    e2 = np.exp(-1j * w2 * s)[:, None]
    z = e1 * c1[None, :] + e2 * c2[None, :]
    dz = 1j * w1 * e1 * c1[None, :] - 1j * w2 * e2 * c2[None, :]
    points = np.concatenate([z.real, z.imag], axis=1)
    vels = np.concatenate([dz.real, dz.imag], axis=1)
    return points, vels


def exp_map(x0, w):
    """Exponential of the adapted connection on a horizontal vector.

    gamma(|w|) along the b = 0 geodesic with direction w/|w|; the curve
    is lengthy, so the distance estimate can never exceed |w|.
    """
    vec = w.vec if isinstance(w, TangentVector) else np.asarray(w, dtype=float)
    r = float(np.linalg.norm(vec))
    if r == 0.0:
        return x0
    return great_circle(x0, vec / r, r)


# ----------------------------------------------------------------------
# Stereographic charts and the Hamilton-Jacobi system.
# ----------------------------------------------------------------------


class Chart:
    """Stereographic chart from one of the two poles +-e_(2n+2)."""

    # Handoff once the point climbs past this height toward the pole;
    # the other chart then sees it well inside its own domain.
    HANDOFF_HEIGHT = 0.55

    def __init__(self, n, sign):
        self.n = n
        self.sign = 1 if sign >= 0 else -1
        self.m = 2 * n + 2

    def pole(self):
        p = np.zeros(self.m)
        p[-1] = self.sign
        return p

    def height(self, q):
        return self.sign * q[-1]

    def to_coords(self, q):
        h = self.height(q)
        if h >= 1.0 - 1e-14:
            raise ValueError("point at the chart pole")
        return q[:-1] / (1.0 - h)

    def from_coords(self, u):
        d = float(u @ u) + 1.0
        q = np.empty(self.m)
        q[:-1] = 2.0 * u / d
        q[-1] = self.sign * (d - 2.0) / d
        return q

    def jacobian(self, u):
        """d(from_coords)/du, a (2n+2, 2n+1) matrix; conformal columns."""
        d = float(u @ u) + 1.0
        jac = np.zeros((self.m, self.m - 1))
        jac[: self.m - 1, :] = (2.0 / d) * np.eye(self.m - 1)
        pm = self.pole() - np.concatenate([u, [0.0]])
        jac += (4.0 / (d * d)) * np.outer(pm, u)
        return jac

    def cometric(self, u):
        """g^ij(u) = (D^2/4) I - (D^4/16) m m^T with m_i = <dq/du_i, iq>.

        This is the pushforward of the horizontal projector; the chart
        Jacobian J satisfies J^T J = (4/D^2) I and J^T q = 0, so only
        the Reeb covector column survives the subtraction.
        """
        d = float(u @ u) + 1.0
        q = self.from_coords(u)
        jac = self.jacobian(u)
        mvec = jac.T @ times_i(q)
        return (d * d / 4.0) * np.eye(self.m - 1) - (d**4 / 16.0) * np.outer(mvec, mvec)


@dataclass(eq=False)
class CotangentState:
    """Chart position, covector, and the chart carrying them."""

    x: np.ndarray
    xi: np.ndarray
    chart: int
    n: int

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.xi = np.asarray(self.xi, dtype=float)
        if self.x.shape != (2 * self.n + 1,) or self.xi.shape != self.x.shape:
            raise ValueError("chart state of the wrong dimension")


def _charts(n):
    return (Chart(n, +1), Chart(n, -1))


def cotangent_lift(p, v, reeb_component=1.0):
    """Covector with xi(X) = g(v, X) on H and xi(T) = reeb_component.

    The ambient representative is v + reeb_component * i p; pairing it
    with the chart Jacobian gives the chart covector.
    """
    vec = v.vec if isinstance(v, TangentVector) else np.asarray(v, dtype=float)
    q = p.coords
    m_amb = vec + float(reeb_component) * times_i(q)
    charts = _charts(p.n)
    cid = 0 if charts[0].height(q) <= 0.0 else 1
    chart = charts[cid]
    u = chart.to_coords(q)
    xi = chart.jacobian(u).T @ m_amb
    return CotangentState(u, xi, cid, p.n)


def canonical_lift(p, v):
    """The canonical cotangent lift: unit Reeb component."""
    return cotangent_lift(p, v, 1.0)


def hamiltonian(state):
    chart = _charts(state.n)[state.chart]
    g = chart.cometric(state.x)
    return 0.5 * float(state.xi @ g @ state.xi)


def _hj_rhs(chart, u, xi, fd_step):
    g = chart.cometric(u)
    du = g @ xi
    dxi = np.empty_like(xi)
    for k in range(u.size):
        shift = np.zeros_like(u)
        shift[k] = fd_step
        hp = 0.5 * float(xi @ chart.cometric(u + shift) @ xi)
        hm = 0.5 * float(xi @ chart.cometric(u - shift) @ xi)
        dxi[k] = -(hp - hm) / (2.0 * fd_step)
    return du, dxi


def integrate_hj_geodesic(init, t_max, step, fd_step=1e-5):
    """Fixed-step RK4 for the Hamilton-Jacobi system in charts.

    The derivative of the cometric is taken by central differences of
    the Hamiltonian in the chart coordinates.  Chart exits are events:
    when the curve climbs toward the active pole the state is handed to
    the antipodal chart and integration continues.
    """
    steps = _step_schedule(t_max, step)
    charts = _charts(init.n)
    cid = init.chart
    u = init.x.copy()
    xi = init.xi.copy()
    m = 2 * init.n + 2
    svals = np.empty(len(steps) + 1)
    points = np.empty((len(steps) + 1, m))
    vels = np.empty((len(steps) + 1, m))
    events = []

    def record(i, t):
        chart = charts[cid]
        q = chart.from_coords(u)
        jac = chart.jacobian(u)
        svals[i] = t
        points[i] = q
        vels[i] = jac @ (chart.cometric(u) @ xi)

    record(0, 0.0)
    t = 0.0
    for i, h in enumerate(steps, start=1):
        chart = charts[cid]
        k1u, k1x = _hj_rhs(chart, u, xi, fd_step)
        k2u, k2x = _hj_rhs(chart, u + 0.5 * h * k1u, xi + 0.5 * h * k1x, fd_step)
        k3u, k3x = _hj_rhs(chart, u + 0.5 * h * k2u, xi + 0.5 * h * k2x, fd_step)
        k4u, k4x = _hj_rhs(chart, u + h * k3u, xi + h * k3x, fd_step)
        u = u + (h / 6.0) * (k1u + 2 * k2u + 2 * k3u + k4u)
        xi = xi + (h / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        t += h
        record(i, t)
        q = charts[cid].from_coords(u)
        if charts[cid].height(q) > Chart.HANDOFF_HEIGHT:
            # Hand the state to the antipodal chart.
            old = charts[cid]
            m_amb = old.jacobian(u) @ np.linalg.solve(
                old.jacobian(u).T @ old.jacobian(u), xi
            )
            new_cid = 1 - cid
            new = charts[new_cid]
            u_new = new.to_coords(q)
            xi_new = new.jacobian(u_new).T @ m_amb
            events.append({"t": t, "from_chart": cid, "to_chart": new_cid})
            cid, u, xi = new_cid, u_new, xi_new
    trace = GeodesicTrace(
        svals, points, vels, np.full(len(steps) + 1, np.nan), events=events
    )
    return trace


# ----------------------------------------------------------------------
# Carnot-Caratheodory distance by shooting.
# ----------------------------------------------------------------------


def riemannian_distance(x, y):
    qx = x.coords if isinstance(x, SpherePoint) else np.asarray(x, dtype=float)
    qy = y.coords if isinstance(y, SpherePoint) else np.asarray(y, dtype=float)
    return float(np.arccos(np.clip(qx @ qy, -1.0, 1.0)))


@dataclass(frozen=True)
class ShootingBudget:
    """Grid x refinement budget for the distance estimator."""

    num_directions: int = 24
    num_b: int = 13
    b_span: float = 3.0
    t_max: float = 4.2
    coarse_samples: int = 1400
    refine_candidates: int = 6
    refine_maxiter: int = 600
    endpoint_tol: float = 1e-5
    seed: int = 0


@dataclass(eq=False)
class CCDistanceResult:
    estimate: float
    converged: bool
    endpoint_gap: float
    direction: np.ndarray
    b: float
    trace: GeodesicTrace


def _direction_grid(p, budget):
    frame = horizontal_frame(p)
    mat = frame.matrix()
    k = mat.shape[0]
    if k == 2:
        phis = np.linspace(0.0, 2 * np.pi, budget.num_directions, endpoint=False)
        return np.cos(phis)[:, None] * mat[0] + np.sin(phis)[:, None] * mat[1]
    rng = np.random.default_rng(budget.seed)
    coeffs = rng.standard_normal((budget.num_directions, k))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    return coeffs @ mat


def _unit_horizontal(p, w):
    q = p.coords
    t = times_i(q)
    w = w - (q @ w) * q - (t @ w) * t
    return w / np.linalg.norm(w)


def cc_distance(x, y, budget=None):
    """Upper bound on the Carnot-Caratheodory distance by shooting.

    Scans unit horizontal directions and multiplier values b at x,
    follows the closed-form geodesics, and refines the best endpoint
    matches; the reported estimate is the parameter length of the
    shortest refined solution that hits y within the endpoint
    tolerance.  A certificate trace of the winning curve is returned;
    when nothing converges the best effort is flagged.
    """
    budget = budget or ShootingBudget()
    qx, qy = x.coords, (y.coords if isinstance(y, SpherePoint) else np.asarray(y))
    if np.array_equal(qx, qy):
        trace = GeodesicTrace(
            np.zeros(1), qx[None, :].copy(), np.zeros((1, qx.size)), np.zeros(1)
        )
        return CCDistanceResult(0.0, True, 0.0, np.zeros(qx.size), 0.0, trace)

    dirs = _direction_grid(x, budget)
    bvals = np.linspace(-budget.b_span, budget.b_span, budget.num_b)
    ts = np.linspace(1e-4, budget.t_max, budget.coarse_samples)

    candidates = []
    for v in dirs:
        for b in bvals:
            pts, _ = closed_form_geodesic(x, v, b, ts)
            gaps = np.linalg.norm(pts - qy[None, :], axis=1)
            k = int(np.argmin(gaps))
            candidates.append((ts[k], float(gaps[k]), v, float(b)))
    # Seed the refinement with the closest approaches; add the shortest
    # curves that came reasonably near so short solutions are preferred
    # when several exist.
    by_gap = sorted(candidates, key=lambda c: c[1])
    near = sorted((c for c in candidates if c[1] < 0.25), key=lambda c: c[0])
    shortlist = []
    for entry in by_gap[: budget.refine_candidates] + near[:4]:
        if not any(entry is kept for kept in shortlist):
            shortlist.append(entry)

    def endpoint_gap(params, v0, w0):
        phi, b, t = params
        v = np.cos(phi) * v0 + np.sin(phi) * w0
        pts, _ = closed_form_geodesic(x, v, b, [abs(t)])
        return float(np.linalg.norm(pts[0] - qy))

    hits = []
    misses = []
    for t0, gap0, v0, b0 in shortlist:
        w0 = _unit_horizontal(x, times_i(v0))
        res = optimize.minimize(
            endpoint_gap,
            np.array([0.0, b0, t0]),
            args=(v0, w0),
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": budget.refine_maxiter},
        )
        phi, b, t = res.x
        gap = float(res.fun)
        v = _unit_horizontal(x, np.cos(phi) * v0 + np.sin(phi) * w0)
        entry = (abs(float(t)), gap, v, float(b))
        (hits if gap <= budget.endpoint_tol else misses).append(entry)
    if hits:
        best = min(hits, key=lambda e: e[0])
    elif misses:
        best = min(misses, key=lambda e: e[1])
    else:
        best = candidates[0]
    t, gap, v, b = best
    samples = np.linspace(0.0, t, 256)
    pts, vels = closed_form_geodesic(x, v, b, samples)
    trace = GeodesicTrace(samples, pts, vels, np.full(samples.size, b))
    return CCDistanceResult(
        estimate=float(t),
        converged=gap <= budget.endpoint_tol,
        endpoint_gap=gap,
        direction=v,
        b=b,
        trace=trace,
    )


# ----------------------------------------------------------------------
# Eigenfunction profile along a geodesic, and the reach set at pi/2.
# ----------------------------------------------------------------------


def eigen_along_geodesic(f, trace):
    """Least-squares fit of A cos(w s) to f along a trace.

    The trace must start at a maximum point of f; returns (amplitude,
    frequency, max fit residual).  The frequency is seeded from the
    first near-minimal sample (a periodic trace repeats its minimum, so
    a bare argmin may land on a later copy and mislead the optimizer);
    a few harmonically related seeds are tried and the best fit kept.
    """
    vals = np.array([f.poly.evaluate(pt) for pt in trace.points])
    spread = float(np.ptp(vals))
    if spread < 1e-12:
        raise ValueError("field is constant along the trace; nothing to fit")
    s = np.asarray(trace.s, dtype=float)
    a0 = vals[0]
    near_min = np.nonzero(vals <= np.min(vals) + 1e-9 * spread)[0]
    s_min = s[int(near_min[0])]
    w0 = np.pi / s_min if s_min > 0 else 1.0

    def model(t, a, w):
        return a * np.cos(w * t)

    best = None
    for seed in (w0, 2.0 * w0, 0.5 * w0):
        try:
            (a_fit, w_fit), _ = optimize.curve_fit(model, s, vals, p0=[a0, seed])
        except RuntimeError:
            continue
        residual = float(np.max(np.abs(model(s, a_fit, w_fit) - vals)))
        if best is None or residual < best[2]:
            best = (float(a_fit), float(abs(w_fit)), residual)
    if best is None:
        raise ValueError("cosine fit did not converge from any seed")
    return best


def s3_max_point(a, b, psi=0.0):
    """A maximum point of f = a(x1^2+y1^2-x2^2-y2^2) + 2b(x1 x2 + y1 y2).

    The maximum value is alpha = sqrt(a^2 + b^2); the maximum set is the
    unit circle of the plane x2 = A x1, y2 = A y1 with A = (alpha - a)/b,
    so the radius in the (x1, y1) trace variables is
    sqrt((alpha + a)/(2 alpha)).  psi selects the point on that circle.
    """
    if b == 0:
        raise ValueError("the profile requires b != 0")
    alpha = float(np.hypot(a, b))
    big_a = (alpha - a) / b
    r = np.sqrt((alpha + a) / (2.0 * alpha))
    xi = r * np.cos(psi)
    eta = r * np.sin(psi)
    coords = np.array([xi, big_a * xi, eta, big_a * eta])
    return SpherePoint(coords / np.linalg.norm(coords), 1)


@dataclass(eq=False)
class ReachSample:
    point: SpherePoint
    set_residual: float
    resolved_order: str  # which reading of the target tuple matched
    f_value: float
    grad_norm: float
    hess_tt: float


def _set_residual(pt, a, b):
    """Distance of a point from the parametrized target set, both readings.

    Interleaved reading: tuple slots are (x1, y1, x2, y2); literal
    reading: slots follow the storage layout (x1, x2, y1, y2).
    """
    alpha = float(np.hypot(a, b))
    c = b / (alpha - a)
    radius_sq = (alpha - a) / (2.0 * alpha)
    x1, x2, y1, y2 = pt
    interleaved = max(
        abs(x2 + c * x1), abs(y2 + c * y1), abs(x1 * x1 + y1 * y1 - radius_sq)
    )
    literal = max(
        abs(y1 + c * x1), abs(y2 + c * x2), abs(x1 * x1 + x2 * x2 - radius_sq)
    )
    if interleaved <= literal:
        return interleaved, "interleaved"
    return literal, "literal"


def reach_set_half_pi(a, b, num_samples=64, psi=0.0):
    """Sample the set of points reached at parameter pi/2.

    Follows unit-speed lengthy geodesics from a maximum point of the
    degree-2 profile; every reached point must lie on the parametrized
    target circle, sit at the minimum value -alpha, and be a degenerate
    critical point.
    """
    if b == 0:
        raise ValueError("b must be nonzero")
    x0 = s3_max_point(a, b, psi)
    frame = horizontal_frame(x0)
    mat = frame.matrix()
    terms = {
        (2, 0, 0, 0): a, (0, 0, 2, 0): a, (0, 2, 0, 0): -a, (0, 0, 0, 2): -a,
        (1, 1, 0, 0): 2 * b, (0, 0, 1, 1): 2 * b,
    }
    f = ScalarField(Polynomial(4, {k: _exactify(v) for k, v in terms.items() if v}), 1)
    samples = []
    phis = np.linspace(0.0, 2 * np.pi, num_samples, endpoint=False)
    for phi in phis:
        v = np.cos(phi) * mat[0] + np.sin(phi) * mat[1]
        pt = great_circle(x0, v, np.pi / 2.0)
        resid, order = _set_residual(pt.coords, a, b)
        grad = np.array([g.evaluate(pt.coords) for g in f.grad_polys])
        grad_t = grad - float(grad @ pt.coords) * pt.coords
        samples.append(
            ReachSample(
                point=pt,
                set_residual=resid,
                resolved_order=order,
                f_value=f.value(pt),
                grad_norm=float(np.linalg.norm(grad_t)),
                hess_tt=f.t0t0_poly.evaluate(pt.coords),
            )
        )
    return samples


def _exactify(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    return Fraction(float(v))
