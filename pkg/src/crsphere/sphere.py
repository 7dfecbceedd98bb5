"""The unit sphere S^(2n+1) in R^(2n+2) as a pseudohermitian manifold.

Coordinates are laid out as (x^1, ..., x^(n+1), y^1, ..., y^(n+1)) and
identified with C^(n+1) via z^j = x^j + i y^j.  The conventions used by
every other module are fixed here once:

  * Reeb field        T(p) = i p = (-y, x)
  * contact form      theta(v) = <i p, v>
  * horizontal space  H_p = Euclidean orthogonal complement of {p, i p}
  * complex structure J = ambient multiplication by i on H
  * Levi form         G(X, Y) = <X, Y> on H
  * Webster metric    g = round metric (Euclidean on tangent spaces)

Under this normalization the literal exterior derivative of theta
satisfies d theta(X, Y) = -2 g(X, JY); the factor 2 is a property of
the convention, not an error, and tests pin it down.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

UNIT_TOL = 1e-12
TYPE_TOL = 1e-12  # tolerance enforced on typed values
ARG_TOL = 1e-9    # tolerance for validating raw array arguments


def times_i(v):
    """Ambient multiplication by i: (x, y) -> (-y, x), on the last axis."""
    v = np.asarray(v, dtype=float)
    half = v.shape[-1] // 2
    return np.concatenate([-v[..., half:], v[..., :half]], axis=-1)


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """Unit vector in R^(2n+2), layout (x^1..x^(n+1), y^1..y^(n+1))."""

    coords: np.ndarray
    n: int

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        if self.n < 1:
            raise ValueError("CR dimension must be a positive integer")
        if coords.shape != (2 * self.n + 2,):
            raise ValueError(
                "expected %d coordinates, got shape %s"
                % (2 * self.n + 2, coords.shape)
            )
        if abs(np.linalg.norm(coords) - 1.0) > UNIT_TOL:
            raise ValueError("point is not on the unit sphere")

    @property
    def dim(self):
        return 2 * self.n + 2

    def reeb_coords(self):
        return times_i(self.coords)

    def __repr__(self):
        return "SpherePoint(n=%d, %s)" % (self.n, np.array2string(self.coords, precision=6))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Ambient vector attached to a point and orthogonal to it."""

    base: SpherePoint
    vec: np.ndarray
    horizontal: bool = False

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=float)
        object.__setattr__(self, "vec", vec)
        if vec.shape != self.base.coords.shape:
            raise ValueError("vector dimension does not match the base point")
        scale = max(1.0, float(np.linalg.norm(vec)))
        if abs(float(vec @ self.base.coords)) > TYPE_TOL * scale:
            raise ValueError("vector is not tangent to the sphere at its base")
        if self.horizontal:
            theta = float(self.base.reeb_coords() @ vec)
            if abs(theta) > TYPE_TOL * scale:
                raise ValueError("vector flagged horizontal has a Reeb component")

    @property
    def norm(self):
        return float(np.linalg.norm(self.vec))

    def __repr__(self):
        return "TangentVector(%s, horizontal=%s)" % (
            np.array2string(self.vec, precision=6),
            self.horizontal,
        )


def _vec_at(p, v, tol=ARG_TOL, what="vector"):
    """Unwrap a TangentVector or validate a raw array as tangent at p."""
    if isinstance(v, TangentVector):
        if v.base is not p and not np.array_equal(v.base.coords, p.coords):
            raise ValueError("tangent vector attached to a different base point")
        return v.vec
    v = np.asarray(v, dtype=float)
    scale = max(1.0, float(np.linalg.norm(v)))
    if abs(float(v @ p.coords)) > tol * scale:
        raise ValueError("%s is not tangent at the given point" % what)
    return v


def reeb(p):
    """Characteristic direction at p: the ambient vector i p."""
    return TangentVector(p, times_i(p.coords))


def contact_form(p, v):
    """theta(v) = <i p, v>; zero exactly on the horizontal space."""
    vec = _vec_at(p, v)
    return float(p.reeb_coords() @ vec)


def horizontal_project(p, v):
    """v minus theta(v) T; idempotent, kills the Reeb direction."""
    vec = _vec_at(p, v)
    t = p.reeb_coords()
    return TangentVector(p, vec - (t @ vec) * t, horizontal=True)


def is_horizontal(p, v, tol=ARG_TOL):
    vec = v.vec if isinstance(v, TangentVector) else np.asarray(v, dtype=float)
    scale = max(1.0, float(np.linalg.norm(vec)))
    return (
        abs(float(vec @ p.coords)) <= tol * scale
        and abs(float(p.reeb_coords() @ vec)) <= tol * scale
    )


def complex_structure(p, X):
    """J X = i X for horizontal X; defined on the horizontal space only."""
    vec = _vec_at(p, X)
    if abs(float(p.reeb_coords() @ vec)) > ARG_TOL * max(1.0, float(np.linalg.norm(vec))):
        raise ValueError("J is defined on horizontal vectors only")
    return TangentVector(p, times_i(vec), horizontal=True)


def levi_form(p, X, Y):
    """Positive form on the horizontal space; Euclidean under our gauge."""
    xv = _vec_at(p, X)
    yv = _vec_at(p, Y)
    t = p.reeb_coords()
    for v in (xv, yv):
        if abs(float(t @ v)) > ARG_TOL * max(1.0, float(np.linalg.norm(v))):
            raise ValueError("Levi form takes horizontal arguments")
    return float(xv @ yv)


def webster_metric(p, u, v):
    """Round metric on tangent vectors; extends the Levi form, T is unit."""
    uv = _vec_at(p, u)
    vv = _vec_at(p, v)
    return float(uv @ vv)


def omega_form(p, X, Y):
    """Omega(X, Y) = g(X, J Y), with J extended by J T = 0."""
    xv = _vec_at(p, X)
    yv = _vec_at(p, Y)
    t = p.reeb_coords()
    yh = yv - (t @ yv) * t
    return float(xv @ times_i(yh))


@dataclass(frozen=True, eq=False)
class HorizontalFrame:
    """Levi-orthonormal horizontal frame with X_(alpha+n) = J X_alpha."""

    base: SpherePoint
    vectors: tuple

    def __post_init__(self):
        n = self.base.n
        if len(self.vectors) != 2 * n:
            raise ValueError("frame must have 2n vectors")
        mat = np.array([v.vec for v in self.vectors])
        gram = mat @ mat.T
        if np.max(np.abs(gram - np.eye(2 * n))) > 1e-10:
            raise ValueError("frame is not Levi-orthonormal")
        for a in range(n):
            if np.max(np.abs(times_i(mat[a]) - mat[a + n])) > 1e-10:
                raise ValueError("frame does not satisfy X_(a+n) = J X_a")

    def matrix(self):
        """(2n, 2n+2) array of frame vectors as rows."""
        return np.array([v.vec for v in self.vectors])


def horizontal_frame(p):
    """Deterministic adapted frame at p.

    Gram-Schmidt over the horizontally projected ambient basis vectors in
    index order, skipping seeds whose projection is shorter than 1e-8;
    once n vectors are chosen the other half is their J-image.
    """
    q = p.coords
    t = times_i(q)
    m = p.dim
    chosen = []
    span = []  # chosen vectors together with their J-images
    for k in range(m):
        w = np.zeros(m)
        w[k] = 1.0
        w = w - (q[k]) * q - (t[k]) * t
        for u in span:
            w = w - (u @ w) * u
        norm = np.linalg.norm(w)
        if norm < 1e-8:
            continue
        w = w / norm
        chosen.append(w)
        span.extend([w, times_i(w)])
        if len(chosen) == p.n:
            break
    if len(chosen) < p.n:
        raise RuntimeError("failed to build a horizontal frame")  # unreachable
    vecs = chosen + [times_i(w) for w in chosen]
    return HorizontalFrame(p, tuple(TangentVector(p, v, horizontal=True) for v in vecs))


def s3_frame_coefficients(p):
    """Coefficient functions of the explicit S^3 frame off {x2 = y2 = 0}."""
    if p.n != 1:
        raise ValueError("explicit frame is specific to S^3")
    x1, x2, y1, y2 = p.coords
    den = x2 * x2 + y2 * y2
    if den < 1e-9:
        raise ValueError("point lies on the excluded circle {x2 = y2 = 0}")
    f = (x1 * x2 + y1 * y2) / den
    g = (x1 * y2 - y1 * x2) / den
    return f, g


def s3_explicit_frame(p):
    """The explicit (non-normalized) spanning pair X, Y of H(S^3).

    X = d/dx1 - F d/dx2 - G d/dy2 and Y = d/dy1 + G d/dx2 - F d/dy2 with
    F = (x1 x2 + y1 y2)/(x2^2 + y2^2), G = (x1 y2 - y1 x2)/(x2^2 + y2^2).
    """
    f, g = s3_frame_coefficients(p)
    xv = np.array([1.0, -f, 0.0, -g])
    yv = np.array([0.0, g, 1.0, -f])
    return (
        TangentVector(p, xv, horizontal=True),
        TangentVector(p, yv, horizontal=True),
    )


# ----------------------------------------------------------------------
# Sampling helpers (seeded by the caller; used by tests and suites).
# ----------------------------------------------------------------------


def random_point(rng, n):
    v = rng.standard_normal(2 * n + 2)
    return SpherePoint(v / np.linalg.norm(v), n)


def random_horizontal(rng, p, unit=True):
    q = p.coords
    t = times_i(q)
    w = rng.standard_normal(p.dim)
    w = w - (q @ w) * q - (t @ w) * t
    if unit:
        w = w / np.linalg.norm(w)
    return TangentVector(p, w, horizontal=True)


def random_tangent(rng, p, unit=True):
    q = p.coords
    w = rng.standard_normal(p.dim)
    w = w - (q @ w) * q
    if unit:
        w = w / np.linalg.norm(w)
    return TangentVector(p, w)
