"""Hyperbolic geometry in the hyperboloid (Minkowski) model.

Points live on the upper sheet of the unit hyperboloid ``<x,x> = -1`` in a
Minkowski ambient space with signature ``(-, +, ..., +)``, timelike
coordinate first.  In this model distances, geodesics, reflections and
perpendicular feet are all closed-form Minkowski linear algebra, which is
why it is the single internal representation throughout the package.  The
Poincare ball appears only as an export chart (`to_poincare_ball`).

Every operation that produces a point renormalizes it back onto the
hyperboloid, so rounding error cannot accumulate multiplicatively along a
computation chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Representation invariants (unit norms, tangency) must hold to REP_TOL;
# geometric identities (incidence, distance relations) to GEOM_TOL.
REP_TOL = 1e-12
GEOM_TOL = 1e-10


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a flat coordinate vector, got shape {v.shape}")
    return v


def mink_inner(x, y) -> float:
    """Minkowski inner product ``-x0*y0 + sum(xi*yi)``, timelike coordinate first."""
    xv = _as_vector(x)
    yv = _as_vector(y)
    if xv.shape != yv.shape:
        raise ValueError(f"dimension mismatch: {xv.shape} vs {yv.shape}")
    return float(-xv[0] * yv[0] + xv[1:] @ yv[1:])


def safe_arccosh(c: float, tol: float = REP_TOL) -> float:
    """arccosh that forgives arguments within ``tol`` below 1, and no more."""
    if c < 1.0:
        if c < 1.0 - tol:
            raise ValueError(f"arccosh argument {c!r} below 1 beyond tolerance")
        return 0.0
    return float(np.arccosh(c))


@dataclass(frozen=True, eq=False)
class HPoint:
    """A point on the upper sheet of the unit hyperboloid.

    The on-sheet check scales its tolerance with x0^2: evaluating <x,x>
    cancels two terms of that size, so a fixed absolute tolerance would
    reject perfectly normalized points far from the basepoint.
    """

    coords: np.ndarray

    def __post_init__(self):
        v = np.array(_as_vector(self.coords), dtype=np.float64, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "coords", v)
        q = mink_inner(v, v)
        if abs(q + 1.0) > REP_TOL * max(1.0, v[0] * v[0]):
            raise ValueError(f"not on the unit hyperboloid: <x,x> = {q!r}")
        if v[0] <= 0.0:
            raise ValueError("timelike coordinate must be positive (upper sheet)")

    @classmethod
    def from_vector(cls, v) -> "HPoint":
        """Rescale a timelike vector onto the upper sheet (the canonical renormalization)."""
        w = _as_vector(v)
        q = mink_inner(w, w)
        if q >= 0.0:
            raise ValueError(f"cannot normalize non-timelike vector (<v,v> = {q!r})")
        w = w / np.sqrt(-q)
        if w[0] < 0.0:
            raise ValueError("timelike vector points into the lower sheet")
        return cls(w)

    @classmethod
    def basepoint(cls, ambient_dim: int) -> "HPoint":
        """The point (1, 0, ..., 0)."""
        v = np.zeros(ambient_dim)
        v[0] = 1.0
        return cls(v)

    @property
    def ambient_dim(self) -> int:
        return self.coords.shape[0]


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """Totally geodesic codimension-one subspace, stored as a unit spacelike normal.

    The hyperplane is the set of points Minkowski-orthogonal to ``normal``;
    the normal's sign fixes an orientation via the signed margin ``<P, u>``.
    """

    normal: np.ndarray

    def __post_init__(self):
        u = np.array(_as_vector(self.normal), dtype=np.float64, copy=True)
        u.setflags(write=False)
        object.__setattr__(self, "normal", u)
        q = mink_inner(u, u)
        # same scale-aware tolerance as HPoint: cancellation in <u,u> grows as u0^2
        if abs(q - 1.0) > REP_TOL * max(1.0, u[0] * u[0]):
            raise ValueError(f"normal must be unit spacelike: <u,u> = {q!r}")

    def margin(self, p: HPoint) -> float:
        """Signed incidence margin ``<P, u>``; zero exactly on the hyperplane."""
        return mink_inner(p.coords, self.normal)


def unit_tangent(a: HPoint, b: HPoint) -> np.ndarray:
    """Unit tangent vector at A pointing along the geodesic toward B."""
    w = b.coords + mink_inner(a.coords, b.coords) * a.coords
    q = mink_inner(w, w)
    # <w,w> = sinh^2 d(A,B), so q <= 0 only when the points coincide
    if q <= 0.0:
        raise ValueError("points coincide; tangent direction undefined")
    return w / np.sqrt(q)


@dataclass(frozen=True, eq=False)
class TangentVec:
    """Unit tangent vector attached to a base point: a geodesic direction."""

    base: HPoint
    direction: np.ndarray

    def __post_init__(self):
        d = np.array(_as_vector(self.direction), dtype=np.float64, copy=True)
        d.setflags(write=False)
        object.__setattr__(self, "direction", d)
        if d.shape != self.base.coords.shape:
            raise ValueError("direction dimension does not match base point")
        x0 = self.base.coords[0]
        q = mink_inner(d, d)
        if abs(q - 1.0) > REP_TOL * max(1.0, d[0] * d[0]):
            raise ValueError(f"direction must be unit spacelike: <v,v> = {q!r}")
        t = mink_inner(self.base.coords, d)
        if abs(t) > REP_TOL * max(1.0, abs(x0 * d[0])):
            raise ValueError(f"direction must be tangent to base point: <x,v> = {t!r}")

    @classmethod
    def toward(cls, a: HPoint, b: HPoint) -> "TangentVec":
        return cls(a, unit_tangent(a, b))

    @classmethod
    def from_raw(cls, base: HPoint, v) -> "TangentVec":
        """Project an ambient vector onto the tangent space at ``base`` and normalize."""
        w = _as_vector(v).astype(np.float64, copy=True)
        w = w + mink_inner(base.coords, w) * base.coords
        q = mink_inner(w, w)
        if q <= 0.0:
            raise ValueError("vector has no spacelike tangential component")
        return cls(base, w / np.sqrt(q))


def dist(a: HPoint, b: HPoint) -> float:
    """Hyperbolic distance ``arccosh(-<A,B>)``."""
    return safe_arccosh(-mink_inner(a.coords, b.coords))


def chord_dist(a: HPoint, b: HPoint) -> float:
    """Minkowski norm of A - B, equal to 2 sinh(d/2).

    Agrees with `dist` to third order for nearby points and, unlike the
    arccosh route, resolves separations all the way down to rounding level
    (arccosh flattens near 1 and cannot see below ~1e-8).  The residual
    metric of choice whenever two points are expected to coincide.
    """
    d = a.coords - b.coords
    return float(np.sqrt(max(mink_inner(d, d), 0.0)))


def geodesic_point(a: HPoint, b: HPoint, s: float) -> HPoint:
    """The point at arclength ``s`` from A along the geodesic through A toward B.

    ``s`` may be negative (behind A) or exceed d(A,B) (beyond B); the
    geodesic is parametrized by arclength in both directions.
    """
    u = unit_tangent(a, b)
    return HPoint.from_vector(np.cosh(s) * a.coords + np.sinh(s) * u)


def segment_defect(p: HPoint, a: HPoint, b: HPoint) -> float:
    """Triangle-inequality defect ``d(A,P) + d(P,B) - d(A,B)``.

    Non-negative always; zero exactly when P lies on the segment [A, B].
    """
    return dist(a, p) + dist(p, b) - dist(a, b)


def reflect(h: Hyperplane, p: HPoint) -> HPoint:
    """Reflect a point across the hyperplane: ``P - 2<P,u>u`` (isometric involution)."""
    return HPoint.from_vector(p.coords - 2.0 * h.margin(p) * h.normal)


def reflect_vector(h: Hyperplane, v) -> np.ndarray:
    w = _as_vector(v)
    return w - 2.0 * mink_inner(w, h.normal) * h.normal


def reflect_tangent(h: Hyperplane, t: TangentVec) -> TangentVec:
    """Push a tangent vector through the reflection (base and direction both move)."""
    return TangentVec(reflect(h, t.base), reflect_vector(h, t.direction))


def hyperplane_through(points, orthogonal_to=()) -> Hyperplane:
    """The hyperplane through the given points, with extra orthogonality constraints.

    The coordinate rows of ``points`` together with the raw vectors in
    ``orthogonal_to`` must span a subspace of rank ``ambient_dim - 1``; the
    normal is then the one-dimensional Minkowski orthocomplement, computed
    from an SVD nullspace.  Raises if the span is rank-deficient, if the
    system is overdetermined, or if the complement is not spacelike (no
    geodesic hyperplane contains the data).
    """
    rows = [p.coords if isinstance(p, HPoint) else _as_vector(p) for p in points]
    rows.extend(_as_vector(v) for v in orthogonal_to)
    if not rows:
        raise ValueError("need at least one point or constraint")
    m = rows[0].shape[0]
    a = np.vstack(rows)
    if a.shape[1] != m:
        raise ValueError("inconsistent ambient dimensions")
    # <r, u> = (G r) . u with G = diag(-1, 1, ..., 1), so flip the timelike column
    a = a.copy()
    a[:, 0] = -a[:, 0]
    _, sv, vt = np.linalg.svd(a)
    rank = int(np.sum(sv > max(a.shape) * np.finfo(np.float64).eps * sv[0]))
    if rank != m - 1:
        raise ValueError(f"constraints span rank {rank}, need {m - 1} for a unique hyperplane")
    u = vt[-1]
    q = mink_inner(u, u)
    if q <= REP_TOL:
        raise ValueError("orthocomplement is not spacelike; no geodesic hyperplane fits")
    return Hyperplane(u / np.sqrt(q))


def foot_of_perpendicular(h: Hyperplane, p: HPoint) -> HPoint:
    """Nearest point of the hyperplane to P; satisfies ``sinh d(P, foot) = |<P,u>|``."""
    return HPoint.from_vector(p.coords - h.margin(p) * h.normal)


def angle_at(p: HPoint, a: HPoint, b: HPoint) -> float:
    """Angle at P between the geodesics toward A and toward B, in [0, pi]."""
    c = mink_inner(unit_tangent(p, a), unit_tangent(p, b))
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def to_poincare_ball(p: HPoint) -> np.ndarray:
    """Poincare-ball chart ``x_i / (1 + x_0)``; the image lies in the open unit ball."""
    return p.coords[1:] / (1.0 + p.coords[0])
