"""Geodesic billiard flow inside the simplex.

This is the independent certifier for the orbit construction: it knows
nothing about center-of-mass algebra.  A state is a point plus a unit
tangent direction; the flow follows x(t) = p cosh t + v sinh t until the
first facet crossing, reflects the velocity specularly, and repeats.  A
closed orbit fed to `closure_error` must come back to its starting state
after one period up to rounding.

Collision times are closed-form: the crossing of the facet with normal u
satisfies tanh t = -<x,u>/<v,u>, so no numerical stepping is involved.
Position and velocity are renormalized onto the hyperboloid and its
tangent space after every bounce; the pre-normalization drift is recorded
per bounce so invariant violations cannot pass silently.

The simplex lives in a linear slice of the ambient space and the flow must
stay there too.  That constraint is actively maintained: rounding noise in
the slice-orthogonal direction is stretched by a factor e^t per flight (it
rides a diverging geodesic mode), so after the propagation step the state
is projected back onto the slice, and the pre-projection defect goes into
the drift record.  Without this the noise reaches O(1) within a couple
hundred bounces and the trajectory escapes into the unbounded prism that
the facet hyperplanes bound in the full ambient space.

Hits that land on the lower-dimensional boundary (edges, vertices) or
arrive tangentially are outside the scope of the mirror law and raise
`NonSmoothHitError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import HPoint, TangentVec, chord_dist, mink_inner, unit_tangent
from .orbit import BilliardOrbit
from .simplex import Region, RegularSimplex, classify_point

# Flights shorter than this re-hit the departure facet and are discarded.
T_MIN = 1e-9

# Inward margin slack: a state may sit this far on the wrong side of a
# facet (it happens right after a bounce) and still count as inside.
BOUNDARY_SLACK = 1e-9


class NonSmoothHitError(RuntimeError):
    """Trajectory left the smooth billiard regime (corner hit or grazing incidence)."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True, eq=False)
class FlowState:
    """Unit-speed billiard state; ``last_facet`` names the facet just bounced off, if any."""

    position: HPoint
    direction: np.ndarray
    last_facet: int | None = None

    def __post_init__(self):
        d = np.array(np.asarray(self.direction, dtype=np.float64), copy=True)
        d.setflags(write=False)
        object.__setattr__(self, "direction", d)
        q = mink_inner(d, d)
        if abs(q - 1.0) > 1e-10:
            raise ValueError(f"direction must be unit spacelike: <v,v> = {q!r}")
        t = mink_inner(self.position.coords, d)
        if abs(t) > 1e-10:
            raise ValueError(f"direction must be tangent to position: <x,v> = {t!r}")

    @property
    def tangent(self) -> TangentVec:
        return TangentVec.from_raw(self.position, self.direction)


def state_toward(a: HPoint, b: HPoint, last_facet: int | None = None) -> FlowState:
    """State at A aimed along the geodesic toward B."""
    return FlowState(a, unit_tangent(a, b), last_facet)


def _facet_hit_time(mu: float, nu: float, t_min: float = 0.0) -> float | None:
    """First flight time above ``t_min`` with mu cosh t + nu sinh t = 0, or None.

    Requires the margin to be decreasing (nu < 0) and the crossing to be
    reachable (|mu| < |nu|, otherwise the geodesic approaches the
    hyperplane asymptotically without crossing).
    """
    if nu >= 0.0:
        return None
    ratio = -mu / nu
    if ratio >= 1.0 or ratio <= math.tanh(t_min):
        return None
    return math.atanh(ratio)


def next_collision(s: RegularSimplex, state: FlowState) -> tuple[int, HPoint, float]:
    """Facet index, collision point, and flight time of the next boundary hit.

    The T_MIN floor applies only to the facet the state just bounced off,
    so rounding cannot re-register the departure as a fresh hit; genuinely
    short flights onto other facets (deep corner visits) are kept and left
    for the arrival classification to reject as non-smooth.
    """
    x = state.position.coords
    v = state.direction
    best_k, best_t = -1, math.inf
    for k, facet in enumerate(s.facets):
        mu = mink_inner(x, facet.hyperplane.normal)
        if mu < -BOUNDARY_SLACK:
            raise ValueError(f"state is outside the simplex (margin {mu} at facet {k})")
        nu = mink_inner(v, facet.hyperplane.normal)
        t = _facet_hit_time(mu, nu, T_MIN if k == state.last_facet else 0.0)
        if t is not None and t < best_t:
            best_k, best_t = k, t
    if best_k < 0:
        raise ValueError("no forward facet crossing; state does not point into the simplex")
    q = HPoint.from_vector(math.cosh(best_t) * x + math.sinh(best_t) * v)
    return best_k, q, best_t


def reflect_at(
    s: RegularSimplex,
    k: int,
    q: HPoint,
    v_in: TangentVec,
    graze_tol: float = 1e-9,
) -> TangentVec:
    """Specular reflection of an arriving direction at a point of facet k.

    The arrival point must lie on the facet hyperplane and the incidence
    must be transversal; a normal component below ``graze_tol`` is a
    grazing hit and raises `NonSmoothHitError`.
    """
    hp = s.facet(k).hyperplane
    if abs(hp.margin(q)) > 1e-9:
        raise ValueError(f"reflection point is not on facet {k}")
    if not np.allclose(v_in.base.coords, q.coords, atol=1e-9):
        raise ValueError("arriving tangent is not based at the reflection point")
    nu = mink_inner(v_in.direction, hp.normal)
    if abs(nu) <= graze_tol:
        raise NonSmoothHitError(f"grazing incidence at facet {k} (normal component {nu})")
    return TangentVec.from_raw(q, v_in.direction - 2.0 * nu * hp.normal)


@dataclass(frozen=True)
class Bounce:
    """One boundary hit.  ``drift`` holds the pre-normalization invariant errors
    accumulated over the incoming flight: |<x,x>+1|, |<v,v>-1|, |<x,v>|, and
    the slice-orthogonal components of position and direction."""

    index: int
    facet: int
    point: HPoint
    arclength: float
    drift: tuple[float, float, float, float, float]


@dataclass(frozen=True)
class Trajectory:
    bounces: tuple[Bounce, ...]
    final_state: FlowState

    @property
    def facets(self) -> list[int]:
        return [b.facet for b in self.bounces]

    @property
    def max_drift(self) -> float:
        if not self.bounces:
            return 0.0
        return max(max(b.drift) for b in self.bounces)

    @property
    def total_length(self) -> float:
        return sum(b.arclength for b in self.bounces)


def step(s: RegularSimplex, state: FlowState, index: int = 0) -> tuple[Bounce, FlowState]:
    """Advance to the next bounce; raises `NonSmoothHitError` off the smooth regime."""
    k, _, t = next_collision(s, state)
    x, v = state.position.coords, state.direction
    x_raw = math.cosh(t) * x + math.sinh(t) * v
    v_raw = math.sinh(t) * x + math.cosh(t) * v

    # slice maintenance: measure, guard, project (see module docstring)
    ones = s.slice_vector()
    unit = math.sqrt(s.n + 1.0)
    cx = mink_inner(x_raw, ones) / (s.n + 1.0)
    cv = mink_inner(v_raw, ones) / (s.n + 1.0)
    if max(abs(cx), abs(cv)) * unit > 1e-9:
        raise ValueError(
            f"bounce {index}: state has left the simplex slice (defect {max(abs(cx), abs(cv)) * unit:.3e})"
        )
    drift = (
        abs(mink_inner(x_raw, x_raw) + 1.0),
        abs(mink_inner(v_raw, v_raw) - 1.0),
        abs(mink_inner(x_raw, v_raw)),
        abs(cx) * unit,
        abs(cv) * unit,
    )
    x_raw = x_raw - cx * ones
    v_raw = v_raw - cv * ones
    q = HPoint.from_vector(x_raw)
    cls = classify_point(s, q)
    if cls.region is not Region.FACET_INTERIOR:
        raise NonSmoothHitError(
            f"bounce {index}: hit the {cls.region.value} region of the boundary", step=index
        )
    if cls.facet != k:
        raise NonSmoothHitError(
            f"bounce {index}: collision facet {k} disagrees with classification {cls.facet}",
            step=index,
        )
    v_arr = TangentVec.from_raw(q, v_raw)
    v_out = reflect_at(s, k, q, v_arr)
    return Bounce(index, k, q, t, drift), FlowState(q, v_out.direction, k)


def iterate(s: RegularSimplex, state: FlowState, steps: int) -> Trajectory:
    """Run ``steps`` bounces of the billiard flow."""
    if steps < 0:
        raise ValueError(f"need a non-negative bounce count, got {steps}")
    bounces = []
    for i in range(steps):
        try:
            bounce, state = step(s, state, index=i)
        except NonSmoothHitError as err:
            err.step = i
            raise
        bounces.append(bounce)
    return Trajectory(tuple(bounces), state)


def launch_state(s: RegularSimplex, orbit: BilliardOrbit) -> FlowState:
    """Initial flow state of a closed polygon: at P_0, aimed at P_1."""
    start_cls = classify_point(s, orbit.point(0))
    return state_toward(orbit.point(0), orbit.point(1), last_facet=start_cls.facet)


@dataclass(frozen=True)
class ClosureResult:
    position_error: float
    direction_error: float
    trajectory: Trajectory

    @property
    def error(self) -> float:
        return max(self.position_error, self.direction_error)


def run_closure(s: RegularSimplex, orbit: BilliardOrbit, periods: int = 1) -> ClosureResult:
    """Flow a closed polygon for whole periods and measure the return mismatch.

    Both errors are Minkowski norms of coordinate differences (position via
    `chord_dist`), which agree with distance and angle at these scales and
    stay resolvable down to rounding level.
    """
    start = launch_state(s, orbit)
    traj = iterate(s, start, periods * orbit.period)
    dpos = chord_dist(traj.final_state.position, start.position)
    diff = traj.final_state.direction - start.direction
    ddir = math.sqrt(max(mink_inner(diff, diff), 0.0))
    return ClosureResult(dpos, ddir, traj)


def closure_error(s: RegularSimplex, orbit: BilliardOrbit) -> float:
    """Worst of position and direction mismatch after one flowed period."""
    return run_closure(s, orbit).error
