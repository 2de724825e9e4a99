"""Regular hyperbolic simplices in symmetric coordinates.

A regular n-simplex with edge length a is realized on the hyperboloid in a
Minkowski space with n+1 spacelike axes: vertex j points along the j-th
direction of a centered Euclidean regular simplex in R^(n+1), so permuting
vertices permutes spacelike coordinates.  All of the geometry stays inside
the linear slice Minkowski-orthogonal to the all-ones spacelike vector;
that slice carries a standard copy of n-dimensional hyperbolic space, and
the circumcenter sits at the model basepoint (1, 0, ..., 0).

The circumradius r satisfies sinh^2 r = n (cosh a - 1) / (n + 1), which is
what makes every pairwise vertex distance come out to a.  Facet normals
have the same symmetric shape as the vertices and are written down in
closed form; `hyperplane_through` can rederive them from vertex incidence
as a cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import HPoint, Hyperplane, chord_dist, dist, reflect, safe_arccosh
from .masses import PointMass, centroid_fold, combine
from .weights import pair_mass_constant


def simplex_directions(n: int) -> np.ndarray:
    """Rows: n+1 unit vectors in R^(n+1) with pairwise inner product -1/n.

    Centered lift of the standard-basis simplex; every row is orthogonal to
    the all-ones vector.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    e = np.eye(n + 1) - 1.0 / (n + 1)
    return e / math.sqrt(n / (n + 1))


def helmert_basis(n: int) -> np.ndarray:
    """Orthonormal rows spanning the orthocomplement of the all-ones vector in R^(n+1)."""
    h = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        h[k - 1, :k] = 1.0
        h[k - 1, k] = -float(k)
        h[k - 1] /= math.sqrt(k * (k + 1.0))
    return h


@dataclass(frozen=True, eq=False)
class FacetData:
    """One facet: its supporting hyperplane, circumcenter, and vertex indices.

    The hyperplane normal is oriented so the opposite vertex has strictly
    positive margin; interior points of the simplex then have all margins
    positive.
    """

    index: int
    hyperplane: Hyperplane
    center: HPoint
    vertex_indices: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RegularSimplex:
    n: int
    edge: float
    vertices: tuple[HPoint, ...]
    facets: tuple[FacetData, ...]
    circumcenter: HPoint

    @property
    def ambient_dim(self) -> int:
        return self.n + 2

    def vertex(self, j: int) -> HPoint:
        """Vertex j, indices cyclic mod n+1."""
        return self.vertices[j % (self.n + 1)]

    def facet(self, j: int) -> FacetData:
        """Facet opposite vertex j, indices cyclic mod n+1."""
        return self.facets[j % (self.n + 1)]

    def slice_vector(self) -> np.ndarray:
        """Spacelike all-ones vector whose Minkowski orthocomplement holds the simplex."""
        v = np.zeros(self.ambient_dim)
        v[1:] = 1.0
        return v


def build(n: int, edge: float) -> RegularSimplex:
    """Construct the regular n-simplex with the given edge, circumcenter at the basepoint."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not (edge > 0.0) or not math.isfinite(edge):
        raise ValueError(f"need a positive finite edge length, got {edge!r}")
    cosh_a = math.cosh(edge)
    sinh_r = math.sqrt(n * (cosh_a - 1.0) / (n + 1.0))
    cosh_r = math.sqrt(1.0 + sinh_r * sinh_r)
    e = simplex_directions(n)

    vertices = tuple(
        HPoint(np.concatenate(([cosh_r], sinh_r * e[j]))) for j in range(n + 1)
    )

    # Facet normal opposite vertex j shares the vertex's symmetry axis:
    # u_j = (p, q e_j) with t = sinh r / (n cosh r) kills <V_k, u_j> for k != j
    # and leaves <V_j, u_j> = q sinh r (n+1)/n > 0.
    t = sinh_r / (n * cosh_r)
    q = 1.0 / math.sqrt(1.0 - t * t)
    p = -q * t
    facets = []
    for j in range(n + 1):
        hp = Hyperplane(np.concatenate(([p], q * e[j])))
        others = tuple(k for k in range(n + 1) if k != j)
        center = centroid_fold([PointMass(vertices[k], 1.0) for k in others]).location
        facets.append(FacetData(j, hp, center, others))

    return RegularSimplex(n, edge, vertices, tuple(facets), HPoint.basepoint(n + 2))


# Closed-form squared hyperbolic cosines of the simplex measurements, as
# functions of the edge's cosh.  `metrics` measures the same quantities
# geometrically so the two routes can be compared.

def cosh_sq_circumradius(n: int, cosh_edge: float) -> float:
    """cosh^2 of the center-to-vertex distance: (n cosh a + 1) / (n + 1)."""
    return (n * cosh_edge + 1.0) / (n + 1.0)


def cosh_sq_vertex_to_facet_center(n: int, cosh_edge: float) -> float:
    """cosh^2 of the vertex-to-opposite-facet-center distance: n cosh^2 a / ((n-1) cosh a + 1)."""
    return n * cosh_edge * cosh_edge / ((n - 1.0) * cosh_edge + 1.0)


def centroid_weight_formula(n: int, cosh_edge: float) -> float:
    """Weight collected by folding unit masses at all vertices: sqrt((n+1)(n cosh a + 1))."""
    return math.sqrt((n + 1.0) * (n * cosh_edge + 1.0))


@dataclass(frozen=True)
class SimplexMetrics:
    """Geometric measurements of one simplex (computed, not from formulas)."""

    vertex_center: np.ndarray        # d(V_j, circumcenter) per vertex
    vertex_facet_center: np.ndarray  # d(V_j, center of opposite facet) per vertex
    centroid_weight: float           # weight of the fold of unit vertex masses


def metrics(s: RegularSimplex) -> SimplexMetrics:
    """Measure the characteristic distances and the centroid weight directly."""
    vc = np.array([dist(v, s.circumcenter) for v in s.vertices])
    vf = np.array([dist(s.vertices[j], s.facets[j].center) for j in range(s.n + 1)])
    w = centroid_fold([PointMass(v, 1.0) for v in s.vertices]).weight
    return SimplexMetrics(vc, vf, w)


def vertex_reflection_identity_residual(s: RegularSimplex, j: int) -> float:
    """Residual of the vertex-plus-mirror balance at facet j.

    Unit masses at V_j and at its mirror image across the opposite facet
    combine to the same point mass as weight 2/(n-1+1/cosh a) placed on
    each remaining vertex.  Returns the larger of the location distance and
    the relative weight mismatch.
    """
    facet = s.facet(j)
    v = s.vertex(j)
    lhs = combine(PointMass(v, 1.0), PointMass(reflect(facet.hyperplane, v), 1.0))
    w = pair_mass_constant(s.n, math.cosh(s.edge))
    rhs = centroid_fold([PointMass(s.vertices[k], w) for k in facet.vertex_indices])
    return max(
        chord_dist(lhs.location, rhs.location),
        abs(lhs.weight - rhs.weight) / rhs.weight,
    )


class Region(enum.Enum):
    INTERIOR = "interior"
    FACET_INTERIOR = "facet-interior"
    LOWER_BOUNDARY = "lower-boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PointClass:
    region: Region
    facet: int | None
    margins: np.ndarray


def classify_point(s: RegularSimplex, p: HPoint, tol: float = 1e-9) -> PointClass:
    """Locate a point relative to the closed simplex by its facet margins.

    Outside if any margin is below -tol; interior if all are above tol;
    on the relative interior of facet j if only margin j vanishes; on the
    lower-dimensional boundary (edges, vertices, corners) if two or more
    margins vanish simultaneously.
    """
    margins = np.array([f.hyperplane.margin(p) for f in s.facets])
    if np.any(margins < -tol):
        return PointClass(Region.OUTSIDE, None, margins)
    near = np.abs(margins) <= tol
    hits = int(near.sum())
    if hits == 0:
        return PointClass(Region.INTERIOR, None, margins)
    if hits == 1:
        return PointClass(Region.FACET_INTERIOR, int(np.argmax(near)), margins)
    return PointClass(Region.LOWER_BOUNDARY, None, margins)


@dataclass(frozen=True)
class CircumradiusStep:
    """Arguments of the dimension-step consistency identity for circumradii.

    For an (n+1)-simplex whose edges have cosh equal to ``zeta``:
    ``base_radius`` is the circumradius of an n-facet, ``apex_to_base_center``
    the distance from the remaining vertex to that facet's center, and
    ``next_radius`` the full circumradius.  The three satisfy

        cosh^2(apex_to_base_center - next_radius) * cosh^2(base_radius)
            = cosh^2(next_radius)

    because the full circumcenter sits on the apex-to-facet-center segment
    and the facet center is the foot of a right angle.
    """

    n: int
    zeta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.zeta < 1.0:
            raise ValueError(f"need zeta >= 1, got {self.zeta!r}")

    @property
    def base_radius(self) -> float:
        return safe_arccosh(math.sqrt(cosh_sq_circumradius(self.n, self.zeta)))

    @property
    def apex_to_base_center(self) -> float:
        return safe_arccosh(math.sqrt(cosh_sq_vertex_to_facet_center(self.n + 1, self.zeta)))

    @property
    def next_radius(self) -> float:
        return safe_arccosh(math.sqrt(cosh_sq_circumradius(self.n + 1, self.zeta)))


def circumradius_step_residual(args: CircumradiusStep) -> float:
    """Raw residual of the dimension-step identity (caller scales by cosh^2 next_radius)."""
    beta = args.base_radius
    gamma = args.apex_to_base_center
    delta = args.next_radius
    return math.cosh(gamma - delta) ** 2 * math.cosh(beta) ** 2 - math.cosh(delta) ** 2


def disk_coords(s: RegularSimplex, p: HPoint) -> np.ndarray:
    """Intrinsic Poincare-disk coordinates (n of them) of a point of the simplex slice.

    Rotates the spacelike part into an orthonormal basis of the slice, then
    applies the ball chart; the result lies in the open unit n-ball.
    """
    if p.ambient_dim != s.ambient_dim:
        raise ValueError("point does not live in the simplex ambient space")
    y = helmert_basis(s.n) @ p.coords[1:]
    return y / (1.0 + p.coords[0])


def slice_defect(s: RegularSimplex, p: HPoint) -> float:
    """How far a point sits from the simplex slice: the all-ones component of its spacelike part."""
    return float(np.sum(p.coords[1:]))
