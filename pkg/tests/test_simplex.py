"""Tests for regular-simplex construction, measurements, and classification."""

import math

import numpy as np
import pytest

from hypbilliards.geometry import (
    angle_at,
    dist,
    hyperplane_through,
    mink_inner,
    reflect,
    segment_defect,
)
from hypbilliards.simplex import (
    CircumradiusStep,
    Region,
    RegularSimplex,
    build,
    centroid_weight_formula,
    circumradius_step_residual,
    classify_point,
    cosh_sq_circumradius,
    cosh_sq_vertex_to_facet_center,
    disk_coords,
    helmert_basis,
    metrics,
    simplex_directions,
    slice_defect,
    vertex_reflection_identity_residual,
)

GRID = [(n, a) for n in (1, 2, 3, 5, 8) for a in (0.5, 1.0, 2.0)]


def test_simplex_directions_geometry():
    for n in (1, 2, 4, 9):
        e = simplex_directions(n)
        g = e @ e.T
        assert np.allclose(np.diag(g), 1.0, atol=1e-14)
        off = g[~np.eye(n + 1, dtype=bool)]
        assert np.allclose(off, -1.0 / n, atol=1e-14)
        assert np.allclose(e.sum(axis=0), 0.0, atol=1e-13)
    with pytest.raises(ValueError):
        simplex_directions(0)


def test_helmert_basis_orthonormal_and_centered():
    for n in (1, 3, 6):
        h = helmert_basis(n)
        assert np.allclose(h @ h.T, np.eye(n), atol=1e-14)
        assert np.allclose(h @ np.ones(n + 1), 0.0, atol=1e-14)


@pytest.mark.parametrize("n,a", GRID)
def test_build_pairwise_distances_equal_edge(n, a):
    s = build(n, a)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            assert dist(s.vertices[i], s.vertices[j]) == pytest.approx(a, abs=1e-12)


@pytest.mark.parametrize("n,a", GRID)
def test_build_circumcenter_equidistant(n, a):
    s = build(n, a)
    ds = [dist(v, s.circumcenter) for v in s.vertices]
    assert max(ds) - min(ds) < 1e-14
    assert ds[0] ** 2 == pytest.approx(
        math.asinh(math.sqrt(n * (math.cosh(a) - 1) / (n + 1))) ** 2, rel=1e-10
    )


@pytest.mark.parametrize("n,a", GRID)
def test_build_facet_incidence_and_orientation(n, a):
    s = build(n, a)
    for f in s.facets:
        for k in range(n + 1):
            m = f.hyperplane.margin(s.vertices[k])
            if k == f.index:
                assert m > 0.1 * math.tanh(a)  # opposite vertex well inside
            else:
                assert abs(m) < 1e-13
        assert f.hyperplane.margin(s.circumcenter) > 0.0


def test_build_rejects_bad_arguments():
    for n, a in [(0, 1.0), (-2, 1.0), (3, 0.0), (3, -1.0), (3, math.inf)]:
        with pytest.raises(ValueError):
            build(n, a)


def test_cyclic_accessors_and_slice_vector():
    s = build(3, 1.0)
    assert s.ambient_dim == 5
    assert s.vertex(4) is s.vertices[0]
    assert s.facet(-1) is s.facets[3]
    ones = s.slice_vector()
    assert ones[0] == 0.0 and np.all(ones[1:] == 1.0)
    for v in s.vertices:
        assert abs(mink_inner(v.coords, ones)) < 1e-13


@pytest.mark.parametrize("n,a", GRID)
def test_measurements_match_closed_forms(n, a):
    s = build(n, a)
    m = metrics(s)
    ca = math.cosh(a)
    assert np.allclose(
        np.cosh(m.vertex_center) ** 2, cosh_sq_circumradius(n, ca), rtol=1e-12
    )
    assert np.allclose(
        np.cosh(m.vertex_facet_center) ** 2,
        cosh_sq_vertex_to_facet_center(n, ca),
        rtol=1e-12,
    )
    assert m.centroid_weight == pytest.approx(
        centroid_weight_formula(n, ca), rel=1e-13
    )


def test_closed_form_values_dim_two_cosh_two():
    # n = 2 with cosh a = 2: the three formulas take simple rational/surd values
    assert cosh_sq_circumradius(2, 2.0) == pytest.approx(5.0 / 3.0, rel=1e-15)
    assert cosh_sq_vertex_to_facet_center(2, 2.0) == pytest.approx(8.0 / 3.0, rel=1e-15)
    assert centroid_weight_formula(2, 2.0) == pytest.approx(math.sqrt(15.0), rel=1e-15)


def test_centroid_weight_segment_case():
    # n = 1: folding unit masses at both endpoints gives 2 cosh(a/2)
    for a in (0.3, 1.0, 2.5):
        assert centroid_weight_formula(1, math.cosh(a)) == pytest.approx(
            2.0 * math.cosh(a / 2.0), rel=1e-14
        )


@pytest.mark.parametrize("n,a", GRID)
def test_vertex_reflection_identity(n, a):
    s = build(n, a)
    for j in range(n + 1):
        assert vertex_reflection_identity_residual(s, j) < 1e-12


def test_classify_interior_and_facets():
    s = build(3, 1.0)
    c = classify_point(s, s.circumcenter)
    assert c.region is Region.INTERIOR and c.facet is None
    assert np.all(c.margins > 0.0)
    for j in range(4):
        c = classify_point(s, s.facets[j].center)
        assert c.region is Region.FACET_INTERIOR
        assert c.facet == j


def test_classify_vertices_and_outside():
    s = build(3, 1.0)
    # a vertex lies on the n facets it belongs to: lower-dimensional boundary
    c = classify_point(s, s.vertices[1])
    assert c.region is Region.LOWER_BOUNDARY and c.facet is None
    out = reflect(s.facets[0].hyperplane, s.circumcenter)
    assert classify_point(s, out).region is Region.OUTSIDE
    # for a segment each facet is a single vertex
    s1 = build(1, 1.0)
    c1 = classify_point(s1, s1.vertices[0])
    assert c1.region is Region.FACET_INTERIOR and c1.facet == 1


def test_facet_centers_make_right_angles():
    """The vertex-to-opposite-facet-center segment meets the facet orthogonally."""
    for n in (2, 4, 6):
        s = build(n, 1.5)
        for j in (0, n):
            f = s.facets[j]
            for k in f.vertex_indices:
                ang = angle_at(f.center, s.vertices[j], s.vertices[k])
                assert ang == pytest.approx(math.pi / 2.0, abs=1e-9)


def test_circumcenter_on_vertex_to_facet_center_segment():
    for n in (2, 3, 7):
        s = build(n, 0.8)
        for j in range(n + 1):
            assert segment_defect(s.circumcenter, s.facets[j].center, s.vertices[j]) < 1e-12


def test_closed_form_normals_match_fitted_hyperplanes():
    """Facet hyperplanes rederived from vertex incidence agree with the closed form."""
    for n in (1, 2, 4, 7):
        for a in (0.5, 2.0):
            s = build(n, a)
            for f in s.facets:
                pts = [s.vertices[k] for k in f.vertex_indices]
                fit = hyperplane_through(pts, orthogonal_to=(s.slice_vector(),))
                u, v = f.hyperplane.normal, fit.normal
                assert min(np.abs(u - v).max(), np.abs(u + v).max()) < 1e-12


def test_circumradius_step_identity_residual():
    for n in range(1, 11):
        for zeta in (1.0 + 1e-6, 1.5, 2.0, 5.0, 10.0):
            args = CircumradiusStep(n, zeta)
            scale = math.cosh(args.next_radius) ** 2
            assert abs(circumradius_step_residual(args)) < 1e-12 * max(1.0, scale)


def test_circumradius_step_geometric_cross_check():
    """The identity's three lengths are realized by an actual simplex pair."""
    n, a = 3, 1.2
    zeta = math.cosh(a)
    big = build(n + 1, a)
    args = CircumradiusStep(n, zeta)
    assert dist(big.vertices[0], big.circumcenter) == pytest.approx(
        args.next_radius, abs=1e-12
    )
    assert dist(big.vertices[0], big.facets[0].center) == pytest.approx(
        args.apex_to_base_center, abs=1e-12
    )
    small = build(n, a)
    assert dist(small.vertices[0], small.circumcenter) == pytest.approx(
        args.base_radius, abs=1e-12
    )


def test_circumradius_step_rejects_bad_arguments():
    with pytest.raises(ValueError):
        CircumradiusStep(0, 2.0)
    with pytest.raises(ValueError):
        CircumradiusStep(3, 0.5)


def test_disk_coords_center_and_radius():
    s = build(3, 1.0)
    assert np.allclose(disk_coords(s, s.circumcenter), 0.0, atol=1e-15)
    r = dist(s.vertices[0], s.circumcenter)
    for v in s.vertices:
        assert np.linalg.norm(disk_coords(s, v)) == pytest.approx(
            math.tanh(r / 2.0), abs=1e-13
        )
    with pytest.raises(ValueError):
        disk_coords(s, build(2, 1.0).circumcenter)


@pytest.mark.parametrize("n,a", GRID)
def test_simplex_data_stays_on_slice(n, a):
    s = build(n, a)
    pts = list(s.vertices) + [f.center for f in s.facets] + [s.circumcenter]
    for p in pts:
        assert abs(slice_defect(s, p)) < 1e-12


def test_dataclass_shape():
    s = build(2, 1.0)
    assert isinstance(s, RegularSimplex)
    assert len(s.vertices) == 3 and len(s.facets) == 3
    assert s.facets[1].vertex_indices == (0, 2)
