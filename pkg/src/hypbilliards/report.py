"""Cell-by-cell verification, sweeps over (n, edge) grids, and serialization.

A "cell" is one choice of dimension and edge length.  `evaluate_cell`
rebuilds everything for the cell from scratch, measures every identity the
construction is supposed to satisfy, and compares against `Tolerances`;
`run_sweep` fans cells out over a thread pool and assembles the reports in
lexicographic (n, edge) order regardless of completion order.

JSON documents serialize floats at full round-trip precision (17
significant digits) unless a lower precision is requested; reloading a
document therefore reproduces the emitted values bit for bit.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import flow as flow_mod
from . import orbit as orbit_mod
from . import simplex as simplex_mod
from . import weights as weights_mod
from .geometry import angle_at, chord_dist, dist, segment_defect


@dataclass(frozen=True)
class Tolerances:
    """Comparison thresholds for the verification gates.

    ``angle_defect`` is looser than the rest: it passes through an arccos,
    which turns 1e-16 rounding in the cosine into ~1e-8 of angle, so a
    tight gate there would only measure arccos conditioning.
    """

    facet_incidence: float = 1e-10
    collinearity: float = 1e-9
    centroid: float = 1e-9
    angle_defect: float = 1e-6
    closure: float = 1e-8
    metrics_rel: float = 1e-10
    vertex_reflection: float = 1e-10
    root_residual: float = 1e-13
    weight_boundary: float = 1e-10
    weight_recurrence: float = 1e-10
    orthic_match: float = 1e-9
    min_midpoint_defect: float = 1e-3
    classify: float = 1e-9

    @classmethod
    def uniform(cls, t: float) -> "Tolerances":
        """Every residual gate set to ``t``; structural knobs keep their defaults."""
        keep = {"classify", "min_midpoint_defect"}
        return cls(**{
            f.name: (f.default if f.name in keep else t)
            for f in dataclasses.fields(cls)
        })


@dataclass(frozen=True)
class CellReport:
    n: int
    edge: float
    residuals: dict[str, float]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class VerificationReport:
    tolerances: Tolerances
    cells: tuple[CellReport, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)


def evaluate_cell(n: int, edge: float, tol: Tolerances | None = None) -> CellReport:
    """Rebuild one (n, edge) cell and measure every identity against the tolerances."""
    tol = tol or Tolerances()
    residuals: dict[str, float] = {}
    failures: list[str] = []

    def gate(name: str, value: float, limit: float) -> None:
        residuals[name] = float(value)
        if not value < limit:
            failures.append(f"{name} = {value:.6e}, needs < {limit:.1e}")

    s = simplex_mod.build(n, edge)
    c = math.cosh(edge)
    m = simplex_mod.metrics(s)

    # closed-form measurement identities, relative in cosh^2 / weight
    vc_exp = simplex_mod.cosh_sq_circumradius(n, c)
    vf_exp = simplex_mod.cosh_sq_vertex_to_facet_center(n, c)
    gate("vertex_center_rel",
         float(np.max(np.abs(np.cosh(m.vertex_center) ** 2 / vc_exp - 1.0))),
         tol.metrics_rel)
    gate("vertex_facet_center_rel",
         float(np.max(np.abs(np.cosh(m.vertex_facet_center) ** 2 / vf_exp - 1.0))),
         tol.metrics_rel)
    gate("centroid_weight_rel",
         abs(m.centroid_weight / simplex_mod.centroid_weight_formula(n, c) - 1.0),
         tol.metrics_rel)
    gate("vertex_reflection",
         max(simplex_mod.vertex_reflection_identity_residual(s, j) for j in range(n + 1)),
         tol.vertex_reflection)

    seq = weights_mod.build_sequence(n, edge)
    gate("root_residual", abs(weights_mod.eval_g(seq.root, n, edge)), tol.root_residual)
    if not seq.multiplier > 2.0:
        failures.append(f"multiplier {seq.multiplier} not above 2")
    residuals["multiplier"] = seq.multiplier
    gate("weight_boundary",
         max(abs(seq.weight(1) - 1.0), abs(seq.weight(n) - 1.0)),
         tol.weight_boundary)
    gate("weight_recurrence",
         float(np.max(np.abs(seq.recurrence_residuals()))),
         tol.weight_recurrence)
    interior_min = float(np.min(seq.weights[1:-1]))
    residuals["min_interior_weight"] = interior_min
    if not interior_min > 0.0:
        failures.append(f"interior weight {interior_min} not positive")

    orb = orbit_mod.construct_orbit(s, seq)
    ver = orbit_mod.verify_orbit(s, orb, facet_tol=tol.classify)
    if not ver.clean_facets:
        failures.append("bounce points do not hit each facet interior exactly once")
    worst = ver.max_residuals()
    gate("facet_incidence", worst["incidence"], tol.facet_incidence)
    gate("collinearity", worst["collinearity"], tol.collinearity)
    gate("centroid_location", worst["centroid_dist"], tol.centroid)
    gate("centroid_mass_rel", worst["centroid_mass_rel"], tol.centroid)
    gate("angle_defect", worst["angle_defect"], tol.angle_defect)
    gate("closure", flow_mod.closure_error(s, orb), tol.closure)

    md = orbit_mod.midpoint_trajectory_defect(s)
    residuals["midpoint_defect"] = md
    if n == 2:
        gate("orthic_match",
             max(chord_dist(orb.point(j), q) for j, q in enumerate(orbit_mod.orthic_points(s))),
             tol.orthic_match)
        if not md < tol.angle_defect:
            failures.append(f"facet-center polygon should close for n=2, defect {md:.3e}")
    else:
        # the naive facet-center polygon must visibly break the mirror law
        if not md > tol.min_midpoint_defect:
            failures.append(
                f"midpoint defect {md:.6e} suspiciously small, needs > {tol.min_midpoint_defect:.1e}"
            )

    return CellReport(n, edge, residuals, tuple(failures))


def run_sweep(
    dims,
    edges,
    tol: Tolerances | None = None,
    max_workers: int | None = None,
) -> VerificationReport:
    """Evaluate every (n, edge) cell concurrently; results in lexicographic order."""
    tol = tol or Tolerances()
    cells = [(int(n), float(a)) for n in sorted(set(dims)) for a in sorted(set(edges))]
    if not cells:
        raise ValueError("empty sweep: need at least one dimension and one edge")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(evaluate_cell, n, a, tol) for n, a in cells]
        reports = [f.result() for f in futures]
    return VerificationReport(tol, tuple(reports))


# ---------------------------------------------------------------------------
# serialization

def round_sig(x: float, sig: int) -> float:
    """Round to ``sig`` significant digits; 17 digits is exact for binary64."""
    if sig >= 17 or x == 0.0 or not math.isfinite(x):
        return float(x)
    return float(f"{x:.{sig}g}")


def jsonable(obj, sig: int = 17):
    """Recursively convert arrays/dataclass leaves into JSON-serializable values."""
    if isinstance(obj, dict):
        return {k: jsonable(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, sig) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v, sig) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), sig)
    return obj


def simplex_document(s: simplex_mod.RegularSimplex) -> dict:
    """Geometry, measured metrics, and internal consistency checks of one simplex."""
    n = s.n
    c = math.cosh(s.edge)
    m = simplex_mod.metrics(s)

    pair_dists = [
        dist(s.vertices[i], s.vertices[j])
        for i in range(n + 1) for j in range(i + 1, n + 1)
    ]
    incidence = max(
        abs(f.hyperplane.margin(s.vertices[k]))
        for f in s.facets for k in f.vertex_indices
    )
    min_margin = min(f.hyperplane.margin(s.vertices[f.index]) for f in s.facets)

    # right angles at a facet center: the apex direction is perpendicular to
    # every direction inside the facet (degenerate for n = 1, where the facet
    # is a single point)
    w0 = s.facets[0].center
    angle_terms = [
        abs(angle_at(w0, s.vertices[0], s.vertices[k]) - 0.5 * math.pi)
        for k in s.facets[0].vertex_indices
        if dist(w0, s.vertices[k]) > 1e-12
    ]
    right_angle = max(angle_terms) if angle_terms else 0.0
    center_between = segment_defect(s.circumcenter, s.vertices[0], s.facets[0].center)

    return {
        "n": n,
        "edge": s.edge,
        "vertices": [v.coords for v in s.vertices],
        "circumcenter": s.circumcenter.coords,
        "facets": [
            {
                "index": f.index,
                "normal": f.hyperplane.normal,
                "center": f.center.coords,
                "vertex_indices": list(f.vertex_indices),
            }
            for f in s.facets
        ],
        "metrics": {
            "vertex_center": m.vertex_center,
            "vertex_facet_center": m.vertex_facet_center,
            "centroid_weight": m.centroid_weight,
            "expected_cosh_sq_vertex_center": simplex_mod.cosh_sq_circumradius(n, c),
            "expected_cosh_sq_vertex_facet_center": simplex_mod.cosh_sq_vertex_to_facet_center(n, c),
            "expected_centroid_weight": simplex_mod.centroid_weight_formula(n, c),
        },
        "checks": {
            "edge_spread": max(abs(d - s.edge) for d in pair_dists),
            "facet_incidence": incidence,
            "min_opposite_margin": min_margin,
            "right_angle": right_angle,
            "center_between": center_between,
        },
    }


def sequence_document(seq: weights_mod.MassSequence) -> dict:
    return {
        "y0": seq.root,
        "lambda": seq.multiplier,
        "xi": seq.char_root,
        "b": seq.shift,
        "alphas": seq.weights,
    }


def orbit_document(s: simplex_mod.RegularSimplex, seq: weights_mod.MassSequence,
                   tol: Tolerances | None = None) -> tuple[dict, bool]:
    """Full document for one cell: simplex, weights, orbit, and verification checks.

    Returns the document and whether every check passed.
    """
    tol = tol or Tolerances()
    doc = simplex_document(s)
    orb = orbit_mod.construct_orbit(s, seq)
    cell = evaluate_cell(s.n, s.edge, tol)
    doc["mass_sequence"] = sequence_document(seq)
    doc["orbit"] = {
        "points": [p.coords for p in orb.points],
        "masses": orb.masses,
        "lambda": orb.multiplier,
    }
    doc["checks"].update(cell.residuals)
    doc["checks"]["passed"] = cell.passed
    if cell.failures:
        doc["checks"]["failures"] = list(cell.failures)
    return doc, cell.passed


def sweep_document(rep: VerificationReport) -> dict:
    return {
        "tolerances": dataclasses.asdict(rep.tolerances),
        "cells": [
            {
                "n": c.n,
                "edge": c.edge,
                "passed": c.passed,
                "residuals": c.residuals,
                "failures": list(c.failures),
            }
            for c in rep.cells
        ],
        "passed": rep.passed,
    }


def format_float(x: float, sig: int = 17) -> str:
    """Shortest decimal string that reloads to the same float (or ``sig`` digits)."""
    if sig >= 17:
        return repr(float(x))
    return f"{x:.{sig}g}"


def trajectory_rows(s: simplex_mod.RegularSimplex, traj: flow_mod.Trajectory,
                    sig: int = 17) -> tuple[list[str], list[list[str]]]:
    """CSV header and rows for a simulated trajectory, points in intrinsic disk coordinates."""
    header = ["step", "facet", "arclength"] + [f"disk{i}" for i in range(s.n)]
    rows = []
    for b in traj.bounces:
        d = simplex_mod.disk_coords(s, b.point)
        rows.append(
            [str(b.index), str(b.facet), format_float(b.arclength, sig)]
            + [format_float(x, sig) for x in d]
        )
    return header, rows


def orbit_rows(s: simplex_mod.RegularSimplex, orb: orbit_mod.BilliardOrbit,
               sig: int = 17) -> tuple[list[str], list[list[str]]]:
    """CSV header and rows for the bounce points of a constructed orbit."""
    header = ["index", "mass"] + [f"disk{i}" for i in range(s.n)]
    rows = []
    for j, p in enumerate(orb.points):
        d = simplex_mod.disk_coords(s, p)
        rows.append(
            [str(j), format_float(orb.mass(j), sig)] + [format_float(x, sig) for x in d]
        )
    return header, rows


def write_csv(fh, header: list[str], rows: list[list[str]]) -> None:
    """Comma separator, '.' decimal mark, '\\n' newlines, one header row."""
    fh.write(",".join(header) + "\n")
    for row in rows:
        fh.write(",".join(row) + "\n")
