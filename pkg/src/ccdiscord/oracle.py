"""Brute-force verification of the CC discord.

Exhaustive product-measurement search over a full 4-angle grid,
deliberately independent of the single-versor reduction used by the
production optimizer: the grid minimizes the measured-state distance
directly.  Antipodal directions define the same measurement, so polar
angles only need [0, pi/2].  Used by tests and the `verify` CLI
command, never as a production path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import BlochForm, InvalidParameters, from_bloch, hs_distance_sq, purity_norm_sq
from .measurements import MeasurementPair, measure_ab


@dataclass
class GridSpec:
    resolution: int = 32
    refine: bool = True
    tol: float = 1e-10

    def __post_init__(self):
        if self.resolution < 8:
            raise InvalidParameters("grid resolution must be at least 8")


def _directions(res: int) -> np.ndarray:
    # nested under resolution doubling: theta = i/res * pi/2 (inclusive),
    # phi = j/res * 2 pi (periodic)
    theta = np.arange(res + 1) * (np.pi / 2.0) / res
    phi = np.arange(res) * (2.0 * np.pi) / res
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    st = np.sin(tt)
    return np.column_stack(
        [(st * np.cos(pp)).ravel(), (st * np.sin(pp)).ravel(), np.cos(tt).ravel()]
    )


def _distance_grid(b: BlochForm, ns: np.ndarray, ms: np.ndarray) -> np.ndarray:
    """hs_distance_sq(b, measure_ab(b, (n, m))) over all direction pairs.

    Expanded in Bloch components: only the components along the
    measured directions survive, so the distance is the norm loss
    (||x||^2 - (n.x)^2 + ||y||^2 - (m.y)^2 + ||T||^2 - (n.T.m)^2) / 4.
    """
    base = b.x @ b.x + b.y @ b.y + np.sum(b.T * b.T)
    xn = (ns @ b.x) ** 2
    ym = (ms @ b.y) ** 2
    c = ns @ b.T @ ms.T
    return 0.25 * (base - xn[:, None] - ym[None, :] - c * c)


def _literal_distance(b: BlochForm, angles: np.ndarray) -> float:
    tx, px, ty, py = angles
    n = np.array([np.sin(tx) * np.cos(px), np.sin(tx) * np.sin(px), np.cos(tx)])
    m = np.array([np.sin(ty) * np.cos(py), np.sin(ty) * np.sin(py), np.cos(ty)])
    return hs_distance_sq(b, measure_ab(b, MeasurementPair(n, m)))


def _refine(b: BlochForm, angles: np.ndarray, step: float, tol: float) -> float:
    """Coordinate descent on the 4 angles with shrinking step.

    Calls the literal measure-and-distance path, keeping the refinement
    independent of the vectorized grid algebra.
    """
    best = _literal_distance(b, angles)
    for _ in range(60):
        improved = False
        for k in range(4):
            for sign in (1.0, -1.0):
                trial = angles.copy()
                trial[k] += sign * step
                val = _literal_distance(b, trial)
                if val < best - 1e-18:
                    best, angles, improved = val, trial, True
        if not improved:
            step *= 0.5
            if step < tol:
                break
    return best


def grid_cc_discord(b: BlochForm, spec: GridSpec | None = None, validate: bool = True) -> float:
    """Upper bound on the CC discord from exhaustive grid search,
    optionally polished by local refinement from the best grid cell."""
    if spec is None:
        spec = GridSpec()
    if validate:
        from_bloch(b, validate=True)
    res = spec.resolution
    dirs = _directions(res)
    d = _distance_grid(b, dirs, dirs)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    best = float(d[i, j])
    if not spec.refine:
        return best
    n_phi = res
    angles = np.array(
        [
            (i // n_phi) * (np.pi / 2.0) / res,
            (i % n_phi) * (2.0 * np.pi) / res,
            (j // n_phi) * (np.pi / 2.0) / res,
            (j % n_phi) * (2.0 * np.pi) / res,
        ]
    )
    return min(best, _refine(b, angles, step=(np.pi / 2.0) / res, tol=spec.tol))


def check_observation2(b: BlochForm, pair: MeasurementPair) -> float:
    """Residual of the Pythagorean identity for one measurement:
    | ||rho - M(rho)||^2 - (||rho||^2 - ||M(rho)||^2) |."""
    sigma = measure_ab(b, pair)
    lhs = hs_distance_sq(b, sigma)
    rhs = purity_norm_sq(b) - purity_norm_sq(sigma)
    return abs(lhs - rhs)
