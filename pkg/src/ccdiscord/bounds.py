"""Measurement-based upper bounds on the CC discord.

All bounds pick explicit product-measurement directions and evaluate
the distance to the resulting CC state.  With k_x, k_y the top
eigenvectors of K_x, K_y and l_x, l_y the top eigenvectors of

    L_x = |x><x| + T |k_y><k_y| T^T,
    L_y = |y><y| + T^T |k_x><k_x| T,

the nonadaptive (product) bound uses the pair (k_x, k_y) and the
adaptive bound the better of (k_x, l_y) and (l_x, k_y).  Two
refinements follow: optimization over degenerate top eigenspaces, and
optimization over all (not only top) eigenvector combinations.  An
iterative scheme feeds the adapted directions back as inputs and
usually converges rapidly to the CC discord; a fixed-point criterion
detects when it cannot improve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochForm, from_bloch, hs_distance_sq, purity_norm_sq
from .discords import (
    cc_objective_batch,
    fibonacci_hemisphere,
    is_top_degenerate,
    k_matrix_x,
    k_matrix_y,
)
from .eig3 import eigh3
from .measurements import MeasurementPair, canonicalize, measure_ab

CIRCLE_SAMPLES = 360
SPHERE_SAMPLES = 812
_STALL_DOT = 1.0 - 1e-9


class Branch(enum.Enum):
    S_PRIME = "S'"
    S_DPRIME = "S''"
    S_ZERO = "S0"


@dataclass
class BoundResult:
    value: float
    sigma: BlochForm
    directions: MeasurementPair
    branch: Branch


@dataclass
class IterationStep:
    n: int
    value: float
    pair_sprime: MeasurementPair
    pair_sdprime: MeasurementPair


@dataclass
class IterationTrace:
    steps: list[IterationStep] = field(default_factory=list)
    stalled: bool = False
    converged: bool = False

    @property
    def final_value(self) -> float:
        return self.steps[-1].value


def l_matrix_x(b: BlochForm, k_y_hat) -> np.ndarray:
    """L_x = |x><x| + T |k_y><k_y| T^T (rank <= 2, symmetric PSD)."""
    k = np.asarray(k_y_hat, dtype=float).reshape(3)
    a = b.T @ k
    return np.outer(b.x, b.x) + np.outer(a, a)


def l_matrix_y(b: BlochForm, k_x_hat) -> np.ndarray:
    """L_y = |y><y| + T^T |k_x><k_x| T (rank <= 2, symmetric PSD)."""
    k = np.asarray(k_x_hat, dtype=float).reshape(3)
    a = b.T.T @ k
    return np.outer(b.y, b.y) + np.outer(a, a)


def _validate(b: BlochForm) -> None:
    from_bloch(b, validate=True)


def _sigma_norm_sq(b: BlochForm, n: np.ndarray, m: np.ndarray) -> float:
    """||sigma||^2 of the CC state from measuring along (n, m)."""
    return 0.25 * (1.0 + (n @ b.x) ** 2 + (m @ b.y) ** 2 + (n @ b.T @ m) ** 2)


def _top(mat: np.ndarray) -> np.ndarray:
    _, v = eigh3(mat)
    return canonicalize(v[:, 0])


def _result(b: BlochForm, n: np.ndarray, m: np.ndarray, branch: Branch) -> BoundResult:
    pair = MeasurementPair(canonicalize(n), canonicalize(m))
    sigma = measure_ab(b, pair)
    return BoundResult(
        value=max(purity_norm_sq(b) - _sigma_norm_sq(b, n, m), 0.0),
        sigma=sigma,
        directions=pair,
        branch=branch,
    )


def nonadaptive_bound(b: BlochForm, validate: bool = True) -> BoundResult:
    """Product bound from the two independently optimal directions."""
    if validate:
        _validate(b)
    k_x = _top(k_matrix_x(b))
    k_y = _top(k_matrix_y(b))
    return _result(b, k_x, k_y, Branch.S_ZERO)


def adaptive_bound(b: BlochForm, validate: bool = True) -> BoundResult:
    """Adaptive bound: measure one side optimally, then adapt the other."""
    if validate:
        _validate(b)
    k_x = _top(k_matrix_x(b))
    k_y = _top(k_matrix_y(b))
    l_y = _top(l_matrix_y(b, k_x))
    l_x = _top(l_matrix_x(b, k_y))
    s1 = _sigma_norm_sq(b, k_x, l_y)
    s2 = _sigma_norm_sq(b, l_x, k_y)
    if s1 >= s2:
        return _result(b, k_x, l_y, Branch.S_PRIME)
    return _result(b, l_x, k_y, Branch.S_DPRIME)


def _top_candidates(mat: np.ndarray, circle: int, sphere: int) -> np.ndarray:
    """Unit vectors spanning the top eigenspace of a symmetric matrix.

    Nondegenerate: the single top eigenvector.  Degenerate: the
    orthonormal basis vectors plus a sampled family of their linear
    combinations (a circle for 2-fold, a half-sphere for 3-fold).
    """
    w, v = eigh3(mat)
    gap_tol = max(1e-9 * abs(w[0]), 1e-12)
    if w[0] - w[1] >= gap_tol:
        return v[:, :1].T.copy()
    if w[0] - w[2] >= gap_tol:
        t = np.linspace(0.0, np.pi, circle, endpoint=False)
        combos = np.outer(np.cos(t), v[:, 0]) + np.outer(np.sin(t), v[:, 1])
        return np.vstack([v[:, 0], v[:, 1], combos])
    return np.vstack([np.eye(3), fibonacci_hemisphere(sphere)])


def _eigenspace_candidates(mat: np.ndarray, circle: int, sphere: int) -> np.ndarray:
    """Candidate vectors covering every eigenspace of a symmetric matrix."""
    w, v = eigh3(mat)
    scale = max(abs(w[0]), abs(w[2]), 1.0)
    gap_tol = max(1e-9 * scale, 1e-12)
    groups: list[list[int]] = [[0]]
    for i in (1, 2):
        if w[i - 1] - w[i] < gap_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    rows = []
    for g in groups:
        rows.append(v[:, g].T)
        if len(g) == 2:
            t = np.linspace(0.0, np.pi, circle, endpoint=False)
            rows.append(
                np.outer(np.cos(t), v[:, g[0]]) + np.outer(np.sin(t), v[:, g[1]])
            )
        elif len(g) == 3:
            rows.append(fibonacci_hemisphere(sphere))
    return np.vstack(rows)


def _pair_grid_norms(b: BlochForm, ns: np.ndarray, ms: np.ndarray) -> np.ndarray:
    """Matrix of ||sigma||^2 over all (row of ns, row of ms) pairs."""
    xn = (ns @ b.x) ** 2
    ym = (ms @ b.y) ** 2
    c = ns @ b.T @ ms.T
    return 0.25 * (1.0 + xn[:, None] + ym[None, :] + c * c)


def degenerate_optimized_bounds(
    b: BlochForm, samples: int = CIRCLE_SAMPLES, validate: bool = True
) -> dict[str, BoundResult]:
    """Adaptive and nonadaptive bounds minimized over degenerate top
    eigenvectors of K_x, K_y (and the induced L matrices).

    For nondegenerate states this reproduces the plain bounds.
    """
    if validate:
        _validate(b)
    purity = purity_norm_sq(b)
    kx_cands = _top_candidates(k_matrix_x(b), samples, SPHERE_SAMPLES)
    ky_cands = _top_candidates(k_matrix_y(b), samples, SPHERE_SAMPLES)

    # nonadaptive: best product pair over the degenerate families
    norms = _pair_grid_norms(b, kx_cands, ky_cands)
    i, j = np.unravel_index(np.argmax(norms), norms.shape)
    nub = _result(b, kx_cands[i], ky_cands[j], Branch.S_ZERO)

    # adaptive: each k candidate induces its own adapted L matrix
    best = (-np.inf, None, None, Branch.S_PRIME)
    for kx in kx_cands:
        ly_cands = _top_candidates(l_matrix_y(b, kx), samples, SPHERE_SAMPLES)
        row = _pair_grid_norms(b, kx[None, :], ly_cands)[0]
        jj = int(np.argmax(row))
        if row[jj] > best[0]:
            best = (row[jj], kx, ly_cands[jj], Branch.S_PRIME)
    for ky in ky_cands:
        lx_cands = _top_candidates(l_matrix_x(b, ky), samples, SPHERE_SAMPLES)
        col = _pair_grid_norms(b, lx_cands, ky[None, :])[:, 0]
        ii = int(np.argmax(col))
        if col[ii] > best[0]:
            best = (col[ii], lx_cands[ii], ky, Branch.S_DPRIME)
    _, n, m, branch = best
    aub = _result(b, n, m, branch)
    assert aub.value <= purity + 1e-15
    return {"aub": aub, "nub": nub}


def nonoptimal_optimized_aub(b: BlochForm, validate: bool = True) -> BoundResult:
    """Adaptive bound minimized over all eigenvector choices.

    Loops over every eigenvector of K_x (resp. K_y), not only the top
    one, and for each over every eigenvector of the induced L_y (resp.
    L_x): 2 x 9 candidates for a nondegenerate state.  Degenerate
    eigenspaces are sampled as in degenerate_optimized_bounds.
    """
    if validate:
        _validate(b)
    best = (-np.inf, None, None, Branch.S_PRIME)
    kx_cands = _eigenspace_candidates(k_matrix_x(b), CIRCLE_SAMPLES, SPHERE_SAMPLES)
    for kx in kx_cands:
        ly_cands = _eigenspace_candidates(
            l_matrix_y(b, kx), CIRCLE_SAMPLES, SPHERE_SAMPLES
        )
        row = _pair_grid_norms(b, kx[None, :], ly_cands)[0]
        jj = int(np.argmax(row))
        if row[jj] > best[0]:
            best = (row[jj], kx, ly_cands[jj], Branch.S_PRIME)
    ky_cands = _eigenspace_candidates(k_matrix_y(b), CIRCLE_SAMPLES, SPHERE_SAMPLES)
    for ky in ky_cands:
        lx_cands = _eigenspace_candidates(
            l_matrix_x(b, ky), CIRCLE_SAMPLES, SPHERE_SAMPLES
        )
        col = _pair_grid_norms(b, lx_cands, ky[None, :])[:, 0]
        ii = int(np.argmax(col))
        if col[ii] > best[0]:
            best = (col[ii], lx_cands[ii], ky, Branch.S_DPRIME)
    _, n, m, branch = best
    return _result(b, n, m, branch)


def iterate_adaptive(
    b: BlochForm,
    max_iters: int = 50,
    tol: float = 1e-14,
    optimized: bool = False,
    validate: bool = True,
) -> IterationTrace:
    """Iteratively re-adapt the measurement directions.

    Step n takes k^{n} = l^{n-1}, recomputes the top eigenvectors of
    the induced L^{n} matrices, and records the running minimum of the
    bound.  Stops on convergence (successive values within tol), on a
    stall, or after max_iters rounds.  A stall is reported when the
    value has made no progress at all since round 0 and the directions
    are stuck: either the fixed-point criterion k_x = l_y and k_y = l_x
    holds (up to sign), or the direction pair revisits an earlier
    round.  A trace whose initial bound already equals the CC discord
    is also reported as stalled; without an external reference value
    the two cases cannot be told apart.

    With ``optimized=True`` each round also evaluates all eigenvector
    combinations of the current matrices (the nonoptimal-measurement
    refinement); no convergence claim is attached to that variant.
    """
    if validate:
        _validate(b)
    purity = purity_norm_sq(b)
    trace = IterationTrace()

    k_x = _top(k_matrix_x(b))
    k_y = _top(k_matrix_y(b))
    running = np.inf
    first_value = None
    prev_value = None
    seen: set[tuple] = set()

    for n in range(max_iters):
        lmy = l_matrix_y(b, k_x)
        lmx = l_matrix_x(b, k_y)
        l_y = _top(lmy)
        l_x = _top(lmx)
        s1 = _sigma_norm_sq(b, k_x, l_y)
        s2 = _sigma_norm_sq(b, l_x, k_y)
        raw = purity - max(s1, s2)
        if optimized:
            for kx in eigh3(k_matrix_x(b) if n == 0 else lmx)[1].T:
                cands = _eigenspace_candidates(
                    l_matrix_y(b, kx), CIRCLE_SAMPLES, SPHERE_SAMPLES
                )
                raw = min(raw, purity - _pair_grid_norms(b, kx[None, :], cands).max())
            for ky in eigh3(k_matrix_y(b) if n == 0 else lmy)[1].T:
                cands = _eigenspace_candidates(
                    l_matrix_x(b, ky), CIRCLE_SAMPLES, SPHERE_SAMPLES
                )
                raw = min(raw, purity - _pair_grid_norms(b, cands, ky[None, :]).max())
        running = min(running, raw)
        if first_value is None:
            first_value = running
        trace.steps.append(
            IterationStep(
                n=n,
                value=running,
                pair_sprime=MeasurementPair(k_x, l_y),
                pair_sdprime=MeasurementPair(l_x, k_y),
            )
        )

        fixed_point = abs(k_x @ l_y) > _STALL_DOT and abs(k_y @ l_x) > _STALL_DOT
        key = tuple(np.round(np.concatenate([k_x, k_y]), 9))
        cycling = key in seen
        seen.add(key)
        improved = running < first_value - tol
        if n >= 1 and (fixed_point or cycling) and not improved:
            trace.stalled = True
            break
        # without improvement a flat value is not convergence: keep
        # going so a direction cycle can close and be flagged
        if prev_value is not None and abs(running - prev_value) < tol and improved:
            trace.converged = True
            break
        prev_value = running
        k_x, k_y = l_x, l_y

    return trace
