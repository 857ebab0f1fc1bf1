"""Mean width of inscribed simplices and the ascent to the regular maximizer.

Three evaluation routes: the exact d = 3 closed form through the 24-triangle
complex, plain Monte Carlo over the sphere for any d, and the reduced-integral
route that sums cell marginal means over the signed path-simplex complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cells import (DegeneracyError, InscribedSimplex, _complex24_core,
                    cell_vertex, decompose_simplex)
from .measures import HalfspaceCell, cell_marginal_mean_MAT

__all__ = [
    "WidthEstimate",
    "support_function",
    "mean_width_mc",
    "mean_width_exact3d",
    "mean_width_mat",
    "regular_simplex",
    "regular_tetrahedron_width",
    "regularity_metric",
    "OptimizerState",
    "optimize_width",
]

_MC_BATCH = 1_000_000


@dataclass(frozen=True)
class WidthEstimate:
    value: float
    std_error: float
    method: str  # exact3d | monte_carlo | mat_quadrature

    def __post_init__(self):
        if not (0.0 <= self.value <= 2.0 + 1e-9):
            raise ValueError("mean width of a body inside the unit ball is in [0, 2]")
        if self.std_error < 0.0:
            raise ValueError("std_error must be nonnegative")
        if self.method == "exact3d" and self.std_error != 0.0:
            raise ValueError("exact3d is deterministic")


def support_function(S: InscribedSimplex, u: np.ndarray) -> float:
    """h(u) = max_i u . v_i."""
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != S.d:
        raise ValueError("dimension mismatch between u and the simplex")
    return float(np.max(S.vertices @ u))


def mean_width_mc(S: InscribedSimplex, n: int, seed: int) -> WidthEstimate:
    """2 * E[max_i X . v_i] by uniform sphere sampling (seeded, batched)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    V = S.vertices
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    left = n
    while left > 0:
        m = min(left, _MC_BATCH)
        u = rng.standard_normal((m, S.d))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        h = np.max(u @ V.T, axis=1)
        total += h.sum()
        total_sq += np.square(h).sum()
        left -= m
    mean = total / n
    var = max(total_sq / n - mean ** 2, 0.0)
    se = 2.0 * math.sqrt(var / n) if n > 1 else 2.0 * math.sqrt(var)
    return WidthEstimate(2.0 * mean, se, "monte_carlo")


def _exact3d_value(V: np.ndarray) -> float:
    sigma, a, b, _, _ = _complex24_core(V)
    return float(np.sum(sigma * a * np.sin(b)) / (4.0 * np.pi))


def mean_width_exact3d(S: InscribedSimplex) -> WidthEstimate:
    """Exact mean width for d = 3 via the signed complex of 24 right triangles:
    w = (1/4pi) sum sigma(T) a_T sin b_T.

    Valid for any inscribed simplex in general position (the signed indicator
    identity does not need the hemisphere cover).
    """
    if S.d != 3:
        raise ValueError("exact3d needs ambient dimension 3")
    try:
        return WidthEstimate(_exact3d_value(S.vertices), 0.0, "exact3d")
    except DegeneracyError as exc:
        raise DegeneracyError(
            f"{exc}; a tiny random rotation of the input (jiggle) usually "
            "escapes the degeneracy") from exc


def _rotation_to_e1(v: np.ndarray) -> np.ndarray:
    """Orthogonal map sending v to e1 (Householder reflection, or identity)."""
    d = v.shape[0]
    e1 = np.zeros(d)
    e1[0] = 1.0
    w = v - e1
    nw = np.linalg.norm(w)
    if nw < 1e-14:
        return np.eye(d)
    w = w / nw
    return np.eye(d) - 2.0 * np.outer(w, w)


def mean_width_mat(S: InscribedSimplex, n: int, seed: int) -> WidthEstimate:
    """Mean width by the reduced-integral marginal means.

    Each Voronoi cell is decomposed into d! signed path simplices with end
    vertex v_i; each piece is rotated so v_i sits at e1 and evaluated with
    the reduced integral; n is the sample count per piece.
    """
    if S.d < 3:
        raise ValueError("the reduced-integral route needs d >= 3")
    d = S.d
    V = S.vertices
    total = 0.0
    var = 0.0
    k = 0
    for i in range(d + 1):
        cell_verts = np.array([
            cell_vertex(S, subset)
            for subset in _size_d_subsets_containing(d, i)
        ])
        rot = _rotation_to_e1(V[i])
        for piece in decompose_simplex(cell_verts, V[i]):
            P = piece.vertices @ rot.T  # rotated path vertices, first is e1
            N = np.linalg.inv(P.T)
            N /= np.linalg.norm(N, axis=1, keepdims=True)
            try:
                mm = cell_marginal_mean_MAT(HalfspaceCell(N), n, seed + k)
            except ValueError as exc:
                raise ValueError(f"cell {i}: {exc}") from exc
            total += piece.sign * mm.value
            var += mm.std_error ** 2
            k += 1
    return WidthEstimate(2.0 * total, 2.0 * math.sqrt(var), "mat_quadrature")


def _size_d_subsets_containing(d: int, i: int):
    rest = [j for j in range(d + 1) if j != i]
    for skip in range(d):
        yield tuple([i] + rest[:skip] + rest[skip + 1:])


def regular_simplex(d: int) -> InscribedSimplex:
    """The inscribed regular simplex: pairwise vertex dot products -1/d."""
    if d < 2:
        raise ValueError("d must be >= 2")
    ones = np.ones((1, d + 1))
    _, _, vt = np.linalg.svd(ones)
    V = vt[1:].T  # rows: images of the standard basis in the hyperplane
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    return InscribedSimplex(V)


@lru_cache(maxsize=None)
def regular_tetrahedron_width() -> float:
    """Mean width of the regular inscribed tetrahedron, from the exact
    complex (equals (6/pi) arccos(1/sqrt 3) sqrt(2/3))."""
    return mean_width_exact3d(regular_simplex(3)).value


def regularity_metric(S: InscribedSimplex) -> float:
    """Isometry-invariant distance from regularity: max deviation of the
    pairwise vertex dot products from -1/d."""
    V = S.vertices
    G = V @ V.T
    off = G[~np.eye(len(G), dtype=bool)]
    return float(np.max(np.abs(off + 1.0 / S.d)))


# ---------------------------------------------------------------------------
# Projected gradient ascent
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OptimizerState:
    simplex: InscribedSimplex
    width: WidthEstimate
    iteration: int
    step_size: float
    regularity: float
    converged: bool


def _normalize_rows(V: np.ndarray) -> np.ndarray:
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def optimize_width(d: int, init="random", *, max_iter: int = 1000,
                   step0: float = 0.2, tol: float = 1e-10, seed: int = 0,
                   mc_samples: int = 100_000, fd_step: float = 1e-6,
                   min_step: float = 1e-13) -> list[OptimizerState]:
    """Projected gradient ascent of the mean width over inscribed simplices.

    d = 3 uses the exact objective; higher d uses common-random-numbers Monte
    Carlo with a fixed seed so ascent decisions are stable.  Vertices are
    renormalized to the sphere after every step; steps that fail to improve
    are backtracked.  Returns the trace of accepted states.
    """
    rng = np.random.default_rng(seed)
    if isinstance(init, InscribedSimplex):
        if init.d != d:
            raise ValueError("init simplex has the wrong dimension")
        V = init.vertices.copy()
    elif init == "random":
        from .cells import random_simplex
        V = random_simplex(d, rng).vertices
    else:
        raise ValueError("init must be an InscribedSimplex or 'random'")

    if d == 3:
        def objective(W):
            return _exact3d_value(W)
        method = "exact3d"
    else:
        obj_seed = int(rng.integers(2 ** 31))

        def objective(W):
            return mean_width_mc(InscribedSimplex(W), mc_samples, obj_seed).value
        method = "monte_carlo"

    def safe_objective(W, context):
        try:
            return objective(W)
        except DegeneracyError as exc:
            raise DegeneracyError(f"objective failed at {context}: {exc}") from exc

    def make_state(W, w, it, step, converged):
        S = InscribedSimplex(W.copy())
        return OptimizerState(
            simplex=S, width=WidthEstimate(w, 0.0, method), iteration=it,
            step_size=step, regularity=regularity_metric(S), converged=converged)

    w = safe_objective(V, "initial point")
    step = step0
    trace = [make_state(V, w, 0, step, False)]
    n_coords = V.size

    for it in range(1, max_iter + 1):
        # central finite-difference gradient, projected to the sphere tangents
        grad = np.zeros_like(V)
        flat = V.ravel()
        g = grad.ravel()
        for k in range(n_coords):
            orig = flat[k]
            flat[k] = orig + fd_step
            wp = safe_objective(_normalize_rows(V), f"iteration {it} (fd probe)")
            flat[k] = orig - fd_step
            wm = safe_objective(_normalize_rows(V), f"iteration {it} (fd probe)")
            flat[k] = orig
            g[k] = (wp - wm) / (2 * fd_step)
        grad -= (np.sum(grad * V, axis=1, keepdims=True)) * V

        accepted = False
        while step >= min_step:
            V_try = _normalize_rows(V + step * grad)
            try:
                w_try = objective(V_try)
            except DegeneracyError:
                w_try = -np.inf
            if w_try > w:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            trace.append(make_state(V, w, it, step, True))
            break
        improvement = w_try - w
        V, w = V_try, w_try
        step = min(step * 1.5, 10.0 * step0)
        converged = improvement < tol
        trace.append(make_state(V, w, it, step, converged))
        if converged:
            break
    return trace
