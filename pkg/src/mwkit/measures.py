"""Spherical measure theory: Wallis integrals, cap measures, marginal means.

Conventions.  ``mu`` always denotes the uniform *probability* measure on the
sphere; every marginal-mean routine here is normalized against mu.  The one
exception is ``centroid_brock``, which is stated for the steradian surface
measure on S^2 (the two differ by a factor 4*pi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import GLOBAL_EPS
from .sphere import arc_length, orientation, spherical_triangle_area, vertex_angle

__all__ = [
    "wallis_complete",
    "wallis_table",
    "wallis_incomplete",
    "cap_measure",
    "MarginalMean",
    "cap_marginal_mean",
    "right_triangle_marginal_mean",
    "triangle_marginal_mean",
    "centroid_brock",
    "HalfspaceCell",
    "cell_marginal_mean_MAT",
]


# ---------------------------------------------------------------------------
# Wallis integrals and cap measures
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def wallis_complete(d: int) -> float:
    """Complete Wallis integral W^d = int_0^pi sin^d t dt.

    Computed from the recursion W^d = ((d-1)/d) W^{d-2} with W^0 = pi,
    W^1 = 2.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return float(np.pi)
    if d == 1:
        return 2.0
    return (d - 1) / d * wallis_complete(d - 2)


def wallis_table(d_max: int) -> np.ndarray:
    """Array of W^d for d = 0..d_max."""
    return np.array([wallis_complete(d) for d in range(d_max + 1)])


def wallis_incomplete(d: int, r: float) -> float:
    """Incomplete Wallis integral int_0^r sin^d t dt via the stable recursion.

    W^d(r) = ((d-1)/d) W^{d-2}(r) - (1/d) cos r sin^{d-1} r, with
    W^0(r) = r and W^1(r) = 1 - cos r.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if not (0.0 <= r <= np.pi):
        raise ValueError("r must lie in [0, pi]")
    if d == 0:
        return float(r)
    if d == 1:
        return float(1.0 - np.cos(r))
    return float((d - 1) / d * wallis_incomplete(d - 2, r)
                 - np.cos(r) * np.sin(r) ** (d - 1) / d)


def cap_measure(d: int, r: float) -> float:
    """Probability mass of a geodesic cap of radius r in S^{d-1}."""
    if d < 2:
        raise ValueError("cap_measure needs ambient dimension d >= 2")
    if not (0.0 <= r <= np.pi):
        raise ValueError("r must lie in [0, pi]")
    return wallis_incomplete(d - 2, r) / wallis_complete(d - 2)


# ---------------------------------------------------------------------------
# Marginal means
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarginalMean:
    """Average of X . axis over a region, weighted by the sub-probability mass.

    ``std_error`` is zero for closed-form results and the Monte Carlo standard
    error otherwise.
    """

    value: float
    std_error: float = 0.0
    region: str = ""

    def __post_init__(self):
        if abs(self.value) > 1.0 + GLOBAL_EPS:
            raise ValueError("a marginal mean cannot exceed 1 in absolute value")


def cap_marginal_mean(d: int, r: float) -> MarginalMean:
    """M_{e1} of a cap of radius r in S^{d-1}: sin^{d-1} r / ((d-1) W^{d-2})."""
    if d < 2:
        raise ValueError("need ambient dimension d >= 2")
    if not (0.0 <= r <= np.pi):
        raise ValueError("r must lie in [0, pi]")
    val = np.sin(r) ** (d - 1) / ((d - 1) * wallis_complete(d - 2))
    return MarginalMean(float(val), 0.0, region=f"cap(d={d}, r={r})")


def _right_marginal_value(a: float, b: float) -> float:
    # a sin(b) / (8 pi); valid for a in (0, pi), b in (0, pi/2]  (the
    # closed-form integral continues across a = pi/2, which the altitude
    # splitting of general triangles needs)
    return a * np.sin(b) / (8.0 * np.pi)


def right_triangle_marginal_mean(a: float, b: float) -> MarginalMean:
    """M_A of the right triangle with legs a (opposite A) and b, at sigma=+1.

    Under the uniform probability measure the value is a sin(b) / (8 pi).
    """
    if not (0.0 < a <= np.pi / 2) or not (0.0 < b <= np.pi / 2):
        raise ValueError("legs must lie in (0, pi/2]")
    return MarginalMean(_right_marginal_value(a, b), 0.0,
                        region=f"right_triangle(a={a}, b={b})")


def triangle_marginal_mean(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> MarginalMean:
    """M_A of a general spherical triangle by signed altitude splitting.

    Drops the altitude from A onto the great circle of side a = BC and sums
    the two signed right-triangle contributions; equals
    a sin(b) sin(C) / (8 pi).
    """
    A, B, C = (np.asarray(v, dtype=float) for v in (A, B, C))
    n = np.cross(B, C)
    nn = np.linalg.norm(n)
    if nn < GLOBAL_EPS:
        raise ValueError("side BC degenerate")
    n = n / nn
    foot = A - np.dot(A, n) * n
    fn = np.linalg.norm(foot)
    if fn < GLOBAL_EPS:
        # A is a pole of the BC circle: every foot works, take the side midpoint
        mid = B + C
        mn = np.linalg.norm(mid)
        if mn < GLOBAL_EPS:
            raise ValueError("side BC degenerate (antipodal endpoints)")
        D = mid / mn
    else:
        D = foot / fn
    h = arc_length(A, D)
    if h < GLOBAL_EPS:
        raise ValueError("degenerate: A lies on the great circle of BC")
    # signed positions of B and C along the great circle, measured from D
    t = np.cross(n, D)
    ang_B = np.arctan2(np.dot(B, t), np.dot(B, D))
    ang_C = np.arctan2(np.dot(C, t), np.dot(C, D))
    if min(abs(ang_B), abs(ang_C)) < 1e-10:
        raise ValueError("altitude foot coincides with B or C (measure-zero split)")
    # the two right triangles ABD and ADC; signs opposite iff B, C on the
    # same side of D (difference configuration)
    s_B, s_C = np.sign(ang_B), np.sign(ang_C)
    if s_B * s_C < 0 and abs(ang_B) + abs(ang_C) > np.pi:
        # the minor arc BC contains the antipodal foot -D, not D: split there
        # instead (altitude pi - h, base angles measured from -D)
        m_B = _right_marginal_value(np.pi - abs(ang_B), np.pi - h)
        m_C = _right_marginal_value(np.pi - abs(ang_C), np.pi - h)
        total = m_B + m_C
    else:
        m_B = _right_marginal_value(abs(ang_B), h)
        m_C = _right_marginal_value(abs(ang_C), h)
        total = m_B + m_C if s_B * s_C < 0 else abs(m_B - m_C)
    return MarginalMean(float(total), 0.0, region="triangle")


def centroid_brock(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Spherical centroid G (not unit) of triangle ABC, steradian measure.

    2 [ABC] G = sum_cyc (B x C) a / sin a, with [ABC] the Girard area.  The
    result satisfies G = (integral of X dA) / [ABC].
    """
    A, B, C = (np.asarray(v, dtype=float) for v in (A, B, C))
    sigma = orientation(A, B, C)
    if sigma == 0:
        raise ValueError("degenerate triangle: vertices on a common great circle")
    area = spherical_triangle_area(A, B, C)
    total = np.zeros(3)
    for X, Y, Z in ((A, B, C), (B, C, A), (C, A, B)):
        s = arc_length(Y, Z)
        total += np.cross(Y, Z) * (s / np.sin(s))
    return sigma * total / (2.0 * area)


# ---------------------------------------------------------------------------
# Halfspace cells and the reduced-integral marginal mean
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfspaceCell:
    """A spherical simplex cell {u in S^{d-1} : H u >= 0}.

    Rows of H are the inward hemisphere normals (unit vectors); H is square
    and invertible for a proper simplex cell.
    """

    H: np.ndarray

    def __post_init__(self):
        H = np.asarray(self.H, dtype=float)
        object.__setattr__(self, "H", H)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError("H must be square (d rows of inward normals)")
        norms = np.linalg.norm(H, axis=1)
        if np.max(np.abs(norms - 1.0)) > GLOBAL_EPS:
            raise ValueError("rows of H must be unit vectors")
        if abs(np.linalg.det(H)) < GLOBAL_EPS:
            raise ValueError("H is singular: not a proper simplex cell")

    @property
    def d(self) -> int:
        return self.H.shape[0]

    def contains(self, u: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """Membership H u >= -tol; u may be a single point or an (n, d) array."""
        u = np.asarray(u, dtype=float)
        return np.all(u @ self.H.T >= -tol, axis=-1)


_MAT_PREFACTOR_CHECKED = False


def _check_mat_prefactor():
    # octant regression: with prefactor 1/((d-1) W^{d-2}) the octant cell in
    # S^2 gives prefactor * mu(quarter circle) = (1/4)(1/4) = 1/16, the value
    # of the closed form a sin b / (8 pi) at a = b = pi/2
    global _MAT_PREFACTOR_CHECKED
    pref = 1.0 / ((3 - 1) * wallis_complete(3 - 2))
    closed = _right_marginal_value(np.pi / 2, np.pi / 2)
    if abs(pref * 0.25 - closed) > GLOBAL_EPS:
        raise AssertionError(
            "MAT prefactor self-test failed: 1/((d-1) W^{d-2}) does not "
            "reproduce the d=3 closed form on the octant")
    _MAT_PREFACTOR_CHECKED = True


def cell_marginal_mean_MAT(cell: HalfspaceCell, n_samples: int, seed: int,
                           *, prefactor_denominator: str = "d-1",
                           min_acceptance: float = 1e-6) -> MarginalMean:
    """M_{e1} of a simplex cell with vertex e1, by the reduced integral.

    Evaluates c_d * int_{T~} (1 + (theta . h)^2)^{(1-d)/2} dmu(theta) by
    rejection Monte Carlo over the reduced simplex T~ in S^{d-2} (sub-matrix
    of H with first row and column removed), with h the normalized off-axis
    part of the facet opposite e1 and c_d = 1/((d-1) W^{d-2}).

    ``prefactor_denominator`` exists only as a regression hook: passing
    "d-2" selects the (provably wrong) alternative normalization so tests can
    show it fails the octant check.
    """
    if not _MAT_PREFACTOR_CHECKED:
        _check_mat_prefactor()
    d = cell.d
    if d < 3:
        raise ValueError("the reduced integral needs ambient dimension d >= 3")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    H = cell.H
    # locate the row whose facet does not pass through e1 and move it first
    first_col = H[:, 0]
    big = np.abs(first_col) > 1e-9
    if big.sum() != 1:
        raise ValueError("cell does not have e1 as a vertex "
                         "(first column of H is not proportional to e1)")
    k = int(np.argmax(big))
    if first_col[k] < 0:
        raise ValueError("e1 lies outside the cell (negative first-row entry)")
    order = [k] + [i for i in range(d) if i != k]
    H = H[order]
    h = H[0, 1:] / H[0, 0]
    H_red = H[1:, 1:]

    if prefactor_denominator == "d-1":
        pref = 1.0 / ((d - 1) * wallis_complete(d - 2))
    elif prefactor_denominator == "d-2":
        pref = 1.0 / ((d - 2) * wallis_complete(d - 2))
    else:
        raise ValueError("prefactor_denominator must be 'd-1' or 'd-2'")

    rng = np.random.default_rng(seed)
    theta = rng.standard_normal((n_samples, d - 1))
    theta /= np.linalg.norm(theta, axis=1, keepdims=True)
    accept = np.all(theta @ H_red.T >= 0.0, axis=1)
    if accept.sum() < min_acceptance * n_samples:
        raise ValueError("rejection acceptance rate below threshold: "
                         "cell too thin for naive sampling")
    g = np.where(accept, (1.0 + (theta @ h) ** 2) ** ((1 - d) / 2.0), 0.0)
    mean = g.mean()
    se = g.std(ddof=1) / np.sqrt(n_samples)
    return MarginalMean(float(pref * mean), float(pref * se), region="cell(MAT)")
