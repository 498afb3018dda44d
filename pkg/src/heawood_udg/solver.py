"""Find all real embeddings: sweep, bracket, bisect, Newton-polish, dedupe.

The construction chain makes every dependent vertex an explicit function of
the angle parameter and the branch bits, so root finding is one-dimensional
per branch vector: only the closure residual d(P1, l1)^2 - 1 remains.  The
sweep scans a dense angle grid over all 64 branch vectors in hardware
floats, bracketing sign changes; brackets are then bisected at working
precision and polished with Newton's method on the square 16-variable
system using the analytic Jacobian.

Degenerate zeros are real solutions of the equation set that are not graph
embeddings: configurations where distinct vertices coincide (a constructed
vertex can land exactly on the pinned vertex P2 whenever l4 is at unit
distance from it, and the coincidences cascade down the chain).  The solver
drops those by a minimum vertex-separation check.  Sign changes caused by
the branch discontinuity where l4 meets l7 (concentric construction
circles) are not zeros at all and are rejected during bisection.

The sweep domain (branch vector x angle subinterval) is embarrassingly
parallel and all functions here are pure; the implementation is
single-threaded since the full default run takes seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .chain import (
    CHAIN_STEPS,
    DEPENDENT_VERTICES,
    FIXED_POSITIONS,
    BranchVector,
    ChainBroken,
    EmbeddingCandidate,
    all_branch_vectors,
    build_chain,
    candidate_from_coords,
)
from .geom import Point2, RealContext, distance_squared
from .incidence import ALL_VERTICES, VertexLabel

TWO_PI = 2 * math.pi


class SolverError(Exception):
    pass


class LostBracket(SolverError):
    """The sign change vanished or refined to a non-zero: a branch boundary
    was crossed or the bracket straddles a discontinuity, not a root."""


class SingularJacobian(SolverError):
    """Newton's Jacobian is numerically singular at the iterate."""


class NoConvergence(SolverError):
    """Newton failed to reach the residual target within the iteration cap."""


@dataclass(frozen=True)
class Bracket:
    """A same-branch grid interval whose closure residual changes sign."""

    branch: BranchVector
    theta_lo: float
    theta_hi: float
    residual_lo: float
    residual_hi: float

    def __post_init__(self):
        if not self.residual_lo * self.residual_hi < 0:
            raise ValueError("bracket endpoints must have strictly opposite signs")


@dataclass(frozen=True)
class SolveConfig:
    grid_points: int = 20000
    precision_stages: tuple = (30, 60)
    dedupe_tol: str = "1e-20"
    newton_max_iter: int = 100
    min_vertex_separation: float = 1e-6

    def __post_init__(self):
        if self.grid_points < 1000:
            raise ValueError(f"grid_points must be >= 1000, got {self.grid_points}")
        stages = tuple(int(s) for s in self.precision_stages)
        if not stages or any(b <= a for a, b in zip(stages, stages[1:])):
            raise ValueError(f"precision stages must be strictly increasing: {stages}")
        object.__setattr__(self, "precision_stages", stages)

    @property
    def final_precision(self) -> int:
        return self.precision_stages[-1]


# ---------------------------------------------------------------------------
# Vectorized sweep (hardware floats; signs only)

_FIXED_F = {str(v): (float(x), float(y)) for v, (x, y) in FIXED_POSITIONS.items()}


def _cci_grid(c1x, c1y, c2x, c2y, bit):
    # unit-circle intersection, NaN where the circles miss
    dx = c2x - c1x
    dy = c2y - c1y
    d2 = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        d = np.sqrt(d2)
        h2 = 1.0 - d2 / 4.0
        h = np.sqrt(np.where(h2 >= 0.0, h2, np.nan))
        ux = dx / d
        uy = dy / d
        mx = c1x + 0.5 * d * ux
        my = c1y + 0.5 * d * uy
        if bit == 0:
            return mx - h * uy, my + h * ux
        return mx + h * uy, my - h * ux


def closure_grid(thetas: np.ndarray, branch: BranchVector) -> np.ndarray:
    """Closure residual on an angle grid for one branch vector (float64).

    NaN marks angles where the chain breaks.  This is the sweep's fast
    path; tests cross-check it pointwise against :func:`chain.build_chain`.
    """
    thetas = np.asarray(thetas, dtype=float)
    pos = {name: (np.full_like(thetas, x), np.full_like(thetas, y)) for name, (x, y) in _FIXED_F.items()}
    l4x = 1.0 + 2.0 * np.cos(thetas)
    l4y = 2.0 * np.sin(thetas)
    pos["l4"] = (l4x, l4y)
    pos["P4"] = ((l4x + 1.0) / 2.0, l4y / 2.0)
    for bit, (vertex, ca, cb) in zip(branch, CHAIN_STEPS):
        ax, ay = pos[str(ca)]
        bx, by = pos[str(cb)]
        pos[str(vertex)] = _cci_grid(ax, ay, bx, by, bit)
    p1x, p1y = pos["P1"]
    l1x, l1y = pos["l1"]
    return (p1x - l1x) ** 2 + (p1y - l1y) ** 2 - 1.0


def sweep(config: SolveConfig | None = None, theta_lo: float = 0.0, theta_hi: float = TWO_PI) -> list:
    """Bracket every same-branch sign change of the closure residual.

    Scans ``grid_points`` angles over [theta_lo, theta_hi) for each of the
    64 branch vectors; grid cells where the chain breaks are skipped.  When
    the range is the full circle the wrap-around pair is included.
    """
    config = config or SolveConfig()
    thetas = np.linspace(theta_lo, theta_hi, config.grid_points, endpoint=False)
    full_circle = math.isclose(theta_hi - theta_lo, TWO_PI)
    brackets = []
    for branch in all_branch_vectors():
        res = closure_grid(thetas, branch)
        pairs = zip(range(len(thetas) - 1), range(1, len(thetas)))
        if full_circle:
            pairs = list(pairs) + [(len(thetas) - 1, 0)]
        for i, j in pairs:
            a, b = res[i], res[j]
            if np.isfinite(a) and np.isfinite(b) and a * b < 0:
                t_hi = thetas[j] if j != 0 else theta_lo + TWO_PI
                brackets.append(Bracket(branch, float(thetas[i]), float(t_hi), float(a), float(b)))
    return brackets


# ---------------------------------------------------------------------------
# High-precision refinement


def refine_bracket(bracket: Bracket, digits: int) -> EmbeddingCandidate:
    """Bisect the bracket at ``digits`` working precision down to an angle
    interval below 10^(-digits/2) and return the chain at its midpoint.

    Raises :class:`LostBracket` when the sign change is not backed by an
    actual zero: the endpoints agree in sign at working precision, the
    chain breaks during bisection, or the refined midpoint's closure
    residual stays above 10^(-digits/2) (a jump of the branch structure,
    not a root).
    """
    ctx = RealContext(digits)

    def closure_at(theta):
        return build_chain(theta, bracket.branch, digits).closure

    lo = ctx.mpf(bracket.theta_lo)
    hi = ctx.mpf(bracket.theta_hi)
    try:
        f_lo = closure_at(lo)
        f_hi = closure_at(hi)
    except ChainBroken as exc:
        raise LostBracket(f"chain breaks at a bracket endpoint: {exc}") from exc
    if f_lo == 0:
        return build_chain(lo, bracket.branch, digits)
    if f_hi == 0:
        return build_chain(hi, bracket.branch, digits)
    if (f_lo < 0) == (f_hi < 0):
        raise LostBracket("no sign change at working precision")

    # extra factor 100 of interval width keeps the midpoint residual under
    # the 10^(-digits/2) bound even for steep crossings
    width_target = ctx.pow10(-(digits // 2) - 2)
    residual_bound = ctx.pow10(-(digits // 2))
    while hi - lo >= width_target:
        mid = (lo + hi) / 2
        try:
            f_mid = closure_at(mid)
        except ChainBroken as exc:
            raise LostBracket(f"chain breaks inside the bracket: {exc}") from exc
        if f_mid == 0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    candidate = build_chain((lo + hi) / 2, bracket.branch, digits)
    if abs(candidate.closure) >= residual_bound:
        raise LostBracket(
            f"refined midpoint residual {ctx.nstr(candidate.closure, 6)} "
            "is not a zero; the bracket straddles a discontinuity"
        )
    return candidate


# ---------------------------------------------------------------------------
# Newton polish on the square 16-variable system

# unknowns in construction order, x before y
VARIABLE_ORDER = tuple((v, axis) for v in DEPENDENT_VERTICES for axis in (0, 1))

_L4 = VertexLabel.parse("l4")
_P4 = VertexLabel.parse("P4")
_P1 = VertexLabel.parse("P1")
_L1 = VertexLabel.parse("l1")


def _positions(ctx: RealContext, vec) -> dict:
    pos = {v: ctx.point(x, y) for v, (x, y) in FIXED_POSITIONS.items()}
    for k in range(0, len(vec), 2):
        pos[VARIABLE_ORDER[k][0]] = Point2(vec[k], vec[k + 1])
    return pos


def _unit_circle_pairs():
    pairs = [(vertex, center) for vertex, ca, cb in CHAIN_STEPS for center in (ca, cb)]
    pairs.append((_P1, _L1))
    return pairs


_CIRCLE_PAIRS = _unit_circle_pairs()
_VAR_INDEX = {va: k for k, va in enumerate(VARIABLE_ORDER)}


def system_residuals(ctx: RealContext, vec: Sequence) -> list:
    """The 16 equations: spacing, the two midpoint relations, and the 13
    unit-circle constraints, evaluated at the 16-vector of unknowns."""
    pos = _positions(ctx, vec)
    l4 = pos[_L4]
    p4 = pos[_P4]
    out = [
        (l4.x - 1) ** 2 + l4.y ** 2 - 4,
        p4.x - (l4.x + 1) / 2,
        p4.y - l4.y / 2,
    ]
    for vertex, center in _CIRCLE_PAIRS:
        out.append(distance_squared(pos[vertex], pos[center]) - 1)
    return out


def system_jacobian(ctx: RealContext, vec: Sequence):
    """Analytic Jacobian of :func:`system_residuals` (16 x 16)."""
    pos = _positions(ctx, vec)
    l4 = pos[_L4]
    J = ctx.mp.zeros(16, 16)
    half = ctx.mpf(1) / 2
    J[0, _VAR_INDEX[(_L4, 0)]] = 2 * (l4.x - 1)
    J[0, _VAR_INDEX[(_L4, 1)]] = 2 * l4.y
    J[1, _VAR_INDEX[(_P4, 0)]] = 1
    J[1, _VAR_INDEX[(_L4, 0)]] = -half
    J[2, _VAR_INDEX[(_P4, 1)]] = 1
    J[2, _VAR_INDEX[(_L4, 1)]] = -half
    for row, (vertex, center) in enumerate(_CIRCLE_PAIRS, start=3):
        dx = 2 * (pos[vertex].x - pos[center].x)
        dy = 2 * (pos[vertex].y - pos[center].y)
        J[row, _VAR_INDEX[(vertex, 0)]] = dx
        J[row, _VAR_INDEX[(vertex, 1)]] = dy
        if (center, 0) in _VAR_INDEX:
            J[row, _VAR_INDEX[(center, 0)]] = -dx
            J[row, _VAR_INDEX[(center, 1)]] = -dy
    return J


def _candidate_vector(ctx: RealContext, candidate: EmbeddingCandidate) -> list:
    vec = []
    for v, axis in VARIABLE_ORDER:
        p = candidate.coords[v]
        vec.append(ctx.mpf(p.x if axis == 0 else p.y))
    return vec


def _inf_norm(column) -> Any:
    return max(abs(column[k]) for k in range(column.rows))


def _condition_estimate(ctx: RealContext, J) -> Any:
    norm = max(sum(abs(J[i, j]) for j in range(16)) for i in range(16))
    inv = ctx.mp.inverse(J)
    inv_norm = max(sum(abs(inv[i, j]) for j in range(16)) for i in range(16))
    return norm * inv_norm


def newton_polish(
    candidate: EmbeddingCandidate,
    digits: int,
    max_iter: int = 100,
    trace: list | None = None,
) -> EmbeddingCandidate:
    """Newton's method at ``digits`` precision on the 16-equation system.

    Iterates until the maximum equation residual drops below
    10^(4 - digits).  Expects a seed already near a solution (closure
    residual well below 1e-10).  When ``trace`` is a list, the infinity
    norms of the Newton steps are appended to it, giving the quadratic
    convergence record.

    Raises :class:`SingularJacobian` when the seed Jacobian's condition
    estimate exceeds 10^(digits/2) and :class:`NoConvergence` when the
    residual target is not met within ``max_iter`` iterations.
    """
    ctx = RealContext(digits)
    vec = _candidate_vector(ctx, candidate)
    target = ctx.pow10(4 - digits)
    cond_limit = ctx.pow10(digits // 2)

    for iteration in range(max_iter):
        residuals = system_residuals(ctx, vec)
        if max(abs(r) for r in residuals) < target:
            break
        J = system_jacobian(ctx, vec)
        if iteration == 0:
            try:
                cond = _condition_estimate(ctx, J)
            except ZeroDivisionError:
                raise SingularJacobian("Jacobian is exactly singular at the seed")
            if cond > cond_limit:
                raise SingularJacobian(
                    f"condition estimate {ctx.nstr(cond, 5)} exceeds 10^{digits // 2}"
                )
        rhs = ctx.mp.matrix([-r for r in residuals])
        try:
            step = ctx.mp.lu_solve(J, rhs)
        except ZeroDivisionError:
            raise SingularJacobian("Jacobian became singular during iteration")
        if trace is not None:
            trace.append(_inf_norm(step))
        vec = [vec[k] + step[k] for k in range(16)]
    else:
        raise NoConvergence(f"no convergence after {max_iter} Newton iterations")

    coords = {}
    for k, (v, axis) in enumerate(VARIABLE_ORDER):
        if axis == 0:
            coords[v] = (vec[k], vec[k + 1])
    return candidate_from_coords(coords, digits)


# ---------------------------------------------------------------------------
# Assembly


def min_vertex_separation(candidate: EmbeddingCandidate):
    """Smallest pairwise distance between the 14 vertex positions."""
    ctx = candidate.context()
    labels = list(candidate.coords)
    best = None
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            d2 = distance_squared(candidate.coords[a], candidate.coords[b])
            if best is None or d2 < best:
                best = d2
    return ctx.sqrt(best)


def dedupe_candidates(candidates: Sequence[EmbeddingCandidate], tol) -> list:
    """Drop candidates whose 28 coordinates all agree with an earlier one
    within ``tol`` (distinct branch vectors can describe the same point)."""
    kept: list = []
    for cand in candidates:
        duplicate = False
        for other in kept:
            if all(
                abs(cand.coords[v].x - other.coords[v].x) < tol
                and abs(cand.coords[v].y - other.coords[v].y) < tol
                for v in ALL_VERTICES
            ):
                duplicate = True
                break
        if not duplicate:
            kept.append(cand)
    return kept


def solve_all(config: SolveConfig | None = None) -> list:
    """All real embeddings at the final precision stage, sorted by the
    coordinates of l4; expected cardinality is eleven.

    Pipeline: float sweep -> bisection refinement at the first precision
    stage -> degeneracy filter -> Newton polish through the remaining
    stages -> coordinate-wise dedupe -> sort.
    """
    config = config or SolveConfig()
    stage0 = config.precision_stages[0]
    final_ctx = RealContext(config.final_precision)
    tol = final_ctx.mpf(config.dedupe_tol)

    polished = []
    for bracket in sweep(config):
        try:
            cand = refine_bracket(bracket, stage0)
        except LostBracket:
            continue
        if min_vertex_separation(cand) < config.min_vertex_separation:
            continue  # coincident vertices: a degenerate zero, not an embedding
        for digits in config.precision_stages:
            cand = newton_polish(cand, digits, max_iter=config.newton_max_iter)
        polished.append(cand)

    unique = dedupe_candidates(polished, tol)
    unique.sort(key=lambda c: (c.coords[_L4].x, c.coords[_L4].y))
    return unique
