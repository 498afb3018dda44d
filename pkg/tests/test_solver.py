from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import DISCOVERED_BRANCHES, DISCOVERED_THETAS

from heawood_udg.chain import (
    BranchVector,
    ChainBroken,
    build_chain,
    candidate_from_coords,
    dump_candidates,
)
from heawood_udg.geom import RealContext
from heawood_udg.incidence import VertexLabel
from heawood_udg.solver import (
    Bracket,
    LostBracket,
    NoConvergence,
    SingularJacobian,
    SolveConfig,
    closure_grid,
    dedupe_candidates,
    min_vertex_separation,
    newton_polish,
    refine_bracket,
    solve_all,
    sweep,
    system_jacobian,
    system_residuals,
)

V = VertexLabel.parse

DEGENERATE_THETA = math.acos(-0.8)  # l4 = (-3/5, 6/5), unit distance from P2


def _bracket_around(theta: float, branch_str: str, half_width: float = 2e-4) -> Bracket:
    branch = BranchVector.from_string(branch_str)
    lo, hi = theta - half_width, theta + half_width
    res = closure_grid(np.array([lo, hi]), branch)
    return Bracket(branch, lo, hi, float(res[0]), float(res[1]))


# ---------------------------------------------------------------------------
# configuration


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(grid_points=999)
    with pytest.raises(ValueError):
        SolveConfig(precision_stages=(30, 30))
    with pytest.raises(ValueError):
        SolveConfig(precision_stages=())
    assert SolveConfig().final_precision == 60


def test_bracket_requires_sign_change():
    branch = BranchVector.from_string("000000")
    with pytest.raises(ValueError):
        Bracket(branch, 2.0, 2.1, -1.0, -0.5)


# ---------------------------------------------------------------------------
# sweep


def test_closure_grid_matches_chain():
    thetas = np.array([2.0, 2.3, 2.55])
    for branch_str in ("000000", "011000", "110111"):
        branch = BranchVector.from_string(branch_str)
        grid = closure_grid(thetas, branch)
        for t, g in zip(thetas, grid):
            try:
                exact = float(build_chain(float(t), branch, 30).closure)
            except ChainBroken:
                assert not np.isfinite(g)
                continue
            assert abs(g - exact) < 1e-12


def test_closure_grid_nan_where_chain_breaks():
    branch = BranchVector.from_string("000000")
    res = closure_grid(np.array([0.0, 0.2, math.pi / 2]), branch)
    assert not np.isfinite(res[0])  # P3 circles disjoint
    assert not np.isfinite(res[1])


def test_sweep_finds_at_least_eleven_brackets():
    brackets = sweep(SolveConfig())
    assert len(brackets) >= 11
    for b in brackets:
        assert b.residual_lo * b.residual_hi < 0
        assert b.theta_lo < b.theta_hi


def test_every_raw_bracket_is_accounted_for():
    # each sweep bracket either refines to one of the eleven embeddings, is
    # rejected as a discontinuity artifact, or collapses to a degenerate
    # configuration with coincident vertices
    survivors, lost, degenerate = 0, 0, 0
    for b in sweep(SolveConfig()):
        try:
            cand = refine_bracket(b, 30)
        except LostBracket:
            lost += 1
            continue
        if float(min_vertex_separation(cand)) < 1e-6:
            degenerate += 1
        else:
            survivors += 1
    assert survivors == 11
    assert lost >= 1
    assert degenerate >= 1


def test_sweep_empty_on_interval_where_all_chains_break():
    # near theta = 0 the unit circles around l3 and l4 are disjoint for
    # every branch, so there is nothing to bracket
    brackets = sweep(SolveConfig(grid_points=1000), theta_lo=0.0, theta_hi=0.3)
    assert brackets == []


def test_doubled_grid_brackets_cover_original_cells():
    base = SolveConfig(grid_points=4000)
    dense = SolveConfig(grid_points=8000)
    coarse = sweep(base)
    fine = sweep(dense)
    assert len(fine) >= len(coarse)
    for b in coarse:
        hits = [
            f
            for f in fine
            if f.branch == b.branch and f.theta_lo >= b.theta_lo - 1e-12 and f.theta_hi <= b.theta_hi + 1e-12
        ]
        assert hits, f"no refined sign change inside {b}"


# ---------------------------------------------------------------------------
# bracket refinement


def test_refine_bracket_reproduces_first_reference_row(tables):
    bracket = _bracket_around(float(DISCOVERED_THETAS[0]), DISCOVERED_BRANCHES[0])
    cand = refine_bracket(bracket, 30)
    ctx = cand.context()
    row = tables[0]
    for name in ("P1", "P3", "P4", "P6", "l1", "l2", "l4", "l6"):
        pt = cand[name]
        assert abs(pt.x - ctx.mpf(row[name][0])) < ctx.pow10(-13)
        assert abs(pt.y - ctx.mpf(row[name][1])) < ctx.pow10(-13)
    assert abs(cand.closure) < ctx.pow10(-13)


def test_refine_bracket_narrow_input_returns_midpoint():
    # endpoints already inside the width target: no bisection happens
    theta = float(DISCOVERED_THETAS[0])
    bracket = _bracket_around(theta, DISCOVERED_BRANCHES[0], half_width=1e-13)
    cand = refine_bracket(bracket, 20)
    assert abs(float(cand.theta) - theta) < 2e-13
    assert float(cand.theta) == (bracket.theta_lo + bracket.theta_hi) / 2


def test_refine_bracket_rejects_junk_near_half_pi():
    # spurious sign changes next to theta = pi/2 come from the collapse of
    # P6's construction there (l4 passes through l7, concentric circles),
    # not from zeros; refinement must reject every one of them
    junk = [
        b for b in sweep(SolveConfig())
        if abs(0.5 * (b.theta_lo + b.theta_hi) - math.pi / 2) < 0.01
    ]
    assert junk, "expected spurious brackets at the l4 = l7 crossing"
    for b in junk:
        with pytest.raises(LostBracket):
            refine_bracket(b, 30)


def test_refine_bracket_rejects_sign_agreement():
    branch = BranchVector.from_string(DISCOVERED_BRANCHES[0])
    res = closure_grid(np.array([2.58, 2.60]), branch)
    fake = Bracket(branch, 2.58, 2.60, float(res[0]), -float(res[1]))
    with pytest.raises(LostBracket):
        refine_bracket(fake, 30)


def test_degenerate_zero_has_coincident_vertices():
    # at l4 = (-3/5, 6/5) the closure vanishes but the configuration
    # collapses: P1 lands on P6 and l2 on l4 (it is not an embedding)
    brackets = [
        b for b in sweep(SolveConfig())
        if str(b.branch) == "001000" and b.theta_lo < DEGENERATE_THETA < b.theta_hi
    ]
    assert len(brackets) == 1
    cand = refine_bracket(brackets[0], 30)
    ctx = cand.context()
    assert abs(cand["l4"].x + ctx.mpf(3) / 5) < ctx.pow10(-15)
    assert abs(cand["l4"].y - ctx.mpf(6) / 5) < ctx.pow10(-15)
    assert min_vertex_separation(cand) < ctx.pow10(-12)
    sep_p1_p6 = abs(cand["P1"].x - cand["P6"].x) + abs(cand["P1"].y - cand["P6"].y)
    assert sep_p1_p6 < ctx.pow10(-12)


# ---------------------------------------------------------------------------
# Newton polishing


def test_system_residuals_vanish_on_solutions(solutions):
    ctx = RealContext(60)
    for cand in solutions:
        vec = []
        for name in ("l4", "P4", "P3", "P6", "l2", "l1", "l6", "P1"):
            vec.extend([ctx.mpf(cand[name].x), ctx.mpf(cand[name].y)])
        res = system_residuals(ctx, vec)
        assert len(res) == 16
        assert max(abs(r) for r in res) < ctx.pow10(-56)


def test_jacobian_matches_finite_differences():
    ctx = RealContext(40)
    cand = build_chain("2.5", BranchVector.from_string("101100"), 40)
    vec = []
    for name in ("l4", "P4", "P3", "P6", "l2", "l1", "l6", "P1"):
        vec.extend([cand[name].x, cand[name].y])
    J = system_jacobian(ctx, vec)
    h = ctx.pow10(-20)
    base = system_residuals(ctx, vec)
    for col in range(16):
        bumped = list(vec)
        bumped[col] = bumped[col] + h
        res = system_residuals(ctx, bumped)
        for row in range(16):
            fd = (res[row] - base[row]) / h
            assert abs(J[row, col] - fd) < ctx.pow10(-18)


def test_newton_polish_from_reference_seed(table_seeds):
    trace: list = []
    polished = newton_polish(table_seeds[0], 60, trace=trace)
    ctx = RealContext(60)
    vec = []
    for name in ("l4", "P4", "P3", "P6", "l2", "l1", "l6", "P1"):
        vec.extend([ctx.mpf(polished[name].x), ctx.mpf(polished[name].y)])
    assert max(abs(r) for r in system_residuals(ctx, vec)) < ctx.pow10(-56)
    assert 1 <= len(trace) <= 5  # quadratic convergence from a 15-digit seed


def test_newton_quadratic_convergence(table_seeds):
    trace: list = []
    newton_polish(table_seeds[0], 60, trace=trace)
    norms = [float(RealContext(60).mp.log10(t)) for t in trace if t > 0]
    # each step at least ~doubles the number of correct digits until the floor
    for a, b in zip(norms, norms[1:]):
        if b < -58:
            break
        assert b < 1.8 * a + 2


def test_newton_fixed_point_on_exact_solution(solutions):
    trace: list = []
    again = newton_polish(solutions[0], 60, trace=trace)
    assert trace == []  # converged on entry: no step taken
    ctx = RealContext(60)
    for v in again.coords:
        assert abs(again.coords[v].x - solutions[0].coords[v].x) < ctx.pow10(-58)


def test_newton_basin_recovers_from_perturbation(table_seeds, polished_seeds):
    seed = table_seeds[0]
    coords = {
        str(v): (seed.coords[v].x, seed.coords[v].y)
        for v in seed.coords
    }
    x, y = coords["P3"]
    coords["P3"] = (x + 1e-3, y)
    perturbed = candidate_from_coords(
        {k: v for k, v in coords.items() if k not in ("P5", "P2", "P7", "l3", "l5", "l7")},
        20,
    )
    recovered = newton_polish(perturbed, 60)
    ctx = RealContext(60)
    for v in recovered.coords:
        assert abs(recovered.coords[v].x - polished_seeds[0].coords[v].x) < ctx.pow10(-50)


def test_newton_singular_jacobian_when_p1_meets_l1(solutions):
    coords = {str(v): (p.x, p.y) for v, p in solutions[0].coords.items()}
    coords["P1"] = coords["l1"]  # closure row of the Jacobian vanishes
    broken = candidate_from_coords(
        {k: v for k, v in coords.items() if k not in ("P5", "P2", "P7", "l3", "l5", "l7")},
        60,
    )
    with pytest.raises(SingularJacobian):
        newton_polish(broken, 60)


def test_newton_no_convergence_with_iteration_cap(table_seeds):
    with pytest.raises(NoConvergence):
        newton_polish(table_seeds[0], 60, max_iter=1)


# ---------------------------------------------------------------------------
# full solve


def test_solve_all_returns_eleven(solutions):
    assert len(solutions) == 11


def test_solutions_sorted_by_l4(solutions):
    keys = [(float(c["l4"].x), float(c["l4"].y)) for c in solutions]
    assert keys == sorted(keys)


def test_solutions_match_reference_polish(solutions, polished_seeds):
    # the sweep route and the reference-seed Newton route are independent;
    # they must land on identical coordinates
    ctx = RealContext(60)
    by_l4 = sorted(polished_seeds, key=lambda c: (c["l4"].x, c["l4"].y))
    for found, oracle in zip(solutions, by_l4):
        for v in found.coords:
            assert abs(found.coords[v].x - oracle.coords[v].x) < ctx.pow10(-55)
            assert abs(found.coords[v].y - oracle.coords[v].y) < ctx.pow10(-55)


def test_discovered_branches_and_thetas(solutions):
    by_theta = sorted(solutions, key=lambda c: float(c.theta), reverse=True)
    assert [str(c.branch) for c in by_theta] == list(DISCOVERED_BRANCHES)
    for cand, theta in zip(by_theta, DISCOVERED_THETAS):
        assert abs(float(cand.theta) - float(theta)) < 1e-13


def test_solutions_have_positive_l4_ordinate(solutions):
    assert all(c["l4"].y > 0 for c in solutions)


def test_pinned_vertices_are_exact(solutions):
    for cand in solutions:
        assert cand["P5"].x == 0 and cand["P5"].y == 0
        assert cand["l5"].x == 1 and cand["l5"].y == 0
        assert cand["P7"].x == 1 and cand["P7"].y == 1
        assert cand["l7"].x == 1 and cand["l7"].y == 2
        assert cand["P2"].x == 0 and cand["P2"].y == 2
        assert cand["l3"].x == 0 and cand["l3"].y == 1


def test_no_degenerate_solution_included(solutions):
    for cand in solutions:
        assert float(min_vertex_separation(cand)) > 0.06


def test_solve_all_excludes_the_rational_degenerate(solutions):
    for cand in solutions:
        assert abs(float(cand["l4"].x) + 0.6) > 1e-6


def test_dedupe_keeps_one_of_identical_pair(solutions):
    tol = RealContext(60).mpf("1e-20")
    doubled = [solutions[0], solutions[0], solutions[1]]
    assert len(dedupe_candidates(doubled, tol)) == 2


def test_determinism_bit_identical_runs():
    a = solve_all(SolveConfig(grid_points=3000))
    b = solve_all(SolveConfig(grid_points=3000))
    assert dump_candidates(a) == dump_candidates(b)


def test_low_precision_stage_gives_same_solutions(solutions):
    low = solve_all(SolveConfig(precision_stages=(15,)))
    assert len(low) == 11
    for lo, hi in zip(low, solutions):
        assert abs(float(lo["l4"].x) - float(hi["l4"].x)) < 1e-9
        assert abs(float(lo["l4"].y) - float(hi["l4"].y)) < 1e-9
