"""Scalar minimization and Birkhoff-James verdicts against dense grid oracles.

The grid oracles below evaluate the objective on a fine lattice with plain
numpy broadcasting, independently of the golden-section machinery they
verify.
"""

import numpy as np
import pytest

from sipwigner import (
    COMPLEX,
    REAL,
    ContractViolation,
    SolverError,
    best_coeffs,
    bj_orthogonal,
    linf2_space,
    lp_space,
    minimize_scalar,
    norm,
    sip,
)


def lp_norms(p, pts):
    return (np.abs(pts) ** p).sum(axis=-1) ** (1.0 / p)


def grid_min_1d(p, x, y, lo, hi, count=240001):
    lams = np.linspace(lo, hi, count)
    vals = lp_norms(p, x[None, :] + lams[:, None] * y[None, :])
    k = int(np.argmin(vals))
    return lams[k], float(vals[k])


def grid_min_2d(p, x, y, lo, hi, count=401):
    """Coarse complex-lambda grid, refined once around the best cell."""
    best = None
    for _ in range(2):
        re = np.linspace(lo[0], hi[0], count)
        im = np.linspace(lo[1], hi[1], count)
        lam = re[:, None] + 1j * im[None, :]
        vals = lp_norms(p, x[None, None, :] + lam[..., None] * y[None, None, :])
        i, j = np.unravel_index(np.argmin(vals), vals.shape)
        best = (complex(lam[i, j]), float(vals[i, j]))
        dr, di = re[1] - re[0], im[1] - im[0]
        lo = (re[i] - 2 * dr, im[j] - 2 * di)
        hi = (re[i] + 2 * dr, im[j] + 2 * di)
    return best


# ---------------------------------------------------------------- minimize_scalar

def test_real_minimizer_matches_grid():
    x, y = np.array([1.0, 2.0]), np.array([0.5, -1.5])
    res = minimize_scalar(lambda c: float(lp_norms(3.0, x + c * y)), REAL,
                          initial_width=6.0)
    lam, val = grid_min_1d(3.0, x, y, -6.0, 6.0)
    assert res.value <= val + 1e-12
    assert abs(res.argmin - lam) <= 1e-4  # grid spacing dominates
    assert res.flat is False


def test_complex_minimizer_matches_refined_grid():
    x = np.array([1 + 0.5j, -2 + 1j])
    y = np.array([0.7 - 0.2j, 0.3 + 1.1j])
    res = minimize_scalar(lambda c: float(lp_norms(3.0, x + c * y)), COMPLEX,
                          initial_width=4.0)
    lam, val = grid_min_2d(3.0, x, y, (-4.0, -4.0), (4.0, 4.0))
    assert res.value <= val + 1e-10
    assert abs(res.argmin - lam) <= 5e-3


def test_quadratic_argmin_is_sharp():
    res = minimize_scalar(lambda c: (c - 0.75) ** 2 + 2.0, REAL)
    # value queries cannot localize a quadratic minimum past ~sqrt(eps)
    assert res.argmin == pytest.approx(0.75, abs=1e-7)
    assert res.value == pytest.approx(2.0, abs=1e-15)


def test_flat_plateau_reports_midpoint_and_flag():
    g = lambda c: max(abs(c - 1.0) - 1.0, 0.0) + 5.0  # flat on [0, 2]
    res = minimize_scalar(g, REAL, initial_width=8.0, detect_flat=True)
    assert res.flat is True
    assert res.argmin == pytest.approx(1.0, abs=1e-6)
    assert res.value == 5.0


def test_quadratic_minimum_is_not_flagged_flat():
    res = minimize_scalar(lambda c: (c - 0.3) ** 2 + 1.0, REAL, detect_flat=True)
    assert res.flat is False


def test_quartic_contact_reports_a_float_plateau():
    # (c-0.3)^4 + 1 evaluates to exactly 1.0 over a ~2e-4 wide interval, so
    # the argmin is genuinely unresolvable from values and gets flagged
    res = minimize_scalar(lambda c: (c - 0.3) ** 4 + 1.0, REAL, detect_flat=True)
    assert res.flat is True
    assert res.argmin == pytest.approx(0.3, abs=1e-3)
    assert res.value == 1.0


def test_non_coercive_objective_raises():
    with pytest.raises(SolverError):
        minimize_scalar(lambda c: -c, REAL, max_width=1e6)


def test_minimize_rejects_bad_arguments():
    with pytest.raises(ContractViolation):
        minimize_scalar(lambda c: c * c, "quaternion")
    with pytest.raises(ContractViolation):
        minimize_scalar(lambda c: c * c, REAL, xatol=0.0)


# ---------------------------------------------------------------- bj_orthogonal

def test_bj_margin_matches_grid_value():
    s = lp_space(REAL, 2, 1.5)
    x, y = np.array([2.0, 1.0]), np.array([1.0, 1.0])
    verdict = bj_orthogonal(s, x, y)
    _, val = grid_min_1d(1.5, x, y, -7.0, 7.0)
    assert verdict.margin == pytest.approx(val - norm(s, x), abs=1e-9)
    assert not verdict.orthogonal


def test_bj_dual_routes_agree_on_lp3_pair():
    # sip((1,-1), (1,1)) = 0 in l_3^2, so the minimum of ||x + t*y|| sits at 0
    s = lp_space(REAL, 2, 3.0)
    verdict = bj_orthogonal(s, [1.0, 1.0], [1.0, -1.0])
    assert sip(s, [1.0, -1.0], [1.0, 1.0]) == pytest.approx(0.0, abs=1e-15)
    assert verdict.orthogonal
    assert verdict.margin >= -1e-9
    assert abs(verdict.minimizer) <= 1e-4
    assert not verdict.flat_minimizer


def test_bj_parallel_vector_is_far_from_orthogonal():
    s = lp_space(REAL, 2, 3.0)
    verdict = bj_orthogonal(s, [1.0, 1.0], [1.0, 1.0])
    assert not verdict.orthogonal
    # the minimum at t = -1 is a cone, so value accuracy is only ~xatol*slope
    assert verdict.margin == pytest.approx(-norm(s, [1.0, 1.0]), abs=5e-6)
    assert verdict.minimizer == pytest.approx(-1.0, abs=1e-4)


def test_bj_tiny_y_keeps_the_bracket_search_terminating():
    # ||y|| ~ 1e-16 pushes the bracket out to ~1e16 where float spacing
    # exceeds the coordinate tolerance; the search must still terminate
    # and the margin is unaffected (it only rescales the minimizer).
    s = lp_space(REAL, 2, 3.0)
    verdict = bj_orthogonal(s, [1.0, 1.0], [1e-16, -1e-16])
    assert verdict.orthogonal

    verdict = bj_orthogonal(s, [1.0, 1.0], [1e-16, 0.0])
    assert not verdict.orthogonal
    # min_t ||(1 + t, 1)|| is at t = -1, so the margin is 1 - ||x||
    assert verdict.margin == pytest.approx(1.0 - 2.0 ** (1.0 / 3.0), abs=1e-9)
    assert verdict.minimizer == pytest.approx(-1e16, rel=1e-6)


def test_bj_subnormal_y_is_decided_without_overflow():
    # 2*||x||/||y|| overflows for subnormal ||y||; within representable
    # lam such a y cannot move the norm, so the verdict is orthogonal.
    s = lp_space(REAL, 2, 3.0)
    verdict = bj_orthogonal(s, [1.0, 1.0], [5e-324, 0.0])
    assert verdict.orthogonal
    assert verdict.margin == pytest.approx(0.0, abs=1e-12)


def test_bj_complex_imaginary_sip_is_detected():
    # [y, x] purely imaginary: real line searches alone would miss the dip
    s = lp_space(COMPLEX, 2, 2.0)
    x, y = [1.0, 0.0], [1j, 0.5]
    assert sip(s, y, x) == 1j * 1.0
    verdict = bj_orthogonal(s, x, y)
    assert not verdict.orthogonal
    assert verdict.minimizer.imag == pytest.approx(0.8, abs=1e-3)  # -conj(i)/||y||^2


def test_bj_fixture_plateau():
    s = linf2_space()
    verdict = bj_orthogonal(s, [1.0, 0.0], [0.0, 1.0])
    assert verdict.orthogonal
    assert verdict.flat_minimizer  # every |t| <= 1 minimizes max(1, |t|)
    assert verdict.minimizer == pytest.approx(0.0, abs=1e-6)
    assert verdict.margin == 0.0


def test_bj_degenerate_contact_is_flagged_but_still_orthogonal():
    # ||e1 + t*e2||_4 = (1 + t^4)^(1/4) has quartic contact at 0: the
    # verdict is unaffected, the flat flag records the unresolvable argmin
    s = lp_space(REAL, 2, 4.0)
    verdict = bj_orthogonal(s, [1.0, 0.0], [0.0, 1.0])
    assert verdict.orthogonal
    assert verdict.flat_minimizer
    assert abs(verdict.minimizer) <= 1e-3


def test_bj_zero_cases():
    s = lp_space(REAL, 2, 3.0)
    verdict = bj_orthogonal(s, [1.0, 0.0], [0.0, 0.0])
    assert verdict.orthogonal and verdict.flat_minimizer
    with pytest.raises(ContractViolation):
        bj_orthogonal(s, [0.0, 0.0], [1.0, 0.0])


def test_bj_scale_equivariance():
    s = lp_space(REAL, 3, 1.5)
    x, y = np.array([1.0, -2.0, 0.5]), np.array([0.3, 0.4, 2.0])
    a, b = bj_orthogonal(s, x, y), bj_orthogonal(s, 3.0 * x, y)
    assert a.orthogonal == b.orthogonal
    assert b.margin == pytest.approx(3.0 * a.margin, rel=1e-6)


# ---------------------------------------------------------------- best_coeffs

def test_best_coeffs_recovers_exact_combination():
    s = lp_space(REAL, 3, 3.0)
    b1, b2 = np.array([1.0, 0.5, -0.2]), np.array([0.1, -1.0, 0.7])
    target = 2.0 * b1 - 3.0 * b2
    c1, c2 = best_coeffs(s, target, [b1, b2])
    assert c1 == pytest.approx(2.0, abs=1e-6)
    assert c2 == pytest.approx(-3.0, abs=1e-6)
    assert norm(s, target - c1 * b1 - c2 * b2) <= 1e-9


def test_best_coeffs_complex_combination():
    s = lp_space(COMPLEX, 2, 2.0)
    b1, b2 = np.array([1.0, 1j]), np.array([1j, 0.5])
    target = (1 + 2j) * b1 + (-2 + 0.5j) * b2
    c1, c2 = best_coeffs(s, target, [b1, b2])
    assert c1 == pytest.approx(1 + 2j, abs=1e-6)
    assert c2 == pytest.approx(-2 + 0.5j, abs=1e-6)


def test_best_coeffs_single_vector():
    s = lp_space(REAL, 2, 1.5)
    (c,) = best_coeffs(s, [-3.0, 1.5], [[2.0, -1.0]])
    assert c == pytest.approx(-1.5, abs=1e-8)


def test_best_coeffs_rejects_dependent_basis():
    s = lp_space(REAL, 2, 2.0)
    with pytest.raises(ContractViolation):
        best_coeffs(s, [1.0, 1.0], [[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(ContractViolation):
        best_coeffs(s, [1.0, 1.0], [])
