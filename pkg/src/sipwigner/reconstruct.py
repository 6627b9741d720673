"""Recover the isometry and phase behind a symmetry-preserving map.

A surjective map f between smooth spaces that preserves |[., .]| factors
as f(x) = sigma(x) * U(x) with |sigma| = 1 and U a linear or
conjugate-linear surjective isometry.  This module rebuilds (sigma, U)
from black-box evaluations of f:

* scalars move through f up to phase (``recover_scalar_action``),
* f(x + y) lands in span{f(x), f(y)} with unimodular coefficients
  (``recover_pair_coeffs``),
* the coefficient ratio on the pair (e1, i*e2) reveals whether scalars
  pass through linearly or conjugated (``detect_kind``),
* ``reconstruct`` assembles U column by column in the gauge sigma(e1) = 1
  and then reads sigma off as [f(x), U x*] / ||x||^2.

U is only ever determined up to one global unimodular factor; the gauge
pins that factor.  Maps that break the factorization raise
HypothesisViolation with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractViolation,
    HypothesisViolation,
    KindAmbiguous,
    UnsupportedSpace,
)
from .orthogonality import best_coeffs, minimize_scalar
from .spaces import COMPLEX, Lp, REAL, Scalar, Space, Vector, as_vec, basis_vec, norm, sip
from .wigner import MapOracle

KIND_LINEAR = "linear"
KIND_CONJUGATE = "conjugate_linear"


@dataclass(frozen=True)
class Reconstruction:
    """A recovered factorization f(x) = sigma(x) * U @ x*.

    ``U`` acts on the conjugated coordinates when ``kind`` is
    "conjugate_linear" and plainly otherwise; ``phase_samples`` holds
    (x, sigma(x)) over the verification set and ``residual`` the worst
    ||f(x) - sigma(x) * U x*|| seen there.  The gauge sigma(e1) = 1 fixes
    the global phase shared by U and sigma.
    """

    U: np.ndarray
    kind: str
    phase_samples: list[tuple[Vector, Scalar]]
    residual: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": self.U,  # row-major nested lists once serialized
            "residual": self.residual,
            "gauge": "sigma(e_1)=1",
            "phase_samples": [{"x": x, "sigma": s} for x, s in self.phase_samples],
        }


def _require_reconstructible(m: MapOracle) -> None:
    if not isinstance(m.source.norm, Lp) or not isinstance(m.target.norm, Lp):
        raise UnsupportedSpace("reconstruction needs smooth (Lp) spaces")
    if m.source.field != m.target.field:
        raise ContractViolation("source and target must share the scalar field")
    if m.source.dim != m.target.dim:
        raise ContractViolation("reconstruction needs equal dimensions")


def recover_scalar_action(m: MapOracle, x, lam: Scalar, tol: float = 1e-8) -> Scalar:
    """The scalar gamma with f(lam*x) = gamma*f(x); |gamma| = |lam| must hold."""
    _require_reconstructible(m)
    xv = as_vec(m.source, x)
    if norm(m.source, xv) == 0.0:
        raise ContractViolation("scalar action is probed at nonzero x")
    fx = m(xv)
    flx = m(lam * xv)
    nfx = norm(m.target, fx)
    if nfx == 0.0:
        raise HypothesisViolation("f vanished at a nonzero point",
                                  {"x": xv.tolist()})
    reach = 2.0 * norm(m.target, flx) / nfx + 1.0
    res = minimize_scalar(
        lambda c: norm(m.target, flx - c * fx),
        m.target.field,
        initial_width=reach,
        max_width=64.0 * reach,
    )
    gamma = res.argmin
    scale = 1.0 + abs(lam) * norm(m.source, xv)
    if res.value > tol * scale:
        raise HypothesisViolation(
            f"f(lam*x) leaves the line through f(x): residual {res.value:.3e}",
            {"x": xv.tolist(), "lam": lam, "residual": res.value},
        )
    if abs(abs(gamma) - abs(lam)) > tol * (1.0 + abs(lam)):
        raise HypothesisViolation(
            f"|gamma| = {abs(gamma):.17g} drifted from |lam| = {abs(lam):.17g}",
            {"x": xv.tolist(), "lam": lam, "gamma": gamma},
        )
    return gamma


def recover_pair_coeffs(m: MapOracle, x, y, tol: float = 1e-8) -> tuple[Scalar, Scalar]:
    """Unimodular (alpha, beta) with f(x+y) = alpha*f(x) + beta*f(y)."""
    _require_reconstructible(m)
    xv = as_vec(m.source, x)
    yv = as_vec(m.source, y)
    stacked = np.stack([xv, yv], axis=1)
    svals = np.linalg.svd(stacked, compute_uv=False)
    if svals[0] == 0.0 or svals[-1] <= 1e-12 * svals[0]:
        raise ContractViolation("x and y must be linearly independent")
    fx, fy, fxy = m(xv), m(yv), m(xv + yv)
    alpha, beta = best_coeffs(m.target, fxy, [fx, fy])
    residual = norm(m.target, fxy - alpha * fx - beta * fy)
    scale = 1.0 + norm(m.source, xv + yv)
    if residual > tol * scale:
        raise HypothesisViolation(
            f"f(x+y) leaves span(f(x), f(y)): residual {residual:.3e}",
            {"x": xv.tolist(), "y": yv.tolist(), "residual": residual},
        )
    for name, c in (("alpha", alpha), ("beta", beta)):
        if abs(abs(c) - 1.0) > tol:
            raise HypothesisViolation(
                f"{name} is not unimodular: |{name}| = {abs(c):.17g}",
                {"x": xv.tolist(), "y": yv.tolist(), name: c},
            )
    return alpha, beta


def detect_kind(m: MapOracle, tol: float = 1e-8) -> str:
    """Classify how scalars pass through f: "linear" or "conjugate_linear".

    Decomposing f(e1 + i*e2) against f(e1) and the gauge-aligned second
    column (beta/alpha)*f(e2) yields the coefficient ratio h(i), which is
    +i for linear and -i for conjugate-linear maps; the classification must
    be decisive by a factor of 10, otherwise KindAmbiguous is raised.
    """
    _require_reconstructible(m)
    if m.source.field != COMPLEX:
        raise ContractViolation("kind detection needs the complex field")
    if m.source.dim < 2:
        raise ContractViolation("kind detection needs dim >= 2")
    e1 = basis_vec(m.source, 0)
    e2 = basis_vec(m.source, 1)
    alpha, beta = recover_pair_coeffs(m, e1, e2, tol)
    col2 = (beta / alpha) * m(e2)  # = sigma(e1) * U e2, same gauge as f(e1)
    fe1 = m(e1)
    w = m(e1 + 1j * e2)
    a, b = best_coeffs(m.target, w, [fe1, col2])
    residual = norm(m.target, w - a * fe1 - b * col2)
    if residual > tol * (1.0 + norm(m.source, e1 + 1j * e2)):
        raise HypothesisViolation(
            f"f(e1 + i*e2) leaves span(f(e1), f(e2)): residual {residual:.3e}",
            {"residual": residual},
        )
    if abs(a) < 1e-6:
        raise KindAmbiguous(f"degenerate leading coefficient {a!r}")
    ratio = b / a  # carries h(i)
    d_lin = abs(ratio - 1j)
    d_conj = abs(ratio + 1j)
    near, far = sorted((d_lin, d_conj))
    if far < 10.0 * near:
        raise KindAmbiguous(
            f"h(i) estimate {ratio!r} sits between the classes "
            f"(|.-i| = {d_lin:.3e}, |.+i| = {d_conj:.3e})"
        )
    return KIND_LINEAR if d_lin < d_conj else KIND_CONJUGATE


def _apply(U: np.ndarray, kind: str, x: Vector) -> Vector:
    return U @ (np.conj(x) if kind == KIND_CONJUGATE else x)


def _phase_and_residual(m: MapOracle, U: np.ndarray, kind: str, x: Vector):
    """sigma(x) via the semi-inner product, and the pointwise residual."""
    fx = m(x)
    image = _apply(U, kind, x)
    nx = norm(m.source, x)
    sigma = sip(m.target, fx, image) / nx ** 2
    residual = norm(m.target, fx - sigma * image)
    return sigma, residual, image


def reconstruct(
    m: MapOracle,
    *,
    tol: float = 1e-8,
    phase_tol: float = 1e-8,
    iso_tol: float = 1e-7,
    n_test: int = 64,
    seed: int = 7,
) -> Reconstruction:
    """Rebuild (sigma, U) from the map oracle and verify the factorization.

    Columns: U e1 = f(e1); U ej = (beta_j/alpha_j) * f(ej), which aligns
    every column to the common gauge sigma(e1) = 1.  The factorization is
    then stress-tested on a fresh seeded sample set; isometry defects,
    non-unimodular phases, or reproduction residuals beyond tolerance
    raise HypothesisViolation.
    """
    _require_reconstructible(m)
    if not (tol > 0 and phase_tol > 0 and iso_tol > 0):
        raise ContractViolation("tolerances must be positive")
    if n_test < 1:
        raise ContractViolation("n_test must be positive")
    source = m.source
    n = source.dim

    cols = [m(basis_vec(source, 0))]
    for j in range(1, n):
        alpha, beta = recover_pair_coeffs(m, basis_vec(source, 0), basis_vec(source, j), tol)
        cols.append((beta / alpha) * m(basis_vec(source, j)))
    U = np.stack(cols, axis=1)

    if source.field == REAL or n == 1:
        # dim-1 maps are always phase-equivalent to a linear isometry:
        # sigma absorbs any conjugation of the lone coordinate.
        kind = KIND_LINEAR
    else:
        kind = detect_kind(m, tol)

    rng = np.random.default_rng(seed)
    worst = 0.0
    phase_samples: list[tuple[Vector, Scalar]] = []
    for _ in range(n_test):
        v = rng.standard_normal(n)
        if source.field == COMPLEX:
            v = v + 1j * rng.standard_normal(n)
        nv = norm(source, v)
        if nv < 1e-6:
            continue
        v = v * (float(rng.uniform(0.5, 2.0)) / nv)
        sigma, residual, image = _phase_and_residual(m, U, kind, v)
        nv = norm(source, v)
        iso_dev = abs(norm(m.target, image) - nv)
        if iso_dev > iso_tol * (1.0 + nv):
            raise HypothesisViolation(
                f"recovered columns are not isometric: norm deviation {iso_dev:.3e}",
                {"x": v.tolist(), "deviation": iso_dev},
            )
        if abs(abs(sigma) - 1.0) > phase_tol:
            raise HypothesisViolation(
                f"recovered phase is not unimodular: |sigma| = {abs(sigma):.17g}",
                {"x": v.tolist(), "sigma": sigma},
            )
        if residual > tol * (1.0 + nv):
            raise HypothesisViolation(
                f"factorization fails to reproduce f: residual {residual:.3e}",
                {"x": v.tolist(), "residual": residual},
            )
        worst = max(worst, residual)
        phase_samples.append((v, sigma))

    return Reconstruction(U, kind, phase_samples, worst)


def reproduction_residual(m: MapOracle, rec: Reconstruction, vectors) -> float:
    """Worst ||f(x) - sigma(x) * U x*|| over held-out vectors."""
    worst = 0.0
    for v in vectors:
        xv = as_vec(m.source, v)
        if norm(m.source, xv) == 0.0:
            raise ContractViolation("held-out vectors must be nonzero")
        _, residual, _ = _phase_and_residual(m, rec.U, rec.kind, xv)
        worst = max(worst, residual)
    return worst
