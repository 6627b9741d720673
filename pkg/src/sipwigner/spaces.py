"""Finite-dimensional normed spaces and their semi-inner products.

Two norm families are supported:

* ``Lp(p)`` with 1 < p < inf over the real or complex field.  These norms
  are Gateaux differentiable at every nonzero point, so each such point
  carries a unique norm-one support functional and the compatible
  semi-inner product is unique:

      [x, y] = ||y||^(2-p) * sum_i x_i * conj(y_i) * |y_i|^(p-2),

  with the convention that coordinates where y_i = 0 contribute nothing
  (their limit contribution is 0 for every p > 1).

* ``Linf2``, the max norm on R^2.  It is not smooth where |y_1| = |y_2|;
  there the support functional is not unique and we pin one admissible
  weighted choice, giving the piecewise semi-inner product

      [x, y] = x_1*y_1                          if |y_1| > |y_2|
               x_2*y_2                          if |y_1| < |y_2|
               (3/4)*x_1*y_1 + (1/4)*x_2*y_2    if |y_1| = |y_2|.

Everything downstream (orthogonality decisions, symmetry checkers, the
reconstruction pipeline) consumes spaces only through ``norm`` and ``sip``.
``gateaux_sip_oracle`` recovers [x, y] from norm evaluations alone via a
central finite difference of t -> ||y + t*x||; it is the independent
cross-check for the closed forms above and is *rejected* at non-smooth
points, where the one-sided derivatives disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Union

import numpy as np

from .errors import ContractViolation, NonSmoothPoint

REAL = "real"
COMPLEX = "complex"

Scalar = Union[float, complex]
Vector = np.ndarray


@dataclass(frozen=True)
class Lp:
    """p-norm descriptor; smoothness requires 1 < p < inf."""

    p: float

    def __post_init__(self):
        if not (isfinite(self.p) and self.p > 1.0):
            raise ContractViolation(f"Lp exponent must satisfy 1 < p < inf, got {self.p!r}")


@dataclass(frozen=True)
class Linf2:
    """Max norm on R^2 with the fixed weighted tie-break semi-inner product."""


Norm = Union[Lp, Linf2]


@dataclass(frozen=True)
class Space:
    """A normed space descriptor: scalar field, dimension, norm family."""

    field: str
    dim: int
    norm: Norm

    def __post_init__(self):
        if self.field not in (REAL, COMPLEX):
            raise ContractViolation(f"unknown field {self.field!r}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ContractViolation(f"dim must be a positive integer, got {self.dim!r}")
        if isinstance(self.norm, Linf2):
            if self.field != REAL or self.dim != 2:
                raise ContractViolation("the Linf2 norm lives on the real plane only")
        elif not isinstance(self.norm, Lp):
            raise ContractViolation(f"unknown norm descriptor {self.norm!r}")

    @property
    def dtype(self):
        return np.complex128 if self.field == COMPLEX else np.float64

    def zero_scalar(self) -> Scalar:
        return 0j if self.field == COMPLEX else 0.0

    def to_dict(self) -> dict:
        if isinstance(self.norm, Linf2):
            norm = {"linf2_fixture": True}
        else:
            norm = {"lp": self.norm.p}
        return {"field": self.field, "dim": self.dim, "norm": norm}

    @staticmethod
    def from_dict(d: dict) -> "Space":
        try:
            field = d["field"]
            dim = int(d["dim"])
            norm = d["norm"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ContractViolation(f"malformed space descriptor: {d!r}") from exc
        if not isinstance(norm, dict):
            raise ContractViolation(f"malformed norm descriptor: {norm!r}")
        if "lp" in norm:
            return Space(field, dim, Lp(float(norm["lp"])))
        if norm.get("linf2_fixture"):
            return Space(field, dim, Linf2())
        raise ContractViolation(f"malformed norm descriptor: {norm!r}")


def lp_space(field: str, dim: int, p: float) -> Space:
    return Space(field, dim, Lp(float(p)))


def linf2_space() -> Space:
    return Space(REAL, 2, Linf2())


def as_vec(space: Space, x) -> Vector:
    """Coerce ``x`` to a validated coordinate vector of ``space``."""
    v = np.asarray(x)
    if v.shape != (space.dim,):
        raise ContractViolation(
            f"expected a vector of length {space.dim}, got shape {v.shape}"
        )
    if space.field == REAL:
        if np.iscomplexobj(v):
            if np.any(v.imag != 0):
                raise ContractViolation("complex coordinates in a real space")
            v = v.real
        return np.asarray(v, dtype=np.float64)
    return np.asarray(v, dtype=np.complex128)


def basis_vec(space: Space, i: int) -> Vector:
    if not 0 <= i < space.dim:
        raise ContractViolation(f"basis index {i} out of range for dim {space.dim}")
    e = np.zeros(space.dim, dtype=space.dtype)
    e[i] = 1
    return e


def norm(space: Space, x) -> float:
    v = as_vec(space, x)
    if isinstance(space.norm, Linf2):
        return float(np.max(np.abs(v)))
    p = space.norm.p
    return float(np.sum(np.abs(v) ** p) ** (1.0 / p))


def norm_fn(space: Space):
    """A validation-free norm evaluator for hot loops.

    The returned callable assumes its argument is already a coordinate
    array of the right dtype and shape; use ``norm`` everywhere else.
    """
    if isinstance(space.norm, Linf2):
        return lambda v: float(np.max(np.abs(v)))
    p = space.norm.p
    inv = 1.0 / p
    return lambda v: float(np.sum(np.abs(v) ** p) ** inv)


def is_smooth_point(space: Space, y) -> bool:
    """True when the norm is Gateaux differentiable at ``y``."""
    yv = as_vec(space, y)
    if not np.any(yv != 0):
        return False
    if isinstance(space.norm, Linf2):
        return abs(yv[0]) != abs(yv[1])
    return True


def sip(space: Space, x, y) -> Scalar:
    """The semi-inner product [x, y] of ``space``.

    Linear in ``x``, conjugate-homogeneous in ``y``, with [x, x] = ||x||^2
    and |[x, y]| <= ||x||*||y||.  By convention [x, 0] = 0.
    """
    xv = as_vec(space, x)
    yv = as_vec(space, y)
    if isinstance(space.norm, Linf2):
        a1, a2 = abs(yv[0]), abs(yv[1])
        if a1 > a2:
            return float(xv[0] * yv[0])
        if a1 < a2:
            return float(xv[1] * yv[1])
        return float(0.75 * xv[0] * yv[0] + 0.25 * xv[1] * yv[1])
    p = space.norm.p
    ay = np.abs(yv)
    ny = float(np.sum(ay ** p) ** (1.0 / p))
    if ny == 0.0:
        return space.zero_scalar()
    # conj(y_i)*|y_i|^(p-2) is evaluated as conj(y_i/|y_i|)*|y_i|^(p-1):
    # the exponent p-1 is positive, so coordinates with tiny |y_i| underflow
    # to 0 instead of overflowing when p < 2.  The phase quotient is scale
    # invariant, so both operands are rescaled by an exact power of two
    # before dividing; otherwise 1/|y_i| overflows for subnormal |y_i| and
    # complex division turns the coordinate into NaN.
    safe = np.where(ay > 0, ay, 1.0)
    _, ex = np.frexp(safe)
    safe = np.ldexp(safe, -ex)
    if np.iscomplexobj(yv):
        scaled = np.ldexp(yv.real, -ex) + 1j * np.ldexp(yv.imag, -ex)
    else:
        scaled = np.ldexp(yv, -ex)
    phase_conj = np.where(ay > 0, np.conj(scaled) / safe, space.zero_scalar())
    total = np.sum(xv * phase_conj * ay ** (p - 1.0))
    value = ny ** (2.0 - p) * total
    if space.field == REAL:
        return float(np.real(value))
    return complex(value)


def gateaux_sip_oracle(space: Space, x, y, h: float | None = None) -> Scalar:
    """Finite-difference reconstruction of [x, y] from norm values only.

    Uses the central difference (||y + h*v|| - ||y - h*v||)/(2h) for the
    real part of the support functional and, over the complex field, the
    identity Re phi(-i*v) = Im phi(v) for the imaginary part.  Second-order
    accurate: the error shrinks ~4x when h is halved.
    """
    xv = as_vec(space, x)
    yv = as_vec(space, y)
    ny = norm(space, yv)
    if ny == 0.0:
        raise ContractViolation("the difference quotient needs y != 0")
    if not is_smooth_point(space, yv):
        raise NonSmoothPoint(f"norm not differentiable at {yv.tolist()}")
    if h is None:
        h = 1e-5 * max(1.0, ny)
    h = float(h)
    if not (h > 0 and isfinite(h)):
        raise ContractViolation(f"step must be a positive finite number, got {h!r}")

    def slope(v):
        return (norm(space, yv + h * v) - norm(space, yv - h * v)) / (2.0 * h)

    if space.field == REAL:
        return ny * slope(xv)
    return complex(ny * slope(xv), ny * slope(-1j * xv))


def support_functional(space: Space, y) -> Vector:
    """Coefficients g of the norm-one support functional at a smooth point y.

    The functional acts by c -> sum_i c_i * conj(g_i); it satisfies
    phi(y) = ||y|| and ||phi|| = 1, and [x, y] = ||y|| * phi(x).
    """
    yv = as_vec(space, y)
    ny = norm(space, yv)
    if ny == 0.0:
        raise ContractViolation("no support functional at the origin")
    if not is_smooth_point(space, yv):
        raise NonSmoothPoint(f"support functional not unique at {yv.tolist()}")
    if isinstance(space.norm, Linf2):
        g = np.zeros(2)
        k = 0 if abs(yv[0]) > abs(yv[1]) else 1
        g[k] = 1.0 if yv[k] > 0 else -1.0
        return g
    p = space.norm.p
    ay = np.abs(yv)
    safe = np.where(ay > 0, ay, 1.0)
    phase = np.where(ay > 0, yv / safe, space.zero_scalar())
    # (|y_i|/||y||)^(p-1) stays in [0, 1]; no overflow for any p.
    return phase * (ay / ny) ** (p - 1.0)


def functional_value(space: Space, coeffs, x) -> Scalar:
    """Apply a coefficient-represented functional: sum_i x_i * conj(g_i)."""
    xv = as_vec(space, x)
    g = as_vec(space, coeffs)
    value = np.sum(xv * np.conj(g))
    if space.field == REAL:
        return float(np.real(value))
    return complex(value)
