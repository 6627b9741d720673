"""Symmetry checkers for norm-preserving maps, up to phase.

A map f between spaces of the same scalar field is probed on a finite
sample set through four checks:

* ``check_wigner``            |[f(x), f(y)]| = |[x, y]|      (phase-blind)
* ``check_phase_isometry_sets``  {||f(x)+f(y)||, ||f(x)-f(y)||} =
                                 {||x+y||, ||x-y||} as multisets (real field)
* ``check_exact_preservation``   [f(x), f(y)] = [x, y]       (no moduli)
* ``check_linearity``            f(a*x + b*y) = a*f(x) + b*f(y) and
                                 ||f(x)|| = ||x||

A sample check can only ever certify "no violation found", and all the
structure theorems need surjectivity on top; every Report therefore
records the assumption explicitly.  Checks that evaluate semi-inner
products require smooth (Lp) spaces and refuse the max-norm fixture.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import ContractViolation, UnsupportedField, UnsupportedSpace
from .spaces import COMPLEX, Lp, REAL, Space, Vector, as_vec, norm, sip

PASS = "pass"
FAIL = "fail"

ASSUMPTIONS = ("surjectivity",)


@dataclass(frozen=True)
class MapOracle:
    """A black-box map between spaces, queried pointwise.

    ``fn`` receives a validated source vector and must return a vector of
    the target dimension; every call re-validates both ends.
    """

    source: Space
    target: Space
    fn: Callable[[Vector], Vector]
    name: str = ""

    def __call__(self, x) -> Vector:
        xv = as_vec(self.source, x)
        out = np.asarray(self.fn(xv))
        if out.shape != (self.target.dim,):
            raise ContractViolation(
                f"map output has shape {out.shape}, expected ({self.target.dim},)"
            )
        return as_vec(self.target, out)


@dataclass(frozen=True)
class Witness:
    """The sample pair attaining the worst violation, with both sides recorded."""

    x: Vector
    y: Vector
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class Report:
    check: str
    verdict: str
    max_violation: float
    witness: Witness | None
    seed: int | None = None
    assumptions: tuple[str, ...] = ASSUMPTIONS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "max_violation": self.max_violation,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "seed": self.seed,
            "assumptions": list(self.assumptions),
        }


def _require_same_field(m: MapOracle) -> None:
    if m.source.field != m.target.field:
        raise ContractViolation("source and target must share the scalar field")


def _require_smooth(m: MapOracle) -> None:
    if not isinstance(m.source.norm, Lp) or not isinstance(m.target.norm, Lp):
        raise UnsupportedSpace(
            "semi-inner-product checks need smooth (Lp) spaces on both ends"
        )


def _prepared(m: MapOracle, samples: Sequence) -> tuple[list[Vector], list[Vector]]:
    if len(samples) == 0:
        raise ContractViolation("need at least one sample")
    xs = [as_vec(m.source, s) for s in samples]
    return xs, [m(x) for x in xs]


def _pair_report(check, m, samples, tol, seed, lhs_rhs, scale, ordered=True):
    """Shared max-violation scan over sample pairs."""
    if not (tol > 0):
        raise ContractViolation("tol must be positive")
    _require_same_field(m)
    xs, fxs = _prepared(m, samples)
    worst = 0.0
    worst_pair = None
    failed = False
    # ordered pairs for the asymmetric forms, unordered (diagonal included)
    # for the symmetric multiset check
    index_pairs = (
        ((i, j) for i in range(len(xs)) for j in range(len(xs)))
        if ordered
        else ((i, j) for i in range(len(xs)) for j in range(i + 1))
    )
    for i, j in index_pairs:
        lhs, rhs, violation = lhs_rhs(xs[i], xs[j], fxs[i], fxs[j])
        if violation > worst:
            worst = violation
            worst_pair = (xs[i], xs[j], lhs, rhs)
        if violation > tol * scale(xs[i], xs[j]):
            failed = True
    witness = None
    if failed and worst_pair is not None:
        witness = Witness(*worst_pair)
    return Report(check, FAIL if failed else PASS, worst, witness, seed)


def check_wigner(m: MapOracle, samples: Sequence, tol: float = 1e-8,
                 seed: int | None = None) -> Report:
    """Pass iff |[f(x), f(y)]| matches |[x, y]| on all ordered sample pairs."""
    _require_smooth(m)

    def lhs_rhs(x, y, fx, fy):
        lhs = abs(sip(m.target, fx, fy))
        rhs = abs(sip(m.source, x, y))
        return lhs, rhs, abs(lhs - rhs)

    def scale(x, y):
        return 1.0 + norm(m.source, x) * norm(m.source, y)

    return _pair_report("wigner", m, samples, tol, seed, lhs_rhs, scale)


def check_phase_isometry_sets(m: MapOracle, samples: Sequence, tol: float = 1e-8,
                              seed: int | None = None) -> Report:
    """Pass iff {||f(x)+f(y)||, ||f(x)-f(y)||} = {||x+y||, ||x-y||} pairwise.

    Real field only: the multiset identity characterizes phase-isometries
    there but not over the complex numbers.  Multisets are compared sorted,
    which absorbs near-tied elements under either pairing.
    """
    if m.source.field != REAL or m.target.field != REAL:
        raise UnsupportedField("the multiset criterion is a real-field check")

    def lhs_rhs(x, y, fx, fy):
        lhs = sorted((norm(m.target, fx + fy), norm(m.target, fx - fy)))
        rhs = sorted((norm(m.source, x + y), norm(m.source, x - y)))
        violation = max(abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))
        return lhs, rhs, violation

    def scale(x, y):
        return 1.0 + norm(m.source, x) + norm(m.source, y)

    return _pair_report("phase_isometry_sets", m, samples, tol, seed, lhs_rhs, scale,
                        ordered=False)


def check_exact_preservation(m: MapOracle, samples: Sequence, tol: float = 1e-8,
                             seed: int | None = None) -> Report:
    """Pass iff [f(x), f(y)] equals [x, y] (no absolute values) on all pairs."""
    _require_smooth(m)

    def lhs_rhs(x, y, fx, fy):
        lhs = sip(m.target, fx, fy)
        rhs = sip(m.source, x, y)
        return lhs, rhs, abs(lhs - rhs)

    def scale(x, y):
        return 1.0 + norm(m.source, x) * norm(m.source, y)

    return _pair_report("exact_preservation", m, samples, tol, seed, lhs_rhs, scale)


def check_linearity(m: MapOracle, samples: Sequence, tol: float = 1e-8,
                    seed: int = 0, n_draws: int = 50) -> Report:
    """Pass iff f respects seeded linear combinations of the samples and
    preserves their norms.

    The samples must span the source space, otherwise additivity off their
    span would go untested.
    """
    if not (tol > 0):
        raise ContractViolation("tol must be positive")
    _require_same_field(m)
    xs, fxs = _prepared(m, samples)
    stacked = np.stack(xs, axis=0)
    svals = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.sum(svals > 1e-10 * svals[0]))
    if rank < m.source.dim:
        raise ContractViolation("samples must span the source space")

    worst = 0.0
    worst_pair = None
    failed = False
    for x, fx in zip(xs, fxs):
        dev = abs(norm(m.target, fx) - norm(m.source, x))
        if dev > worst:
            worst = dev
            worst_pair = (x, x, norm(m.target, fx), norm(m.source, x))
        if dev > tol * (1.0 + norm(m.source, x)):
            failed = True

    rng = np.random.default_rng(seed)
    for _ in range(n_draws):
        i = int(rng.integers(len(xs)))
        j = int(rng.integers(len(xs)))
        if m.source.field == COMPLEX:
            a = complex(rng.standard_normal(), rng.standard_normal())
            b = complex(rng.standard_normal(), rng.standard_normal())
        else:
            a = float(rng.standard_normal())
            b = float(rng.standard_normal())
        combo = a * xs[i] + b * xs[j]
        dev = norm(m.target, m(combo) - a * fxs[i] - b * fxs[j])
        bound = tol * (1.0 + abs(a) * norm(m.source, xs[i]) + abs(b) * norm(m.source, xs[j]))
        if dev > worst:
            worst = dev
            worst_pair = (xs[i], xs[j], (a, b), dev)
        if dev > bound:
            failed = True

    witness = Witness(*worst_pair) if failed and worst_pair is not None else None
    return Report("linearity", FAIL if failed else PASS, worst, witness, seed)
