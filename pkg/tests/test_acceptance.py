"""Acceptance gate: one test per shipping criterion, pinned tolerances.

Each criterion is a self-contained harness in ``sipwigner.acceptance``; the
tests here just run them at the default seed and assert the verdict, so
``pytest -v`` prints exactly one pass/fail line per criterion.  Tolerances
and budgets are pinned in ``GateConfig`` (fixture witness exact and < 1ms;
closed form vs difference quotient <= 1e-7 relative with halving ratios in
[3.5, 4.5]; orthogonality routes agree on 500 decisive triples at tol 1e-7;
checker verdicts on 200 generated families; reconstruction round trip <=
1e-8 on 100 triples; exact preservation <= 1e-10 for 200 linear isometries).

One criterion is expected to fail and is left red on purpose:
``6b_minus_identity`` demands that x -> -x FAIL exact s.i.p. preservation,
which no implementation satisfying the s.i.p. axioms can deliver: additivity
plus conjugate homogeneity force [-x, -y] = (-1)*conj(-1)*[x, y] = [x, y],
so -identity preserves every semi-inner product exactly (it is a linear
isometry, and criterion 7 independently requires linear isometries to pass).
The sign intuition behind the criterion double-counts one flip.  See the
criterion's detail string for the measured (zero) violation.
"""

import pytest

from sipwigner.acceptance import CRITERIA, DEFAULT_SEED, GateConfig

CFG = GateConfig(seed=DEFAULT_SEED)

_IDS = [fn.__name__.removeprefix("criterion_") for fn in CRITERIA]


@pytest.mark.parametrize("criterion", CRITERIA, ids=_IDS)
def test_criterion(criterion):
    result = criterion(CFG)
    verdict = "PASS" if result.passed else "FAIL"
    print(f"{result.name}: {verdict} ({result.elapsed_s:.2f}s) {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
