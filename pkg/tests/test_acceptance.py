"""Acceptance criteria, one test per criterion.

``pytest -v tests/test_acceptance.py`` prints one PASS/FAIL line per
criterion; add ``-s`` to also see each criterion's measured values. The
randomized criteria use ``BJQ_SEED`` when set.
"""

import pytest

from bornjordan import acceptance
from bornjordan.cli import run
from bornjordan.sampling import seed_from_env

SEED = seed_from_env()
CRITERIA = acceptance.all_criteria(SEED)
NAMES = [
    "01-groenewold-obstruction",
    "02-strengthened-rule-born-jordan",
    "03-weyl-violates-strengthened-rule",
    "04-ordering-gap-q2p2",
    "05-heisenberg-covariance",
    "06-split-equivalence-and-weyl-symmetrization",
    "07-torus-null-space",
    "08-matrix-elements",
    "09-weyl-invertibility-bj-counterexample",
    "10-wigner-negativity",
    "11-position-only-reductions",
    "12-harper-dynamics",
    "13-rule-divergence",
    "14-parser-round-trip",
]


@pytest.mark.parametrize("index", range(len(CRITERIA)), ids=NAMES)
def test_criterion(index):
    result = CRITERIA[index]()
    print(result.line())
    assert result.number == index + 1
    assert result.passed, result.line()


def test_selftest_exit_code_matches_criteria(capsys):
    code = run(["selftest", "--seed", str(SEED)])
    out, err = capsys.readouterr()
    lines = [line for line in err.splitlines() if line.startswith("[")]
    assert len(lines) == len(CRITERIA)
    all_pass = all(line.startswith("[PASS]") for line in lines)
    assert code == (0 if all_pass else 1)
