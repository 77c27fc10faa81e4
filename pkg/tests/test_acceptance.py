"""Acceptance battery: one test per shipped verification criterion.

Each test runs the corresponding selfcheck once (results are cached at
module scope so the battery is executed a single time per session) and
reports a [PASS]/[FAIL] line through the terminal summary hook in
conftest.py. The assertion carries the check's own detail string, so a
red test explains itself.

The ratio-tail-envelope check compares a desk-scale Monte Carlo sum
against an asymptotic envelope whose hypothesis (log^3 n small next to
n^delta) first holds near n ~ exp(3000). It is expected to fail here
and its detail string says so; see the README.
"""

import pytest

from partlab import selfcheck

_results = {}


def _run(name):
    if name not in _results:
        _results[name] = selfcheck.run_check(name, seed=selfcheck.DEFAULT_SEED)
    return _results[name]


@pytest.mark.parametrize("name", selfcheck.CHECK_NAMES)
def test_criterion(name, acceptance_report):
    result = _run(name)
    acceptance_report.append(selfcheck.format_result(result))
    assert result.passed, result.detail
