"""End-to-end acceptance checks; prints one PASS/FAIL line per criterion.

The lines are printed even under output capture; ``d21a verify --all``
prints the same lines.
"""

import pytest

from d21a import acceptance


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in acceptance.run_all()}


def test_every_criterion_reported(results, capsys):
    with capsys.disabled():
        print()
        for n in sorted(results):
            print(results[n].line())
            if not results[n].ok:
                for d in results[n].details:
                    print(f"    {d}")
    assert sorted(results) == list(range(1, 13))


@pytest.mark.parametrize("number", [n for n in range(1, 13) if n not in acceptance.KNOWN_FAILURES])
def test_criterion(results, number):
    r = results[number]
    assert r.ok, r.details


@pytest.mark.parametrize("number", sorted(acceptance.KNOWN_FAILURES))
@pytest.mark.xfail(strict=True, reason="literal parameter claim does not hold; see the decisions notes")
def test_known_failure(results, number):
    assert results[number].ok, results[number].details


def test_criterion_9_fails_only_on_the_literal_parameter(results):
    assert results[9].details == ["failed: closure matches Gamma(s1, s2, s3) as stated"]


def test_total_runtime(results):
    assert sum(r.seconds for r in results.values()) < 300


def test_parallel_run_is_deterministic(results):
    again = acceptance.run_all([3, 4, 6], workers=3)
    assert [(r.number, r.ok, r.details) for r in again] == [
        (n, results[n].ok, results[n].details) for n in (3, 4, 6)]
