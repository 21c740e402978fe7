"""Acceptance criteria A1..A10, one test per item.

The checklist runs once per session; each test prints a PASS/FAIL line
with the item's runtime and the first few failure details. Run with
``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import pytest

from magmadual.golden import DEFAULT_SAMPLES, ITEMS, load_corpus, run_item

_results = {}


@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


@pytest.mark.parametrize("item", [key for key, _, _ in ITEMS])
def test_criterion(item, corpus, capsys):
    res = run_item(item, corpus, samples=DEFAULT_SAMPLES)
    _results[item] = res
    with capsys.disabled():
        print()
        print(res.line())
        for d in res.details[:5]:
            print(f"       {d}")
    assert res.passed, res.details


def test_sample_count_meets_criterion():
    # A9 asks for at least 10**4 random order-4 samples
    assert DEFAULT_SAMPLES >= 10_000
