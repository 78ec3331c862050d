import pytest

from rcg.verify import SUITES, case_rng, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("type_name", ["A1", "A2", "D4"])
def test_every_suite_passes(suite, type_name):
    rep = run_suite(suite, type_name, 3, seed=2)
    assert rep.ok, rep.failures[0].message
    assert rep.cases == 3


def test_case_rng_is_stable():
    assert case_rng(1, "phi", "A3", 4).random() == case_rng(1, "phi", "A3", 4).random()
    assert case_rng(1, "phi", "A3", 4).random() != case_rng(1, "phi", "A3", 5).random()


def test_single_case():
    rep = run_suite("theorem", "A3", 100, seed=0, only=17)
    assert rep.ok and rep.cases == 1
    with pytest.raises(ValueError):
        run_suite("nope", "A3", 1, 0)
