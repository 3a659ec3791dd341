from fractions import Fraction

import pytest

import fairnom


def test_round_robin_default_order():
    v = [[3, 2, 1], [1, 2, 3]]
    assert fairnom.round_robin(v) == [{0, 1}, {2}]


def test_round_robin_worst_best_closed_form():
    worst, best = fairnom.round_robin_worst_best([5, 4, 3, 2], 1, 2)
    assert worst <= best


def test_max_nash_is_ef1():
    v = [["1/2", "1/3", "1/6"], ["1/6", "1/3", "1/2"]]
    for alloc in fairnom.max_nash(v):
        assert fairnom.is_ef1(v, alloc)
        assert fairnom.is_po(v, alloc)


def test_po_but_not_fpo():
    v = [[3, 1, 0], [2, 1, 1]]
    alloc = [{1}, {0, 2}]
    assert fairnom.is_po(v, alloc)
    assert not fairnom.is_fpo(v, alloc)


def test_ps_lottery_marginals_match_serial():
    v = [[3, 2, 1], [3, 1, 2], [1, 3, 2]]
    shares = fairnom.probabilistic_serial(v)
    lottery = fairnom.ps_lottery(v)
    assert sum(p for p, _ in lottery) == 1
    for i, row in enumerate(shares):
        for g, x in enumerate(row):
            assert sum(p for p, a in lottery if g in a[i]) == x


def test_birkhoff_weights_sum_to_one():
    h = Fraction(1, 2)
    terms = fairnom.birkhoff([[h, h], [h, h]])
    assert sum(w for w, _ in terms) == 1


def test_mechanism_one_is_ef1():
    v = [[1, 1, 0, 1], [1, 0, 0, 0], [0, 1, 1, 0]]
    assert fairnom.is_ef1(v, fairnom.mechanism_one(v))


def test_realize_allocation_round_trip():
    row = [3, 2, 1]
    for target in fairnom.ef1_set(0, row, 2)[:5]:
        opponents = fairnom.realize_allocation(0, row, target)
        assert fairnom.mechanism_one([row] + opponents) == target


def test_errors_are_mapped():
    with pytest.raises(fairnom.NormalizationError):
        fairnom.max_utilitarian([[0, 0], [1, 1]])
    with pytest.raises(ValueError):
        fairnom.is_ef([[1, 1], [1, 1]], [{0}, {0, 1}])


def test_scenarios_and_cli():
    assert "thm4.4" in fairnom.scenario_names()
    result = fairnom.run_scenario("thm4.1")
    assert isinstance(result, dict)
    code, out, _ = fairnom.cli("--help")
    assert code == 0 and "reproduce" in out


def test_bobw_report_is_json():
    report = fairnom.bobw_feasible([[1, 1], [1, 1]], "mnw", "ef")
    assert isinstance(report, dict)
