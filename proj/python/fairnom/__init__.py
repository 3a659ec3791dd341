"""Exact fair-division mechanisms, checkers and manipulability audits.

Values go in as anything ``fractions.Fraction`` accepts and come back as
``Fraction``. Agents and items are 0-based.
"""

import json
from fractions import Fraction

from . import _fairnom
from ._fairnom import (
    DimensionError,
    InvariantError,
    NormalizationError,
    ParseError,
    ScaleError,
    scenario_names,
)


def _s(x):
    return str(Fraction(x))


def _rows(values):
    return [[_s(x) for x in row] for row in values]


def _bundles(bs):
    return [set(b) for b in bs]


def _lists(bundles):
    return [sorted(b) for b in bundles]


def round_robin(values, order=None):
    return _bundles(_fairnom.round_robin(_rows(values), list(order or [])))


def round_robin_worst_best(truth, position, agents):
    worst, best = _fairnom.round_robin_worst_best([_s(x) for x in truth], position, agents)
    return Fraction(worst), Fraction(best)


def max_utilitarian(values, tie="theorem42"):
    return _bundles(_fairnom.max_utilitarian(_rows(values), tie))


def max_nash(values):
    return [_bundles(a) for a in _fairnom.max_nash(_rows(values))]


def max_egalitarian(values):
    return [_bundles(a) for a in _fairnom.max_egalitarian(_rows(values))]


def leximin(values):
    return [_bundles(a) for a in _fairnom.leximin(_rows(values))]


def max_positive_count(values):
    return [_bundles(a) for a in _fairnom.max_positive_count(_rows(values))]


def probabilistic_serial(values):
    return [[Fraction(x) for x in row] for row in _fairnom.probabilistic_serial(_rows(values))]


def ps_lottery(values):
    return [(Fraction(p), _bundles(a)) for p, a in _fairnom.ps_lottery(_rows(values))]


def birkhoff(matrix):
    return [(Fraction(w), list(perm)) for w, perm in _fairnom.birkhoff(_rows(matrix))]


def is_ef(values, bundles):
    return _fairnom.is_ef(_rows(values), _lists(bundles))


def is_ef1(values, bundles):
    return _fairnom.is_ef1(_rows(values), _lists(bundles))


def is_prop(values, bundles):
    return _fairnom.is_prop(_rows(values), _lists(bundles))


def is_fpo(values, bundles, alpha=1):
    return _fairnom.is_fpo(_rows(values), _lists(bundles), _s(alpha))


def is_po(values, bundles):
    return _fairnom.is_po(_rows(values), _lists(bundles))


def mechanism_one(values):
    return _bundles(_fairnom.mechanism_one(_rows(values)))


def ef1_set(agent, row, agents):
    return [_bundles(a) for a in _fairnom.ef1_set(agent, [_s(x) for x in row], agents)]


def realize_allocation(agent, row, target):
    rows = _fairnom.realize_allocation(agent, [_s(x) for x in row], _lists(target))
    return [[Fraction(x) for x in r] for r in rows]


def bobw_feasible(values, expost, exante):
    return json.loads(_fairnom.bobw_feasible(_rows(values), expost, exante))


def run_scenario(name, threads=1):
    return json.loads(_fairnom.run_scenario(name, threads))


def cli(*args):
    """Runs the command-line front end in-process; returns (code, stdout, stderr)."""
    return _fairnom.cli([str(a) for a in args])
