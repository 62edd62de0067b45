"""Independent checks on the shipped E6 unipotent degree table."""

import re
from fractions import Fraction

import pytest

from e6baw.cyclopoly import CycloProduct, evaluate
from e6baw.degrees import e6_order
from e6baw.groupdata import load, default_path

SAMPLE_Q = (2, 3, 4, 5, 7, 8, 9, 11)
E6_INVARIANT_DEGREES = (2, 5, 6, 8, 9, 12)
LABEL = re.compile(r"phi(\d+),(\d+)$")


@pytest.fixture(scope="module")
def table():
    return {c.label: c.degree for c in load(default_path("e6_unipotent_degrees.dat")).e6}


def principal(table):
    for label, deg in table.items():
        m = LABEL.match(label)
        if m:
            yield int(m.group(1)), int(m.group(2)), deg


def test_thirty_distinct_labels(table):
    assert len(table) == 30
    assert sum(1 for _ in principal(table)) == 25


def test_q_equals_one_gives_weyl_character_degree(table):
    for dim, _, deg in principal(table):
        assert evaluate(deg, 1) == dim
    for label, deg in table.items():
        if not LABEL.match(label):
            assert evaluate(deg, 1) == 0


def test_poincare_polynomial_identity(table):
    # sum over Irr(W) of phi(1) * deg(rho_phi) = [G : B]
    for q0 in SAMPLE_Q:
        lhs = sum(dim * evaluate(deg, q0) for dim, _, deg in principal(table))
        rhs = Fraction(1)
        for d in E6_INVARIANT_DEGREES:
            rhs *= Fraction(q0**d - 1, q0 - 1)
        assert lhs == rhs


def test_weyl_group_order_from_degrees(table):
    assert sum(dim * dim for dim, _, _ in principal(table)) == 51840


def test_singleton_families_lowest_power_is_b(table):
    for dim, b, deg in principal(table):
        if deg.constant == 1:
            assert deg.qexp == b


def test_alvis_curtis_closure(table):
    def dual(f):
        return CycloProduct(f.constant, 36 - f.poly_degree(), f.factors)

    degs = sorted(str(d) for d in table.values())
    assert degs == sorted(str(dual(d)) for d in table.values())


def test_degrees_integral_and_divide_order(table):
    for deg in table.values():
        for q0 in SAMPLE_Q:
            v = evaluate(deg, q0)
            assert v.denominator == 1 and v > 0
        quotient = e6_order(1) / deg
        assert all(m >= 0 for _, m in quotient.factors)


def test_sum_of_squares_bounded_by_order(table):
    for q0 in (2, 3):
        assert sum(evaluate(d, q0) ** 2 for d in table.values()) < evaluate(e6_order(1), q0)
