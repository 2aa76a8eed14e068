import itertools

import pytest

from qblowup import Ideal
from qblowup.divisors import (
    COMPONENT_SINGULAR,
    EXCESS,
    DivisorError,
    FactoredDivisor,
    failure_locus,
    monomial_check,
    separate_components,
    snc_check_at_point,
    snc_check_global,
    strnorm_surface,
)
from qblowup.ideal import QuotientPresentation, contains_one, radical_membership
from qblowup.singularity import singular_locus_ideal
from corpus import PLANE, PLANE_AMBIENT, SEPARATION_PAIRS, SNC_ARRANGEMENTS


def D(*factors):
    return FactoredDivisor(PLANE_AMBIENT, list(factors))


# --- validation -----------------------------------------------------------------


def test_validation_rejects_bad_factors():
    with pytest.raises(DivisorError):
        D("x", "2*x")
    with pytest.raises(DivisorError):
        D("0")
    with pytest.raises(DivisorError):
        D("3")
    with pytest.raises(DivisorError):
        D("x", "x*y")
    with pytest.raises(DivisorError):
        D(("x", 0))


def test_singular_ambient_is_refused(R2):
    A = QuotientPresentation(R2, Ideal.parse(R2, "y^2 - x^3"))
    with pytest.raises(DivisorError):
        snc_check_global(FactoredDivisor(A, ["x"]))


# --- snc verdicts ----------------------------------------------------------------


def test_coordinate_cross():
    assert snc_check_global(D("x", "y")).snc


def test_three_lines_meet_in_excess():
    v = snc_check_global(D("x", "y", "x + y"))
    assert not v.snc
    assert ((0, 1, 2), EXCESS) in v.failures


def test_cusp_component_is_singular():
    v = snc_check_global(D("y^2 - x^3"))
    assert v.failures == [((0,), COMPONENT_SINGULAR)]


def test_point_checks():
    assert snc_check_at_point(D("x", "y"), (0, 0)).snc
    assert not snc_check_at_point(D("y - x^2", "y + x^2"), (0, 0)).snc
    assert snc_check_at_point(D("y - x^2", "y + x^2"), (1, 1)).snc


def test_point_must_lie_on_the_ambient(R3):
    A = QuotientPresentation(R3, Ideal.parse(R3, "z - x*y"))
    with pytest.raises(DivisorError):
        snc_check_at_point(FactoredDivisor(A, ["x"]), (1, 1, 0))
    assert snc_check_at_point(FactoredDivisor(A, ["x", "y"]), (0, 0, 0)).snc


@pytest.mark.parametrize("factors, expected, reasons", SNC_ARRANGEMENTS)
def test_arrangement_verdicts(factors, expected, reasons):
    v = snc_check_global(D(*factors))
    assert v.snc is expected
    assert dict(v.failures) == reasons


def _grid_points():
    return list(itertools.product(range(-2, 3), repeat=2))


@pytest.mark.parametrize("factors", [a[0] for a in SNC_ARRANGEMENTS] + [["y^2 - x^3"], ["y^2 - x^3 - x^2", "x - 1"]])
def test_global_and_pointwise_agree(factors):
    Dv = D(*factors)
    glob = snc_check_global(Dv)
    bad = failure_locus(Dv, glob)
    for p in _grid_points():
        on_bad = all(g.evaluate(p) == 0 for g in bad.nonzero_generators())
        assert snc_check_at_point(Dv, p).snc is (not on_bad), (factors, p)


# --- monomial divisors --------------------------------------------------------------------


def test_monomial_examples():
    assert monomial_check(D(("x", 2), ("y", 3)))
    assert not monomial_check(D(("y^2 - x^3", 1)))
    assert monomial_check(D(("x - 1", 5)))


@pytest.mark.parametrize("factors", [a[0] for a in SNC_ARRANGEMENTS])
def test_monomial_check_ignores_multiplicities(factors):
    base = monomial_check(D(*factors))
    for mults in itertools.product([1, 2, 3], repeat=len(factors)):
        assert monomial_check(D(*zip(factors, mults))) is base


# --- separation --------------------------------------------------------------------------


def test_separating_the_axes(R2):
    step, sep = separate_components(PLANE_AMBIENT, Ideal.parse(R2, "x"), Ideal.parse(R2, "y"))
    assert sep and len(step.charts) == 2


def test_separating_identical_components_fails(R2):
    with pytest.raises(DivisorError):
        separate_components(PLANE_AMBIENT, Ideal.parse(R2, "x"), Ideal.parse(R2, "x"))


@pytest.mark.parametrize("pair", SEPARATION_PAIRS)
def test_corpus_pairs_separate(R2, pair):
    a, b = pair
    _, sep = separate_components(PLANE_AMBIENT, Ideal.parse(R2, a), Ideal.parse(R2, b))
    assert sep


# --- snc normalisation on surfaces ---------------------------------------------------------


def test_node_takes_one_step():
    tree, verdicts = strnorm_surface(D("y^2 - x^3 - x^2"))
    assert len(tree.internal_nodes()) == 1
    assert all(v.snc for v in verdicts.values())


def test_cross_is_a_fixed_point():
    tree, verdicts = strnorm_surface(D("x", "y"))
    assert tree.root.is_leaf()
    assert list(verdicts) == [()]


def test_cusp_finishes_within_three_steps():
    tree, verdicts = strnorm_surface(D("y^2 - x^3"))
    assert len(tree.internal_nodes()) <= 3
    assert all(v.snc for v in verdicts.values())


def test_strnorm_needs_reduced_divisor():
    with pytest.raises(DivisorError):
        strnorm_surface(D(("x", 2)))


@pytest.mark.parametrize("factors", [a[0] for a in SNC_ARRANGEMENTS if not a[1]] + [["y^2 - x^3"], ["y^2 - x^5", "x"]])
def test_strnorm_centers_lie_over_the_initial_bad_locus(factors):
    Dv = D(*factors)
    bad = failure_locus(Dv)
    tree, verdicts = strnorm_surface(Dv, max_steps=16)
    assert all(v.snc for v in verdicts.values())
    for path, node in tree.internal_nodes():
        P = node.presentation
        Z = P.ideal(node.step.center.generators)
        for g in bad.nonzero_generators():
            assert radical_membership(g.to_ring(P.ring), Z)
