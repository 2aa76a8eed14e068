import pytest

from qblowup import GREVLEX, Ideal, PolyRing
from qblowup.blowup import (
    BlowupError,
    Center,
    ChartTree,
    DivisibilityError,
    blowup_charts,
    controlled_transform,
    divide_by_exceptional,
    exceptional_order,
    extend_tree,
    strict_transform,
    strict_transform_closure,
    total_transform,
    verify_principal_on_chart,
)
from qblowup.ideal import QuotientPresentation, eliminate, saturation
from corpus import CURVES, SEPARATION_PAIRS


@pytest.fixture
def plane(R2):
    return QuotientPresentation(R2)


def charts(A, *gens):
    return blowup_charts(Center(A, Ideal.parse(A.ring, *gens))).charts


def rels(ch):
    return Ideal(ch.ring, ch.relations.nonzero_generators())


# --- chart construction -----------------------------------------------------


def test_origin_chart_g_equals_x(plane):
    ch = charts(plane, "x", "y")[0]
    assert ch.ring.variables == ("x", "y", "T1_2")
    assert rels(ch) == Ideal.parse(ch.ring, "x*T1_2 - y")
    assert ch.exceptional == Ideal.parse(ch.ring, "x")
    assert ch.torsion_exponent == 0


def test_principal_center_is_an_isomorphism(plane):
    (ch,) = charts(plane, "x")
    assert ch.ring.variables == ("x", "y")
    assert ch.relations.is_zero()
    assert ch.generator == ch.ring("x")


def test_nonreduced_center_chart(plane):
    ch = charts(plane, "x", "y^2")[1]
    assert ch.generator == ch.ring("y^2")
    assert rels(ch) == Ideal.parse(ch.ring, "y^2*T1_1 - x")
    assert ch.torsion_exponent == 0


def test_torsion_is_saturated_away(R3):
    # cone x*y = z^2 along (x, z), chart z = x*T: x*(y - x*T^2) = 0 leaves torsion
    A = QuotientPresentation(R3, Ideal.parse(R3, "x*y - z^2"))
    ch = charts(A, "x", "z")[0]
    lost = ch.ring("z*T1_2 - y")
    assert ch.torsion_exponent == 1
    assert ch.relations.contains(lost)
    raw = Ideal.parse(ch.ring, "x*y - z^2", "x*T1_2 - z")
    assert not raw.contains(lost)
    assert raw.contains(ch.ring("x") * lost)


def test_depth_follows_existing_chart_variables(plane):
    ch = charts(plane, "x", "y")[0]
    ch2 = blowup_charts(Center(ch.presentation, Ideal.parse(ch.ring, "x", "T1_2")))
    assert ch2.charts[0].ring.variables == ("x", "y", "T1_2", "T2_2")


def test_zero_center_rejected(plane):
    with pytest.raises(BlowupError):
        Center(plane, Ideal(plane.ring, []))


def test_every_chart_is_torsion_free(plane, R2):
    for gens in (["x", "y"], ["x", "y^2"], ["x^2", "x*y", "y^3"], ["y^2 - x^3", "x*y"]):
        for ch in charts(plane, *gens):
            assert saturation(ch.relations, ch.exceptional)[0] == ch.relations
            assert len(ch.exceptional.nonzero_generators()) == 1


# --- transforms ---------------------------------------------------------------


def test_total_transform_of_cusp(plane, R2):
    ch = charts(plane, "x", "y")[0]
    tot = total_transform(ch, Ideal.parse(R2, "y^2 - x^3"))
    assert tot == Ideal.parse(ch.ring, "x^2*T1_2^2 - x^3", "x*T1_2 - y")
    assert total_transform(ch, Ideal.parse(R2, "x")) == Ideal.parse(ch.ring, "x", "x*T1_2 - y")
    assert total_transform(ch, Ideal.parse(R2, "1")).is_unit()


def test_strict_transform_of_cusp(plane, R2):
    ch = charts(plane, "x", "y")[0]
    assert strict_transform(ch, Ideal.parse(R2, "y^2 - x^3")) == Ideal.parse(ch.ring, "T1_2^2 - x", "x*T1_2 - y")


def test_strict_transform_of_a_line(plane, R2):
    gx, gy = charts(plane, "x", "y")
    assert strict_transform(gx, Ideal.parse(R2, "x")).is_unit()
    assert strict_transform(gy, Ideal.parse(R2, "x")) == Ideal.parse(gy.ring, "T1_1", "y*T1_1 - x")


def test_controlled_transforms(plane, R2):
    ch = charts(plane, "x", "y")[0]
    cusp = Ideal.parse(R2, "y^2 - x^3")
    assert controlled_transform(ch, cusp, 2) == strict_transform(ch, cusp)
    assert controlled_transform(ch, cusp, 0) == total_transform(ch, cusp)
    assert controlled_transform(ch, Ideal.parse(R2, "x*y"), 2) == Ideal.parse(ch.ring, "T1_2", "x*T1_2 - y")
    with pytest.raises(DivisibilityError):
        controlled_transform(ch, cusp, 3)


def test_exceptional_order(plane, R2):
    ch = charts(plane, "x", "y")[0]
    assert exceptional_order(ch, ch.ring("y^2 - x^3")) == 2
    assert exceptional_order(ch, ch.ring("y^5")) == 5
    assert divide_by_exceptional(ch, ch.ring("y"), 1) == ch.ring("T1_2")


def _corpus_ideals(R2):
    out = [Ideal.parse(R2, f) for f in CURVES]
    out += [Ideal.parse(R2, a) * Ideal.parse(R2, b) for a, b in SEPARATION_PAIRS]
    out += [Ideal.parse(R2, "x", "y^2"), Ideal.parse(R2, "x*y", "x^2 - y^3")]
    return out


CENTERS = [["x", "y"], ["x", "y^2"], ["x^2", "y"], ["y - x^2", "x^3"]]


@pytest.mark.parametrize("center", CENTERS)
def test_closure_route_equals_saturation_route(plane, R2, center):
    for ch in charts(plane, *center):
        for I in _corpus_ideals(R2):
            assert strict_transform_closure(ch, I) == strict_transform(ch, I)


@pytest.mark.parametrize("center", CENTERS)
def test_strict_in_controlled_in_total(plane, R2, center):
    for ch in charts(plane, *center):
        for I in _corpus_ideals(R2):
            f = I.nonzero_generators()
            if len(f) != 1:
                continue
            c = exceptional_order(ch, ch.lift(f[0]))
            S, C, T = strict_transform(ch, I), controlled_transform(ch, I, c), total_transform(ch, I)
            assert T.issubset(C) and C.issubset(S)


@pytest.mark.parametrize("center", CENTERS)
def test_transforms_agree_off_the_exceptional_divisor(plane, R2, center):
    for ch in charts(plane, *center):
        E = ch.ring.extend(["w_"])
        inv = E.gen("w_") * ch.generator.to_ring(E) - 1
        for I in _corpus_ideals(R2):
            T = Ideal(E, total_transform(ch, I).nonzero_generators() + [inv])
            S = Ideal(E, strict_transform(ch, I).nonzero_generators() + [inv])
            assert T == S


@pytest.mark.parametrize("m", [1, 2, 3])
def test_principal_center_of_a_principal_subscheme(plane, R2, m):
    """Strict transform of V(f) in Bl_{(f)+J^n} equals the blow up of V(f) along J^n."""
    f = R2("x")
    J = Ideal.parse(R2, "x", f"y^{m}")
    gens = [f, R2(f"y^{m}")]
    A = plane
    Y = QuotientPresentation(R2, Ideal(R2, [f]))
    up = blowup_charts(Center(A, Ideal(R2, gens))).charts
    down = blowup_charts(Center(Y, Ideal(R2, gens))).charts
    for a, b in zip(up, down):
        S = strict_transform(a, Ideal(R2, [f]))
        assert a.ring.variables == b.ring.variables
        assert S + a.relations == b.relations


def test_strict_transform_factorisation_identity(plane, R2):
    for m in (1, 2, 3):
        ch = charts(plane, "x", f"y^{m}")[1]
        S = ch.ring.gen("T1_1")
        assert Ideal(ch.ring, [ch.ring("x")]) + ch.relations == Ideal(ch.ring, [S * ch.ring(f"y^{m}")]) + ch.relations


# --- exceptional principality check ------------------------------------------------


def test_exceptional_principality(plane, R2):
    gx, gy = charts(plane, "y", "x")
    J = Ideal.parse(R2, "x")
    assert verify_principal_on_chart(gy, J)
    assert not verify_principal_on_chart(gx, J)
    assert not verify_principal_on_chart(gx, Ideal.parse(R2, "1"))


# --- trees ----------------------------------------------------------------------


def test_tree_growth(plane, R2):
    tree = ChartTree.from_presentation(plane, records={"C": Ideal.parse(R2, "y^2 - x^3")})
    tree = extend_tree(tree, (), Center(plane, Ideal.parse(R2, "x", "y")))
    assert tree.depth() == 1 and len(tree.leaves()) == 2
    leaf = tree.node((0,))
    assert leaf.records["C"] == Ideal.parse(leaf.presentation.ring, "T1_2^2 - x", "x*T1_2 - y")
    sub = Center(leaf.presentation, Ideal.parse(leaf.presentation.ring, "x", "T1_2"))
    tree = extend_tree(tree, (0,), sub)
    assert tree.depth() == 2
    with pytest.raises(BlowupError):
        extend_tree(tree, (1,), Center(plane, Ideal.parse(R2, "x", "y")))
    with pytest.raises(BlowupError):
        extend_tree(tree, (), Center(plane, Ideal.parse(R2, "x", "y")))
