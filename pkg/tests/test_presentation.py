"""Bracket expressions, the deformed relation, and the phi/psi pair."""

import itertools

import pytest

from graftop import (
    LAMBDA,
    BracketCombination,
    Generator,
    LambdaPoly,
    Pair,
    ParseError,
    TreeCombination,
    TreeError,
    bracket_mul,
    enumerate_labeled_trees,
    parse_bracket,
    parse_tree,
    phi,
    psi,
    psi_order_independence_check,
    relation_r,
    reweight,
)


def mono(exp, coeff=1):
    return LambdaPoly.monomial(exp, coeff)


def brack(text):
    return parse_bracket(text)


# --- expressions ------------------------------------------------------------------

def test_expression_print_parse_roundtrip():
    for text in ["x_1", "(x_1 y_2)", "((x_1 z_1) y_1)", "(x_2 (y_10 z_3))"]:
        assert brack(text).encoding == text


def test_expression_accepts_underscored_labels():
    g = brack("x_1_2")
    assert g == Generator("x_1", 2)


def test_repeated_labels_rejected():
    with pytest.raises(TreeError):
        Pair(Generator("x", 1), Generator("x", 2))
    with pytest.raises(ParseError):
        brack("(x_1 x_2)")


@pytest.mark.parametrize("bad", ["", "(", "(x_1", "(x_1 y_1", "x", "x_", "_1", "(x_1 y_1))"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        brack(bad)


def test_bracket_mul_is_bilinear():
    a = BracketCombination(((Generator("x", 1), LAMBDA),))
    b = BracketCombination(
        ((Generator("y", 1), mono(0)), (brack("(u_1 z_1)"), mono(2)))
    )
    out = bracket_mul(a, b)
    assert out.coefficient(brack("(x_1 y_1)")) == LAMBDA
    assert out.coefficient(brack("(x_1 (u_1 z_1))")) == mono(3)


# --- the relation -----------------------------------------------------------------

def test_relation_coefficients_read_off():
    r = relation_r(1, 2, 3)
    assert r.coefficient(brack("((x_1 y_2) z_3)")) == mono(0)
    assert r.coefficient(brack("(x_1 (y_2 z_3))")) == mono(3, -1)
    assert r.coefficient(brack("((x_1 z_3) y_2)")) == mono(0, -1)
    assert r.coefficient(brack("(x_1 (z_3 y_2))")) == mono(2)
    assert len(r) == 4


def test_relation_unit_weights_at_one_is_associator_antisymmetry():
    r = relation_r(1, 1, 1).specialize(1)
    # ((xy)z) - (x(yz)) antisymmetric under swapping y and z
    assert r.coefficient(brack("((x_1 y_1) z_1)")) == mono(0)
    assert r.coefficient(brack("(x_1 (y_1 z_1))")) == mono(0, -1)
    assert r.coefficient(brack("((x_1 z_1) y_1)")) == mono(0, -1)
    assert r.coefficient(brack("(x_1 (z_1 y_1))")) == mono(0)


def test_relation_requires_distinct_labels():
    with pytest.raises(TreeError):
        relation_r(1, 1, 1, labels=("x", "x", "z"))


def test_phi_annihilates_relation_small_weights():
    for k, l, m in itertools.product((1, 2), repeat=3):
        assert phi(relation_r(k, l, m)) == TreeCombination.zero()


# --- phi ---------------------------------------------------------------------------

def test_phi_generator():
    assert phi(Generator("x", 2)) == TreeCombination.of(parse_tree("x:2"))


def test_phi_two_vertex_pair():
    assert phi(brack("(x_3 y_5)")) == TreeCombination.of(parse_tree("x:3[y:5]"))


def test_phi_left_nested_triple_expansion():
    # ((x1 y1) z1): graft z onto the 2-chain at the root (exponent 0) or at
    # the leaf (exponent 1)
    out = phi(brack("((x_1 y_1) z_1)"))
    expected = TreeCombination(
        (
            (parse_tree("x:1[y:1,z:1]"), mono(0)),
            (parse_tree("x:1[y:1[z:1]]"), mono(1)),
        )
    )
    assert out == expected


def test_phi_right_nested_triple_expansion():
    out = phi(brack("(x_1 (y_1 z_1))"))
    assert out == TreeCombination.of(parse_tree("x:1[y:1[z:1]]"))


def test_phi_linear_over_combinations():
    c = BracketCombination(((brack("(x_1 y_1)"), LAMBDA),))
    assert phi(c) == TreeCombination.of(parse_tree("x:1[y:1]"), LAMBDA)


# --- psi ---------------------------------------------------------------------------

def test_psi_single_vertex():
    assert psi(parse_tree("x:4")) == BracketCombination.of(Generator("x", 4))


def test_psi_chain():
    assert psi(parse_tree("x:2[y:3]")) == BracketCombination.of(brack("(x_2 y_3)"))


def test_psi_corolla_reference_value():
    out = psi(parse_tree("x:1[y:1,z:1]"))
    expected = BracketCombination(
        (
            (brack("((x_1 z_1) y_1)"), mono(0)),
            (brack("(x_1 (z_1 y_1))"), mono(1, -1)),
        )
    )
    assert out == expected
    assert phi(out) == TreeCombination.of(parse_tree("x:1[y:1,z:1]"))


def test_psi_corolla_alternative_order_same_tree_through_phi():
    corolla = parse_tree("x:1[y:1,z:1]")
    assert phi(psi(corolla, (1, 0))) == TreeCombination.of(corolla)
    assert psi_order_independence_check(corolla, (0, 1), (1, 0))


def test_psi_roundtrip_small_universe():
    for n in range(1, 5):
        shapes = enumerate_labeled_trees(n, [1] * n, [f"x{i}" for i in range(1, n + 1)])
        for shape in shapes:
            for vec in itertools.product((1, 2), repeat=n):
                t = reweight(shape, dict(zip(sorted(shape.labels), vec)))
                assert phi(psi(t)) == TreeCombination.of(t)


def test_psi_order_independence_exhaustive_small():
    for n in range(1, 5):
        for t in enumerate_labeled_trees(n, [1] * n, [f"x{i}" for i in range(1, n + 1)]):
            p = len(t.children)
            if p < 2:
                assert psi_order_independence_check(t, tuple(range(p)), tuple(range(p)))
                continue
            reference = TreeCombination.of(t)
            for order in itertools.permutations(range(p)):
                assert phi(psi(t, order)) == reference


def test_psi_three_branch_corolla_transposed_orders():
    t = parse_tree("r:1[a:1,b:1,c:1]")
    assert psi_order_independence_check(t, (0, 1, 2), (1, 0, 2))
    assert psi_order_independence_check(t, (0, 1, 2), (2, 1, 0))


def test_psi_linear_over_combinations():
    t1 = parse_tree("x:1[y:1]")
    t2 = parse_tree("z:2")
    c = TreeCombination(((t1, LAMBDA), (t2, mono(0, 3))))
    assert psi(c) == LAMBDA * psi(t1) + 3 * psi(t2)


def test_psi_rejects_unlabeled():
    with pytest.raises(TreeError):
        psi(parse_tree("_:1[_:1]"))


def test_psi_bad_branch_order_rejected():
    with pytest.raises(TreeError):
        psi(parse_tree("x:1[y:1,z:1]"), (0,))


def test_corolla_decomposition_roundtrip():
    from graftop import corolla_assemble, corolla_decomposition

    for text in ["x:4", "x:2[y:3]", "a:1[b:3[c:2,d:1],e:1]"]:
        t = parse_tree(text)
        root, branches = corolla_decomposition(t)
        assert root == Generator(t.label, t.weight)
        assert corolla_assemble(root, branches) == t
    with pytest.raises(TreeError):
        corolla_decomposition(parse_tree("_:1"))


def test_psi_coefficient_degree_stays_bounded():
    # the rewriting of a 5-vertex comb stays a finite combination with
    # parameter degree no larger than its potential energy
    t = parse_tree("a:1[b:1[c:1],d:1[e:1]]")
    out = psi(t)
    assert len(out) > 1
    assert max(c.degree for _, c in out.terms()) <= t.energy
    assert phi(out) == TreeCombination.of(t)
