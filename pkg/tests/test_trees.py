"""Tree structure, canonical form, enumeration, and grammar round trips."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graftop import (
    ParseError,
    TreeError,
    VertexRef,
    WeightedTree,
    canonicalize,
    enumerate_labeled_trees,
    enumerate_unlabeled_trees,
    height,
    incoming_edges,
    parse_tree,
    potential_energy,
    relabel,
    reweight,
    strip_labels,
    weight,
)

CAYLEY = {1: 1, 2: 2, 3: 9, 4: 64, 5: 625, 6: 7776}


def ladder(n, weights=None, prefix="v"):
    weights = weights or [1] * n
    tree = WeightedTree(f"{prefix}{n}", weights[n - 1])
    for i in range(n - 1, 0, -1):
        tree = WeightedTree(f"{prefix}{i}", weights[i - 1], (tree,))
    return tree


@st.composite
def random_trees(draw, max_size=6, max_weight=3, labeled=True):
    n = draw(st.integers(1, max_size))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    weights = [draw(st.integers(1, max_weight)) for _ in range(n)]
    kids = {i: [] for i in range(n)}
    for child, parent in enumerate(parents, start=1):
        kids[parent].append(child)

    def make(i):
        label = f"n{i}" if labeled else "_"
        return WeightedTree(label, weights[i], tuple(make(j) for j in kids[i]))

    return make(0)


# --- weight -----------------------------------------------------------------

def test_weight_single_vertex():
    assert weight(WeightedTree("a", 5)) == 5


def test_weight_direct_sum():
    t = parse_tree("a:2[b:1,c:3]")
    assert weight(t) == 6


@given(random_trees())
def test_weight_matches_traversal_oracle(t):
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        total += node.weight
        stack.extend(node.children)
    assert weight(t) == total


# --- height -----------------------------------------------------------------

def test_height_root_and_child():
    t = parse_tree("a:1[b:2]")
    assert height(t, t.ref("a")) == 0
    assert height(t, t.ref("b")) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_height_ladder_matches_bfs_oracle(n):
    t = ladder(n)
    # BFS from the root over an explicit parent map
    dist = {t.label: 0}
    frontier = [t]
    while frontier:
        node = frontier.pop()
        for c in node.children:
            dist[c.label] = dist[node.label] + 1
            frontier.append(c)
    deepest = t.ref(f"v{n}")
    assert height(t, deepest) == n - 1 == dist[f"v{n}"]
    for v in t.vertices():
        assert height(t, v) == dist[v.label]


def test_height_foreign_ref_rejected():
    t1 = parse_tree("a:1[b:2]")
    t2 = parse_tree("c:1[d:2]")
    with pytest.raises(TreeError):
        height(t1, t2.ref("d"))


# --- potential energy ---------------------------------------------------------

def test_energy_single_vertex_is_zero():
    assert potential_energy(WeightedTree("a", 7)) == 0


def test_energy_two_vertex_chain():
    assert potential_energy(parse_tree("r:1[c:3]")) == 3


def branch_weight_oracle(t):
    # Each vertex at height h sits below h edges, so the energy equals the
    # sum over edges of the weight hanging below that edge.
    total = 0
    for v in t.vertices():
        for e in incoming_edges(t, v):
            total += e.branch.total_weight
    return total


def test_energy_equals_branch_weight_sum_exhaustive():
    for n in range(1, 5):
        shapes = enumerate_labeled_trees(n, [1] * n)
        for shape in shapes:
            for vec in itertools.product((1, 2, 3), repeat=n):
                t = reweight(shape, dict(zip(map(str, range(1, n + 1)), vec)))
                assert potential_energy(t) == branch_weight_oracle(t)


@given(random_trees(max_size=7))
def test_energy_equals_branch_weight_sum_random(t):
    assert potential_energy(t) == branch_weight_oracle(t)


# --- incoming edges -----------------------------------------------------------

def test_incoming_edges_leaf_and_root():
    t = parse_tree("a:1[b:1,c:1,d:1]")
    assert incoming_edges(t, t.ref("b")) == ()
    assert len(incoming_edges(t, t.ref("a"))) == 3


@given(random_trees())
def test_incoming_edge_handshake(t):
    assert sum(len(incoming_edges(t, v)) for v in t.vertices()) == t.size - 1


# --- canonical form -----------------------------------------------------------

@given(random_trees())
def test_canonicalize_idempotent(t):
    assert canonicalize(canonicalize(t)) == canonicalize(t) == t


def test_children_order_is_immaterial():
    b = parse_tree("b:1")
    c = parse_tree("c:2[d:1]")
    assert WeightedTree("a", 1, (b, c)) == WeightedTree("a", 1, (c, b))


def test_unlabeled_two_vertex_labelings_coincide():
    t1 = strip_labels(parse_tree("a:1[b:2]"))
    t2 = strip_labels(parse_tree("b:1[a:2]"))
    assert t1 == t2 == parse_tree("_:1[_:2]")


def test_unlabeled_isomorphic_shapes_coincide():
    left = parse_tree("_:1[_:1[_:2],_:1]")
    right = WeightedTree(
        "_", 1, (WeightedTree("_", 1), WeightedTree("_", 1, (WeightedTree("_", 2),)))
    )
    assert left == right


def test_mode_mixing_rejected():
    with pytest.raises(TreeError):
        WeightedTree("a", 1, (WeightedTree("_", 1),))
    with pytest.raises(TreeError):
        WeightedTree("_", 1, (WeightedTree("a", 1),))


def test_duplicate_labels_rejected():
    with pytest.raises(TreeError):
        WeightedTree("a", 1, (WeightedTree("a", 2),))
    with pytest.raises(ParseError):
        parse_tree("a:1[a:2]")


def test_bad_weight_rejected():
    with pytest.raises(TreeError):
        WeightedTree("a", 0)


# --- enumeration ---------------------------------------------------------------

@pytest.mark.parametrize("n", sorted(CAYLEY))
def test_enumeration_matches_cayley_count(n):
    trees = enumerate_labeled_trees(n, [1] * n)
    assert len(trees) == CAYLEY[n]
    assert len(set(trees)) == CAYLEY[n]
    for t in trees:
        assert t.size == n
        assert t.labels == {str(i) for i in range(1, n + 1)}


def test_enumeration_carries_weights():
    trees = enumerate_labeled_trees(3, [5, 1, 2])
    assert len(trees) == 9
    for t in trees:
        assert t.ref("1").weight == 5
        assert t.ref("2").weight == 1
        assert t.ref("3").weight == 2


def test_enumeration_rejects_zero():
    with pytest.raises(ValueError):
        enumerate_labeled_trees(0, [])


def test_unlabeled_enumeration_counts():
    # 1 shape of size 1, 1 of size 2, 2 of size 3; times weight choices
    assert len(enumerate_unlabeled_trees(1, 2)) == 2
    assert len(enumerate_unlabeled_trees(2, 2)) == 4
    assert len(enumerate_unlabeled_trees(3, 1)) == 2
    assert len(enumerate_unlabeled_trees(3, 2)) == 8 + 6


# --- relabel / reweight ----------------------------------------------------------

def test_relabel_identity():
    t = parse_tree("a:1[b:3[c:2,d:1]]")
    assert relabel(t, {lab: lab for lab in t.labels}) == t


@given(random_trees(max_size=5))
def test_relabel_roundtrip(t):
    mapping = {lab: f"r_{lab}" for lab in t.labels}
    inverse = {v: k for k, v in mapping.items()}
    assert relabel(relabel(t, mapping), inverse) == t


@given(random_trees(max_size=5))
def test_relabel_preserves_weight_multiset(t):
    mapping = {lab: f"q{i}" for i, lab in enumerate(sorted(t.labels))}
    out = relabel(t, mapping)
    def weights(tree):
        return sorted(w.node.weight for w in tree.vertices())
    assert weights(out) == weights(t)


def test_relabel_covariant_with_canonical_form():
    t = parse_tree("a:1[b:1,c:1[d:2]]")
    mapping = {"a": "z", "b": "y", "c": "x", "d": "w"}
    assert canonicalize(relabel(t, mapping)) == relabel(canonicalize(t), mapping)


def test_relabel_rejects_non_bijection():
    t = parse_tree("a:1[b:2]")
    with pytest.raises(TreeError):
        relabel(t, {"a": "x", "b": "x"})
    with pytest.raises(TreeError):
        relabel(t, {"a": "x"})


def test_structural_queries_invariant_under_canonicalize():
    t = parse_tree("a:1[b:3[c:2,d:1],e:1]")
    c = canonicalize(t)
    assert (weight(t), potential_energy(t), t.size) == (weight(c), potential_energy(c), c.size)


# --- grammar -------------------------------------------------------------------

def test_parse_print_examples():
    text = "a:1[b:3[c:2,d:1]]"
    assert parse_tree(text).encoding == text
    assert parse_tree("  a : 1 [ b:3[ c:2 , d:1 ] ] ").encoding == text


@given(random_trees(max_size=6))
def test_parse_print_roundtrip(t):
    assert parse_tree(t.encoding) == t


@given(random_trees(max_size=4, labeled=False))
def test_parse_print_roundtrip_unlabeled(t):
    assert parse_tree(t.encoding) == t


@pytest.mark.parametrize(
    "bad, pos",
    [
        ("", 0),
        ("a", 1),
        ("a:", 2),
        ("a:0", 3),
        ("a:1[", 4),
        ("a:1[b:2", 7),
        ("a:1]", 3),
        ("a:1[b:2,]", 8),
    ],
)
def test_parse_errors_carry_positions(bad, pos):
    with pytest.raises(ParseError) as err:
        parse_tree(bad)
    assert err.value.position == pos


def test_vertex_ref_accessors():
    t = parse_tree("a:1[b:3[c:2]]")
    c = t.ref("c")
    assert isinstance(c, VertexRef)
    assert c.weight == 2 and c.label == "c" and c.height == 2
    assert c.node == parse_tree("c:2")
