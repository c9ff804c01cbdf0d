"""Deformed compositions and grafting products on weighted labeled trees.

The partial composition substitutes a tree T for a vertex v of a host S
whose weight matches T's total weight, then sums over every way of
reattaching v's child branches to vertices of T.  Each reattachment map is
weighted by the deformation parameter raised to the potential-energy
excess over the all-at-the-root map, so the parameter measures how far
below the graft point the branches sink.  Setting the parameter to 0
keeps only the root reattachment; setting it to 1 flattens all the
coefficients to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .algebra import Fraction, LambdaPoly, TreeCombination, monomial
from .errors import TreeError
from .trees import UNLABELED, VertexRef, WeightedTree, _owned, relabel


def unit(weight: int, label: str = UNLABELED) -> WeightedTree:
    """The one-vertex tree of the given weight."""
    return WeightedTree(label, weight)


class UnitFamily:
    """The graded unit, one single-vertex tree per weight, built lazily."""

    def __init__(self, label: str = UNLABELED):
        self.label = label

    def __getitem__(self, weight: int) -> WeightedTree:
        return unit(weight, self.label)


UNIT = UnitFamily()


@dataclass(frozen=True)
class GraftMap:
    """Assignment of the child edges of the substituted vertex to vertices
    of the inserted tree, aligned with the canonical edge order."""

    targets: tuple[VertexRef, ...]

    @classmethod
    def root_map(cls, S: WeightedTree, v: VertexRef, T: WeightedTree) -> "GraftMap":
        """The minimal map sending every edge to the root of T."""
        _owned(S, v)
        return cls((VertexRef(T, ()),) * len(v.node.children))

    @classmethod
    def from_labels(
        cls, S: WeightedTree, v: VertexRef, T: WeightedTree, mapping: Mapping[str, str]
    ) -> "GraftMap":
        """Build a map from branch-root labels to target labels in T."""
        _owned(S, v)
        branch_labels = [c.label for c in v.node.children]
        if set(mapping) != set(branch_labels):
            raise TreeError(
                f"graft map domain {sorted(mapping)} does not match branches {sorted(branch_labels)}"
            )
        return cls(tuple(T.ref(mapping[lab]) for lab in branch_labels))

    def is_minimal(self) -> bool:
        return all(r.path == () for r in self.targets)


def iter_graft_maps(S: WeightedTree, v: VertexRef, T: WeightedTree) -> Iterator[GraftMap]:
    """All maps from the child edges of v into the vertices of T."""
    _owned(S, v)
    k = len(v.node.children)
    for targets in itertools.product(T.vertices(), repeat=k):
        yield GraftMap(targets)


def _adjacency(tree: WeightedTree) -> dict:
    adj = {}

    def walk(node, parent):
        adj[node.label] = (node.weight, parent)
        for c in node.children:
            walk(c, node.label)

    walk(tree, None)
    return adj


def _build(adj: dict) -> WeightedTree:
    kids: dict[str, list[str]] = {lab: [] for lab in adj}
    root = None
    for lab, (_, parent) in adj.items():
        if parent is None:
            root = lab
        else:
            kids[parent].append(lab)

    def make(lab):
        return WeightedTree(lab, adj[lab][0], tuple(make(c) for c in kids[lab]))

    return make(root)


def _surgery(s_adj, v_label, t_adj, branch_labels, target_labels) -> WeightedTree:
    v_parent = s_adj[v_label][1]
    merged = {lab: wp for lab, wp in s_adj.items() if lab != v_label}
    for lab, (w, parent) in t_adj.items():
        merged[lab] = (w, parent if parent is not None else v_parent)
    for branch, target in zip(branch_labels, target_labels):
        merged[branch] = (merged[branch][0], target)
    return _build(merged)


def _check_compose_args(S: WeightedTree, v: VertexRef, T: WeightedTree) -> None:
    _owned(S, v)
    if not (S.is_labeled and T.is_labeled):
        raise TreeError("composition requires labeled trees")
    clash = (S.labels - {v.label}) & T.labels
    if clash:
        raise TreeError(f"label clash between host and inserted tree: {sorted(clash)}")


def compose_with_map(
    S: WeightedTree, v: VertexRef, T: WeightedTree, f: GraftMap
) -> WeightedTree:
    """Substitute T for vertex v of S, reattaching each child branch of v at
    the vertex of T chosen by f.

    T's root inherits v's parent edge (or becomes the root when v was the
    root); the result has S.size + T.size - 1 vertices.
    """
    _check_compose_args(S, v, T)
    branch_labels = [c.label for c in v.node.children]
    if len(f.targets) != len(branch_labels):
        raise TreeError(
            f"graft map has {len(f.targets)} targets for {len(branch_labels)} edges"
        )
    for r in f.targets:
        if r.tree != T:
            raise TreeError("graft map target does not belong to the inserted tree")
    return _surgery(
        _adjacency(S), v.label, _adjacency(T), branch_labels, [r.label for r in f.targets]
    )


def compose_lambda(S: WeightedTree, v: VertexRef, T: WeightedTree) -> TreeCombination:
    """Graded partial composition of T into vertex v of S.

    Zero when T's total weight differs from v's weight.  Otherwise one
    term per reattachment map; the term for map f carries coefficient
    L**(d_f - d_min) where d_f is the potential energy of the f-tree and
    d_min that of the all-at-the-root tree, which is the minimum.
    """
    _check_compose_args(S, v, T)
    if T.total_weight != v.weight:
        return TreeCombination.zero()
    s_adj = _adjacency(S)
    t_adj = _adjacency(T)
    branch_labels = [c.label for c in v.node.children]
    base = _surgery(s_adj, v.label, t_adj, branch_labels, [T.label] * len(branch_labels))
    if not branch_labels:
        return TreeCombination._raw({base: LambdaPoly.one()})
    d0 = base.energy
    acc: dict[WeightedTree, LambdaPoly] = {}
    t_labels = list(t_adj)
    for targets in itertools.product(t_labels, repeat=len(branch_labels)):
        tree = _surgery(s_adj, v.label, t_adj, branch_labels, targets)
        exp = tree.energy - d0
        if exp < 0:
            raise TreeError(
                "reattachment produced potential energy below the root-map minimum"
            )
        poly = monomial(exp)
        prev = acc.get(tree)
        acc[tree] = poly if prev is None else prev + poly
    return TreeCombination._raw(acc)


def _as_combination(x) -> TreeCombination:
    if isinstance(x, TreeCombination):
        return x
    if isinstance(x, WeightedTree):
        return TreeCombination.of(x)
    raise TypeError(f"expected a tree or tree combination, got {type(x).__name__}")


def _acc_add(acc: dict, term, poly) -> None:
    prev = acc.get(term)
    if prev is None:
        acc[term] = poly
    else:
        total = prev + poly
        if total:
            acc[term] = total
        else:
            del acc[term]


def compose_at_label(x, label: str, y) -> TreeCombination:
    """Bilinear extension of compose_lambda, slot selected by label in every
    term of x."""
    acc: dict = {}
    for s, cs in _as_combination(x).terms():
        v = s.ref(label)
        for t, ct in _as_combination(y).terms():
            scale = cs * ct
            for tree, coeff in compose_lambda(s, v, t)._terms.items():
                _acc_add(acc, tree, scale * coeff)
    return TreeCombination._raw(acc)


def _fresh_label(taken, base="u"):
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def compose_unit_left(n: int, T: WeightedTree) -> TreeCombination:
    """Compose the weight-n unit with T: the identity on weight-n trees,
    zero otherwise."""
    if not T.is_labeled:
        return TreeCombination.of(T) if T.total_weight == n else TreeCombination.zero()
    u = unit(n, _fresh_label(T.labels))
    return compose_lambda(u, VertexRef(u, ()), T)


def compose_unit_right(S: WeightedTree, v: VertexRef) -> TreeCombination:
    """Compose S at v with the unit of matching weight: always S itself."""
    _owned(S, v)
    if not S.is_labeled:
        return TreeCombination.of(S)
    return compose_lambda(S, v, unit(v.weight, v.label))


def gamma(a: WeightedTree, parts: Mapping[str, WeightedTree]) -> TreeCombination:
    """Global composition: plug one tree into every vertex of a.

    Slots are consumed in descending label order; by the associativity
    laws any admissible order agrees.  A weight mismatch at any slot makes
    the whole result zero.
    """
    if set(parts) != set(a.labels):
        raise TreeError(
            f"gamma needs one part per vertex; got {sorted(parts)} for {sorted(a.labels)}"
        )
    acc = TreeCombination.of(a)
    for label in sorted(a.labels, reverse=True):
        acc = compose_at_label(acc, label, parts[label])
        if not acc:
            return acc
    return acc


def compose_positional(S: WeightedTree, i: int, T: WeightedTree) -> TreeCombination:
    """Classical position-indexed composition for trees labeled 1..n.

    Relabels so the inserted tree occupies positions i..i+m-1 and the
    host's higher labels shift up by m-1, then defers to the label-keyed
    composition.
    """
    n, m = S.size, T.size
    if S.labels != {str(k) for k in range(1, n + 1)}:
        raise TreeError("positional composition requires host labels 1..n")
    if T.labels != {str(k) for k in range(1, m + 1)}:
        raise TreeError("positional composition requires inserted labels 1..m")
    if not 1 <= i <= n:
        raise TreeError(f"position {i} out of range 1..{n}")
    host_map = {
        str(k): str(k if k < i else k + m - 1) if k != i else str(i)
        for k in range(1, n + 1)
    }
    inner_map = {str(j): str(j + i - 1) for j in range(1, m + 1)}
    S2 = relabel(S, host_map)
    T2 = relabel(T, inner_map)
    return compose_lambda(S2, S2.ref(str(i)), T2)


def graft_at(T: WeightedTree, v: VertexRef, S: WeightedTree) -> WeightedTree:
    """Graft S as a new child branch of vertex v of T."""
    _owned(T, v)
    if T.is_labeled != S.is_labeled:
        raise TreeError("cannot graft across labeled and unlabeled trees")
    if T.is_labeled and T.labels & S.labels:
        raise TreeError(f"label clash when grafting: {sorted(T.labels & S.labels)}")

    def rebuild(node, path):
        if not path:
            return WeightedTree(node.label, node.weight, node.children + (S,))
        kids = list(node.children)
        kids[path[0]] = rebuild(kids[path[0]], path[1:])
        return WeightedTree(node.label, node.weight, tuple(kids))

    return rebuild(T, v.path)


def arrow_lambda(x, y) -> TreeCombination:
    """Deformed grafting product: graft y below every vertex of x, the term
    at a vertex of height h weighted by L**(weight(y) * h).

    Extends bilinearly when either argument is a combination.
    """
    acc: dict = {}
    for t, ct in _as_combination(x).terms():
        for s, cs in _as_combination(y).terms():
            coeff = ct * cs
            for v in t.vertices():
                exponent = s.total_weight * len(v.path)
                _acc_add(acc, graft_at(t, v, s), coeff * monomial(exponent))
    return TreeCombination._raw(acc)


star_lambda = arrow_lambda


def butcher_product(T: WeightedTree, S: WeightedTree) -> WeightedTree:
    """Root graft: S attached as a new child of T's root."""
    return graft_at(T, VertexRef(T, ()), S)


def circ_sum(T, S) -> TreeCombination:
    """Sum of the graded compositions of S into every vertex of T; only
    vertices whose weight equals S's total weight contribute."""
    acc: dict = {}
    for t, ct in _as_combination(T).terms():
        for s, cs in _as_combination(S).terms():
            scale = ct * cs
            for v in t.vertices():
                for tree, coeff in compose_lambda(t, v, s)._terms.items():
                    _acc_add(acc, tree, scale * coeff)
    return TreeCombination._raw(acc)


def nap_compose(S: WeightedTree, v: VertexRef, T: WeightedTree) -> WeightedTree:
    """Root-only composition: the single term surviving at parameter 0."""
    _owned(S, v)
    if T.total_weight != v.weight:
        raise TreeError(
            f"weight mismatch: inserted tree weighs {T.total_weight}, slot weighs {v.weight}"
        )
    return compose_with_map(S, v, T, GraftMap.root_map(S, v, T))


def pre_lie_compose(S: WeightedTree, v: VertexRef, T: WeightedTree) -> TreeCombination:
    """Classical composition ignoring weights: the plain sum over all
    reattachment maps, each with coefficient 1."""
    acc = TreeCombination.zero()
    for f in iter_graft_maps(S, v, T):
        acc = acc + TreeCombination.of(compose_with_map(S, v, T, f))
    return acc


def nap_compose_classical(S: WeightedTree, v: VertexRef, T: WeightedTree) -> WeightedTree:
    """Classical root-only composition ignoring weights."""
    return compose_with_map(S, v, T, GraftMap.root_map(S, v, T))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _weightings(tree: WeightedTree, max_total: int) -> Iterator[dict]:
    labels = sorted(tree.labels)
    for total in range(len(labels), max_total + 1):
        for vec in _compositions(total, len(labels)):
            yield dict(zip(labels, vec))


def _weightings_exact(tree: WeightedTree, total: int) -> Iterator[dict]:
    labels = sorted(tree.labels)
    for vec in _compositions(total, len(labels)):
        yield dict(zip(labels, vec))


def morphism_i_check(S: WeightedTree, T: WeightedTree, v: VertexRef, weight_bound: int) -> bool:
    """Truncated morphism equality from the classical all-maps composition
    into the parameter-1 graded composition.

    Both sides are expanded over every weight assignment with total at
    most weight_bound and compared exactly, component by component.
    """
    from .trees import reweight

    _owned(S, v)
    if S.labels & T.labels:
        raise TreeError("morphism check requires label-disjoint trees")
    lhs = TreeCombination.zero()
    for u, c in pre_lie_compose(S, v, T).terms():
        for assignment in _weightings(u, weight_bound):
            lhs = lhs + c * TreeCombination.of(reweight(u, assignment))
    rhs = TreeCombination.zero()
    for alpha in _weightings(S, weight_bound):
        Sa = reweight(S, alpha)
        for beta in _weightings_exact(T, alpha[v.label]):
            Tb = reweight(T, beta)
            rhs = rhs + compose_lambda(Sa, Sa.ref(v.label), Tb).specialize(Fraction(1))
    return lhs == rhs


def morphism_j_check(S: WeightedTree, T: WeightedTree, v: VertexRef, weight_bound: int) -> bool:
    """Truncated morphism equality from the classical root-only composition
    into the parameter-0 graded composition."""
    from .trees import reweight

    _owned(S, v)
    if S.labels & T.labels:
        raise TreeError("morphism check requires label-disjoint trees")
    u = nap_compose_classical(S, v, T)
    lhs = TreeCombination.zero()
    for assignment in _weightings(u, weight_bound):
        lhs = lhs + TreeCombination.of(reweight(u, assignment))
    rhs = TreeCombination.zero()
    for alpha in _weightings(S, weight_bound):
        Sa = reweight(S, alpha)
        for beta in _weightings_exact(T, alpha[v.label]):
            Tb = reweight(T, beta)
            rhs = rhs + compose_lambda(Sa, Sa.ref(v.label), Tb).specialize(Fraction(0))
    return lhs == rhs
