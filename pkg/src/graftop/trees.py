"""Weighted labeled rooted trees: construction, canonical form, structural
queries, parsing/printing, and exhaustive enumeration.

Trees are immutable.  Children are kept in a fixed canonical order (sorted
by subtree encoding), so branch order never matters for equality, hashing,
or printing.  A tree is either labeled (all vertex labels pairwise
distinct) or unlabeled (every vertex labeled ``_``), in which case equality
is equality up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ParseError, TreeError

UNLABELED = "_"

_LABEL_CHARS = frozenset(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_"
)


def _encoding_of(tree: "WeightedTree") -> str:
    return tree.encoding


_VALID_LABELS: set[str] = set()


class WeightedTree:
    """A rooted tree whose vertices carry a label and a weight >= 1.

    ``encoding`` is the canonical textual form (``a:1[b:3[c:2,d:1]]``);
    two trees are equal exactly when their encodings coincide.  Derived
    quantities (total weight, potential energy, vertex count, label set)
    are computed once at construction.  Instances are value objects: treat
    them as immutable and never assign to their attributes.
    """

    __slots__ = (
        "label",
        "weight",
        "children",
        "encoding",
        "total_weight",
        "energy",
        "size",
        "labels",
    )

    def __init__(self, label: str, weight: int, children: tuple = ()):
        if not isinstance(weight, int) or weight < 1:
            raise TreeError(f"vertex weight must be a positive integer, got {weight!r}")
        if label not in _VALID_LABELS:
            if not isinstance(label, str) or not label or not set(label) <= _LABEL_CHARS:
                raise TreeError(f"invalid label {label!r}")
            _VALID_LABELS.add(label)
        kids = tuple(sorted(children, key=_encoding_of))
        self.label = label
        self.weight = weight
        self.children = kids
        total = weight
        energy = 0
        size = 1
        if kids:
            labs = {label}
            for c in kids:
                total += c.total_weight
                # Hanging a branch one level down adds its full weight.
                energy += c.energy + c.total_weight
                size += c.size
                labs |= c.labels
            self.encoding = f"{label}:{weight}[" + ",".join(c.encoding for c in kids) + "]"
            self.labels = frozenset(labs)
        else:
            self.encoding = f"{label}:{weight}"
            self.labels = frozenset((label,))
        self.total_weight = total
        self.energy = energy
        self.size = size
        if label == UNLABELED:
            if self.labels != {UNLABELED}:
                raise TreeError("unlabeled trees must use '_' on every vertex")
        else:
            if UNLABELED in self.labels:
                raise TreeError("cannot mix labeled and unlabeled vertices")
            if len(self.labels) != size:
                raise TreeError(f"duplicate labels in {self.encoding}")

    def __eq__(self, other):
        return isinstance(other, WeightedTree) and self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __repr__(self):
        return f"WeightedTree({self.encoding!r})"

    def __str__(self):
        return self.encoding

    @property
    def is_labeled(self) -> bool:
        return self.label != UNLABELED

    def node_at(self, path: Sequence[int]) -> "WeightedTree":
        node = self
        for i in path:
            try:
                node = node.children[i]
            except IndexError:
                raise TreeError(f"no vertex at path {tuple(path)!r} in {self.encoding}")
        return node

    def vertices(self) -> tuple["VertexRef", ...]:
        """All vertices as refs, root first, preorder in canonical child order."""
        out = []

        def walk(node, path):
            out.append(VertexRef(self, path))
            for i, child in enumerate(node.children):
                walk(child, path + (i,))

        walk(self, ())
        return tuple(out)

    def ref(self, label: str) -> "VertexRef":
        """The vertex carrying ``label`` (labeled trees only)."""
        for v in self.vertices():
            if v.node.label == label:
                return v
        raise TreeError(f"no vertex labeled {label!r} in {self.encoding}")


@dataclass(frozen=True)
class VertexRef:
    """Handle to one vertex inside one tree, as a root path of child indices.

    A ref is only meaningful against the tree it was issued from;
    operations reject refs whose ``tree`` does not match.
    """

    tree: WeightedTree
    path: tuple = ()

    @property
    def node(self) -> WeightedTree:
        return self.tree.node_at(self.path)

    @property
    def label(self) -> str:
        return self.node.label

    @property
    def weight(self) -> int:
        return self.node.weight

    @property
    def height(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class Edge:
    """Tree edge oriented child -> parent; identified with its child branch."""

    child: VertexRef
    parent: VertexRef

    @property
    def branch(self) -> WeightedTree:
        return self.child.node


def _owned(tree: WeightedTree, v: VertexRef) -> None:
    if not isinstance(v, VertexRef) or v.tree != tree:
        raise TreeError("vertex ref does not belong to this tree")


def weight(tree: WeightedTree) -> int:
    """Total weight: the sum of all vertex weights."""
    return tree.total_weight


def height(tree: WeightedTree, v: VertexRef) -> int:
    """Edge count of the root-to-v path; the root has height 0."""
    _owned(tree, v)
    return len(v.path)


def potential_energy(tree: WeightedTree) -> int:
    """Sum over vertices of weight times height."""
    return tree.energy


def incoming_edges(tree: WeightedTree, v: VertexRef) -> tuple[Edge, ...]:
    """The edges arriving at v, one per direct child, in canonical order."""
    _owned(tree, v)
    return tuple(
        Edge(VertexRef(tree, v.path + (i,)), v) for i in range(len(v.node.children))
    )


def canonicalize(tree: WeightedTree) -> WeightedTree:
    """Return the canonical form of ``tree``.

    Construction already sorts children at every vertex, so every tree in
    the system is canonical and this is the identity; it is kept as the
    named contract point.
    """
    return tree


def relabel(tree: WeightedTree, mapping: Mapping[str, str]) -> WeightedTree:
    """Rename vertices through a bijection on the label set; weights travel
    with their vertices."""
    if not tree.is_labeled:
        raise TreeError("cannot relabel an unlabeled tree")
    missing = tree.labels - set(mapping)
    if missing:
        raise TreeError(f"relabel map misses labels {sorted(missing)}")
    image = [mapping[lab] for lab in tree.labels]
    if len(set(image)) != len(image):
        raise TreeError("relabel map is not injective on the label set")
    if UNLABELED in image:
        raise TreeError("relabel target '_' is reserved for unlabeled trees")

    def rebuild(node):
        return WeightedTree(
            mapping[node.label], node.weight, tuple(rebuild(c) for c in node.children)
        )

    return rebuild(tree)


def reweight(tree: WeightedTree, weights: Mapping[str, int]) -> WeightedTree:
    """Replace vertex weights, keyed by label (labeled trees only)."""
    if not tree.is_labeled:
        raise TreeError("cannot reweight an unlabeled tree by label")
    missing = tree.labels - set(weights)
    if missing:
        raise TreeError(f"weight map misses labels {sorted(missing)}")

    def rebuild(node):
        return WeightedTree(
            node.label, weights[node.label], tuple(rebuild(c) for c in node.children)
        )

    return rebuild(tree)


def strip_labels(tree: WeightedTree) -> WeightedTree:
    """Forget labels: the unlabeled (isomorphism-class) form."""

    def rebuild(node):
        return WeightedTree(UNLABELED, node.weight, tuple(rebuild(c) for c in node.children))

    return rebuild(tree)


def enumerate_labeled_trees(
    n: int,
    weights: Sequence[int],
    labels: Sequence[str] | None = None,
) -> list[WeightedTree]:
    """All labeled rooted trees on n vertices, vertex i carrying weights[i].

    Enumerates (root, parent map) pairs and keeps those whose parent walk
    reaches the root from every vertex; there are n**(n-1) of them.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    weights = list(weights)
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    labels = list(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("labels must be n distinct strings")

    out = []
    for root in range(n):
        others = [i for i in range(n) if i != root]
        for choice in itertools.product(range(n), repeat=n - 1):
            parent = dict(zip(others, choice))
            ok = True
            for start in others:
                seen = set()
                cur = start
                while cur != root:
                    if cur in seen:
                        ok = False
                        break
                    seen.add(cur)
                    cur = parent[cur]
                if not ok:
                    break
            if not ok:
                continue
            kids: dict[int, list[int]] = {i: [] for i in range(n)}
            for child, par in parent.items():
                kids[par].append(child)

            def make(i):
                return WeightedTree(labels[i], weights[i], tuple(make(j) for j in kids[i]))

            out.append(make(root))
    return out


def enumerate_unlabeled_trees(n: int, max_weight: int) -> list[WeightedTree]:
    """All unlabeled trees with exactly n vertices and weights in 1..max_weight."""
    shapes = enumerate_labeled_trees(n, [1] * n)
    order = [str(i + 1) for i in range(n)]
    seen = set()
    for shape in shapes:
        for vec in itertools.product(range(1, max_weight + 1), repeat=n):
            seen.add(strip_labels(reweight(shape, dict(zip(order, vec)))))
    return sorted(seen, key=lambda t: (t.size, t.encoding))


class _TreeParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _LABEL_CHARS:
            self.pos += 1
        if self.pos == start:
            self.error("expected a label")
        return self.text[start:self.pos]

    def number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a weight")
        return int(self.text[start:self.pos])

    def tree(self) -> WeightedTree:
        self.skip_ws()
        label = self.word()
        self.skip_ws()
        if self.peek() != ":":
            self.error("expected ':'")
        self.pos += 1
        self.skip_ws()
        w = self.number()
        self.skip_ws()
        children = []
        if self.peek() == "[":
            self.pos += 1
            children.append(self.tree())
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                children.append(self.tree())
                self.skip_ws()
            if self.peek() != "]":
                self.error("expected ',' or ']'")
            self.pos += 1
        try:
            return WeightedTree(label, w, tuple(children))
        except TreeError as exc:
            raise ParseError(str(exc), self.pos) from exc

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")


def parse_tree(text: str) -> WeightedTree:
    """Parse ``label:weight[child,...]`` notation (whitespace insignificant)."""
    p = _TreeParser(text)
    t = p.tree()
    p.end()
    return t
