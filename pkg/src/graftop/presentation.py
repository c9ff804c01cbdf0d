"""Bracket-expression presentation: fully parenthesized binary products of
weighted generators, the four-term deformed relation, and the evaluation
map phi / rewriting map psi that translate between bracket expressions and
tree combinations.

phi evaluates a bracket through the deformed grafting product, one graft
per product node.  psi rewrites a tree back into brackets by peeling one
branch at a time; peeling is not free, so each step subtracts a correction
sum weighted by the peeled branch's weight.  The two maps are mutually
inverse through phi: phi(psi(T)) is exactly T with coefficient 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Union

from .algebra import Combination, LambdaPoly, TreeCombination
from .errors import ParseError, TreeError
from .operad import arrow_lambda
from .trees import _LABEL_CHARS, UNLABELED, WeightedTree


@dataclass(frozen=True, eq=False, repr=False)
class Generator:
    """A generator leaf: one label with one weight."""

    label: str
    weight: int
    encoding: str = field(init=False)
    labels: frozenset = field(init=False)

    def __post_init__(self):
        if not self.label or self.label == UNLABELED or not set(self.label) <= _LABEL_CHARS:
            raise TreeError(f"invalid generator label {self.label!r}")
        if not isinstance(self.weight, int) or self.weight < 1:
            raise TreeError(f"generator weight must be a positive integer, got {self.weight!r}")
        object.__setattr__(self, "encoding", f"{self.label}_{self.weight}")
        object.__setattr__(self, "labels", frozenset((self.label,)))

    def __eq__(self, other):
        return isinstance(other, (Generator, Pair)) and self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __repr__(self):
        return f"<bracket {self.encoding}>"

    def __str__(self):
        return self.encoding


@dataclass(frozen=True, eq=False, repr=False)
class Pair:
    """An ordered binary product of two bracket expressions."""

    left: "BracketExpr"
    right: "BracketExpr"
    encoding: str = field(init=False)
    labels: frozenset = field(init=False)

    def __post_init__(self):
        clash = self.left.labels & self.right.labels
        if clash:
            raise TreeError(f"repeated generator labels {sorted(clash)} in one expression")
        object.__setattr__(self, "encoding", f"({self.left.encoding} {self.right.encoding})")
        object.__setattr__(self, "labels", self.left.labels | self.right.labels)

    def __eq__(self, other):
        return isinstance(other, (Generator, Pair)) and self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __repr__(self):
        return f"<bracket {self.encoding}>"

    def __str__(self):
        return self.encoding


BracketExpr = Union[Generator, Pair]


class BracketCombination(Combination):
    """Formal linear combination of bracket expressions."""

    __slots__ = ()

    def _validate(self, acc: dict) -> None:
        for term in acc:
            if not isinstance(term, (Generator, Pair)):
                raise TreeError(f"bracket combination term must be a bracket expression, got {term!r}")

    @staticmethod
    def _sort_key(term):
        return term.encoding

    @staticmethod
    def _format_term(term) -> str:
        return term.encoding


def bracket_mul(a: BracketCombination, b: BracketCombination) -> BracketCombination:
    """Bilinear extension of the binary product to combinations."""
    acc = BracketCombination.zero()
    for ea, ca in a.terms():
        for eb, cb in b.terms():
            acc = acc + BracketCombination.of(Pair(ea, eb), ca * cb)
    return acc


def corolla_decomposition(tree: WeightedTree) -> tuple[Generator, tuple[WeightedTree, ...]]:
    """Split a tree into its root generator and the multiset of branches
    (in canonical order); the induction scaffold for the rewriting map."""
    if not tree.is_labeled:
        raise TreeError("corolla decomposition needs a labeled tree")
    return Generator(tree.label, tree.weight), tree.children


def corolla_assemble(root: Generator, branches) -> WeightedTree:
    """Inverse of corolla_decomposition: hang the branches under the root."""
    return WeightedTree(root.label, root.weight, tuple(branches))


def relation_r(k: int, l: int, m: int, labels=("x", "y", "z")) -> BracketCombination:
    """The four-term deformed relation on three generators of weights
    k, l, m: coefficients +1, -L^m, -1, +L^l."""
    x, y, z = labels
    if len({x, y, z}) != 3:
        raise TreeError("relation needs three distinct labels")
    xk, yl, zm = Generator(x, k), Generator(y, l), Generator(z, m)
    return BracketCombination(
        (
            (Pair(Pair(xk, yl), zm), LambdaPoly.one()),
            (Pair(xk, Pair(yl, zm)), LambdaPoly.monomial(m, -1)),
            (Pair(Pair(xk, zm), yl), LambdaPoly.constant(-1)),
            (Pair(xk, Pair(zm, yl)), LambdaPoly.monomial(l)),
        )
    )


_tls = threading.local()


def _cache(name: str) -> dict:
    cache = getattr(_tls, name, None)
    if cache is None:
        cache = {}
        setattr(_tls, name, cache)
    return cache


def phi(x) -> TreeCombination:
    """Evaluate bracket expressions into tree combinations: a generator
    becomes its one-vertex tree, a product becomes the deformed graft of
    the right factor onto the left.  Linear in combinations."""
    if isinstance(x, BracketCombination):
        acc = TreeCombination.zero()
        for expr, coeff in x.terms():
            acc = acc + coeff * phi(expr)
        return acc
    if isinstance(x, Generator):
        return TreeCombination.of(WeightedTree(x.label, x.weight))
    if isinstance(x, Pair):
        cache = _cache("phi")
        hit = cache.get(x)
        if hit is None:
            hit = arrow_lambda(phi(x.left), phi(x.right))
            cache[x] = hit
        return hit
    raise TypeError(f"expected a bracket expression or combination, got {type(x).__name__}")


def psi(x, branch_order: tuple[int, ...] | None = None) -> BracketCombination:
    """Rewrite a tree (or tree combination, linearly) into brackets.

    A single vertex is its generator.  Otherwise peel the first branch
    B1 off the root: psi(T) is (psi(rest) psi(B1)) minus L**weight(B1)
    times the sum of psi over the trees where B1 is instead grafted into
    one of the remaining branches.  Branches are taken in canonical
    order; ``branch_order`` permutes them at this call only.
    """
    if isinstance(x, TreeCombination):
        if branch_order is not None:
            raise TreeError("branch_order applies to a single tree")
        acc = BracketCombination.zero()
        for tree, coeff in x.terms():
            acc = acc + coeff * psi(tree)
        return acc
    if not isinstance(x, WeightedTree):
        raise TypeError(f"expected a tree or tree combination, got {type(x).__name__}")
    if not x.is_labeled:
        raise TreeError("bracket rewriting needs labeled trees")

    cache = _cache("psi")
    if branch_order is None:
        hit = cache.get(x)
        if hit is not None:
            return hit

    root, branches = corolla_decomposition(x)
    if branch_order is not None:
        if sorted(branch_order) != list(range(len(branches))):
            raise TreeError(f"branch_order must permute 0..{len(branches) - 1}")
        branches = tuple(branches[i] for i in branch_order)

    p = len(branches)
    if p == 0:
        result = BracketCombination.of(root)
    elif p == 1:
        result = bracket_mul(BracketCombination.of(root), psi(branches[0]))
    else:
        first_branch, rest = branches[0], branches[1:]
        head = corolla_assemble(root, rest)
        # Recursion descends: head and first_branch lose vertices, the
        # correction trees keep the size but lose one root branch.
        assert head.size < x.size and first_branch.size < x.size
        result = bracket_mul(psi(head), psi(first_branch))
        correction = BracketCombination.zero()
        for j in range(len(rest)):
            for grafted, coeff in arrow_lambda(rest[j], first_branch).terms():
                merged = corolla_assemble(root, rest[:j] + (grafted,) + rest[j + 1:])
                assert len(merged.children) == p - 1
                correction = correction + coeff * psi(merged)
        result = result - LambdaPoly.monomial(first_branch.total_weight) * correction

    if branch_order is None:
        cache[x] = result
    return result


def psi_order_independence_check(
    tree: WeightedTree, order1: tuple[int, ...], order2: tuple[int, ...]
) -> bool:
    """True when the two root branch orders give the same evaluation back
    through phi (the observable shadow of equality in the quotient)."""
    return phi(psi(tree, order1)) == phi(psi(tree, order2))


class _BracketParser:
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

    def expr(self) -> BracketExpr:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            left = self.expr()
            self.skip_ws()
            right = self.expr()
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            try:
                return Pair(left, right)
            except TreeError as exc:
                raise ParseError(str(exc), self.pos) from exc
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _LABEL_CHARS:
            self.pos += 1
        word = self.text[start:self.pos]
        if not word:
            self.error("expected a generator or '('")
        label, _, w = word.rpartition("_")
        if not label or not w.isdigit():
            self.pos = start
            self.error(f"bad generator {word!r}, expected label_weight")
        try:
            return Generator(label, int(w))
        except TreeError as exc:
            raise ParseError(str(exc), self.pos) from exc

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")


def parse_bracket(text: str) -> BracketExpr:
    """Parse ``((x_1 z_1) y_1)`` style bracket expressions."""
    p = _BracketParser(text)
    e = p.expr()
    p.end()
    return e
