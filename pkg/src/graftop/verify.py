"""Exhaustive property suites over bounded tree universes, with independent
brute-force oracles and deliberate fault injection to guard against vacuous
passes.

Each check walks every instance in its universe, compares exact symbolic
results, and reports shrunk counterexamples in the tree grammar.  The
oracles here deliberately avoid the production composition engine: trees
are torn down to parent maps or nested shape tuples and reassembled by
separate code.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import LambdaPoly, TreeCombination
from .errors import TreeError
from .operad import (
    GraftMap,
    arrow_lambda,
    compose_lambda,
    compose_unit_left,
    compose_unit_right,
    compose_with_map,
    graft_at,
    iter_graft_maps,
    nap_compose,
)
from .presentation import Generator, Pair, phi, psi
from .trees import (
    UNLABELED,
    WeightedTree,
    enumerate_labeled_trees,
    enumerate_unlabeled_trees,
    relabel,
    reweight,
)

_EXAMPLE_CAP = 3
_FAILURE_SCAN_CAP = 25


@dataclass(frozen=True)
class Universe:
    """Bounded tree universe: every tree with at most n_max vertices and
    vertex weights in 1..w_max."""

    n_max: int
    w_max: int
    labeled: bool = True

    def trees(self, prefix: str = "a") -> tuple[WeightedTree, ...]:
        if not self.labeled:
            return self.unlabeled_trees()
        return _labeled_universe(self.n_max, self.w_max, prefix)

    def shapes(self, prefix: str = "a") -> tuple[WeightedTree, ...]:
        """All-1-weight labeled trees, one per labeled shape."""
        return tuple(
            t
            for n in range(1, self.n_max + 1)
            for t in enumerate_labeled_trees(n, [1] * n, [f"{prefix}{i + 1}" for i in range(n)])
        )

    def unlabeled_trees(self) -> tuple[WeightedTree, ...]:
        return _unlabeled_universe(self.n_max, self.w_max)


DEFAULT_TRIPLE_UNIVERSE = Universe(3, 3)
DEFAULT_PAIR_UNIVERSE = Universe(4, 2)


@lru_cache(maxsize=None)
def _labeled_universe(n_max: int, w_max: int, prefix: str) -> tuple[WeightedTree, ...]:
    out = []
    for n in range(1, n_max + 1):
        labels = [f"{prefix}{i + 1}" for i in range(n)]
        shapes = enumerate_labeled_trees(n, [1] * n, labels)
        for vec in itertools.product(range(1, w_max + 1), repeat=n):
            assignment = dict(zip(labels, vec))
            out.extend(reweight(shape, assignment) for shape in shapes)
    return tuple(out)


@lru_cache(maxsize=None)
def _unlabeled_universe(n_max: int, w_max: int) -> tuple[WeightedTree, ...]:
    out = []
    for n in range(1, n_max + 1):
        out.extend(enumerate_unlabeled_trees(n, w_max))
    return tuple(out)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check: instance count, failures, wall time."""

    name: str
    instances: int
    failure_count: int
    counterexamples: tuple[str, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failure_count,
            "counterexamples": list(self.counterexamples),
            "seconds": round(self.seconds, 3),
            "ok": self.ok,
        }

    def summary(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.instances} instances, {self.failure_count} failures ({self.seconds:.2f}s)"
        if self.counterexamples:
            line += "\n      e.g. " + self.counterexamples[0]
        return line


class _Recorder:
    def __init__(self, name: str):
        self.name = name
        self.start = time.perf_counter()
        self.instances = 0
        self.failure_count = 0
        self.examples: list[str] = []

    def saw(self):
        self.instances += 1

    def fail(self, description: str):
        self.failure_count += 1
        if len(self.examples) < _EXAMPLE_CAP:
            self.examples.append(description)

    @property
    def saturated(self) -> bool:
        return self.failure_count >= _FAILURE_SCAN_CAP

    def report(self) -> CheckReport:
        return CheckReport(
            self.name,
            self.instances,
            self.failure_count,
            tuple(self.examples),
            time.perf_counter() - self.start,
        )


# ---------------------------------------------------------------------------
# Fault-injected variants (harness only).  Each suite gets the smallest
# exponent-style bug it can actually observe.

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


def _compose_variant(S, v, T, bump):
    """compose_lambda rebuilt from public pieces, with ``bump(is_minimal,
    host)`` added to every exponent."""
    if T.total_weight != v.weight:
        return TreeCombination.zero()
    base = compose_with_map(S, v, T, GraftMap.root_map(S, v, T))
    d0 = base.energy
    acc: dict = {}
    for f in iter_graft_maps(S, v, T):
        tree = compose_with_map(S, v, T, f)
        exp = tree.energy - d0 + bump(f.is_minimal(), S)
        _acc_add(acc, tree, LambdaPoly.monomial(exp))
    return TreeCombination._raw(acc)


def _bump_none(is_minimal, host):
    return 0


def _bump_nonminimal_plus_one(is_minimal, host):
    return 0 if is_minimal else 1


def _bump_all_plus_one(is_minimal, host):
    return 1


def _bump_host_scaled(is_minimal, host):
    # A plain +1 on non-minimal maps is provably invisible to the disjoint
    # law (the pairing of maps preserves per-map minimality), so this bug
    # scales with the host size instead.
    return 0 if is_minimal else host.size - 1


def _composer(bump):
    def compose(S, v, T):
        return _compose_variant(S, v, T, bump)

    return compose


def _arrow_variant(x, y, bump_nonroot: int) -> TreeCombination:
    from .operad import _as_combination

    total = TreeCombination.zero()
    for t, ct in _as_combination(x).terms():
        for s, cs in _as_combination(y).terms():
            for v in t.vertices():
                h = len(v.path)
                exp = s.total_weight * h + (bump_nonroot if h > 0 else 0)
                total = total + TreeCombination.of(
                    graft_at(t, v, s), ct * cs * LambdaPoly.monomial(exp)
                )
    return total


def _phi_with_arrow(expr, arrow):
    if isinstance(expr, Generator):
        return TreeCombination.of(WeightedTree(expr.label, expr.weight))
    if isinstance(expr, Pair):
        return arrow(_phi_with_arrow(expr.left, arrow), _phi_with_arrow(expr.right, arrow))
    acc = TreeCombination.zero()
    for term, coeff in expr.terms():
        acc = acc + coeff * _phi_with_arrow(term, arrow)
    return acc


# ---------------------------------------------------------------------------
# Independent oracles.

def _parent_map(tree: WeightedTree):
    parents: dict[str, str | None] = {}
    weights: dict[str, int] = {}
    stack = [(tree, None)]
    while stack:
        node, par = stack.pop()
        parents[node.label] = par
        weights[node.label] = node.weight
        for child in node.children:
            stack.append((child, node.label))
    return parents, weights


def _tree_of_parent_map(parents, weights) -> WeightedTree:
    kids: dict[str, list[str]] = {lab: [] for lab in parents}
    root = None
    for lab, par in parents.items():
        if par is None:
            root = lab
        else:
            kids[par].append(lab)

    def make(lab):
        return WeightedTree(lab, weights[lab], tuple(make(c) for c in kids[lab]))

    return make(root)


def oracle_compose_terms(S: WeightedTree, v_label: str, T: WeightedTree) -> list[WeightedTree]:
    """All substitution results of T for the vertex v_label of S, one per
    reattachment of v's children, by direct parent-map surgery."""
    sp, sw = _parent_map(S)
    tp, tw = _parent_map(T)
    moved = sorted(lab for lab, par in sp.items() if par == v_label)
    out = []
    for assignment in itertools.product(sorted(tp), repeat=len(moved)):
        parents = {lab: par for lab, par in sp.items() if lab != v_label}
        weights = {lab: w for lab, w in sw.items() if lab != v_label}
        for lab, par in tp.items():
            parents[lab] = par if par is not None else sp[v_label]
            weights[lab] = tw[lab]
        for lab, target in zip(moved, assignment):
            parents[lab] = target
        out.append(_tree_of_parent_map(parents, weights))
    return out


def oracle_compose_root(S: WeightedTree, v_label: str, T: WeightedTree) -> WeightedTree:
    """The substitution that reattaches every moved branch at T's root."""
    sp, sw = _parent_map(S)
    tp, tw = _parent_map(T)
    t_root = next(lab for lab, par in tp.items() if par is None)
    parents = {lab: par for lab, par in sp.items() if lab != v_label}
    weights = {lab: w for lab, w in sw.items() if lab != v_label}
    for lab, par in tp.items():
        parents[lab] = par if par is not None else sp[v_label]
        weights[lab] = tw[lab]
    for lab in [l for l, par in sp.items() if par == v_label]:
        parents[lab] = t_root
    return _tree_of_parent_map(parents, weights)


Shape = tuple  # (weight, tuple of child shapes), recursively


def tree_shape(tree: WeightedTree) -> Shape:
    return (tree.weight, tuple(sorted(tree_shape(c) for c in tree.children)))


def shape_tree(shape: Shape) -> WeightedTree:
    return WeightedTree(UNLABELED, shape[0], tuple(shape_tree(c) for c in shape[1]))


def oracle_graft_counts(t: Shape, s: Shape) -> dict[Shape, int]:
    """Graft s below every vertex of t, counted with multiplicity, on bare
    nested shape tuples."""
    counts: dict[Shape, int] = {}
    rooted = (t[0], tuple(sorted(t[1] + (s,))))
    counts[rooted] = counts.get(rooted, 0) + 1
    for i, child in enumerate(t[1]):
        for grafted, n in oracle_graft_counts(child, s).items():
            kids = t[1][:i] + (grafted,) + t[1][i + 1:]
            result = (t[0], tuple(sorted(kids)))
            counts[result] = counts.get(result, 0) + n
    return counts


def _count_mul(counts: dict, factor: int) -> dict:
    return {k: v * factor for k, v in counts.items()}


def _count_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def oracle_graft_product(counts_t: dict, s: Shape) -> dict:
    """Extend the shape graft linearly to integer combinations of shapes."""
    out: dict[Shape, int] = {}
    for shape, n in counts_t.items():
        out = _count_add(out, _count_mul(oracle_graft_counts(shape, s), n))
    return out


# ---------------------------------------------------------------------------
# Shrinking.

def _delete_at(tree: WeightedTree, path) -> WeightedTree:
    def rebuild(node, p):
        kids = list(node.children)
        if len(p) == 1:
            del kids[p[0]]
        else:
            kids[p[0]] = rebuild(kids[p[0]], p[1:])
        return WeightedTree(node.label, node.weight, tuple(kids))

    return rebuild(tree, path)


def _decrement_at(tree: WeightedTree, path) -> WeightedTree:
    def rebuild(node, p):
        if not p:
            return WeightedTree(node.label, node.weight - 1, node.children)
        kids = list(node.children)
        kids[p[0]] = rebuild(kids[p[0]], p[1:])
        return WeightedTree(node.label, node.weight, tuple(kids))

    return rebuild(tree, path)


def _reductions(tree: WeightedTree):
    for v in tree.vertices():
        if v.path and not v.node.children:
            yield _delete_at(tree, v.path)
    for v in tree.vertices():
        if v.node.weight > 1:
            yield _decrement_at(tree, v.path)


def shrink_instance(trees: tuple, still_fails) -> tuple:
    """Greedy minimization: drop leaves and decrement weights while the
    failure persists."""
    current = tuple(trees)
    progressing = True
    while progressing:
        progressing = False
        for i, t in enumerate(current):
            for candidate_tree in _reductions(t):
                candidate = current[:i] + (candidate_tree,) + current[i + 1:]
                try:
                    if still_fails(candidate):
                        current = candidate
                        progressing = True
                        break
                except TreeError:
                    continue
            if progressing:
                break
    return current


# ---------------------------------------------------------------------------
# Checks.

def _group_by_weight(trees):
    grouped: dict[int, list[WeightedTree]] = {}
    for t in trees:
        grouped.setdefault(t.total_weight, []).append(t)
    return grouped


def check_nested_associativity(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """Composing into a slot of the inserted tree agrees with composing the
    inserted tree first, exhaustively over weight-compatible triples."""
    universe = universe or DEFAULT_TRIPLE_UNIVERSE
    compose = _composer(_bump_nonminimal_plus_one) if fault else compose_lambda
    rec = _Recorder("nested-associativity")

    def holds(S, T, U):
        for v in S.vertices():
            if T.total_weight != v.weight:
                continue
            st = compose(S, v, T)
            for w_label in sorted(T.labels):
                w = T.ref(w_label)
                if U.total_weight != w.weight:
                    continue
                lhs: dict = {}
                for term, coeff in st._terms.items():
                    for tree, c2 in compose(term, term.ref(w_label), U)._terms.items():
                        _acc_add(lhs, tree, coeff * c2)
                rhs: dict = {}
                for term, coeff in compose(T, w, U)._terms.items():
                    for tree, c2 in compose(S, v, term)._terms.items():
                        _acc_add(rhs, tree, coeff * c2)
                if lhs != rhs:
                    return False
        return True

    ss = universe.trees("s")
    ts = _group_by_weight(universe.trees("t"))
    us = _group_by_weight(universe.trees("u"))
    for S in ss:
        if rec.saturated:
            break
        slot_weights = {v.weight for v in S.vertices()}
        for wt in slot_weights:
            for T in ts.get(wt, ()):
                inner_weights = {v.weight for v in T.vertices()}
                for wu in inner_weights:
                    for U in us.get(wu, ()):
                        rec.saw()
                        if not holds(S, T, U):
                            small = shrink_instance((S, T, U), lambda c: not holds(*c))
                            rec.fail(
                                f"S={small[0].encoding} T={small[1].encoding} U={small[2].encoding}"
                            )
                            if rec.saturated:
                                break
                    if rec.saturated:
                        break
                if rec.saturated:
                    break
            if rec.saturated:
                break
    return rec.report()


def check_disjoint_associativity(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """Composing into two different slots of the same host commutes,
    exhaustively over weight-compatible triples."""
    universe = universe or DEFAULT_TRIPLE_UNIVERSE
    compose = _composer(_bump_host_scaled) if fault else compose_lambda
    rec = _Recorder("disjoint-associativity")

    def holds(S, T, U):
        # The law is symmetric in (v, T) <-> (w, U), so unordered slot pairs
        # suffice.
        for v_label, w_label in itertools.combinations(sorted(S.labels), 2):
            for va, wa, Ta, Ua in ((v_label, w_label, T, U), (v_label, w_label, U, T)):
                v = S.ref(va)
                w = S.ref(wa)
                if Ta.total_weight != v.weight or Ua.total_weight != w.weight:
                    continue
                lhs: dict = {}
                for term, coeff in compose(S, v, Ta)._terms.items():
                    for tree, c2 in compose(term, term.ref(wa), Ua)._terms.items():
                        _acc_add(lhs, tree, coeff * c2)
                rhs: dict = {}
                for term, coeff in compose(S, w, Ua)._terms.items():
                    for tree, c2 in compose(term, term.ref(va), Ta)._terms.items():
                        _acc_add(rhs, tree, coeff * c2)
                if lhs != rhs:
                    return False
        return True

    ss = [S for S in universe.trees("s") if S.size >= 2]
    ts = _group_by_weight(universe.trees("t"))
    us = _group_by_weight(universe.trees("u"))
    for S in ss:
        if rec.saturated:
            break
        weights = sorted({v.weight for v in S.vertices()})
        for wt in weights:
            for wu in weights:
                if wu < wt:
                    continue
                for T in ts.get(wt, ()):
                    for U in us.get(wu, ()):
                        rec.saw()
                        if not holds(S, T, U):
                            small = shrink_instance((S, T, U), lambda c: not holds(*c))
                            rec.fail(
                                f"S={small[0].encoding} T={small[1].encoding} U={small[2].encoding}"
                            )
                            if rec.saturated:
                                break
                    if rec.saturated:
                        break
                if rec.saturated:
                    break
            if rec.saturated:
                break
    return rec.report()


def check_unit_laws(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """One-vertex trees of matching weight act as left and right identity."""
    from .operad import _fresh_label, unit
    from .trees import VertexRef

    universe = universe or DEFAULT_TRIPLE_UNIVERSE
    rec = _Recorder("unit-laws")
    compose = _composer(_bump_all_plus_one) if fault else None
    for T in universe.trees("a"):
        rec.saw()
        if fault:
            u = unit(T.total_weight, _fresh_label(T.labels))
            left = compose(u, VertexRef(u, ()), T)
        else:
            left = compose_unit_left(T.total_weight, T)
        if left != TreeCombination.of(T):
            rec.fail(f"left unit on T={T.encoding}")
        mismatched = compose_unit_left(T.total_weight + 1, T)
        if mismatched:
            rec.fail(f"weight-mismatched left unit not zero on T={T.encoding}")
        for v in T.vertices():
            if fault:
                right = compose(T, v, unit(v.weight, v.label))
            else:
                right = compose_unit_right(T, v)
            if right != TreeCombination.of(T):
                rec.fail(f"right unit on T={T.encoding} at v={v.label}")
        if rec.saturated:
            break
    return rec.report()


def check_equivariance(
    universe: Universe | None = None, fault: bool = False, seed: int = 0
) -> CheckReport:
    """Relabeling commutes with composition: rename first or compose first."""
    universe = universe or DEFAULT_TRIPLE_UNIVERSE
    rng = random.Random(seed)
    rec = _Recorder("equivariance")
    pool = [f"p{i}" for i in range(40)]
    ts = _group_by_weight(universe.trees("t"))
    for S in universe.trees("s"):
        for v in S.vertices():
            for T in ts.get(v.weight, ()):
                rec.saw()
                names = rng.sample(pool, len(S.labels) + len(T.labels))
                sigma = dict(zip(sorted(S.labels), names[: len(S.labels)]))
                tau = dict(zip(sorted(T.labels), names[len(S.labels):]))
                S2 = relabel(S, sigma)
                T2 = relabel(T, tau)
                left = compose_lambda(S2, S2.ref(sigma[v.label]), T2)
                combined = {**{k: w for k, w in sigma.items() if k != v.label}, **tau}
                if fault:
                    # relabel-bookkeeping bug: two renamed vertices swapped
                    keys = sorted(combined)
                    if len(keys) >= 2:
                        a, b = keys[0], keys[1]
                        combined[a], combined[b] = combined[b], combined[a]
                base = compose_lambda(S, v, T)
                right = TreeCombination(
                    tuple((relabel(term, combined), coeff) for term, coeff in base.terms())
                )
                if left != right:
                    rec.fail(f"S={S.encoding} v={v.label} T={T.encoding}")
                if rec.saturated:
                    break
            if rec.saturated:
                break
        if rec.saturated:
            break
    return rec.report()


def check_minimality(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """Exponents are nonnegative and vanish exactly on the root map when the
    inserted tree has at least two vertices and branches actually move."""
    universe = universe or DEFAULT_TRIPLE_UNIVERSE
    rec = _Recorder("root-map-minimality")
    bump = _bump_all_plus_one if fault else _bump_none
    ts = _group_by_weight(universe.trees("t"))
    for S in universe.trees("s"):
        for v in S.vertices():
            for T in ts.get(v.weight, ()):
                rec.saw()
                base = compose_with_map(S, v, T, GraftMap.root_map(S, v, T))
                d0 = base.energy
                zero_exponents = 0
                total = 0
                for f in iter_graft_maps(S, v, T):
                    tree = compose_with_map(S, v, T, f)
                    exp = tree.energy - d0 + bump(f.is_minimal(), S)
                    total += 1
                    if exp < 0:
                        rec.fail(f"negative exponent S={S.encoding} v={v.label} T={T.encoding}")
                    if exp == 0:
                        zero_exponents += 1
                if T.size >= 2 and v.node.children and zero_exponents != 1:
                    rec.fail(
                        f"minimal map not unique S={S.encoding} v={v.label} T={T.encoding}"
                    )
                if rec.saturated:
                    break
            if rec.saturated:
                break
        if rec.saturated:
            break
    return rec.report()


def check_deformed_identity(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """The symbolic grafting identity: the weighted associator of the graft
    product is symmetric in its last two arguments."""
    universe = universe or Universe(3, 2)
    arrow = (lambda a, b: _arrow_variant(a, b, 1)) if fault else arrow_lambda
    rec = _Recorder("deformed-identity")

    def holds(U, T, S):
        lam_s = LambdaPoly.monomial(S.total_weight)
        lam_t = LambdaPoly.monomial(T.total_weight)
        lhs = arrow(arrow(U, T), S) - lam_s * arrow(U, arrow(T, S))
        rhs = arrow(arrow(U, S), T) - lam_t * arrow(U, arrow(S, T))
        return lhs == rhs

    pool = universe.unlabeled_trees()
    for U, T, S in itertools.product(pool, repeat=3):
        rec.saw()
        if not holds(U, T, S):
            small = shrink_instance((U, T, S), lambda c: not holds(*c))
            rec.fail(f"U={small[0].encoding} T={small[1].encoding} S={small[2].encoding}")
            if rec.saturated:
                break

    if not fault:
        # Parameter 1, all weights 1: the classical right pre-Lie identity,
        # cross-checked against the shape oracle.
        ones = [t for t in pool if t.total_weight == t.size]
        for U, T, S in itertools.product(ones, repeat=3):
            rec.saw()
            u, t, s = tree_shape(U), tree_shape(T), tree_shape(S)
            ut = oracle_graft_counts(u, t)
            us = oracle_graft_counts(u, s)
            ts_ = oracle_graft_counts(t, s)
            st = oracle_graft_counts(s, t)
            lhs = _count_add(oracle_graft_product(ut, s), _count_mul(_sum_graft(u, ts_), -1))
            rhs = _count_add(oracle_graft_product(us, t), _count_mul(_sum_graft(u, st), -1))
            if lhs != rhs:
                rec.fail(f"oracle identity U={U.encoding} T={T.encoding} S={S.encoding}")
            lib = arrow_lambda(U, T).specialize(Fraction(1))
            lib_counts: dict = {}
            for term, coeff in lib.terms():
                lib_counts[tree_shape(term)] = int(coeff.coefficient(0))
            if lib_counts != ut:
                rec.fail(f"graft vs oracle U={U.encoding} T={T.encoding}")
    return rec.report()


def _sum_graft(u: Shape, counts: dict) -> dict:
    out: dict[Shape, int] = {}
    for shape, n in counts.items():
        out = _count_add(out, _count_mul(oracle_graft_counts(u, shape), n))
    return out


def check_specializations(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """Parameter 0 keeps exactly the root-reattachment term and parameter 1
    flattens to the classical all-maps composition, both matched against the
    parent-map oracle."""
    universe = universe or DEFAULT_PAIR_UNIVERSE
    compose = _composer(_bump_all_plus_one) if fault else compose_lambda
    rec = _Recorder("specializations")
    s_shapes = universe.shapes("s")
    t_shapes = universe.shapes("t")
    for S in s_shapes:
        if rec.saturated:
            break
        for T in t_shapes:
            for v in S.vertices():
                rec.saw()
                Sg = reweight(
                    S,
                    {lab: (T.total_weight if lab == v.label else 1) for lab in S.labels},
                )
                vg = Sg.ref(v.label)
                full = compose(Sg, vg, T)
                at_zero = full.specialize(Fraction(0))
                expected_zero = TreeCombination.of(oracle_compose_root(Sg, v.label, T))
                if at_zero != expected_zero:
                    rec.fail(f"parameter-0 S={Sg.encoding} v={v.label} T={T.encoding}")
                if at_zero and list(at_zero.terms())[0][0] != nap_compose(Sg, vg, T):
                    rec.fail(f"root-only composition S={Sg.encoding} v={v.label} T={T.encoding}")
                at_one = full.specialize(Fraction(1))
                expected_one = TreeCombination.zero()
                for term in oracle_compose_terms(Sg, v.label, T):
                    expected_one = expected_one + TreeCombination.of(term)
                if at_one != expected_one:
                    rec.fail(f"parameter-1 S={Sg.encoding} v={v.label} T={T.encoding}")
                if rec.saturated:
                    break
            if rec.saturated:
                break

    if not fault:
        # Weighted sweep: wherever a slot weight matches, parameter 0 picks
        # out exactly the root-only composition.
        ts = _group_by_weight(universe.trees("t"))
        for S in universe.trees("s"):
            for v in S.vertices():
                for T in ts.get(v.weight, ()):
                    rec.saw()
                    at_zero = compose_lambda(S, v, T).specialize(Fraction(0))
                    if at_zero != TreeCombination.of(nap_compose(S, v, T)):
                        rec.fail(f"weighted parameter-0 S={S.encoding} v={v.label} T={T.encoding}")
    return rec.report()


def check_roundtrip_psi_phi(universe: Universe | None = None, fault: bool = False) -> CheckReport:
    """phi inverts psi exactly, for every tree and every root branch order."""
    universe = universe or DEFAULT_PAIR_UNIVERSE
    rec = _Recorder("bracket-roundtrip")
    if fault:
        faulty_arrow = lambda a, b: _arrow_variant(a, b, 1)
        evaluate = lambda combo: _phi_with_arrow(combo, faulty_arrow)
    else:
        evaluate = phi
    for T in universe.trees("x"):
        rec.saw()
        expected = TreeCombination.of(T)
        if evaluate(psi(T)) != expected:
            rec.fail(f"roundtrip T={T.encoding}")
            if rec.saturated:
                break
            continue
        p = len(T.children)
        if p >= 2:
            for order in itertools.permutations(range(p)):
                if evaluate(psi(T, order)) != expected:
                    rec.fail(f"branch order {order} on T={T.encoding}")
                    break
        if rec.saturated:
            break
    return rec.report()


def check_morphisms_i_j(
    universe: Universe | None = None, weight_bound: int = 5, fault: bool = False
) -> CheckReport:
    """Truncated morphism equalities for the classical-to-graded embeddings,
    checked both for the all-maps and the root-only composition."""
    from .operad import (
        _weightings,
        _weightings_exact,
        morphism_i_check,
        morphism_j_check,
        pre_lie_compose,
    )

    universe = universe or Universe(3, 1)
    rec = _Recorder("morphism-truncations")
    s_shapes = universe.shapes("s")
    t_shapes = universe.shapes("t")
    for S in s_shapes:
        if rec.saturated:
            break
        for T in t_shapes:
            for v in S.vertices():
                rec.saw()
                if fault:
                    # off-by-one in the weight split between host slot and
                    # inserted tree
                    lhs = TreeCombination.zero()
                    for u, c in pre_lie_compose(S, v, T).terms():
                        for assignment in _weightings(u, weight_bound):
                            lhs = lhs + c * TreeCombination.of(reweight(u, assignment))
                    rhs = TreeCombination.zero()
                    for alpha in _weightings(S, weight_bound):
                        Sa = reweight(S, alpha)
                        for beta in _weightings_exact(T, alpha[v.label] + 1):
                            Tb = reweight(T, beta)
                            rhs = rhs + compose_lambda(
                                Sa, Sa.ref(v.label), Tb
                            ).specialize(Fraction(1))
                    if lhs != rhs:
                        rec.fail(f"S={S.encoding} v={v.label} T={T.encoding}")
                else:
                    if not morphism_i_check(S, T, v, weight_bound):
                        rec.fail(f"all-maps morphism S={S.encoding} v={v.label} T={T.encoding}")
                    if not morphism_j_check(S, T, v, weight_bound):
                        rec.fail(f"root-only morphism S={S.encoding} v={v.label} T={T.encoding}")
                if rec.saturated:
                    break
            if rec.saturated:
                break
    return rec.report()


SUITES = {
    "assoc": (
        check_nested_associativity,
        check_disjoint_associativity,
        check_unit_laws,
        check_equivariance,
        check_minimality,
    ),
    "deform": (check_deformed_identity,),
    "spec": (check_specializations,),
    "iso": (check_roundtrip_psi_phi,),
    "morph": (check_morphisms_i_j,),
}


def run_suite(
    name: str,
    universe: Universe | None = None,
    weight_bound: int = 5,
    fault: bool = False,
) -> list[CheckReport]:
    """Run one named suite (or ``all``) and return its reports."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    reports = []
    for key in names:
        for check in SUITES[key]:
            if check is check_morphisms_i_j:
                reports.append(check(universe, weight_bound=weight_bound, fault=fault))
            else:
                reports.append(check(universe, fault=fault))
    return reports


def reports_to_json(reports) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
