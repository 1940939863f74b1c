"""Boundedness certificates: model, generators, and independent verifier.

A certificate is a tree of clique-width-boundedness-preserving reduction
steps (bounded vertex deletions, subgraph / bipartite complementations,
degree-1 pruning, splitting along component boundaries) whose leaves land
in base classes of known bounded clique-width.  The verifier replays every
step from the root graph and re-checks every leaf membership from scratch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .graphs import (
    Graph,
    bipartite_complement,
    components,
    delete_vertices,
    induced_subgraph,
    is_bipartite,
    is_forest,
    prune_degree_one,
    subgraph_complement,
)
from .namedgraphs import NamedGraphSpec, parse_spec, print_spec, realize
from .recognition import (
    SizeLimitError,
    alpha,
    bipartite_class_bounded,
    clique_cover_exact,
    find_induced_cycle,
    is_chordal,
    is_perfect_desk,
)
from .search import Embedding, FreenessWitness, contains_induced, fingerprint, is_free

DESK_LIMIT = 16


class NotInClassError(ValueError):
    """The input graph is outside the certifier's hereditary class."""

    def __init__(self, witness: FreenessWitness):
        super().__init__(f"input contains an induced {witness.spec_text}")
        self.witness = witness


class InternalContradictionError(AssertionError):
    """A structure mandated by the reduction failed to materialise.

    Reaching this on an input that passed the class membership check means
    the implementation (not the input) is wrong."""


# ---------------------------------------------------------------------------
# Certificate model.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    n: int
    m: int
    hash: str


@dataclass(frozen=True)
class BaseLeaf:
    kind: str
    h: str | None = None
    expression: str | None = None


@dataclass(frozen=True)
class DeleteVerticesStep:
    vertices: tuple[int, ...]
    justification: str
    stated_bound: int
    child: "Node"


@dataclass(frozen=True)
class SubgraphComplementStep:
    vertices: tuple[int, ...]
    child: "Node"


@dataclass(frozen=True)
class BipartiteComplementStep:
    x: tuple[int, ...]
    y: tuple[int, ...]
    child: "Node"


@dataclass(frozen=True)
class PruneDegreeOneStep:
    child: "Node"


@dataclass(frozen=True)
class SplitComponentsStep:
    parts: tuple[tuple[int, ...], ...]
    children: tuple["Node", ...]


Node = (
    BaseLeaf
    | DeleteVerticesStep
    | SubgraphComplementStep
    | BipartiteComplementStep
    | PruneDegreeOneStep
    | SplitComponentsStep
)


@dataclass(frozen=True)
class Certificate:
    root: Fingerprint
    step: Node


DISJOINT_CLIQUES = "disjoint_cliques"
MAX_DEGREE_2 = "max_degree_2"
FOREST = "forest"
BIPARTITE_H_FREE = "bipartite_h_free"
CHORDAL_DIAMOND_FREE = "chordal_diamond_free"
K3_K13P2_FREE = "k3_k13p2_free"
EXPLICIT_EXPRESSION = "explicit_expression"

# Numeric clique-width bounds for the leaf kinds that have one.
LEAF_WIDTH_BOUNDS = {
    DISJOINT_CLIQUES: 2,
    FOREST: 3,
    MAX_DEGREE_2: 4,
    CHORDAL_DIAMOND_FREE: 3,
}


def certificate_root(g: Graph) -> Fingerprint:
    return Fingerprint(*fingerprint(g))


# --- JSON -------------------------------------------------------------------

def _node_to_obj(node: Node) -> dict:
    if isinstance(node, BaseLeaf):
        obj: dict = {"base": node.kind}
        if node.h is not None:
            obj["h"] = node.h
        if node.expression is not None:
            obj["expression"] = node.expression
        return obj
    if isinstance(node, DeleteVerticesStep):
        return {
            "op": "delete_vertices",
            "vertices": list(node.vertices),
            "justification": node.justification,
            "stated_bound": node.stated_bound,
            "children": [_node_to_obj(node.child)],
        }
    if isinstance(node, SubgraphComplementStep):
        return {
            "op": "subgraph_complement",
            "vertices": list(node.vertices),
            "children": [_node_to_obj(node.child)],
        }
    if isinstance(node, BipartiteComplementStep):
        return {
            "op": "bipartite_complement",
            "x": list(node.x),
            "y": list(node.y),
            "children": [_node_to_obj(node.child)],
        }
    if isinstance(node, PruneDegreeOneStep):
        return {"op": "prune_degree_one", "children": [_node_to_obj(node.child)]}
    return {
        "op": "split_components",
        "parts": [list(p) for p in node.parts],
        "children": [_node_to_obj(c) for c in node.children],
    }


def _node_from_obj(obj: dict) -> Node:
    if "base" in obj:
        return BaseLeaf(obj["base"], obj.get("h"), obj.get("expression"))
    op = obj["op"]
    children = [_node_from_obj(c) for c in obj["children"]]
    if op == "delete_vertices":
        return DeleteVerticesStep(
            tuple(obj["vertices"]), obj["justification"], obj["stated_bound"], children[0]
        )
    if op == "subgraph_complement":
        return SubgraphComplementStep(tuple(obj["vertices"]), children[0])
    if op == "bipartite_complement":
        return BipartiteComplementStep(tuple(obj["x"]), tuple(obj["y"]), children[0])
    if op == "prune_degree_one":
        return PruneDegreeOneStep(children[0])
    if op == "split_components":
        return SplitComponentsStep(
            tuple(tuple(p) for p in obj["parts"]), tuple(children)
        )
    raise ValueError(f"unknown certificate op {op!r}")


def certificate_to_json(cert: Certificate) -> str:
    obj = {
        "version": "v1",
        "root": {"n": cert.root.n, "m": cert.root.m, "hash": cert.root.hash},
        "step": _node_to_obj(cert.step),
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def certificate_from_json(text: str) -> Certificate:
    obj = json.loads(text)
    if obj.get("version") != "v1":
        raise ValueError(f"unsupported certificate version {obj.get('version')!r}")
    root = Fingerprint(obj["root"]["n"], obj["root"]["m"], obj["root"]["hash"])
    return Certificate(root, _node_from_obj(obj["step"]))


# ---------------------------------------------------------------------------
# Verifier.
# ---------------------------------------------------------------------------

@dataclass
class VerificationResult:
    ok: bool
    failures: list[str]
    leaves: list[tuple[BaseLeaf, Graph]]


def _check_leaf(g: Graph, leaf: BaseLeaf, path: str, failures: list[str]) -> None:
    if leaf.kind == DISJOINT_CLIQUES:
        for v in g.vertices:
            nbrs = sorted(g.neighbors(v))
            for i, a in enumerate(nbrs):
                for b in nbrs[i + 1 :]:
                    if not g.has_edge(a, b):
                        failures.append(f"{path}: component is not a clique near {v}")
                        return
    elif leaf.kind == MAX_DEGREE_2:
        if g.max_degree() > 2:
            failures.append(f"{path}: maximum degree {g.max_degree()} exceeds 2")
    elif leaf.kind == FOREST:
        if not is_forest(g):
            failures.append(f"{path}: leaf graph has a cycle")
    elif leaf.kind == BIPARTITE_H_FREE:
        if leaf.h is None:
            failures.append(f"{path}: bipartite leaf missing its forbidden graph")
            return
        ok, _ = is_bipartite(g)
        if not ok:
            failures.append(f"{path}: leaf graph is not bipartite")
            return
        if not bipartite_class_bounded(leaf.h):
            failures.append(f"{path}: {leaf.h}-free bipartite graphs are not a bounded class")
            return
        free, witness = is_free(g, [leaf.h])
        if not free:
            failures.append(f"{path}: leaf graph contains an induced {witness.spec_text}")
    elif leaf.kind == CHORDAL_DIAMOND_FREE:
        chordal, _ = is_chordal(g)
        if not chordal:
            failures.append(f"{path}: leaf graph is not chordal")
            return
        free, _ = is_free(g, ["diamond"])
        if not free:
            failures.append(f"{path}: leaf graph contains a diamond")
    elif leaf.kind == K3_K13P2_FREE:
        free, witness = is_free(g, ["K3", "3P1+P2"])
        if not free:
            failures.append(f"{path}: leaf graph contains an induced {witness.spec_text}")
    elif leaf.kind == EXPLICIT_EXPRESSION:
        from .kexpr import parse_expression, verify_expression

        if leaf.expression is None:
            failures.append(f"{path}: explicit leaf missing its expression")
            return
        try:
            expr = parse_expression(leaf.expression)
        except ValueError as exc:
            failures.append(f"{path}: bad expression: {exc}")
            return
        if not verify_expression(expr, g):
            failures.append(f"{path}: expression does not evaluate to the leaf graph")
    else:
        failures.append(f"{path}: unknown leaf kind {leaf.kind!r}")


def _replay(
    g: Graph, node: Node, path: str, failures: list[str], leaves: list[tuple[BaseLeaf, Graph]]
) -> None:
    if isinstance(node, BaseLeaf):
        _check_leaf(g, node, path, failures)
        leaves.append((node, g))
        return
    if isinstance(node, DeleteVerticesStep):
        missing = [v for v in node.vertices if not g.has_vertex(v)]
        if missing:
            failures.append(f"{path}: deleted vertices {missing} do not exist")
            return
        if len(node.vertices) > node.stated_bound:
            failures.append(
                f"{path}: deletes {len(node.vertices)} vertices, stated bound {node.stated_bound}"
            )
            return
        _replay(delete_vertices(g, node.vertices), node.child, path + ".child", failures, leaves)
        return
    if isinstance(node, SubgraphComplementStep):
        missing = [v for v in node.vertices if not g.has_vertex(v)]
        if missing:
            failures.append(f"{path}: complemented vertices {missing} do not exist")
            return
        _replay(
            subgraph_complement(g, node.vertices), node.child, path + ".child", failures, leaves
        )
        return
    if isinstance(node, BipartiteComplementStep):
        missing = [v for v in (*node.x, *node.y) if not g.has_vertex(v)]
        if missing:
            failures.append(f"{path}: complemented vertices {missing} do not exist")
            return
        if set(node.x) & set(node.y):
            failures.append(f"{path}: bipartite complement sets overlap")
            return
        _replay(
            bipartite_complement(g, node.x, node.y), node.child, path + ".child", failures, leaves
        )
        return
    if isinstance(node, PruneDegreeOneStep):
        _replay(prune_degree_one(g), node.child, path + ".child", failures, leaves)
        return
    # SplitComponentsStep
    fuse = [v for part in node.parts for v in part]
    if sorted(fuse) != list(g.vertices):
        failures.append(f"{path}: parts do not partition the current vertex set")
        return
    if len(node.parts) != len(node.children):
        failures.append(f"{path}: {len(node.parts)} parts but {len(node.children)} children")
        return
    part_of: dict[int, int] = {}
    for i, part in enumerate(node.parts):
        for v in part:
            part_of[v] = i
    for u, v in g.edges():
        if part_of[u] != part_of[v]:
            failures.append(f"{path}: edge ({u},{v}) crosses the component split")
            return
    for i, (part, child) in enumerate(zip(node.parts, node.children)):
        _replay(
            induced_subgraph(g, part), child, f"{path}.children[{i}]", failures, leaves
        )


def verify_certificate(g: Graph, cert: Certificate) -> VerificationResult:
    """Replay all steps from the root graph and re-check every leaf."""
    failures: list[str] = []
    leaves: list[tuple[BaseLeaf, Graph]] = []
    root = certificate_root(g)
    if root != cert.root:
        failures.append(
            f"root fingerprint mismatch: graph {root}, certificate {cert.root}"
        )
        return VerificationResult(False, failures, leaves)
    _replay(g, cert.step, "step", failures, leaves)
    return VerificationResult(not failures, failures, leaves)


# ---------------------------------------------------------------------------
# Reduction by bounded clique cover.
# ---------------------------------------------------------------------------

def _contradiction(msg: str) -> InternalContradictionError:
    return InternalContradictionError(
        f"{msg}; this indicates an implementation bug, not a bad input"
    )


def _two_p2_p4_witness(
    g: Graph, cliques: list[frozenset[int]], a: int, b: int, x6: int, x7: int
) -> FreenessWitness:
    """Assemble the induced 2P2+P4 forced by a surviving cross edge."""
    za, zb = cliques[a], cliques[b]
    x5 = min(v for v in za if v != x6 and not g.has_edge(v, x7))
    x8 = min(
        v
        for v in zb
        if v != x7 and not g.has_edge(v, x5) and not g.has_edge(v, x6)
    )
    rest = [i for i in range(len(cliques)) if i not in (a, b)]
    zc, zd = cliques[rest[0]], cliques[rest[1]]
    cand_c = sorted(
        v for v in zc if all(not g.has_edge(v, x) for x in (x5, x6, x7, x8))
    )
    x3, x4 = cand_c[0], cand_c[1]
    cand_d = sorted(
        v for v in zd if all(not g.has_edge(v, x) for x in (x3, x4, x5, x6, x7, x8))
    )
    x1, x2 = cand_d[0], cand_d[1]
    # Pattern 2P2+P4: vertices 0-1 and 2-3 are the two edges, 4-5-6-7 the path.
    emb = Embedding(
        ((0, x1), (1, x2), (2, x3), (3, x4), (4, x5), (5, x6), (6, x7), (7, x8))
    )
    if not emb.validate(g, realize(parse_spec("2P2+P4"))):
        raise _contradiction("constructed 2P2+P4 witness failed validation")
    return FreenessWitness("2P2+P4", emb)


def _reduce_steps(
    g: Graph, cover: list[frozenset[int]]
) -> tuple[list, Node] | FreenessWitness:
    """Reduction steps for a graph with a bounded clique cover.

    Returns (step factories, terminal node) or, when four big cliques keep a
    cross edge, the induced 2P2+P4 that such an edge forces.
    """
    covered = sorted(v for part in cover for v in part)
    if covered != list(g.vertices) or len(set(covered)) != len(covered):
        raise ValueError("cover must partition the vertex set")
    for part in cover:
        for u in part:
            for v in part:
                if u < v and not g.has_edge(u, v):
                    raise ValueError(f"cover part {sorted(part)} is not a clique")

    steps: list = []
    work = g
    cliques = sorted((frozenset(p) for p in cover if p), key=min)
    k_start = len(cliques)

    # Normalise: drop cliques below the size threshold k+7 (k the size of
    # the given cover), then fuse completely adjacent pairs exhaustively.
    while True:
        small = next((c for c in cliques if len(c) < k_start + 7), None)
        if small is not None:
            svs = tuple(sorted(small))
            steps.append(
                lambda child, svs=svs, b=k_start + 6: DeleteVerticesStep(
                    svs, "cover-clique-below-size-threshold", b, child
                )
            )
            work = delete_vertices(work, small)
            cliques = [c for c in cliques if c != small]
            continue
        fused = False
        for i in range(len(cliques)):
            for j in range(i + 1, len(cliques)):
                ci, cj = cliques[i], cliques[j]
                if all(work.has_edge(u, v) for u in ci for v in cj):
                    cliques = [c for k, c in enumerate(cliques) if k not in (i, j)]
                    cliques.append(ci | cj)
                    cliques.sort(key=min)
                    fused = True
                    break
            if fused:
                break
        if not fused:
            break

    k_final = len(cliques)

    # Drop the at most one vertex per ordered clique pair that is completely
    # adjacent to the other clique.
    exceptional: set[int] = set()
    for i in range(k_final):
        for j in range(k_final):
            if i == j:
                continue
            full_adj = [x for x in cliques[i] if cliques[j] <= work.neighbors(x)]
            if len(full_adj) > 1:
                raise _contradiction(
                    "two vertices of one cover clique are complete to another"
                )
            exceptional.update(full_adj)
    if exceptional:
        evs = tuple(sorted(exceptional))
        bound = k_final * (k_final - 1)
        if len(evs) > bound:
            raise _contradiction("too many cross-complete vertices")
        steps.append(
            lambda child, evs=evs, b=bound: DeleteVerticesStep(
                evs, "cross-complete-vertices", b, child
            )
        )
        work = delete_vertices(work, evs)
        cliques = [c - exceptional for c in cliques]

    if any(len(c) < 8 for c in cliques):
        raise _contradiction("a reduced cover clique fell below 8 vertices")

    if k_final == 0:
        return steps, BaseLeaf(DISJOINT_CLIQUES)

    if k_final >= 4:
        cross = None
        for i in range(k_final):
            for j in range(i + 1, k_final):
                pairs = sorted(
                    (u, v)
                    for u in cliques[i]
                    for v in work.neighbors(u)
                    if v in cliques[j]
                )
                if pairs:
                    cross = (i, j, *pairs[0])
                    break
            if cross:
                break
        if cross is None:
            return steps, BaseLeaf(DISJOINT_CLIQUES)
        return _two_p2_p4_witness(work, cliques, cross[0], cross[1], cross[2], cross[3])

    # k' <= 3: complementing inside each clique leaves maximum degree <= 2.
    for c in cliques:
        cvs = tuple(sorted(c))
        steps.append(lambda child, cvs=cvs: SubgraphComplementStep(cvs, child))
        work = subgraph_complement(work, cvs)
    if work.max_degree() > 2:
        raise _contradiction("complemented cover did not reach maximum degree 2")
    return steps, BaseLeaf(MAX_DEGREE_2)


def _chain(steps: list, terminal: Node) -> Node:
    node = terminal
    for factory in reversed(steps):
        node = factory(node)
    return node


def reduce_by_clique_cover(
    g: Graph, cover: list[frozenset[int] | set[int]]
) -> Certificate | FreenessWitness:
    """Certificate for a diamond-free graph with the given clique cover, or
    the induced 2P2+P4 witness that the class membership fails."""
    free, witness = is_free(g, ["diamond"])
    if not free:
        raise NotInClassError(witness)
    result = _reduce_steps(g, [frozenset(p) for p in cover])
    if isinstance(result, FreenessWitness):
        return result
    steps, terminal = result
    return Certificate(certificate_root(g), _chain(steps, terminal))


# ---------------------------------------------------------------------------
# Separator for a clique / independent-set pair.
# ---------------------------------------------------------------------------

def clique_independent_separator(
    g: Graph, clique: set[int] | frozenset[int], indep: set[int] | frozenset[int]
) -> frozenset[int]:
    """At most four vertices hitting every edge between a clique and an
    independent set, in a (diamond, 2P1+P3)-free graph."""
    c, i_set = frozenset(clique), frozenset(indep)
    if c & i_set:
        raise ValueError("clique and independent set must be disjoint")
    for u in c:
        for v in c:
            if u < v and not g.has_edge(u, v):
                raise ValueError("first argument is not a clique")
    for u in i_set:
        for v in i_set:
            if u < v and g.has_edge(u, v):
                raise ValueError("second argument is not independent")
    free, witness = is_free(g, ["diamond", "2P1+P3"])
    if not free:
        raise NotInClassError(witness)

    cross = [(u, v) for u in c for v in i_set if g.has_edge(u, v)]
    if not cross:
        return frozenset()
    if min(len(i_set), len(c)) <= 4:
        return c if len(c) <= len(i_set) else i_set

    sep: set[int] = set()
    complete = sorted(v for v in i_set if c <= g.neighbors(v))
    if len(complete) > 1:
        raise _contradiction("two independent vertices are complete to the clique")
    rest = i_set - set(complete)
    sep.update(complete)
    for v in rest:
        if len(g.neighbors(v) & c) > 1:
            raise _contradiction(
                "an independent vertex has several but not all clique neighbours"
            )
    heavy = next(
        (
            x
            for x in sorted(c)
            if len(g.neighbors(x) & rest) >= len(rest) - 1
        ),
        None,
    )
    if heavy is not None:
        sep.add(heavy)
        leftover = [v for v in rest if not g.has_edge(heavy, v)]
        for v in leftover:
            nbr = sorted(g.neighbors(v) & c)
            if nbr:
                sep.add(nbr[0])
        if len(sep) > 4:
            raise _contradiction("separator exceeded four vertices")
        return frozenset(sep)
    for x in c:
        if len(g.neighbors(x) & rest) > 1:
            raise _contradiction("a clique vertex keeps two independent neighbours")
    remaining = [(u, v) for u in c for v in rest if g.has_edge(u, v)]
    if remaining:
        raise _contradiction("a matching between clique and independent set survived")
    return frozenset(sep)


# ---------------------------------------------------------------------------
# Clique-or-independence branching.
# ---------------------------------------------------------------------------

class Branch(Enum):
    K_FREE = "KFree"
    INDEPENDENCE_BOUND = "IndepBound"


def clique_or_independence_branch(g: Graph, s: int, t: int) -> Branch:
    """Every (co(sP1+P2), tP1+P2)-free graph is K_{s+1}-free or has
    independence number below s^2(t-1)+2; report which branch holds."""
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")
    co_spec = f"co({s}P1+P2)" if s >= 1 else "co(P2)"
    t_spec = f"{t}P1+P2" if t >= 1 else "P2"
    free, witness = is_free(g, [co_spec, t_spec])
    if not free:
        raise NotInClassError(witness)
    if contains_induced(g, realize(parse_spec(f"K{s + 1}"))) is None:
        return Branch.K_FREE
    bound = s * s * (t - 1) + 2
    if alpha(g) >= bound:
        raise _contradiction(
            f"graph contains K{s + 1} and an independent set of size {bound}"
        )
    return Branch.INDEPENDENCE_BOUND


# ---------------------------------------------------------------------------
# Shared cycle-neighbourhood helpers for the theorem certifiers.
# ---------------------------------------------------------------------------

def _cycle_pairs(cyc: tuple[int, ...]) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(consecutive, non-consecutive) vertex pairs of an induced cycle."""
    k = len(cyc)
    consecutive = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
    non_consecutive = []
    for i in range(k):
        for j in range(i + 1, k):
            if j - i not in (1, k - 1):
                non_consecutive.append((cyc[i], cyc[j]))
    return consecutive, non_consecutive


def _assert_clique(g: Graph, vs: set[int] | frozenset[int], what: str) -> None:
    for u in vs:
        for v in vs:
            if u < v and not g.has_edge(u, v):
                raise _contradiction(f"{what} is not a clique ({u} !~ {v})")


def _assert_independent(g: Graph, vs: set[int] | frozenset[int], what: str) -> None:
    for u in vs:
        for v in vs:
            if u < v and g.has_edge(u, v):
                raise _contradiction(f"{what} is not independent ({u} ~ {v})")


def _cycle_neighbour_sets(g: Graph, cyc: tuple[int, ...]) -> dict[int, frozenset[int]]:
    on_cycle = set(cyc)
    return {
        v: frozenset(g.neighbors(v) & on_cycle)
        for v in g.vertices
        if v not in on_cycle
    }


# ---------------------------------------------------------------------------
# Certifier for (diamond, 3P1+P2)-free graphs.
# ---------------------------------------------------------------------------

def certify_diamond_3p1p2(g: Graph, desk_limit: int = DESK_LIMIT) -> Certificate:
    free, witness = is_free(g, ["diamond", "3P1+P2"])
    if not free:
        raise NotInClassError(witness)

    branch = clique_or_independence_branch(g, 2, 3)
    if branch is Branch.K_FREE:
        return Certificate(certificate_root(g), BaseLeaf(K3_K13P2_FREE))

    # Independence is bounded: alpha <= 9 because the graph is 10P1-free.
    cyc = find_induced_cycle(g, 5) or find_induced_cycle(g, 7)
    steps: list = []
    work = g
    if cyc is not None:
        k = len(cyc)
        _, non_consecutive = _cycle_pairs(cyc)
        on_cycle = set(cyc)
        doomed: set[int] = set()
        for a, b in non_consecutive:
            common = (work.neighbors(a) & work.neighbors(b)) - on_cycle
            _assert_independent(work, common, "a non-consecutive common neighbourhood")
            if len(common) > 9:
                raise _contradiction("common neighbourhood beats the independence bound")
            doomed |= common
        bound = 45 if k == 5 else 126
        if doomed:
            dvs = tuple(sorted(doomed))
            steps.append(
                lambda child, dvs=dvs, b=bound: DeleteVerticesStep(
                    dvs, "common-neighbours-of-nonconsecutive-cycle-pair", b, child
                )
            )
            work = delete_vertices(work, dvs)
        # Survivors see at most two, necessarily consecutive, cycle vertices.
        nbr_sets = _cycle_neighbour_sets(work, cyc)
        consecutive, _ = _cycle_pairs(cyc)
        cover_sets: list[set[int]] = []
        for a, b in consecutive:
            cover_sets.append({v for v, ns in nbr_sets.items() if ns == {a, b}})
        for a in cyc:
            cover_sets.append({v for v, ns in nbr_sets.items() if ns == {a}})
        cover_sets.append({v for v, ns in nbr_sets.items() if not ns})
        classified = set().union(*cover_sets) if cover_sets else set()
        if classified != set(nbr_sets):
            raise _contradiction("a vertex sees non-consecutive cycle vertices")
        for part in cover_sets:
            _assert_clique(work, part, "a cycle-neighbourhood class")
        cvs = tuple(sorted(on_cycle))
        steps.append(
            lambda child, cvs=cvs, b=k: DeleteVerticesStep(
                cvs, "cycle-vertices", b, child
            )
        )
        work = delete_vertices(work, cvs)
        cover = [frozenset(p) for p in cover_sets if p]
        if len(cover) > 2 * k + 1:
            raise _contradiction("clique cover exceeds the stated size")
    else:
        # No induced C5 or C7 anywhere: the graph is perfect at desk scale,
        # so a minimum clique cover has alpha-many parts.
        if work.n > desk_limit:
            raise SizeLimitError(
                f"perfectness assertion needs n <= {desk_limit}, got {work.n}"
            )
        perfect, pw = is_perfect_desk(work, limit=desk_limit)
        if not perfect:
            raise _contradiction(f"expected a perfect graph, found {pw}")
        a = alpha(work)
        if a > 9:
            raise _contradiction("independence bound exceeded after branching")
        cover = clique_cover_exact(work)
        if len(cover) != a:
            raise _contradiction("minimum clique cover disagrees with alpha")

    result = _reduce_steps(work, [frozenset(p) for p in cover])
    if isinstance(result, FreenessWitness):
        raise _contradiction("clique-cover reduction found a forbidden graph")
    sub_steps, terminal = result
    return Certificate(certificate_root(g), _chain(steps + sub_steps, terminal))


# ---------------------------------------------------------------------------
# Certifier for (diamond, 2P1+P3)-free graphs.
# ---------------------------------------------------------------------------

def certify_diamond_2p1p3(g: Graph) -> Certificate:
    free, witness = is_free(g, ["diamond", "2P1+P3"])
    if not free:
        raise NotInClassError(witness)

    c4 = find_induced_cycle(g, 4)
    if c4 is not None:
        return Certificate(certificate_root(g), _certify_2p1p3_around_c4(g, c4))

    for length in (5, 6, 7):
        cyc = find_induced_cycle(g, length)
        if cyc is not None:
            return Certificate(certificate_root(g), _certify_2p1p3_around_long_cycle(g, cyc))

    chordal, hole = is_chordal(g)
    if not chordal:
        raise _contradiction(f"unexpected induced hole {hole}")
    return Certificate(certificate_root(g), BaseLeaf(CHORDAL_DIAMOND_FREE))


def _certify_2p1p3_around_c4(g: Graph, cyc: tuple[int, ...]) -> Node:
    v1, v2, v3, v4 = cyc
    nbr_sets = _cycle_neighbour_sets(g, cyc)
    if any(len(ns) >= 3 for ns in nbr_sets.values()):
        raise _contradiction("a vertex sees three vertices of an induced C4")

    x_set = {v for v, ns in nbr_sets.items() if not ns}
    w = {
        a: {v for v, ns in nbr_sets.items() if ns == {a}}
        for a in (v1, v2, v3, v4)
    }
    v_opp = {
        1: {v for v, ns in nbr_sets.items() if ns == {v2, v4}},
        2: {v for v, ns in nbr_sets.items() if ns == {v1, v3}},
    }
    y = {
        (a, b): {v for v, ns in nbr_sets.items() if ns == {a, b}}
        for a, b in ((v1, v2), (v2, v3), (v3, v4), (v4, v1))
    }

    cliques = [x_set | w[v1], w[v2], w[v3], w[v4], *y.values()]
    for part in cliques:
        _assert_clique(g, part, "a C4 neighbourhood class")
    indeps = [v_opp[1], v_opp[2]]
    for part in indeps:
        _assert_independent(g, part, "an opposite-pair class")

    separators: set[int] = set()
    for c_part in cliques:
        if not c_part:
            continue
        for i_part in indeps:
            if not i_part:
                continue
            separators |= clique_independent_separator(g, c_part, i_part)
    if len(separators) > 48:
        raise _contradiction("separator union exceeds the stated bound")

    steps: list = []
    work = g
    if separators:
        svs = tuple(sorted(separators))
        steps.append(
            lambda child, svs=svs: DeleteVerticesStep(
                svs, "clique-independent-separators", 48, child
            )
        )
        work = delete_vertices(work, svs)
    cvs = tuple(sorted(cyc))
    steps.append(
        lambda child, cvs=cvs: DeleteVerticesStep(cvs, "cycle-vertices", 4, child)
    )
    work = delete_vertices(work, cvs)

    bip_part = frozenset((v_opp[1] | v_opp[2]) - separators)
    clique_part = frozenset(work.vertices) - bip_part
    cover = [frozenset(p - separators) for p in cliques if p - separators]

    def reduce_terminal(sub: Graph) -> Node:
        result = _reduce_steps(sub, cover)
        if isinstance(result, FreenessWitness):
            raise _contradiction("clique-cover reduction found a forbidden graph")
        sub_steps, terminal = result
        return _chain(sub_steps, terminal)

    if bip_part and clique_part:
        for u, v in work.edges():
            if (u in bip_part) != (v in bip_part):
                raise _contradiction("separators missed a clique-independent edge")
        parts = sorted((clique_part, bip_part), key=min)
        children = tuple(
            reduce_terminal(induced_subgraph(work, part))
            if part == clique_part
            else BaseLeaf(BIPARTITE_H_FREE, h="2P1+P3")
            for part in parts
        )
        split = SplitComponentsStep(
            tuple(tuple(sorted(p)) for p in parts), children
        )
        return _chain(steps, split)
    if bip_part:
        return _chain(steps, BaseLeaf(BIPARTITE_H_FREE, h="2P1+P3"))
    return _chain(steps, reduce_terminal(work))


def _certify_2p1p3_around_long_cycle(g: Graph, cyc: tuple[int, ...]) -> Node:
    k = len(cyc)
    _, non_consecutive = _cycle_pairs(cyc)
    on_cycle = set(cyc)
    doomed: set[int] = set()
    for a, b in non_consecutive:
        common = (g.neighbors(a) & g.neighbors(b)) - on_cycle
        if len(common) > 1:
            raise _contradiction(
                "two vertices share a non-consecutive cycle pair"
            )
        doomed |= common
    steps: list = []
    work = g
    if doomed:
        dvs = tuple(sorted(doomed))
        bound = k * (k - 3) // 2
        steps.append(
            lambda child, dvs=dvs, b=bound: DeleteVerticesStep(
                dvs, "common-neighbours-of-nonconsecutive-cycle-pair", b, child
            )
        )
        work = delete_vertices(work, dvs)

    nbr_sets = _cycle_neighbour_sets(work, cyc)
    consecutive, _ = _cycle_pairs(cyc)
    cover_sets: list[set[int]] = []
    for a, b in consecutive:
        cover_sets.append({v for v, ns in nbr_sets.items() if ns == {a, b}})
    singles_or_empty = [{v for v, ns in nbr_sets.items() if ns == {a}} for a in cyc]
    x_set = {v for v, ns in nbr_sets.items() if not ns}
    # The isolated class joins the first single-neighbour class: together
    # they form one clique.
    merged_first = singles_or_empty[0] | x_set
    cover_sets.append(merged_first)
    cover_sets.extend(singles_or_empty[1:])
    classified = set().union(*cover_sets) if cover_sets else set()
    if classified != set(nbr_sets):
        raise _contradiction("a vertex sees a non-consecutive cycle pair after deletion")
    for part in cover_sets:
        _assert_clique(work, part, "a long-cycle neighbourhood class")
    if sum(1 for p in cover_sets if p) > 2 * k:
        raise _contradiction("clique cover exceeds 2k parts")

    cvs = tuple(sorted(on_cycle))
    steps.append(
        lambda child, cvs=cvs, b=k: DeleteVerticesStep(cvs, "cycle-vertices", b, child)
    )
    work = delete_vertices(work, cvs)
    result = _reduce_steps(work, [frozenset(p) for p in cover_sets if p])
    if isinstance(result, FreenessWitness):
        raise _contradiction("clique-cover reduction found a forbidden graph")
    sub_steps, terminal = result
    return _chain(steps + sub_steps, terminal)


# ---------------------------------------------------------------------------
# Certifier for (diamond, P2+P3)-free graphs.
# ---------------------------------------------------------------------------

def certify_diamond_p2p3(g: Graph) -> Certificate:
    free, witness = is_free(g, ["diamond", "P2+P3"])
    if not free:
        raise NotInClassError(witness)

    if contains_induced(g, realize(parse_spec("K5"))) is not None:
        return Certificate(certificate_root(g), _certify_p2p3_with_k5(g))
    c5 = find_induced_cycle(g, 5)
    if c5 is not None:
        return Certificate(certificate_root(g), _certify_p2p3_with_c5(g, c5))
    c4 = find_induced_cycle(g, 4)
    if c4 is not None:
        return Certificate(certificate_root(g), _certify_p2p3_with_c4(g, c4))
    c6 = find_induced_cycle(g, 6)
    if c6 is not None:
        return Certificate(certificate_root(g), _certify_p2p3_with_c6(g, c6))
    chordal, hole = is_chordal(g)
    if not chordal:
        raise _contradiction(f"unexpected induced hole {hole}")
    return Certificate(certificate_root(g), BaseLeaf(CHORDAL_DIAMOND_FREE))


def _certify_p2p3_with_k5(g: Graph) -> Node:
    steps: list = [lambda child: PruneDegreeOneStep(child)]
    work = prune_degree_one(g)
    k5 = contains_induced(work, realize(parse_spec("K5")))
    if k5 is None:
        raise _contradiction("pruning destroyed every K5")
    x_clique = set(k5.image())
    for v in sorted(work.vertices):
        if v not in x_clique and x_clique <= work.neighbors(v):
            x_clique.add(v)
    outside = set(work.vertices) - x_clique
    for v in outside:
        if len(work.neighbors(v) & x_clique) > 1:
            raise _contradiction("an outside vertex sees two maximal-clique vertices")
    rest = induced_subgraph(work, outside)
    for mid in rest.vertices:
        nbrs = sorted(rest.neighbors(mid))
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if not rest.has_edge(a, b):
                    raise _contradiction("the graph minus the clique holds a P3")
    comps = components(rest)
    if len(comps) == 0:
        return _chain(steps, BaseLeaf(DISJOINT_CLIQUES))
    if len(comps) == 1:
        all_vs = tuple(sorted(work.vertices))
        steps.append(lambda child, vs=all_vs: SubgraphComplementStep(vs, child))
        return _chain(steps, BaseLeaf(BIPARTITE_H_FREE, h="2P1+P2"))
    attached = sorted(
        x for x in x_clique if any(v in outside for v in work.neighbors(x))
    )
    if len(attached) > 2:
        raise _contradiction("three clique vertices keep outside neighbours")
    if attached:
        avs = tuple(attached)
        steps.append(
            lambda child, avs=avs: DeleteVerticesStep(
                avs, "clique-vertices-with-outside-neighbours", 2, child
            )
        )
    return _chain(steps, BaseLeaf(DISJOINT_CLIQUES))


def _delete_consecutive_common_neighbours(
    work: Graph, cyc: tuple[int, ...], steps: list
) -> Graph:
    """Per consecutive cycle pair, delete their common neighbourhood (a
    clique of at most four vertices when K5-free)."""
    consecutive, _ = _cycle_pairs(cyc)
    on_cycle = set(cyc)
    for a, b in consecutive:
        common = (work.neighbors(a) & work.neighbors(b)) - on_cycle
        if not common:
            continue
        _assert_clique(work, common, "a consecutive-pair common neighbourhood")
        if len(common) > 4:
            raise _contradiction("consecutive-pair neighbourhood beats the K5 bound")
        cvs = tuple(sorted(common))
        steps.append(
            lambda child, cvs=cvs: DeleteVerticesStep(
                cvs, "consecutive-pair-common-neighbours", 4, child
            )
        )
        work = delete_vertices(work, cvs)
    return work


def _certify_p2p3_with_c5(g: Graph, cyc: tuple[int, ...]) -> Node:
    steps: list = []
    work = _delete_consecutive_common_neighbours(g, cyc, steps)

    nbr_sets = _cycle_neighbour_sets(work, cyc)
    if any(len(ns) >= 3 for ns in nbr_sets.values()):
        raise _contradiction("a vertex still sees three cycle vertices")
    singles = {v for v, ns in nbr_sets.items() if len(ns) == 1}
    for a in cyc:
        if sum(1 for v in singles if nbr_sets[v] == {a}) > 1:
            raise _contradiction("two vertices hang off one cycle vertex")
    if singles:
        svs = tuple(sorted(singles))
        steps.append(
            lambda child, svs=svs: DeleteVerticesStep(
                svs, "single-cycle-neighbour-vertices", 5, child
            )
        )
        work = delete_vertices(work, svs)

    nbr_sets = _cycle_neighbour_sets(work, cyc)
    k = len(cyc)
    v_sets = []
    for i in range(k):
        around = {cyc[(i - 1) % k], cyc[(i + 1) % k]}
        v_sets.append({v for v, ns in nbr_sets.items() if ns == around})
    x_set = {v for v, ns in nbr_sets.items() if not ns}
    if set().union(x_set, *v_sets) != set(nbr_sets):
        raise _contradiction("an unclassified vertex survived around the C5")
    for part in v_sets:
        _assert_independent(work, part, "a distance-two class")
    _assert_independent(work, x_set, "the cycle-free class")

    small_parts = [p for p in [x_set, *v_sets] if p and len(p) < 3]
    for part in sorted(small_parts, key=min):
        pvs = tuple(sorted(part))
        steps.append(
            lambda child, pvs=pvs: DeleteVerticesStep(pvs, "small-class", 2, child)
        )
        work = delete_vertices(work, pvs)
    cvs = tuple(sorted(cyc))
    steps.append(
        lambda child, cvs=cvs: DeleteVerticesStep(cvs, "cycle-vertices", 5, child)
    )
    work = delete_vertices(work, cvs)

    survivors = [frozenset(p) for p in v_sets]
    for i in range(k):
        a, b = survivors[i], survivors[(i + 1) % k]
        a = frozenset(v for v in a if work.has_vertex(v))
        b = frozenset(v for v in b if work.has_vertex(v))
        if a and b:
            xs, ys = tuple(sorted(a)), tuple(sorted(b))
            steps.append(
                lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child)
            )
            work = bipartite_complement(work, xs, ys)
    if work.max_degree() > 2:
        raise _contradiction("complemented C5 decomposition kept degree above 2")
    return _chain(steps, BaseLeaf(MAX_DEGREE_2))


def _certify_p2p3_with_c6(g: Graph, cyc: tuple[int, ...]) -> Node:
    steps: list = []
    work = _delete_consecutive_common_neighbours(g, cyc, steps)

    _, non_consecutive = _cycle_pairs(cyc)
    on_cycle = set(cyc)
    doomed: set[int] = set()
    for a, b in non_consecutive:
        common = (work.neighbors(a) & work.neighbors(b)) - on_cycle
        if len(common) > 1:
            raise _contradiction("two vertices share a non-consecutive C6 pair")
        doomed |= common
    if doomed:
        dvs = tuple(sorted(doomed))
        steps.append(
            lambda child, dvs=dvs: DeleteVerticesStep(
                dvs, "common-neighbours-of-nonconsecutive-cycle-pair", 9, child
            )
        )
        work = delete_vertices(work, dvs)

    nbr_sets = _cycle_neighbour_sets(work, cyc)
    if any(ns for ns in nbr_sets.values()):
        raise _contradiction("an off-cycle vertex still touches the C6")
    off = sorted(nbr_sets)
    for i, u in enumerate(off):
        for v in off[i + 1 :]:
            if work.has_edge(u, v):
                raise _contradiction("two off-cycle vertices are adjacent")
    if work.max_degree() > 2:
        raise _contradiction("C6 remainder kept degree above 2")
    return _chain(steps, BaseLeaf(MAX_DEGREE_2))


def _certify_p2p3_with_c4(g: Graph, cyc: tuple[int, ...]) -> Node:
    steps: list = []
    work = _delete_consecutive_common_neighbours(g, cyc, steps)

    def classify(cur: Graph, order: tuple[int, ...]):
        nbr_sets = _cycle_neighbour_sets(cur, order)
        if any(len(ns) >= 3 for ns in nbr_sets.values()):
            raise _contradiction("a vertex sees three vertices of the C4")
        a1, a2, a3, a4 = order
        for v, ns in nbr_sets.items():
            if len(ns) == 2 and ns in ({a1, a2}, {a2, a3}, {a3, a4}, {a4, a1}):
                raise _contradiction("a consecutive-pair neighbour survived deletion")
        w_sets = {i: {v for v, ns in nbr_sets.items() if ns == {order[i - 1]}} for i in (1, 2, 3, 4)}
        v_sets = {
            1: {v for v, ns in nbr_sets.items() if ns == {a2, a4}},
            2: {v for v, ns in nbr_sets.items() if ns == {a1, a3}},
        }
        x_set = {v for v, ns in nbr_sets.items() if not ns}
        return w_sets, v_sets, x_set

    order = cyc
    w_sets, v_sets, x_set = classify(work, order)

    # Opposite pendant classes cannot both be populated; when they are, each
    # holds a single vertex and both go.
    for a, b in ((1, 3), (2, 4)):
        if w_sets[a] and w_sets[b]:
            if len(w_sets[a]) > 1 or len(w_sets[b]) > 1:
                raise _contradiction("opposite pendant classes are too big to clear")
            both = tuple(sorted(w_sets[a] | w_sets[b]))
            steps.append(
                lambda child, both=both: DeleteVerticesStep(
                    both, "opposite-pendant-pair", 2, child
                )
            )
            work = delete_vertices(work, both)
    # Rotate the cycle labelling so pendant classes sit at positions 1, 2.
    v1, v2, v3, v4 = cyc
    candidates = [
        (v1, v2, v3, v4), (v2, v3, v4, v1), (v3, v4, v1, v2), (v4, v1, v2, v3),
        (v1, v4, v3, v2), (v4, v3, v2, v1), (v3, v2, v1, v4), (v2, v1, v4, v3),
    ]
    for cand in candidates:
        w_sets, v_sets, x_set = classify(work, cand)
        if not w_sets[3] and not w_sets[4]:
            order = cand
            break
    else:
        raise _contradiction("no cycle labelling clears both far pendant classes")

    for i in (1, 2, 3, 4):
        _assert_independent(work, w_sets[i], "a pendant class")
    for i in (1, 2):
        _assert_independent(work, v_sets[i], "an opposite-pair class")
    _assert_independent(work, x_set, "the cycle-free class")
    for i in (1, 2, 3, 4):
        for x in x_set:
            if work.neighbors(x) & w_sets[i]:
                raise _contradiction("cycle-free class touches a pendant class")

    # Pendants of one side adjacent to pendants of the other side split off
    # as a bipartite piece after two complementations.
    w1_star = {v for v in w_sets[1] if work.neighbors(v) & w_sets[2]}
    w2_star = {v for v in w_sets[2] if work.neighbors(v) & w_sets[1]}
    if w1_star or w2_star:
        for v in sorted(w1_star):
            if not (v_sets[1] <= work.neighbors(v)):
                raise _contradiction("a crossing pendant misses part of its far pair class")
            if work.neighbors(v) & (v_sets[2] | x_set):
                raise _contradiction("a crossing pendant touches the wrong side")
        for v in sorted(w2_star):
            if not (v_sets[2] <= work.neighbors(v)):
                raise _contradiction("a crossing pendant misses part of its far pair class")
            if work.neighbors(v) & (v_sets[1] | x_set):
                raise _contradiction("a crossing pendant touches the wrong side")
        if w1_star:
            xs = tuple(sorted(w1_star))
            ys = tuple(sorted(v_sets[1] | {order[0]}))
            steps.append(lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child))
            work = bipartite_complement(work, xs, ys)
        if w2_star:
            xs = tuple(sorted(w2_star))
            ys = tuple(sorted(v_sets[2] | {order[1]}))
            steps.append(lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child))
            work = bipartite_complement(work, xs, ys)
        star_part = frozenset(w1_star | w2_star)
        rest_part = frozenset(work.vertices) - star_part
        for u, v in work.edges():
            if (u in star_part) != (v in star_part):
                raise _contradiction("crossing pendants stayed attached after complementation")
        parts = sorted((rest_part, star_part), key=min)
        sub_work = induced_subgraph(work, rest_part)
        children = tuple(
            _certify_p2p3_c4_core(sub_work, order)
            if part == rest_part
            else BaseLeaf(BIPARTITE_H_FREE, h="P2+P3")
            for part in parts
        )
        split = SplitComponentsStep(tuple(tuple(sorted(p)) for p in parts), children)
        return _chain(steps, split)
    return _chain(steps, _certify_p2p3_c4_core(work, order))


def _certify_p2p3_c4_core(work: Graph, order: tuple[int, ...]) -> Node:
    """The C4 decomposition after pendant classes 3, 4 and the crossing
    pendants have been cleared."""
    steps: list = []
    a1, a2, a3, a4 = order
    nbr_sets = _cycle_neighbour_sets(work, order)
    w_sets = {i: {v for v, ns in nbr_sets.items() if ns == {order[i - 1]}} for i in (1, 2)}
    v_sets = {
        1: {v for v, ns in nbr_sets.items() if ns == {a2, a4}},
        2: {v for v, ns in nbr_sets.items() if ns == {a1, a3}},
    }
    x_set = {v for v, ns in nbr_sets.items() if not ns}

    isolated = {
        x for x in x_set if not (work.neighbors(x) & (v_sets[1] | v_sets[2]))
    }
    if isolated:
        for x in isolated:
            if work.neighbors(x):
                raise _contradiction("a supposedly isolated vertex keeps neighbours")
        main_part = frozenset(work.vertices) - isolated
        parts = sorted((main_part, frozenset(isolated)), key=min)
        children = tuple(
            _certify_p2p3_c4_core(induced_subgraph(work, main_part), order)
            if part == main_part
            else BaseLeaf(DISJOINT_CLIQUES)
            for part in parts
        )
        return SplitComponentsStep(tuple(tuple(sorted(p)) for p in parts), children)

    x0 = {
        x
        for x in x_set
        if work.neighbors(x) & v_sets[1] and work.neighbors(x) & v_sets[2]
    }
    x1 = {x for x in x_set if work.neighbors(x) & v_sets[1] and x not in x0}
    x2 = {x for x in x_set if work.neighbors(x) & v_sets[2] and x not in x0}

    def bipartite_exit() -> Node:
        cvs = tuple(sorted(order))
        exit_steps = [
            lambda child, cvs=cvs: DeleteVerticesStep(cvs, "cycle-vertices", 4, child)
        ]
        remainder = delete_vertices(work, cvs)
        ok, _ = is_bipartite(remainder)
        if not ok:
            raise _contradiction("expected a bipartite remainder around the C4")
        return _chain(exit_steps, BaseLeaf(BIPARTITE_H_FREE, h="P2+P3"))

    if not x0:
        return _chain(steps, bipartite_exit())

    for y in sorted(v_sets[1]):
        if work.neighbors(y) & x_set and not (v_sets[2] <= work.neighbors(y)):
            raise _contradiction("a pair vertex with an outside neighbour misses its twin class")
    for y in sorted(v_sets[2]):
        if work.neighbors(y) & x_set and not (v_sets[1] <= work.neighbors(y)):
            raise _contradiction("a pair vertex with an outside neighbour misses its twin class")
    for x in sorted(x0):
        if len(work.neighbors(x) & v_sets[1]) != 1 or len(work.neighbors(x) & v_sets[2]) != 1:
            raise _contradiction("a doubly attached vertex lacks unique attachments")

    # A pair vertex with two doubly-attached neighbours forces every doubly
    # attached vertex onto it; deleting it empties the class.
    for side in (1, 2):
        hub = next(
            (
                y
                for y in sorted(v_sets[side])
                if len(work.neighbors(y) & x0) >= 2
            ),
            None,
        )
        if hub is not None:
            for x in x0:
                if not work.has_edge(hub, x):
                    raise _contradiction("a doubly attached vertex avoids the shared hub")
            steps.append(
                lambda child, hub=hub: DeleteVerticesStep(
                    (hub,), "shared-attachment-hub", 1, child
                )
            )
            inner = delete_vertices(work, (hub,))
            return _chain(steps, _certify_p2p3_c4_core(inner, order))

    cross_w2 = sorted(v for v in w_sets[2] if work.neighbors(v) & v_sets[1])
    cross_w1 = sorted(v for v in w_sets[1] if work.neighbors(v) & v_sets[2])
    if len(cross_w2) > 1 or len(cross_w1) > 1:
        raise _contradiction("two pendants reach across the C4 decomposition")
    if cross_w1 or cross_w2:
        both = tuple(sorted(cross_w1 + cross_w2))
        steps.append(
            lambda child, both=both: DeleteVerticesStep(
                both, "cross-attached-pendants", 2, child
            )
        )
        inner = delete_vertices(work, both)
        return _chain(steps, _certify_p2p3_c4_core(inner, order))

    v1p = {y for y in v_sets[1] if work.neighbors(y) & x0}
    v2p = {y for y in v_sets[2] if work.neighbors(y) & x0}
    pend: dict[int, set[int]] = {}
    comp: dict[int, set[int]] = {}
    for side, vp in ((1, v1p), (2, v2p)):
        attach = {
            wx
            for wx in (w_sets[side] | (x1 if side == 1 else x2))
            if work.neighbors(wx) & vp
        }
        pend[side] = {
            wx
            for wx in attach
            if len(work.neighbors(wx) & v_sets[side]) == 1
            and (work.neighbors(wx) & v_sets[side]) <= vp
        }
        comp[side] = attach - pend[side]
        for wx in comp[side]:
            if not (vp <= work.neighbors(wx)):
                raise _contradiction(
                    "an attached vertex is neither single-attached nor complete"
                )

    cvs = tuple(sorted(order))
    steps.append(
        lambda child, cvs=cvs: DeleteVerticesStep(cvs, "cycle-vertices", 4, child)
    )
    work = delete_vertices(work, cvs)
    for side, vp in ((1, v1p), (2, v2p)):
        if vp and comp[side]:
            xs, ys = tuple(sorted(vp)), tuple(sorted(comp[side]))
            steps.append(lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child))
            work = bipartite_complement(work, xs, ys)
    for vp, other_v, other_vp in ((v1p, v_sets[2], v2p), (v2p, v_sets[1], v1p)):
        far = other_v - other_vp
        if vp and far:
            xs, ys = tuple(sorted(vp)), tuple(sorted(far))
            steps.append(lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child))
            work = bipartite_complement(work, xs, ys)

    tree_part = frozenset(pend[1] | pend[2] | v1p | v2p | x0)
    rest_part = frozenset(work.vertices) - tree_part
    for u, v in work.edges():
        if (u in tree_part) != (v in tree_part):
            raise _contradiction("the tree part stayed attached to the remainder")

    def tree_terminal(sub: Graph) -> Node:
        inner_steps: list = []
        if v1p and v2p:
            xs, ys = tuple(sorted(v1p)), tuple(sorted(v2p))
            inner_steps.append(
                lambda child, xs=xs, ys=ys: BipartiteComplementStep(xs, ys, child)
            )
            sub = bipartite_complement(sub, xs, ys)
        if not is_forest(sub):
            raise _contradiction("the attachment part is not a forest")
        return _chain(inner_steps, BaseLeaf(FOREST))

    if rest_part:
        parts = sorted((tree_part, rest_part), key=min)
        children = tuple(
            tree_terminal(induced_subgraph(work, part))
            if part == tree_part
            else BaseLeaf(BIPARTITE_H_FREE, h="P2+P3")
            for part in parts
        )
        split = SplitComponentsStep(tuple(tuple(sorted(p)) for p in parts), children)
        return _chain(steps, split)
    return _chain(steps, tree_terminal(work))


# ---------------------------------------------------------------------------
# Pair classification and normalisation.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairStatus:
    s: int
    t: int
    status: str  # "Bounded" | "Unbounded"


def classify_pair(s: int, t: int) -> PairStatus:
    """Boundedness of the (sP1+P2, co(tP1+P2))-free family: bounded exactly
    when s <= 1 or t <= 1 or s + t <= 5."""
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")
    bounded = s <= 1 or t <= 1 or s + t <= 5
    return PairStatus(s, t, "Bounded" if bounded else "Unbounded")


def _complement_spec(spec: NamedGraphSpec) -> NamedGraphSpec:
    from .namedgraphs import ComplementOf

    if len(spec.terms) == 1 and spec.terms[0][0] == 1 and isinstance(
        spec.terms[0][1], ComplementOf
    ):
        return spec.terms[0][1].inner
    return NamedGraphSpec(((1, ComplementOf(spec)),))


def normalize_pair(
    h1: NamedGraphSpec | str, h2: NamedGraphSpec | str
) -> tuple[str, str]:
    """Canonical representative of a forbidden pair's equivalence class.

    Two pairs are equivalent when one arises from the other by complementing
    both graphs, or by swapping a triangle with co(P1+P3) (adding or removing
    a dominating vertex of the complement).  The representative is the
    lexicographically least printed pair over the orbit.
    """
    from .search import are_isomorphic as iso

    def as_spec(h: NamedGraphSpec | str) -> NamedGraphSpec:
        return h if isinstance(h, NamedGraphSpec) else parse_spec(h)

    k3 = realize(parse_spec("K3"))
    paw = realize(parse_spec("co(P1+P3)"))

    def pair_key(a: NamedGraphSpec, b: NamedGraphSpec) -> tuple[str, str]:
        pa, pb = print_spec(a), print_spec(b)
        return (pa, pb) if pa <= pb else (pb, pa)

    start = (as_spec(h1), as_spec(h2))
    seen: dict[tuple[str, str], tuple[NamedGraphSpec, NamedGraphSpec]] = {
        pair_key(*start): start
    }
    frontier = [start]
    while frontier:
        a, b = frontier.pop()
        nexts = [(_complement_spec(a), _complement_spec(b))]
        for left, right in ((a, b), (b, a)):
            g_left = realize(left)
            if iso(g_left, k3) is not None:
                nexts.append((parse_spec("co(P1+P3)"), right))
            if iso(g_left, paw) is not None:
                nexts.append((parse_spec("K3"), right))
        for cand in nexts:
            key = pair_key(*cand)
            if key not in seen:
                seen[key] = cand
                frontier.append(cand)
    return min(seen)
