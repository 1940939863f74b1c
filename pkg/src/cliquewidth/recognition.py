"""Exact small-scale invariants and class recognizers.

Everything here is exact and deterministic: independence and clique numbers
by branch and bound, minimum clique covers by exact colouring of the
complement, chordality by simplicial elimination, and a desk-scale
perfectness test by explicit enumeration of induced odd holes and antiholes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import (
    Graph,
    bit_adjacency,
    build_graph,
    complement,
    induced_subgraph,
)
from .namedgraphs import NamedGraphSpec, parse_spec, realize
from .search import contains_induced, is_free

EXACT_SCALE_LIMIT = 24
DESK_SCALE_LIMIT = 16
SAMPLING_LIMIT = 16


class SizeLimitError(ValueError):
    """Raised when an exact routine is asked to exceed its size limit."""


class GenerationBudgetError(RuntimeError):
    """Rejection sampling ran out of attempts; carries the partial yield."""

    def __init__(self, wanted: int, produced: int, attempts: int):
        super().__init__(
            f"sampling budget exhausted: produced {produced}/{wanted} "
            f"graphs in {attempts} attempts"
        )
        self.produced = produced


def _check_limit(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise SizeLimitError(f"{what} limited to {limit} vertices, got {g.n}")


def _max_independent_set(masks: list[int], cand: int) -> tuple[int, int]:
    """Largest independent set inside ``cand`` (bitmask), with its mask."""
    if cand == 0:
        return 0, 0
    # Pick the candidate vertex of maximum degree within cand as pivot.
    pivot, pivot_deg = -1, -1
    c = cand
    while c:
        low = c & -c
        c ^= low
        i = low.bit_length() - 1
        d = bin(masks[i] & cand).count("1")
        if d > pivot_deg:
            pivot, pivot_deg = i, d
    if pivot_deg == 0:
        # cand is independent.
        return bin(cand).count("1"), cand
    take_size, take_set = _max_independent_set(masks, cand & ~masks[pivot] & ~(1 << pivot))
    take_size += 1
    take_set |= 1 << pivot
    skip_size, skip_set = _max_independent_set(masks, cand & ~(1 << pivot))
    if take_size >= skip_size:
        return take_size, take_set
    return skip_size, skip_set


def alpha(g: Graph, limit: int = EXACT_SCALE_LIMIT) -> int:
    """Exact independence number."""
    _check_limit(g, limit, "alpha")
    if g.n == 0:
        return 0
    _, _, masks = bit_adjacency(g)
    size, _ = _max_independent_set(masks, (1 << g.n) - 1)
    return size


def omega(g: Graph, limit: int = EXACT_SCALE_LIMIT) -> int:
    """Exact clique number."""
    _check_limit(g, limit, "omega")
    return alpha(complement(g), limit)


def clique_cover_exact(g: Graph, limit: int = EXACT_SCALE_LIMIT) -> list[frozenset[int]]:
    """Minimum partition of the vertices into cliques.

    Computed as an exact colouring of the complement: colour classes of the
    complement are cliques here.  Deterministic branch and bound.
    """
    _check_limit(g, limit, "clique_cover_exact")
    if g.n == 0:
        return []
    co = complement(g)
    verts, _, masks = bit_adjacency(co)
    n = len(verts)
    order = sorted(range(n), key=lambda i: (-bin(masks[i]).count("1"), i))

    def colourable(k: int) -> list[int] | None:
        assign = [-1] * n

        def rec(pos: int, used: int) -> bool:
            if pos == n:
                return True
            v = order[pos]
            for c in range(min(used + 1, k)):
                if all(assign[w] != c for w in range(n) if masks[v] >> w & 1):
                    assign[v] = c
                    if rec(pos + 1, max(used, c + 1)):
                        return True
                    assign[v] = -1
            return False

        return assign if rec(0, 0) else None

    lower = alpha(g, limit)  # a clique of the complement
    for k in range(max(lower, 1), n + 1):
        assign = colourable(k)
        if assign is not None:
            groups: dict[int, set[int]] = {}
            for i, c in enumerate(assign):
                groups.setdefault(c, set()).add(verts[i])
            cover = sorted((frozenset(s) for s in groups.values()), key=min)
            for part in cover:
                for u in part:
                    for v in part:
                        if u < v and not g.has_edge(u, v):
                            raise AssertionError("cover part is not a clique")
            return cover
    raise AssertionError("unreachable: n colours always suffice")


def is_chordal(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Perfect-elimination test; on failure returns an induced hole (>= 4)."""
    remaining = set(g.vertices)

    def simplicial(v: int) -> bool:
        nbrs = [w for w in g.neighbors(v) if w in remaining]
        return all(
            g.has_edge(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1 :]
        )

    while remaining:
        pick = next((v for v in sorted(remaining) if simplicial(v)), None)
        if pick is None:
            hole = _find_hole(induced_subgraph(g, remaining))
            assert hole is not None
            return False, hole
        remaining.remove(pick)
    return True, None


def _find_hole(g: Graph) -> tuple[int, ...] | None:
    """Some induced cycle on >= 4 vertices, if one exists.

    For a vertex v with non-adjacent neighbours u, w, a shortest u-w path
    avoiding the rest of N[v] closes an induced cycle through v.
    """
    for v in g.vertices:
        nbrs = sorted(g.neighbors(v))
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if g.has_edge(u, w):
                    continue
                banned = (set(g.neighbors(v)) | {v}) - {u, w}
                path = _shortest_path_avoiding(g, u, w, banned)
                if path is not None:
                    return tuple([v] + path)
    return None


def _shortest_path_avoiding(
    g: Graph, src: int, dst: int, banned: set[int]
) -> list[int] | None:
    prev: dict[int, int | None] = {src: None}
    queue = [src]
    while queue:
        u = queue.pop(0)
        if u == dst:
            path = []
            x: int | None = u
            while x is not None:
                path.append(x)
                x = prev[x]
            return list(reversed(path))
        for w in sorted(g.neighbors(u)):
            if w in banned or w in prev:
                continue
            prev[w] = u
            queue.append(w)
    return None


def find_induced_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    """First induced cycle of exactly the given length in least-start,
    ascending DFS order (deterministic), or None."""
    if length < 3 or g.n < length:
        return None
    verts, _, masks = bit_adjacency(g)

    def rec(path: list[int], used: int) -> tuple[int, ...] | None:
        if len(path) == length:
            first, last = path[0], path[-1]
            if masks[last] >> first & 1:
                return tuple(verts[i] for i in path)
            return None
        start_min = path[0]
        last = path[-1]
        cand = masks[last] & ~used
        while cand:
            low = cand & -cand
            cand ^= low
            nxt = low.bit_length() - 1
            if nxt <= start_min:
                continue  # keep the least vertex first (symmetry breaking)
            # Induced condition: nxt may touch only the path's last vertex,
            # except that the final vertex may also touch the first.
            allowed = 1 << last
            if len(path) == length - 1:
                allowed |= 1 << path[0]
            if masks[nxt] & used & ~allowed:
                continue
            res = rec(path + [nxt], used | low)
            if res is not None:
                return res
        return None

    for s in range(len(verts)):
        res = rec([s], 1 << s)
        if res is not None:
            return res
    return None


def find_odd_hole(g: Graph, min_length: int = 5) -> tuple[int, ...] | None:
    """Shortest induced odd cycle of length >= min_length (least witness)."""
    length = min_length if min_length % 2 == 1 else min_length + 1
    while length <= g.n:
        cyc = find_induced_cycle(g, length)
        if cyc is not None:
            return cyc
        length += 2
    return None


@dataclass(frozen=True)
class PerfectnessWitness:
    kind: str  # "odd_hole" | "odd_antihole"
    vertices: tuple[int, ...]


def is_perfect_desk(
    g: Graph, limit: int = DESK_SCALE_LIMIT
) -> tuple[bool, PerfectnessWitness | None]:
    """Desk-scale perfectness: no induced odd hole or odd antihole (>= 5)."""
    _check_limit(g, limit, "is_perfect_desk")
    hole = find_odd_hole(g)
    if hole is not None:
        return False, PerfectnessWitness("odd_hole", hole)
    antihole = find_odd_hole(complement(g))
    if antihole is not None:
        return False, PerfectnessWitness("odd_antihole", antihole)
    return True, None


# Containers whose H-free bipartite graphs form bounded-clique-width classes.
_BIPARTITE_CONTAINERS = ("K1,3+3P1", "K1,3+P2", "P1+S(1,1,3)", "S(1,2,3)")


def bipartite_class_bounded(h: NamedGraphSpec | str | Graph) -> bool:
    """True iff H-free bipartite graphs form a bounded-clique-width class.

    Holds exactly when H is an edgeless graph or an induced subgraph of one
    of: K1,3+3P1, K1,3+P2, P1+S(1,1,3), S(1,2,3).
    """
    if isinstance(h, Graph):
        pattern = h
    else:
        pattern = realize(h if isinstance(h, NamedGraphSpec) else parse_spec(h))
    if pattern.m == 0 and pattern.n >= 1:
        return True
    for container_text in _BIPARTITE_CONTAINERS:
        container = realize(parse_spec(container_text))
        if contains_induced(container, pattern) is not None:
            return True
    return False


@dataclass(frozen=True)
class ClassProfile:
    alpha: int
    omega: int
    clique_cover: tuple[frozenset[int], ...]
    chordal: bool
    hole_witness: tuple[int, ...] | None
    perfect_desk: bool
    perfectness_witness: PerfectnessWitness | None


def class_profile(g: Graph) -> ClassProfile:
    """All desk-scale invariants at once, cross-checked where possible."""
    a = alpha(g)
    w = omega(g)
    cover = tuple(clique_cover_exact(g))
    chordal, hole = is_chordal(g)
    perfect, pw = is_perfect_desk(g)
    if perfect and len(cover) != a:
        raise AssertionError(
            f"perfect graph with cover {len(cover)} != alpha {a}"
        )
    return ClassProfile(a, w, cover, chordal, hole, perfect, pw)


def generate_free(
    n: int,
    specs: list[NamedGraphSpec | str],
    sample_count: int,
    seed: int,
    max_attempts: int | None = None,
) -> list[Graph]:
    """Rejection-sample graphs on n vertices avoiding all named patterns.

    Erdos-Renyi with the edge probability swept over 0.1..0.9 per attempt,
    so both sparse and dense target classes get hit.  Deterministic for a
    fixed seed; raises GenerationBudgetError when the budget runs out.
    """
    if n > SAMPLING_LIMIT:
        raise SizeLimitError(f"generate_free limited to {SAMPLING_LIMIT} vertices")
    rng = random.Random(seed)
    sweep = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    budget = max_attempts if max_attempts is not None else max(2000, 500 * sample_count)
    out: list[Graph] = []
    attempts = 0
    while len(out) < sample_count:
        if attempts >= budget:
            raise GenerationBudgetError(sample_count, len(out), attempts)
        p = sweep[attempts % len(sweep)]
        attempts += 1
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = build_graph(n, edges)
        free, _ = is_free(g, specs)
        if free:
            out.append(g)
    return out
