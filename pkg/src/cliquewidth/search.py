"""Induced-subgraph and isomorphism engines.

Both engines are deterministic for fixed inputs.  The induced-subgraph
search returns the lexicographically least embedding (image sequence over
pattern vertices in id order); isomorphism uses colour refinement with
individualisation and returns the first embedding found by that fixed
search order.
"""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from .graphs import Graph, bit_adjacency
from .namedgraphs import NamedGraphSpec, parse_spec, print_spec, realize


@dataclass(frozen=True)
class Embedding:
    """An injective map from pattern vertices to host vertices."""

    mapping: tuple[tuple[int, int], ...]  # (pattern vertex, host vertex), sorted

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def image(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.mapping)

    def validate(self, host: Graph, pattern: Graph) -> bool:
        """Re-check injectivity and the induced condition from scratch."""
        m = self.as_dict()
        if sorted(m) != list(pattern.vertices):
            return False
        if len(set(m.values())) != len(m):
            return False
        if any(not host.has_vertex(v) for v in m.values()):
            return False
        pv = pattern.vertices
        for i, u in enumerate(pv):
            for w in pv[i + 1 :]:
                if pattern.has_edge(u, w) != host.has_edge(m[u], m[w]):
                    return False
        return True


@dataclass(frozen=True)
class FreenessWitness:
    """Witness that a host contains a forbidden induced subgraph."""

    spec_text: str
    embedding: Embedding


def _search_order(pattern: Graph) -> list[int]:
    """Connectivity-aware static order: big components first, BFS from the
    highest-degree vertex inside each.  Used for fast absence proofs."""
    comps: list[list[int]] = []
    seen: set[int] = set()
    for start in sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v)):
        if start in seen:
            continue
        order = [start]
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in sorted(pattern.neighbors(u), key=lambda x: (-pattern.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        comps.append(order)
    comps.sort(key=lambda c: (-len(c), c))
    return [v for comp in comps for v in comp]


def _backtrack(host: Graph, pattern: Graph, order: list[int]) -> dict[int, int] | None:
    hv, _, hmask = bit_adjacency(host)
    pv = list(pattern.vertices)
    p_idx = {v: i for i, v in enumerate(pv)}
    nh = len(hv)
    full = (1 << nh) - 1

    # Degree-compatible starting domains.
    h_deg = [bin(mk).count("1") for mk in hmask]
    domains = []
    for u in pv:
        du = pattern.degree(u)
        dom = 0
        for i in range(nh):
            if h_deg[i] >= du:
                dom |= 1 << i
        domains.append(dom)

    pos_of = {u: k for k, u in enumerate(order)}
    adj_in_pattern = [
        [p_idx[w] for w in pattern.neighbors(u)] for u in pv
    ]

    assignment: list[int] = [-1] * len(pv)

    def rec(k: int, doms: list[int], used: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        ui = p_idx[u]
        cand = doms[ui] & ~used
        while cand:
            low = cand & -cand
            cand ^= low
            hi = low.bit_length() - 1
            assignment[ui] = hi
            new_doms = list(doms)
            ok = True
            for w_idx in range(len(pv)):
                if assignment[w_idx] != -1 or w_idx == ui:
                    continue
                if w_idx in adj_in_pattern[ui]:
                    new_doms[w_idx] &= hmask[hi]
                else:
                    new_doms[w_idx] &= full & ~hmask[hi]
                new_doms[w_idx] &= ~low
                if new_doms[w_idx] == 0:
                    ok = False
                    break
            if ok and rec(k + 1, new_doms, used | low):
                return True
            assignment[ui] = -1
        return False

    if any(d == 0 for d in domains):
        return None
    if rec(0, domains, 0):
        return {pv[i]: hv[assignment[i]] for i in range(len(pv))}
    return None


def contains_induced(host: Graph, pattern: Graph) -> Embedding | None:
    """Find an induced copy of ``pattern`` in ``host``.

    Presence is decided with a connectivity-aware order; when a copy exists a
    second pass in plain id order recovers the lexicographically least
    embedding.
    """
    if pattern.n == 0:
        return Embedding(())
    if pattern.n > host.n or pattern.m > host.m:
        return None
    # An induced copy also needs enough non-edges.
    co_p = pattern.n * (pattern.n - 1) // 2 - pattern.m
    co_h = host.n * (host.n - 1) // 2 - host.m
    if co_p > co_h:
        return None
    found = _backtrack(host, pattern, _search_order(pattern))
    if found is None:
        return None
    lex = _backtrack(host, pattern, list(pattern.vertices))
    assert lex is not None
    emb = Embedding(tuple(sorted(lex.items())))
    assert emb.validate(host, pattern)
    return emb


def is_free(
    host: Graph, specs: list[NamedGraphSpec | str]
) -> tuple[bool, FreenessWitness | None]:
    """True iff none of the named graphs occurs induced; else a witness."""
    for spec in specs:
        parsed = spec if isinstance(spec, NamedGraphSpec) else parse_spec(spec)
        pattern = realize(parsed)
        emb = contains_induced(host, pattern)
        if emb is not None:
            return False, FreenessWitness(print_spec(parsed), emb)
    return True, None


# ---------------------------------------------------------------------------
# Colour refinement and isomorphism.
# ---------------------------------------------------------------------------

def colour_refinement(
    adj: dict[int, frozenset[int]], init: dict[int, int]
) -> dict[int, int]:
    """Iterated neighbourhood refinement; colour ids are assigned in sorted
    signature order so the result is comparable across graphs."""
    colours = dict(init)
    while True:
        sigs = {
            v: (colours[v], tuple(sorted(Counter(colours[w] for w in adj[v]).items())))
            for v in adj
        }
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        new = {v: palette[sigs[v]] for v in adj}
        if len(set(new.values())) == len(set(colours.values())):
            return new
        colours = new


def _joint_refine(
    g: Graph, h: Graph, pins_g: dict[int, int], pins_h: dict[int, int]
) -> tuple[dict[int, int], dict[int, int]]:
    adj: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    init: dict[tuple[int, int], int] = {}
    for tag, graph, pins in ((0, g, pins_g), (1, h, pins_h)):
        for v in graph.vertices:
            adj[(tag, v)] = frozenset((tag, w) for w in graph.neighbors(v))
            init[(tag, v)] = pins.get(v, -1)
    out = colour_refinement(adj, init)
    return (
        {v: c for (t, v), c in out.items() if t == 0},
        {v: c for (t, v), c in out.items() if t == 1},
    )


def are_isomorphic(g: Graph, h: Graph) -> Embedding | None:
    """Bijective induced embedding of ``g`` onto ``h`` if one exists.

    Individualisation-refinement backtracking; deterministic for fixed
    inputs (cells and candidates are always scanned in sorted order).
    """
    if g.n != h.n or g.m != h.m or g.degree_sequence() != h.degree_sequence():
        return None

    next_pin = [2_000_000]

    def rec(pins_g: dict[int, int], pins_h: dict[int, int]) -> dict[int, int] | None:
        cg, ch = _joint_refine(g, h, pins_g, pins_h)
        if sorted(Counter(cg.values()).items()) != sorted(Counter(ch.values()).items()):
            return None
        classes_g: dict[int, list[int]] = {}
        for v in sorted(cg):
            classes_g.setdefault(cg[v], []).append(v)
        # Discrete partition: read the mapping off colour matching.
        if all(len(vs) == 1 for vs in classes_g.values()):
            by_colour_h = {ch[w]: w for w in ch}
            mapping = {vs[0]: by_colour_h[c] for c, vs in classes_g.items()}
            for u, v in g.edges():
                if not h.has_edge(mapping[u], mapping[v]):
                    return None
            return mapping
        colour, cell = min(
            ((c, vs) for c, vs in classes_g.items() if len(vs) > 1),
            key=lambda item: (len(item[1]), item[0]),
        )
        u = cell[0]
        pin = next_pin[0]
        next_pin[0] += 1
        for w in sorted(v for v in ch if ch[v] == colour):
            res = rec({**pins_g, u: pin}, {**pins_h, w: pin})
            if res is not None:
                return res
        return None

    mapping = rec({}, {})
    if mapping is None:
        return None
    emb = Embedding(tuple(sorted(mapping.items())))
    assert emb.validate(h, g)
    return emb


def fingerprint(g: Graph) -> tuple[int, int, str]:
    """(n, m, hash) identity for a graph.

    The hash is an iterated-refinement invariant (stable under isomorphism),
    not a complete canonical form; together with n and m it serves as the
    root fingerprint of certificates.
    """
    init = {v: g.degree(v) for v in g.vertices}
    colours = colour_refinement({v: g.neighbors(v) for v in g.vertices}, init)
    hist = tuple(sorted(Counter(colours.values()).items()))
    edge_sig = tuple(
        sorted(tuple(sorted((colours[u], colours[v]))) for u, v in g.edges())
    )
    payload = repr((g.n, g.m, hist, edge_sig)).encode()
    return g.n, g.m, hashlib.sha256(payload).hexdigest()[:16]
