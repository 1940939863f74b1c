from __future__ import annotations

import random

import pytest

from cliquewidth import Graph, build_graph, is_free


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(20240817)


def sample_members(
    specs: list[str], count: int, n_max: int, seed: int, n_min: int = 4
) -> list[Graph]:
    """Rejection-sample members of a hereditary class at desk scale."""
    rng = random.Random(seed)
    sweep = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    out: list[Graph] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 300000:
            raise RuntimeError(f"could not sample {count} members of {specs}")
        n = rng.randint(n_min, n_max)
        p = sweep[attempts % len(sweep)]
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = build_graph(n, edges)
        if is_free(g, specs)[0]:
            out.append(g)
    return out


def atlas_catalog(n_lo: int, n_hi: int) -> list[Graph]:
    """Every graph with n_lo <= n <= n_hi vertices, one per isomorphism
    class, from the networkx atlas (independent of this package)."""
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for ag in graph_atlas_g():
        n = ag.number_of_nodes()
        if n_lo <= n <= n_hi:
            out.append(Graph(range(n), [(u, v) for u, v in ag.edges()]))
    return out
