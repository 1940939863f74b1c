import pytest

from cliquewidth import (
    GenerationBudgetError,
    SizeLimitError,
    alpha,
    bipartite_class_bounded,
    build_graph,
    class_profile,
    clique_cover_exact,
    complement,
    contains_induced,
    find_induced_cycle,
    find_odd_hole,
    generate_free,
    is_chordal,
    is_free,
    is_perfect_desk,
    omega,
    realize_text,
)
from brute import (
    brute_alpha,
    brute_chromatic,
    brute_contains_induced,
    brute_induced_cycles,
    random_graph,
)


def test_alpha_omega_examples():
    c5 = realize_text("C5")
    assert alpha(c5) == 2 and omega(c5) == 2
    k5 = realize_text("K5")
    assert alpha(k5) == 1 and omega(k5) == 5
    d = realize_text("diamond")
    assert alpha(d) == brute_alpha(d) == 2
    assert omega(d) == brute_alpha(complement(d)) == 3


def test_alpha_limit():
    with pytest.raises(SizeLimitError):
        alpha(build_graph(25, []))


def test_alpha_equals_omega_of_complement(rng):
    for _ in range(80):
        g = random_graph(rng, rng.randint(0, 8), rng.random())
        assert alpha(g) == omega(complement(g))
        assert alpha(g) == brute_alpha(g)


def test_clique_cover_examples():
    assert len(clique_cover_exact(realize_text("C4"))) == 2
    assert len(clique_cover_exact(realize_text("K5"))) == 1
    assert len(clique_cover_exact(realize_text("C5"))) == 3


def test_clique_cover_matches_brute_chromatic(rng):
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        cover = clique_cover_exact(g)
        assert sorted(v for part in cover for v in part) == list(g.vertices)
        for part in cover:
            for u in part:
                for v in part:
                    assert u == v or g.has_edge(u, v)
        assert len(cover) == brute_chromatic(complement(g))


def test_perfect_implies_cover_equals_alpha(rng):
    checked = 0
    while checked < 40:
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        if is_perfect_desk(g)[0]:
            assert len(clique_cover_exact(g)) == alpha(g)
            checked += 1


def test_is_chordal_examples(rng):
    for _ in range(10):
        n = rng.randint(1, 9)
        tree = build_graph(n, [(rng.randrange(i), i) for i in range(1, n)])
        assert is_chordal(tree) == (True, None)
    ok, witness = is_chordal(realize_text("C4"))
    assert not ok and len(witness) == 4
    assert is_chordal(realize_text("diamond")) == (True, None)


def test_is_chordal_agrees_with_cycle_enumeration(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 10), rng.choice([0.2, 0.4, 0.6]))
        holes = brute_induced_cycles(g, 4)
        ok, witness = is_chordal(g)
        assert ok == (not holes)
        if witness is not None:
            assert frozenset(witness) in set(holes)


def test_find_induced_cycle(rng):
    g = realize_text("C6")
    assert find_induced_cycle(g, 6) is not None
    assert find_induced_cycle(g, 4) is None
    assert find_induced_cycle(g, 5) is None
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 9), 0.4)
        for length in (4, 5, 6):
            cyc = find_induced_cycle(g, length)
            sets = {c for c in brute_induced_cycles(g, length) if len(c) == length}
            assert (cyc is None) == (not sets)
            if cyc is not None:
                assert frozenset(cyc) in sets


def test_is_perfect_desk_examples():
    ok, witness = is_perfect_desk(realize_text("C5"))
    assert not ok and witness.kind == "odd_hole" and len(witness.vertices) == 5
    ok, witness = is_perfect_desk(realize_text("C7"))
    assert not ok and len(witness.vertices) == 7
    ok, _ = is_perfect_desk(realize_text("C6"))
    assert ok
    # an odd antihole: the complement of C7
    ok, witness = is_perfect_desk(complement(realize_text("C7")))
    assert not ok and witness.kind == "odd_antihole"
    with pytest.raises(SizeLimitError):
        is_perfect_desk(build_graph(17, []))


def test_is_perfect_desk_bipartite(rng):
    for _ in range(20):
        left = rng.randint(1, 5)
        right = rng.randint(1, 5)
        edges = [
            (u, left + v)
            for u in range(left)
            for v in range(right)
            if rng.random() < 0.5
        ]
        g = build_graph(left + right, edges)
        assert is_perfect_desk(g)[0]


def test_find_odd_hole_none_in_chordal():
    assert find_odd_hole(realize_text("diamond")) is None


def test_bipartite_class_bounded_examples():
    # derived by embedding into the bounded containers with the brute oracle
    container = realize_text("K1,3+3P1")
    assert brute_contains_induced(container, realize_text("2P1+P3")) is not None
    assert bipartite_class_bounded("2P1+P3")
    container = realize_text("K1,3+P2")
    assert brute_contains_induced(container, realize_text("P2+P3")) is not None
    assert bipartite_class_bounded("P2+P3")
    for container_text in ("K1,3+3P1", "K1,3+P2", "P1+S(1,1,3)", "S(1,2,3)"):
        assert brute_contains_induced(
            realize_text(container_text), realize_text("C4")
        ) is None
    assert not bipartite_class_bounded("C4")
    assert bipartite_class_bounded("5P1")
    assert bipartite_class_bounded("2P1+P2")
    assert bipartite_class_bounded(realize_text("P4"))
    assert not bipartite_class_bounded("K3")


def test_generate_free_postconditions():
    graphs = generate_free(5, ["diamond"], 10, seed=7)
    assert len(graphs) == 10
    assert all(g.n == 5 and is_free(g, ["diamond"])[0] for g in graphs)
    cographs = generate_free(4, ["P4", "co(P4)"], 6, seed=3)
    assert all(is_free(g, ["P4"])[0] for g in cographs)
    members = generate_free(8, ["diamond", "P2+P3"], 12, seed=11)
    assert all(is_free(g, ["diamond", "P2+P3"])[0] for g in members)


def test_generate_free_deterministic():
    a = generate_free(6, ["diamond"], 8, seed=99)
    b = generate_free(6, ["diamond"], 8, seed=99)
    assert [g.edges() for g in a] == [g.edges() for g in b]


def test_generate_free_budget_error():
    with pytest.raises(GenerationBudgetError) as err:
        generate_free(4, ["P1"], 3, seed=1, max_attempts=50)
    assert err.value.produced == 0


def test_generate_free_size_limit():
    with pytest.raises(SizeLimitError):
        generate_free(17, ["diamond"], 1, seed=0)


def test_class_profile_consistency():
    profile = class_profile(realize_text("C6"))
    assert profile.alpha == 3 and profile.omega == 2
    assert not profile.chordal and profile.perfect_desk
    assert len(profile.clique_cover) == 3
