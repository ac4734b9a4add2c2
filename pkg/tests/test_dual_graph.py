import itertools
import pytest
from hypothesis import given
import hypothesis.strategies as st
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph
from twigcalc.dual_graph import Chain, DualGraph, fork
from strategies import blow_ups, chains, trees

D4 = DualGraph({0: -2, 1: -2, 2: -2, 3: -2}, [(0, 1), (0, 2), (0, 3)])


def test_chain_discriminants():
    assert Chain([2, 1, 3]).discriminant() == 1
    assert Chain([2, 2]).discriminant() == 3
    assert Chain([5, 2]).discriminant() == 9
    assert Chain([3, 2, 2, 3]).discriminant() == 16
    assert Chain().discriminant() == 1
    for k in range(0, 12):
        assert Chain.twos(k).discriminant() == k + 1


def test_tail_discriminants_read_from_the_tip():
    assert Chain([2, 1, 3]).tail_discriminants() == [1, 2, 3, 1]
    assert dual_graph.tail_discriminants(Chain([2, 3])) == [5, 3, 1]


def test_chain_value_behaviour():
    chain = Chain([2, 1, 3])
    assert str(chain) == "[2,1,3]"
    assert repr(chain) == "Chain([2, 1, 3])"
    assert chain.reversed() == Chain([3, 1, 2])
    assert chain[1:] == Chain([1, 3])
    assert chain[0] == 2
    assert chain.tip == 2
    assert chain.without_tip == Chain([1, 3])
    assert chain + [2] == Chain([2, 1, 3, 2])
    assert Chain.parse("[2, 1, 3]") == chain
    assert sorted([Chain([3, 2]), Chain([5]), Chain([2, 3])]) == [Chain([5]), Chain([2, 3]), Chain([3, 2])]
    assert Chain.twos(3).is_all_twos()
    assert not Chain([2, 3]).is_all_twos()
    assert len({Chain([2]), Chain([2])}) == 1


def test_chain_to_graph_uses_self_intersections():
    graph = Chain([2, 1, 3]).to_graph()
    assert [graph.weight(v) for v in graph.vertices] == [-2, -1, -3]
    assert graph.edges == [(0, 1), (1, 2)]
    assert graph.as_chain() == Chain([2, 1, 3])


@pytest.mark.parametrize("vertices, edges", [
    ([(0, -1), (0, -2)], []),
    ([(0, -1)], [(0, 0)]),
    ([(0, -1)], [(0, 1)]),
    ([(0, -1), (1, -2)], [(0, 1), (1, 0)]),
])
def test_invalid_graphs_are_rejected(vertices, edges):
    with pytest.raises(errors.InvalidGraphError):
        DualGraph(vertices, edges)


def test_marks_point_to_vertices():
    with pytest.raises(errors.InvalidGraphError):
        DualGraph({0: -1}, [], {"minus_one": 3})
    graph = DualGraph({0: -1}, [], {"minus_one": 0})
    assert graph.mark("minus_one") == 0
    assert graph.mark("curve") is None


def test_union_and_join():
    s, t = Chain([2]).to_graph(), Chain([3]).to_graph(first_id=1)
    joined = s.join(t, 0, 1)
    assert joined.as_chain() == Chain([2, 3])
    with pytest.raises(errors.InvalidGraphError):
        s.union(Chain([3]).to_graph())
    with pytest.raises(errors.InvalidGraphError):
        s.join(t, 5, 1)


def test_relabeled_and_subgraph():
    graph = Chain([2, 1, 3]).to_graph().with_mark("minus_one", 1)
    moved = graph.relabeled(10)
    assert moved.vertices == [10, 11, 12]
    assert moved.mark("minus_one") == 11
    assert graph.without([1]).edges == []
    assert len(graph.without([1]).components()) == 2


def test_json_round_trip_keeps_marks():
    graph = Chain([2, 1, 3]).to_graph().with_mark("minus_one", 1)
    data = graph.to_json()
    assert data["vertices"][1] == {"id": 1, "weight": -1}
    assert data["marks"] == {"minus_one": 1}
    assert DualGraph.from_json(data) == graph


def test_discriminant_of_a_fork():
    assert dual_graph.discriminant(D4) == 4
    assert dual_graph.discriminant(DualGraph()) == 1


def test_det_formula_on_chains():
    assert dual_graph.check_det_formula(Chain([2]), Chain([3]).to_graph(first_id=1), 0, 1)
    assert dual_graph.check_det_formula(DualGraph(), Chain([3]))
    with pytest.raises(errors.InvalidGraphError):
        dual_graph.check_det_formula(Chain([2]), Chain([3]).to_graph(first_id=1))


def test_recursion_matches_determinant_for_short_chains():
    for length in range(1, 5):
        for weights in itertools.product(range(1, 10), repeat=length):
            chain = Chain(weights)
            assert chain.discriminant() == dual_graph.discriminant(chain.to_graph())


@given(chains())
def test_recursion_matches_determinant(chain):
    assert dual_graph.discriminant_by_recursion(chain) == dual_graph.discriminant(chain.to_graph())


@given(trees(), trees(first_id=100), st.data())
def test_det_formula_on_trees(s, t, data):
    s0 = data.draw(st.sampled_from(s.vertices))
    t0 = data.draw(st.sampled_from(t.vertices))
    assert dual_graph.check_det_formula(s, t, s0, t0)


@given(chains(min_weight=2, max_weight=6))
def test_chains_of_weight_two_or_more_are_negative_definite(chain):
    assert dual_graph.is_negative_definite(chain)
    assert dual_graph.is_negative_definite(chain.to_graph())


def test_negative_definiteness():
    assert dual_graph.is_negative_definite(Chain([2, 1, 3]))
    assert not dual_graph.is_negative_definite(Chain([1, 1]))
    assert dual_graph.is_negative_definite(D4)
    assert dual_graph.leading_minors(Chain([2, 2])) == [2, 3]
    with pytest.raises(errors.DefinitenessError):
        dual_graph.is_negative_definite(Chain())


def test_classify_fork_and_chain():
    graph = fork([Chain([2, 2]), Chain([2]), Chain([3])])
    classification = dual_graph.classify(graph)
    assert classification.branching == (0,)
    assert classification.tips == (1, 3, 4)
    assert classification.twig_vertices == ((1, 2), (3,), (4,))
    assert classification.maximal_twigs == (Chain([2, 2]), Chain([2]), Chain([3]))
    assert classification.twig_count == 3
    chain = dual_graph.classify(Chain([2, 1, 3]))
    assert chain.is_chain
    assert chain.tips == (0, 2)
    assert chain.maximal_twigs == ()


def test_classify_rejects_cycles():
    cycle = DualGraph({0: -2, 1: -2, 2: -2}, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(errors.InvalidGraphError):
        dual_graph.classify(cycle)


def test_contractions():
    assert dual_graph.contracts_to_point(Chain([2, 1, 3]))
    assert dual_graph.contracts_to_point(Chain([2, 1, 3]).to_graph())
    assert dual_graph.contracts_to_point(Chain([1]))
    assert not dual_graph.contracts_to_point(Chain([2, 1, 2]))
    assert not dual_graph.contracts_to_point(Chain([2, 1, 2]).to_graph())
    assert dual_graph.contract_once(Chain([2, 1, 3]), 1).as_chain() == Chain([1, 2])
    with pytest.raises(errors.ContractionError):
        dual_graph.contract_once(Chain([2, 1, 3]), 0)
    star = DualGraph({0: -1, 1: -2, 2: -2, 3: -2}, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(errors.ContractionError):
        dual_graph.contract_once(star, 0)


def test_canonical_pairing_by_adjunction():
    pairing = dual_graph.canonical_pairing(Chain([2, 1, 3]))
    assert (pairing.k_dot, pairing.self_intersection, pairing.arithmetic_genus) == (0, -2, 0)
    single = dual_graph.canonical_pairing(Chain([2, 1, 3]), [2])
    assert (single.k_dot, single.self_intersection) == (1, -3)
    assert dual_graph.canonical_pairing(D4, []).arithmetic_genus == 0
    with pytest.raises(errors.InvalidGraphError):
        dual_graph.canonical_pairing(D4, [9])


@given(trees(), st.data())
def test_negative_definiteness_does_not_depend_on_the_vertex_order(tree, data):
    order = data.draw(st.permutations(tree.vertices))
    assert dual_graph.is_negative_definite(tree, order) == dual_graph.is_negative_definite(tree)


@given(chains())
def test_negative_definiteness_survives_reversal(chain):
    assert dual_graph.is_negative_definite(chain.reversed()) == dual_graph.is_negative_definite(chain)
    assert dual_graph.is_negative_definite(chain.to_graph()) == dual_graph.is_negative_definite(chain)


@given(chains())
def test_chain_contraction_does_not_depend_on_the_order(chain):
    expected = dual_graph.contracts_to_point(chain)
    assert dual_graph.contracts_to_point(chain.reversed()) == expected
    assert dual_graph.contracts_to_point(chain.to_graph()) == expected
    assert expected == (dual_graph.is_negative_definite(chain) and chain.discriminant() == 1)


@given(trees())
def test_contraction_keeps_the_discriminant(tree):
    d = dual_graph.discriminant(tree)
    for v in dual_graph.contractible_vertices(tree):
        assert dual_graph.discriminant(dual_graph.contract_once(tree, v)) == d
    if dual_graph.contracts_to_point(tree):
        assert d == 1


@given(blow_ups(), st.data())
def test_blow_ups_contract_in_any_order(graph, data):
    assert dual_graph.is_negative_definite(graph)
    assert dual_graph.discriminant(graph) == 1
    assert dual_graph.contracts_to_point(graph)
    current = graph
    while not current.is_empty:
        candidates = dual_graph.contractible_vertices(current)
        assert candidates
        current = dual_graph.contract_once(current, data.draw(st.sampled_from(candidates)))


@given(trees())
def test_branching_numbers_of_a_tree(tree):
    classification = dual_graph.classify(tree)
    assert sum(b - 2 for b in classification.branching_numbers.values()) == -2
    if not classification.is_chain:
        assert len(classification.tips) == 2 + sum(classification.branching_numbers[v] - 2
                                                   for v in classification.branching)
        assert sum(len(path) for path in classification.twig_vertices) < len(tree)


@given(trees(), st.data())
def test_trees_and_their_subforests_are_rational(tree, data):
    assert dual_graph.canonical_pairing(tree).arithmetic_genus == 0
    sub = data.draw(st.sets(st.sampled_from(tree.vertices), min_size=1))
    assert dual_graph.canonical_pairing(tree, sub).arithmetic_genus == 0
