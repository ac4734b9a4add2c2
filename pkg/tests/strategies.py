import math
import hypothesis.strategies as st
import twigcalc.dual_graph as dual_graph
import twigcalc.cusp_model as cusp_model
import twigcalc.curve_config as curve_config


def chains(min_weight: int = 1, max_weight: int = 9, max_size: int = 8) -> st.SearchStrategy:
    return st.lists(st.integers(min_weight, max_weight), min_size=1, max_size=max_size).map(dual_graph.Chain)


@st.composite
def trees(draw, first_id: int = 0, max_size: int = 8) -> dual_graph.DualGraph:
    size = draw(st.integers(1, max_size))
    weights = draw(st.lists(st.integers(-9, -1), min_size=size, max_size=size))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, size)]
    vertices = [(first_id + i, w) for i, w in enumerate(weights)]
    edges = [(first_id + i, first_id + p) for i, p in enumerate(parents, start=1)]
    return dual_graph.DualGraph(vertices, edges)


@st.composite
def forks(draw) -> dual_graph.DualGraph:
    twigs = draw(st.lists(chains(min_weight=2, max_weight=9, max_size=4), min_size=3, max_size=4))
    return dual_graph.fork(twigs, draw(st.integers(-4, -1)))


@st.composite
def blow_ups(draw, max_steps: int = 7) -> dual_graph.DualGraph:
    """
    Exceptional divisor of blow-ups over a smooth point: each step blows up a free point of a curve
    or the intersection of two curves.
    """
    weights = {0: -1}
    edges = set()
    for new in range(1, draw(st.integers(0, max_steps)) + 1):
        centres = sorted(weights) + sorted(edges)
        centre = draw(st.sampled_from(centres))
        if isinstance(centre, tuple):
            edges.discard(centre)
            for v in centre:
                weights[v] -= 1
                edges.add((v, new))
        else:
            weights[centre] -= 1
            edges.add((centre, new))
        weights[new] = -1
    return dual_graph.DualGraph(weights, sorted(edges))


@st.composite
def configs(draw, max_degree: int = 6) -> curve_config.CurveConfig:
    """
    Single pair cusps whose delta invariants add up to the genus ``C(d - 1, 2)`` of a plane curve of degree ``d``.
    """
    degree = draw(st.integers(3, max_degree))
    genus = (degree - 1) * (degree - 2) // 2
    c = draw(st.integers(1, min(4, genus)))
    cuts = sorted(draw(st.sets(st.integers(1, genus - 1), min_size=c - 1, max_size=c - 1))) if c > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [genus])]
    cusps = []
    for k in parts:
        # (a - 1)(b - 1) / 2 = k; (2k + 1, 2) always qualifies
        pairs = [(a, b) for b in range(2, 2 * k + 2) for a in range(b + 1, 2 * k + 2)
                 if math.gcd(a, b) == 1 and (a - 1) * (b - 1) == 2 * k]
        cusps.append(cusp_model.HNPairSeq((draw(st.sampled_from(pairs)),)))
    return curve_config.CurveConfig(degree, tuple(cusps))
