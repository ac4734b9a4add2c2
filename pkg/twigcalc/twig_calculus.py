from __future__ import annotations
import typing
import dataclasses
from fractions import Fraction
import sympy
import robot.api.logger as robot_logger
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph


@dataclasses.dataclass(frozen=True)
class TwigInvariants:
    """
    Invariants of a negative definite chain ``T`` read from its tip:
    ``d = d(T)``, ``delta = 1/d``, ``e = d(T - tip)/d`` and ``u = e - delta``.
    """
    d: int
    delta: Fraction
    e: Fraction
    u: Fraction

    def to_json(self) -> dict:
        return {"d": self.d, "delta": str(self.delta), "e": str(self.e), "u": str(self.u)}


@dataclasses.dataclass(frozen=True)
class BarkCoefficients:
    coefficients: typing.Dict[dual_graph.VertexId, Fraction]

    @property
    def support(self) -> typing.List[dual_graph.VertexId]:
        return [v for v, b in self.coefficients.items() if b != 0]

    def __getitem__(self, vertex_id: dual_graph.VertexId) -> Fraction:
        return self.coefficients.get(vertex_id, Fraction(0))


@dataclasses.dataclass(frozen=True)
class DivisorInvariants:
    twigs: typing.Tuple[typing.Tuple[dual_graph.Chain, TwigInvariants], ...]
    delta: Fraction
    e: Fraction

    @property
    def twig_count(self) -> int:
        return len(self.twigs)


def twig_invariants(chain: dual_graph.Chain) -> TwigInvariants:
    if len(chain) == 0:
        raise errors.InvalidGraphError("Twig invariants need a non empty chain")
    if not dual_graph.is_negative_definite(chain):
        raise errors.DefinitenessError(f"Chain {chain} is not negative definite")
    tails = chain.tail_discriminants()
    d = tails[0]
    delta = Fraction(1, d)
    e = Fraction(tails[1], d)
    return TwigInvariants(d, delta, e, e - delta)


def _twig_data(g: dual_graph.GraphLike) -> typing.Tuple[dual_graph.DualGraph, dual_graph.Classification]:
    graph = dual_graph.as_graph(g)
    classification = dual_graph.classify(graph)
    if classification.is_chain:
        raise errors.InvalidGraphError("A chain has no maximal twigs, so its bark is not defined here")
    for twig in classification.maximal_twigs:
        if not dual_graph.is_negative_definite(twig):
            raise errors.DefinitenessError(f"Maximal twig {twig} is not negative definite")
    return graph, classification


def bark(g: dual_graph.GraphLike) -> BarkCoefficients:
    """
    Bark of the union of maximal twigs: the unique combination ``B`` of twig components with
    ``B.T = beta(T) - 2`` for every twig component ``T``.

    On a maximal twig ``T = T1 + ... + Tk`` (``T1`` the tip) the coefficient of ``Tj`` is ``d(T - T1 - ... - Tj)/d(T)``.
    """
    graph, classification = _twig_data(g)
    coefficients = {}
    for path, twig in zip(classification.twig_vertices, classification.maximal_twigs):
        tails = twig.tail_discriminants()
        for j, vertex_id in enumerate(path):
            coefficients[vertex_id] = Fraction(tails[j + 1], tails[0])
    solved = bark_by_linear_solve(graph)
    assert solved.coefficients == coefficients, \
        f"Bark closed form {coefficients} differs from the linear solve {solved.coefficients}"
    return BarkCoefficients(coefficients)


def bark_by_linear_solve(g: dual_graph.GraphLike) -> BarkCoefficients:
    graph, classification = _twig_data(g)
    order = [v for path in classification.twig_vertices for v in path]
    matrix = graph.intersection_matrix(graph.vertices).extract(
        [graph.vertices.index(v) for v in order], [graph.vertices.index(v) for v in order])
    rhs = sympy.Matrix([classification.branching_numbers[v] - 2 for v in order])
    solution = matrix.LUsolve(rhs)
    coefficients = {}
    for v, value in zip(order, solution):
        value = sympy.Rational(value)
        coefficients[v] = Fraction(int(value.p), int(value.q))
    return BarkCoefficients(coefficients)


def bark_square(g: dual_graph.GraphLike) -> Fraction:
    """
    ``(Bk)^2``, which equals ``-e(D)``.
    """
    graph = dual_graph.as_graph(g)
    coefficients = bark(graph).coefficients
    total = Fraction(0)
    for v, b in coefficients.items():
        total += b * b * graph.weight(v)
    for a, c in graph.graph.edges:
        if a in coefficients and c in coefficients:
            total += 2 * coefficients[a] * coefficients[c]
    invariants = divisor_invariants(graph)
    assert total == -invariants.e, f"Bark square {total} should be -e(D) = {-invariants.e}"
    return total


def divisor_invariants(g: dual_graph.GraphLike) -> DivisorInvariants:
    """
    ``delta(D)`` and ``e(D)`` summed over the maximal twigs of a tree.
    """
    _, classification = _twig_data(g)
    twigs = tuple((twig, twig_invariants(twig)) for twig in classification.maximal_twigs)
    delta = sum((inv.delta for _, inv in twigs), Fraction(0))
    e = sum((inv.e for _, inv in twigs), Fraction(0))
    robot_logger.debug(f"divisor_invariants: {len(twigs)} twigs, delta={delta}, e={e}")
    return DivisorInvariants(twigs, delta, e)
