from fractions import Fraction
import pytest
from hypothesis import given
import twigcalc.errors as errors
import twigcalc.twig_calculus as twig_calculus
from twigcalc.dual_graph import Chain, DualGraph, fork
from strategies import chains, forks


@pytest.mark.parametrize("k", range(1, 21))
def test_invariants_of_twos(k):
    invariants = twig_calculus.twig_invariants(Chain.twos(k))
    assert invariants.d == k + 1
    assert invariants.delta == Fraction(1, k + 1)
    assert invariants.e == Fraction(k, k + 1)
    assert invariants.u == Fraction(k - 1, k + 1)


def test_invariants_are_read_from_the_tip():
    assert twig_calculus.twig_invariants(Chain([2, 3])).e == Fraction(3, 5)
    assert twig_calculus.twig_invariants(Chain([3, 2])).e == Fraction(2, 5)
    assert twig_calculus.twig_invariants(Chain([6])).to_json() == {"d": 6, "delta": "1/6", "e": "1/6", "u": "0"}


def test_invariants_need_a_negative_definite_chain():
    with pytest.raises(errors.DefinitenessError):
        twig_calculus.twig_invariants(Chain([1, 1]))
    with pytest.raises(errors.InvalidGraphError):
        twig_calculus.twig_invariants(Chain())


def test_bark_of_the_twig_2_2():
    graph = fork([Chain([2, 2]), Chain([2]), Chain([3])])
    bark = twig_calculus.bark(graph)
    assert (bark[1], bark[2]) == (Fraction(2, 3), Fraction(1, 3))
    assert bark[3] == Fraction(1, 2)
    assert bark[4] == Fraction(1, 3)
    assert bark[0] == 0
    assert 0 not in bark.support


def test_divisor_invariants_of_a_fork():
    graph = fork([Chain([2, 2]), Chain([2]), Chain([3])])
    invariants = twig_calculus.divisor_invariants(graph)
    assert invariants.twig_count == 3
    assert invariants.delta == Fraction(1, 3) + Fraction(1, 2) + Fraction(1, 3)
    assert invariants.e == Fraction(2, 3) + Fraction(1, 2) + Fraction(1, 3)
    assert twig_calculus.bark_square(graph) == -invariants.e


def test_bark_needs_maximal_twigs():
    with pytest.raises(errors.InvalidGraphError):
        twig_calculus.bark(Chain([2, 1, 3]))
    indefinite = fork([Chain([1, 1]), Chain([2]), Chain([2])])
    with pytest.raises(errors.DefinitenessError):
        twig_calculus.bark(indefinite)


@given(forks())
def test_bark_closed_form_solves_the_linear_system(graph):
    assert twig_calculus.bark(graph) == twig_calculus.bark_by_linear_solve(graph)


@given(forks())
def test_bark_square_is_minus_e(graph):
    assert twig_calculus.bark_square(graph) == -twig_calculus.divisor_invariants(graph).e


@given(chains(min_weight=2))
def test_u_is_e_minus_delta(chain):
    invariants = twig_calculus.twig_invariants(chain)
    assert invariants.u == invariants.e - invariants.delta
    assert 0 < invariants.delta <= Fraction(1, 2)
    assert 0 <= invariants.e < 1
