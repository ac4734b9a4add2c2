import pytest
from twigcalc import TwigcalcLibrary


@pytest.fixture(scope="module")
def library():
    return TwigcalcLibrary()


def test_graph_keywords(library):
    assert library.discriminant_of("[5,2]") == 9
    assert library.twig_invariants_of("[2,2]") == {"d": "3", "delta": "1/3", "e": "2/3", "u": "1/3"}
    assert library.chains_with_discriminant("3") == "[[2,2],[3]]"


def test_cusp_keywords(library):
    assert library.resolution_of_pairs("(16/9)") == "[5,2,1,3,2,2,3]"
    assert library.resolution_of_pairs("(4/2)(2/2)^k(2/1)", k="1") == "[2,1,3,2,2]"
    assert library.multiplicities_of_pairs("(3/2)") == "(2,1,1)"
    assert library.small_u_chains()[0] == "[2,1,3,2] 2/5 7/10"


def test_certificate_keywords(library, tmp_path):
    config = tmp_path / "quartic.yaml"
    config.write_text('degree: 4\ncusps: ["(3/2)", "(3/2)", "(3/2)"]\nassume: {kappa_KD_two: true}\n',
                      encoding="utf-8")
    assert library.certificate_for_curve(str(config)) == "rectifiable"
    library.four_cusp_case_should_be_certified("3")
    assert library.claims_should_hold("bark") == 3
    assert library.claims_should_hold(section="3") == 3
