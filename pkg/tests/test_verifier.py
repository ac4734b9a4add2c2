import copy
import pytest
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.report as report
import twigcalc.verifier as verifier
from twigcalc.data_loader import DataLoader


CLAIM_IDS = [
    "chains/disc-2", "chains/disc-3", "chains/disc-4", "chains/disc-5", "chains/disc-6",
    "chains/recursion-vs-determinant", "chains/join-formula", "chains/hn-golden-3-2", "chains/hn-golden-16-9",
    "chains/resolution-round-trip", "chains/star-segments",
    "bark/twig-2-2", "bark/defining-property", "bark/twos-invariants",
    "families/members", "families/completeness", "families/u-bar-identity",
    "small-u/t-prime", "small-u/classification",
    "five-cusps/search", "five-cusps/exhaustive-agrees", "five-cusps/relaxed-bound", "five-cusps/audit-candidates",
    "five-cusps/audit-survivors", "five-cusps/multiplicity-data", "five-cusps/degree-elimination",
    "four-cusps/twig-options", "four-cusps/case-1", "four-cusps/case-2", "four-cusps/case-3", "four-cusps/case-4",
    "four-cusps/case-5",
    "conclusions/quartic", "conclusions/five-cusps-impossible", "conclusions/four-cusps-impossible",
    "conclusions/twig-count", "conclusions/twig-bound", "conclusions/assumptions",
]


def manifest_with(*claims):
    return {"name": "claims", "children": [{"name": "group", "children": list(claims)}]}


def test_every_claim_names_a_registered_check():
    root = report.ClaimLoader.load_manifest()
    assert [claim.claim_id for claim in root.claims] == CLAIM_IDS
    assert {claim.check for claim in root.claims} <= set(verifier.CHECKS)
    assert [group.name for group in root.children] == \
           ["chains", "bark", "families", "small-u", "five-cusps", "four-cusps", "conclusions"]


def test_every_anchor_quotes_the_references_verbatim():
    references = report.ClaimLoader.load_references()
    assert sorted(references) == ["1", "2", "3", "4", "5"]
    for claim in report.ClaimLoader.load_manifest().claims:
        assert isinstance(claim.anchor, dict), claim.claim_id
        excerpts = references[claim.section]["excerpts"]
        assert any(claim.anchor["quote"] in excerpt for excerpt in excerpts), claim.claim_id
        assert claim.to_json()["paper_anchor"] == claim.anchor


def test_section_filter():
    root = report.ClaimLoader.load_manifest(section="3")
    assert [claim.claim_id for claim in root.claims] == ["conclusions/quartic", "conclusions/twig-count",
                                                         "conclusions/assumptions"]
    assert [group.name for group in root.children] == ["conclusions"]
    fourth = report.ClaimLoader.load_manifest(section="§4")
    assert [group.name for group in fourth.children] == ["families", "small-u", "five-cusps"]
    assert len(report.ClaimLoader.load_manifest(group="chains", section="5").claims) == 4
    with pytest.raises(errors.ParseError):
        report.ClaimLoader.load_manifest(section="9")
    unanchored = manifest_with({"name": "a", "check": "twig_bound"},
                               {"name": "b", "check": "twig_bound", "anchor": constants.PLUMBING})
    assert report.ClaimLoader.load_manifest(unanchored, section="2").claims == []
    with pytest.raises(errors.ParseError):
        report.ClaimLoader.load_manifest(manifest_with({"name": "a", "check": "twig_bound", "anchor": {"page": 3}}))


def test_claim_ids_and_loading_errors():
    root = report.ClaimLoader.load_manifest(group="bark")
    assert [claim.claim_id for claim in root.claims] == ["bark/twig-2-2", "bark/defining-property",
                                                         "bark/twos-invariants"]
    with pytest.raises(errors.ParseError):
        report.ClaimLoader.load_manifest(group="five-points")
    with pytest.raises(errors.ParseError):
        report.ClaimLoader.load_manifest({"name": "claims"})
    duplicated = manifest_with({"name": "a", "check": "twig_bound"}, {"name": "a", "check": "twig_bound"})
    with pytest.raises(AssertionError):
        report.ClaimLoader.load_manifest(duplicated)


def test_chain_claims_pass():
    verification = verifier.verify_claims(group="chains")
    assert verification.ok, verification.render()
    assert len(verification.checks) == 11
    assert all(claim.status == constants.PASS for claim in verification.checks)
    assert set(verification.timing) == {claim.claim_id for claim in verification.checks}


@pytest.mark.parametrize("group", ["bark", "small-u"])
def test_groups_pass(group):
    assert verifier.verify_claims(group=group).ok


def test_checks_are_deterministic_and_parallel_keeps_the_order():
    first = verifier.verify_claims(group="bark").to_json()
    second = verifier.verify_claims(group="bark", parallel=True).to_json()
    assert first["checks"] == second["checks"]
    assert first["summary"] == {"total": 3, "passed": 3, "failed": 0, "assumed": 0}


def test_a_wrong_expectation_fails_exactly_one_claim():
    data = copy.deepcopy(DataLoader.load_resource(constants.CLAIMS_FILE))
    chains = next(group for group in data["children"] if group["name"] == "chains")
    disc_5 = next(claim for claim in chains["children"] if claim["name"] == "disc-5")
    disc_5["expected"] = ["[2,2,2,2]", "[2,3]", "[5]"]
    verification = verifier.verify_claims(group="chains", manifest=data)
    assert [claim.claim_id for claim in verification.failures] == ["chains/disc-5"]
    failed = verification.failures[0].to_json()
    assert failed["observed"] == ["[2,2,2,2]", "[2,3]", "[3,2]", "[5]"]
    assert "disc-5: fail" in verification.render()


def test_unknown_checks_and_errors_fail():
    data = manifest_with(
        {"name": "missing", "check": "no_such_check"},
        {"name": "broken", "check": "chains_by_discriminant", "args": {"n": 0}, "expected": []},
    )
    verification = verifier.verify_claims(manifest=data)
    assert [claim.status for claim in verification.checks] == [constants.FAIL, constants.FAIL]
    assert "Unknown check" in verification.checks[0].details
    assert verification.checks[1].details.startswith("SearchError")


def test_assumed_claims():
    data = manifest_with({"name": "assumptions", "check": "assumptions", "assumed": True, "statement": "assumed"})
    verification = verifier.verify_claims(manifest=data)
    assert verification.ok
    assert verification.to_json()["summary"]["assumed"] == 1
    assert "kappa(K + E) >= 0" in verification.checks[0].observed


def test_individual_checks():
    assert verifier.CHECKS["bark_of_twig"]([2, 2]) == ["2/3", "1/3"]
    assert verifier.CHECKS["twig_options"]("2/3") == ["[2] + [6]", "[6] + [2]", "[3] + [3]"]
    assert verifier.CHECKS["audit_t5_count"]() == 17
    assert verifier.CHECKS["hn_golden"](3, 2) == {"chain": "[2,1,3]", "M": 4, "I": 6, "multiplicities": "(2,1,1)"}


def test_bad_arguments_fail_the_claim():
    data = manifest_with({"name": "typo", "check": "chains_by_discriminant", "args": {"m": 2}, "expected": ["[2]"]})
    verification = verifier.verify_claims(manifest=data)
    assert verification.checks[0].status == constants.FAIL
    assert verification.checks[0].details.startswith("TypeError: ")
    assert not verification.ok


@pytest.mark.parametrize("value", ["many", "0"])
def test_invalid_k_max_is_rejected_before_running(monkeypatch, value):
    monkeypatch.setenv(constants.ENV_MAX_K, value)
    with pytest.raises(errors.ParseError) as info:
        verifier.verify_claims(group="bark")
    assert info.value.source == constants.ENV_MAX_K


def test_twig_count_derivation():
    assert verifier.CHECKS["twig_count_derivation"](8) == {"t_max": [9, 9, 9, 10, 10, None, None, None],
                                                          "max_cusps": 5}
