import json
import pytest
import yaml
from click.testing import CliRunner
from twigcalc.cli.twigcalc import twigcalc_cli

QUARTIC = {"degree": 4, "cusps": ["(3/2)", "(3/2)", "(3/2)"], "assume": {"kappa_KD_two": True}}


@pytest.fixture
def run():
    runner = CliRunner()
    command = twigcalc_cli()

    def invoke(*args):
        return runner.invoke(command, list(args))

    return invoke


def test_disc(run):
    result = run("disc", "[2,1,3]")
    assert result.exit_code == 0
    assert result.output.strip() == "1"
    assert json.loads(run("disc", "--json", "[5,2]").output) == {"discriminant": 9}


def test_enum_chains(run):
    result = run("enum-chains", "--disc", "5")
    assert result.output.strip() == "[[2,2,2,2],[2,3],[3,2],[5]]"
    assert json.loads(run("enum-chains", "--disc", "3", "--json").output) == [[2, 2], [3]]


def test_twigs_of_a_chain(run):
    assert run("twigs", "[2,2]").output.strip() == "d=3 delta=1/3 e=2/3 u=1/3"


def test_hn_commands(run):
    assert run("hn", "mi", "(3/2)").output.strip() == "M=4 I=6"
    assert run("hn", "mults", "(16/9)").output.strip() == "(9,7,2,2,2,1,1)"
    assert run("hn", "resolve", "(3/2)").output.strip() == "[3,1,2]"
    assert run("hn", "mi", "(2/2)^k(2/1)", "--param", "k=2").output.strip() == "M=6 I=10"
    assert json.loads(run("hn", "mi", "--json", "(16/9)").output) == {"M": 24, "I": 144}


def test_invalid_pairs_exit_with_1(run):
    result = run("hn", "validate", "(4/2)")
    assert result.exit_code == 1
    assert "last pair" in result.output
    assert run("hn", "validate", "(3/2)").exit_code == 0


@pytest.mark.parametrize("args", [
    ("disc", "[2,x]"),
    ("hn", "mi", "(2/2)^k(2/1)"),
    ("hn", "mi", "(3/2)", "--param", "k"),
    ("hn", "resolve", "(3/1)"),
    ("check-curve", "does-not-exist.yaml"),
    ("search", "five-cusps", "--u-bound", "x/y"),
])
def test_bad_input_exits_with_2(run, args):
    result = run(*args)
    assert result.exit_code == 2


def test_small_u(run):
    data = json.loads(run("classify", "small-u", "--json").output)
    assert [entry["chain"] for entry in data] == ["[2,1,3,2]", "[2,2,1,4]", "[3,1,2,3]", "[4,1,2,2,3]"]


def test_five_cusp_search(run):
    result = run("search", "five-cusps")
    assert result.exit_code == 0
    assert result.output.strip().splitlines()[-1] == "7 solutions"
    assert "no degree" in result.output


def test_four_cusp_case(run):
    result = run("four-cusp", "--case", "1", "--sweep-bound", "60")
    assert result.exit_code == 0
    assert "Case 1: d**2 - 21*d = 444 + 66*k" in result.output
    assert "  certified" in result.output
    data = json.loads(run("four-cusp", "--case", "4", "--sweep-bound", "60", "--json").output)
    assert data[0]["discriminant"] == 96
    assert data[0]["certified"] is True


def test_check_curve(run, tmp_path):
    config = tmp_path / "quartic.yaml"
    config.write_text(yaml.safe_dump(QUARTIC), encoding="utf-8")
    result = run("check-curve", str(config))
    assert result.exit_code == 0
    assert "star: 9/2 <= 4 <= 13/2 fails" in result.output
    assert result.output.strip().endswith("certificate: rectifiable")
    data = json.loads(run("check-curve", "--json", str(config)).output)
    assert data["surface"]["t"] == 6
    assert data["certificate"] == "rectifiable"


def test_verify_claims_alias(run, tmp_path):
    result = run("verify-claims", "--group", "bark")
    assert result.exit_code == 0
    assert "3 checks: 3 passed, 0 failed, 0 assumed" in result.output
    manifest = tmp_path / "claims.yaml"
    manifest.write_text(yaml.safe_dump({"name": "claims", "children": [{"name": "chains", "children": [
        {"name": "disc-2", "check": "chains_by_discriminant", "args": {"n": 2}, "expected": ["[3]"]}]}]}),
        encoding="utf-8")
    failed = run("verify-claims", "--manifest", str(manifest))
    assert failed.exit_code == 1
    assert "disc-2: fail" in failed.output
    assert run("verify-claims", "--group", "nothing").exit_code == 2


def test_verify_paper(run):
    result = run("verify-paper", "--section", "3")
    assert result.exit_code == 0
    assert "3 checks: 2 passed, 0 failed, 1 assumed" in result.output
    data = json.loads(run("verify-paper", "--json", "--section", "§3").output)
    assert [check["check_id"] for check in data["checks"]] == ["conclusions/quartic", "conclusions/twig-count",
                                                               "conclusions/assumptions"]
    assert data["checks"][1]["paper_anchor"]["section"] == "3"
    assert run("verify-paper", "--section", "9").exit_code == 2


def test_verify_paper_rejects_a_bad_k_max():
    result = CliRunner().invoke(twigcalc_cli(), ["verify-paper", "--group", "bark"], env={"TWIGCALC_MAX_K": "ten"})
    assert result.exit_code == 2
    assert "TWIGCALC_MAX_K" in result.output
