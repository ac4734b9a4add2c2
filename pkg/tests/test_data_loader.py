import json
import pytest
import twigcalc.errors as errors
import twigcalc.data_loader as data_loader
from twigcalc.data_loader import DataLoader
from twigcalc.dual_graph import Chain, DualGraph


def test_parse_chain_shorthand():
    assert data_loader.parse_chain("[2,1,3]") == Chain([2, 1, 3])
    assert data_loader.parse_chain(" [5] ") == Chain([5])


@pytest.mark.parametrize("text", ["2,1,3", "[2, x]", "[2, true]", "[2, 1"])
def test_malformed_chains_raise_parse_errors(text):
    with pytest.raises(errors.ParseError):
        data_loader.parse_chain(text)


def test_graph_from_dict():
    graph = data_loader.graph_from_dict({
        "vertices": [{"id": 0, "weight": -2}, {"id": 1, "weight": -1}, {"id": 2, "weight": -3}],
        "edges": [[0, 1], [1, 2]],
        "marks": {"minus_one": 1},
    })
    assert graph.as_chain() == Chain([2, 1, 3])
    assert graph.mark("minus_one") == 1


@pytest.mark.parametrize("data", [
    [],
    {"vertices": [{"id": 0}]},
    {"vertices": [{"id": 0, "weight": "-1"}]},
    {"vertices": [{"id": 0, "weight": -1}], "edges": [[0]]},
    {"vertices": [{"id": 0, "weight": -1}], "marks": {"tip": 0}},
    {"vertices": [], "colour": "red"},
])
def test_invalid_graph_data(data):
    with pytest.raises(errors.ParseError):
        data_loader.graph_from_dict(data)


def test_load_graph_from_files_and_arguments(tmp_path):
    graph = Chain([2, 1, 3]).to_graph()
    json_file = tmp_path / "graph.json"
    json_file.write_text(json.dumps(graph.to_json()), encoding="utf-8")
    assert DataLoader.load_graph(str(json_file)) == graph
    yaml_file = tmp_path / "chain.yaml"
    yaml_file.write_text("[2, 1, 3]\n", encoding="utf-8")
    assert DataLoader.load_graph(str(yaml_file)) == Chain([2, 1, 3])
    assert DataLoader.load_graph("[5,2]") == Chain([5, 2])
    assert isinstance(DataLoader.load_graph(json.dumps(graph.to_json())), DualGraph)


def test_parse_errors_carry_the_location(tmp_path):
    broken = tmp_path / "broken.yaml"
    broken.write_text("vertices:\n  - {id: 0, weight: -1\nedges: []\n", encoding="utf-8")
    with pytest.raises(errors.ParseError) as info:
        DataLoader.load_graph(str(broken))
    assert info.value.source == str(broken)
    assert info.value.line is not None
    assert info.value.location_message.startswith(f"{broken}:{info.value.line}")


def test_missing_file():
    with pytest.raises(errors.ParseError):
        DataLoader.load_yaml_file("does/not/exist.yaml")


def test_resources_are_bundled():
    assert DataLoader.load_resource("claims.yaml")["name"] == "claims"
    assert len(DataLoader.load_resource("four_cusp_cases.yaml")["cases"]) == 5


def test_graph_file_names_are_never_read_as_inline_text():
    with pytest.raises(errors.ParseError) as info:
        DataLoader.load_graph("missing/graph.json")
    assert str(info.value).startswith("File not found")
    assert info.value.source == "missing/graph.json"
    with pytest.raises(errors.ParseError):
        DataLoader.load_graph("chain.YML")
