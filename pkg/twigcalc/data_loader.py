from __future__ import annotations
import typing
import os
import yaml
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph

RESOURCES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "resources")


class DataLoader:
    """
    Reads graphs, chains and data files. JSON input goes through the YAML loader.
    """

    @staticmethod
    def load_yaml_text(text: str, source: str = None) -> typing.Any:
        try:
            return yaml.safe_load(text)
        except yaml.MarkedYAMLError as ex:
            mark = ex.problem_mark or ex.context_mark
            line = mark.line + 1 if mark is not None else None
            column = mark.column + 1 if mark is not None else None
            raise errors.ParseError(str(ex.problem or ex.context), source, line, column) from ex
        except yaml.YAMLError as ex:
            raise errors.ParseError(str(ex), source) from ex

    @staticmethod
    def load_yaml_file(file: os.PathLike) -> typing.Any:
        if file is None or not os.path.isfile(file):
            raise errors.ParseError("File not found", str(file))
        with open(file, encoding="utf-8") as src:
            return DataLoader.load_yaml_text(src.read(), str(file))

    @staticmethod
    def load_resource(name: str) -> typing.Any:
        return DataLoader.load_yaml_file(os.path.join(RESOURCES_DIR, name))

    @staticmethod
    def parse_chain(text: str, source: str = None) -> dual_graph.Chain:
        """
        Chain shorthand: ``"[2,1,3]"`` (weights are negated self-intersections).
        """
        if not isinstance(text, str) or not text.strip().startswith("["):
            raise errors.ParseError(f"Chain shorthand should look like [2,1,3], got {text!r}", source, 1, 1)
        data = DataLoader.load_yaml_text(text, source)
        return DataLoader.chain_from_list(data, source)

    @staticmethod
    def chain_from_list(data: typing.Any, source: str = None) -> dual_graph.Chain:
        if not isinstance(data, list):
            raise errors.ParseError(f"Chain should be a list of integers, got {data!r}", source)
        for position, w in enumerate(data, start=1):
            if isinstance(w, bool) or not isinstance(w, int):
                raise errors.ParseError(f"Chain entry {position} is not an integer: {w!r}", source, 1, None)
        return dual_graph.Chain(data)

    @staticmethod
    def graph_from_dict(data: typing.Any, source: str = None) -> dual_graph.DualGraph:
        if not isinstance(data, dict):
            raise errors.ParseError(f"Graph should be a mapping, got {type(data).__name__}", source)
        unknown = set(data) - {"vertices", "edges", "marks"}
        if unknown:
            raise errors.ParseError(f"Unknown graph keys: {sorted(unknown)}", source)
        vertices = []
        for vertex in data.get("vertices", []):
            if not isinstance(vertex, dict) or "id" not in vertex or "weight" not in vertex:
                raise errors.ParseError(f"Vertex should define 'id' and 'weight': {vertex!r}", source)
            if not all(isinstance(vertex[key], int) and not isinstance(vertex[key], bool) for key in ("id", "weight")):
                raise errors.ParseError(f"Vertex 'id' and 'weight' should be integers: {vertex!r}", source)
            vertices.append((vertex["id"], vertex["weight"]))
        edges = []
        for edge in data.get("edges", []):
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise errors.ParseError(f"Edge should be a pair of vertex ids: {edge!r}", source)
            edges.append((edge[0], edge[1]))
        marks = data.get("marks") or {}
        if not isinstance(marks, dict):
            raise errors.ParseError(f"'marks' should be a mapping: {marks!r}", source)
        for mark in marks:
            if mark not in (constants.MARK_MINUS_ONE, constants.MARK_CURVE):
                raise errors.ParseError(f"Unknown mark '{mark}'", source)
        return dual_graph.DualGraph(vertices, edges, marks)

    @staticmethod
    def load_graph(source: str) -> typing.Union[dual_graph.Chain, dual_graph.DualGraph]:
        """
        ``source`` is a path to a JSON/YAML graph file, a chain shorthand or an inline JSON graph.
        """
        if os.path.isfile(source) or source.lower().endswith(constants.DATA_FILE_EXT):
            data = DataLoader.load_yaml_file(source)
            name = source
        else:
            data = DataLoader.load_yaml_text(source, "<argument>")
            name = "<argument>"
        if isinstance(data, list):
            return DataLoader.chain_from_list(data, name)
        return DataLoader.graph_from_dict(data, name)


def parse_chain(text: str) -> dual_graph.Chain:
    return DataLoader.parse_chain(text)


def graph_from_dict(data: dict) -> dual_graph.DualGraph:
    return DataLoader.graph_from_dict(data)
