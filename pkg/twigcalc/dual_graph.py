from __future__ import annotations
import typing
import dataclasses
import networkx
import sympy
import robot.api.logger as robot_logger
import twigcalc.errors as errors

VertexId = typing.Hashable
GraphLike = typing.Union["Chain", "DualGraph"]


class Chain:
    """
    Ordered list of weights ``[w1, ..., wk]``. Entry ``w`` stands for a rational curve of self-intersection ``-w``,
    consecutive entries meet transversally once. The first entry is the *tip* of the chain.
    """

    def __init__(self, weights: typing.Iterable[int] = ()) -> None:
        self._weights = tuple(int(w) for w in weights)

    @staticmethod
    def twos(count: int) -> Chain:
        """
        The chain ``(2)_count``.
        """
        assert count >= 0, f"count should be non negative, but it is {count}"
        return Chain([2] * count)

    @staticmethod
    def parse(text: str) -> Chain:
        import twigcalc.data_loader as data_loader
        return data_loader.parse_chain(text)

    @property
    def weights(self) -> typing.Tuple[int, ...]:
        return self._weights

    @property
    def tip(self) -> int:
        assert len(self) > 0, f"Empty chain has no tip"
        return self._weights[0]

    @property
    def without_tip(self) -> Chain:
        return Chain(self._weights[1:])

    @property
    def sort_key(self) -> typing.Tuple[int, typing.Tuple[int, ...]]:
        return len(self), self._weights

    def reversed(self) -> Chain:
        return Chain(reversed(self._weights))

    def discriminant(self) -> int:
        return discriminant_by_recursion(self)

    def tail_discriminants(self) -> typing.List[int]:
        return tail_discriminants(self)

    def is_all_twos(self) -> bool:
        return len(self) > 0 and all(w == 2 for w in self._weights)

    def to_graph(self, first_id: int = 0) -> DualGraph:
        vertices = [(first_id + i, -w) for i, w in enumerate(self._weights)]
        edges = [(first_id + i, first_id + i + 1) for i in range(len(self._weights) - 1)]
        return DualGraph(vertices, edges)

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(self._weights)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Chain(self._weights[item])
        return self._weights[item]

    def __add__(self, other: typing.Union[Chain, typing.Iterable[int]]) -> Chain:
        return Chain(self._weights + tuple(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, Chain):
            return self._weights == other._weights
        return NotImplemented

    def __lt__(self, other: Chain) -> bool:
        return self.sort_key < other.sort_key

    def __hash__(self) -> int:
        return hash(("Chain", self._weights))

    def __repr__(self) -> str:
        return f"Chain({list(self._weights)})"

    def __str__(self) -> str:
        return "[" + ",".join(str(w) for w in self._weights) + "]"


class DualGraph:
    """
    Weighted dual graph of a divisor with simple normal crossings.
    Every vertex carries its self-intersection as ``weight``; every edge is a transversal intersection point.
    ``marks`` names distinguished vertices (``minus_one``, ``curve``).

    Instances are immutable: every operation returns a new graph.
    """

    def __init__(self,
                 vertices: typing.Union[typing.Mapping[VertexId, int],
                                        typing.Iterable[typing.Tuple[VertexId, int]]] = (),
                 edges: typing.Iterable[typing.Tuple[VertexId, VertexId]] = (),
                 marks: typing.Mapping[str, VertexId] = None, ) -> None:
        if isinstance(vertices, typing.Mapping):
            vertices = vertices.items()
        graph = networkx.Graph()
        for vertex_id, weight in vertices:
            if vertex_id in graph:
                raise errors.InvalidGraphError(f"Duplicated vertex id: {vertex_id!r}")
            graph.add_node(vertex_id, weight=int(weight))
        for a, b in edges:
            if a == b:
                raise errors.InvalidGraphError(f"Self-loop at vertex {a!r}")
            for v in (a, b):
                if v not in graph:
                    raise errors.InvalidGraphError(f"Edge ({a!r}, {b!r}) uses unknown vertex {v!r}")
            if graph.has_edge(a, b):
                raise errors.InvalidGraphError(f"Multi-edge between {a!r} and {b!r}")
            graph.add_edge(a, b)
        self._graph = networkx.freeze(graph)
        self._marks = {}
        for mark, vertex_id in (marks or {}).items():
            if vertex_id not in graph:
                raise errors.InvalidGraphError(f"Mark '{mark}' points to unknown vertex {vertex_id!r}")
            self._marks[mark] = vertex_id

    @staticmethod
    def from_networkx(graph: networkx.Graph, marks: typing.Mapping[str, VertexId] = None) -> DualGraph:
        return DualGraph([(v, graph.nodes[v]["weight"]) for v in graph.nodes], graph.edges, marks)

    @property
    def graph(self) -> networkx.Graph:
        return self._graph

    @property
    def marks(self) -> typing.Dict[str, VertexId]:
        return dict(self._marks)

    @property
    def vertices(self) -> typing.List[VertexId]:
        return sorted(self._graph.nodes, key=_vertex_sort_key)

    @property
    def edges(self) -> typing.List[typing.Tuple[VertexId, VertexId]]:
        edges = [tuple(sorted(e, key=_vertex_sort_key)) for e in self._graph.edges]
        return sorted(edges, key=lambda e: (_vertex_sort_key(e[0]), _vertex_sort_key(e[1])))

    @property
    def is_empty(self) -> bool:
        return self._graph.number_of_nodes() == 0

    @property
    def is_tree(self) -> bool:
        return not self.is_empty and networkx.is_tree(self._graph)

    @property
    def is_forest(self) -> bool:
        return self.is_empty or networkx.is_forest(self._graph)

    @property
    def key(self) -> typing.Tuple[frozenset, frozenset]:
        """
        Hashable description of the labelled graph (marks excluded).
        """
        return (frozenset((v, self.weight(v)) for v in self._graph.nodes),
                frozenset(frozenset(e) for e in self._graph.edges))

    def __len__(self) -> int:
        return self._graph.number_of_nodes()

    def __contains__(self, vertex_id: VertexId) -> bool:
        return vertex_id in self._graph

    def __eq__(self, other) -> bool:
        if isinstance(other, DualGraph):
            return self.key == other.key and self._marks == other._marks
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        weights = {v: self.weight(v) for v in self.vertices}
        return f"DualGraph({weights}, {self.edges})"

    def weight(self, vertex_id: VertexId) -> int:
        return self._graph.nodes[vertex_id]["weight"]

    def degree(self, vertex_id: VertexId) -> int:
        return self._graph.degree[vertex_id]

    def neighbours(self, vertex_id: VertexId) -> typing.List[VertexId]:
        return sorted(self._graph.neighbors(vertex_id), key=_vertex_sort_key)

    def mark(self, name: str) -> typing.Optional[VertexId]:
        return self._marks.get(name)

    def with_mark(self, name: str, vertex_id: VertexId) -> DualGraph:
        marks = self.marks
        marks[name] = vertex_id
        return DualGraph(self._weighted_vertices(), self._graph.edges, marks)

    def subgraph(self, vertex_ids: typing.Iterable[VertexId]) -> DualGraph:
        keep = set(vertex_ids)
        for v in keep:
            if v not in self._graph:
                raise errors.InvalidGraphError(f"Unknown vertex {v!r}")
        induced = self._graph.subgraph(keep)
        marks = {m: v for m, v in self._marks.items() if v in keep}
        return DualGraph.from_networkx(induced, marks)

    def without(self, vertex_ids: typing.Iterable[VertexId]) -> DualGraph:
        drop = set(vertex_ids)
        return self.subgraph(v for v in self._graph.nodes if v not in drop)

    def relabeled(self, offset: int) -> DualGraph:
        """
        Copy with every (integer) vertex id shifted by ``offset``.
        """
        vertices = [(v + offset, self.weight(v)) for v in self._graph.nodes]
        edges = [(a + offset, b + offset) for a, b in self._graph.edges]
        marks = {m: v + offset for m, v in self._marks.items()}
        return DualGraph(vertices, edges, marks)

    def union(self, other: DualGraph) -> DualGraph:
        shared = set(self._graph.nodes) & set(other.graph.nodes)
        if shared:
            raise errors.InvalidGraphError(f"Graphs share vertex ids {sorted(shared, key=_vertex_sort_key)}")
        marks = other.marks
        marks.update(self._marks)
        return DualGraph(self._weighted_vertices() + other._weighted_vertices(),
                         list(self._graph.edges) + list(other.graph.edges),
                         marks)

    def join(self, other: DualGraph, a: VertexId, b: VertexId) -> DualGraph:
        """
        Disjoint union of both graphs plus the edge ``(a, b)``, ``a`` in ``self`` and ``b`` in ``other``.
        """
        if a not in self:
            raise errors.InvalidGraphError(f"Join vertex {a!r} is not in the first graph")
        if b not in other:
            raise errors.InvalidGraphError(f"Join vertex {b!r} is not in the second graph")
        try:
            joined = self.union(other)
        except errors.InvalidGraphError as ex:
            raise errors.InvalidGraphError(f"Join would create a multi-edge or a self-loop: {ex}") from ex
        return joined.with_edge(a, b)

    def with_edge(self, a: VertexId, b: VertexId) -> DualGraph:
        return DualGraph(self._weighted_vertices(), list(self._graph.edges) + [(a, b)], self._marks)

    def intersection_matrix(self, order: typing.Sequence[VertexId] = None) -> sympy.Matrix:
        """
        Intersection matrix ``Q`` in the given vertex order (sorted ids by default).
        """
        if order is None:
            order = self.vertices
        index = {v: i for i, v in enumerate(order)}
        assert len(index) == len(self), f"Order should list every vertex exactly once"
        matrix = sympy.zeros(len(order), len(order))
        for v, i in index.items():
            matrix[i, i] = self.weight(v)
        for a, b in self._graph.edges:
            matrix[index[a], index[b]] = 1
            matrix[index[b], index[a]] = 1
        return matrix

    def dfs_order(self) -> typing.List[VertexId]:
        order = []
        for component in sorted(networkx.connected_components(self._graph),
                                key=lambda c: _vertex_sort_key(min(c, key=_vertex_sort_key))):
            start = min(component, key=_vertex_sort_key)
            order.extend(networkx.dfs_preorder_nodes(self._graph, start))
        return order

    def components(self) -> typing.List[DualGraph]:
        return [self.subgraph(c) for c in sorted(networkx.connected_components(self._graph),
                                                 key=lambda c: _vertex_sort_key(min(c, key=_vertex_sort_key)))]

    def as_chain(self) -> Chain:
        """
        Weights along the path, starting at the end with the smallest vertex id.
        """
        if self.is_empty:
            return Chain()
        if not self.is_tree or any(self.degree(v) > 2 for v in self._graph.nodes):
            raise errors.InvalidGraphError(f"Graph is not a chain: {self!r}")
        ends = [v for v in self.vertices if self.degree(v) <= 1]
        path = list(networkx.dfs_preorder_nodes(self._graph, ends[0]))
        return Chain(-self.weight(v) for v in path)

    def path_between(self, a: VertexId, b: VertexId) -> typing.List[VertexId]:
        return networkx.shortest_path(self._graph, a, b)

    def to_json(self) -> dict:
        data = {
            "vertices": [{"id": v, "weight": self.weight(v)} for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }
        if self._marks:
            data["marks"] = dict(sorted(self._marks.items()))
        return data

    @staticmethod
    def from_json(data: dict) -> DualGraph:
        import twigcalc.data_loader as data_loader
        return data_loader.graph_from_dict(data)

    def _weighted_vertices(self) -> typing.List[typing.Tuple[VertexId, int]]:
        return [(v, self.weight(v)) for v in self._graph.nodes]


@dataclasses.dataclass(frozen=True)
class Classification:
    tips: typing.Tuple[VertexId, ...]
    branching: typing.Tuple[VertexId, ...]
    branching_numbers: typing.Dict[VertexId, int]
    twig_vertices: typing.Tuple[typing.Tuple[VertexId, ...], ...]
    maximal_twigs: typing.Tuple[Chain, ...]
    is_chain: bool

    @property
    def twig_count(self) -> int:
        return len(self.maximal_twigs)


@dataclasses.dataclass(frozen=True)
class PairingResult:
    k_dot: int
    self_intersection: int
    arithmetic_genus: int


def _vertex_sort_key(vertex_id: VertexId) -> typing.Tuple[str, typing.Any]:
    # Integer ids sort numerically; anything else sorts by its text after them
    if isinstance(vertex_id, int):
        return "", vertex_id
    return type(vertex_id).__name__, str(vertex_id)


def as_graph(g: GraphLike) -> DualGraph:
    if isinstance(g, Chain):
        return g.to_graph()
    if isinstance(g, DualGraph):
        return g
    raise errors.InvalidGraphError(f"Expected a Chain or a DualGraph, got {type(g).__name__}")


def fork(twigs: typing.Sequence[Chain], center_weight: int = -1) -> DualGraph:
    """
    Vertex 0 with every twig attached by its last component; twig vertices are numbered from the first tip on.
    """
    vertices = [(0, center_weight)]
    edges = []
    next_id = 1
    for twig in twigs:
        ids = list(range(next_id, next_id + len(twig)))
        vertices.extend((v, -w) for v, w in zip(ids, twig))
        edges.extend(zip(ids, ids[1:]))
        edges.append((ids[-1], 0))
        next_id += len(twig)
    return DualGraph(vertices, edges)


def tail_discriminants(chain: Chain) -> typing.List[int]:
    """
    ``[d(T), d(T[1:]), ..., d(T[k-1:]), d([])]`` for ``T = [w1, ..., wk]``.
    """
    weights = chain.weights
    result = [1]
    previous = 0
    for w in reversed(weights):
        current = w * result[-1] - previous
        previous = result[-1]
        result.append(current)
    result.reverse()
    return result


def discriminant_by_recursion(chain: Chain) -> int:
    """
    Tip recursion ``d(T) = w1 * d(T - T1) - d(T - T1 - T2)``, with ``d([]) = 1``.
    """
    return tail_discriminants(chain)[0]


def discriminant(g: GraphLike) -> int:
    """
    ``d(T) = det(-Q(T))``, with ``d(empty) = 1``. Chains use the tip recursion; other graphs a fraction-free determinant.
    """
    if isinstance(g, Chain):
        return discriminant_by_recursion(g)
    graph = as_graph(g)
    if graph.is_empty:
        return 1
    return int((-graph.intersection_matrix()).det(method="bareiss"))


def check_det_formula(s: GraphLike,
                      t: GraphLike,
                      s0: typing.Optional[VertexId] = None,
                      t0: typing.Optional[VertexId] = None, ) -> bool:
    """
    ``d(S + T) = d(S) d(T) - d(S - S0) d(T - T0)`` where ``S + T`` joins ``S0`` and ``T0`` by one edge.
    """
    s_graph, t_graph = as_graph(s), as_graph(t)
    if s_graph.is_empty or t_graph.is_empty:
        # Joining with nothing leaves the other side unchanged
        return discriminant(t_graph) * discriminant(s_graph) == discriminant(s_graph.union(t_graph))
    if s0 is None or t0 is None:
        raise errors.InvalidGraphError("Join vertices are required for non empty graphs")
    joined = s_graph.join(t_graph, s0, t0)
    lhs = discriminant(joined)
    rhs = discriminant(s_graph) * discriminant(t_graph) \
        - discriminant(s_graph.without([s0])) * discriminant(t_graph.without([t0]))
    return lhs == rhs


def leading_minors(g: GraphLike, order: typing.Sequence[VertexId] = None) -> typing.List[int]:
    graph = as_graph(g)
    if order is None:
        order = graph.dfs_order()
    matrix = -graph.intersection_matrix(order)
    return [int(matrix[:i, :i].det(method="bareiss")) for i in range(1, len(order) + 1)]


def is_negative_definite(g: GraphLike, order: typing.Sequence[VertexId] = None) -> bool:
    """
    Sylvester criterion on ``-Q``: every leading principal minor positive.
    Chains use their tail discriminants, which are the leading minors read from the far end.
    """
    if len(g) == 0:
        raise errors.DefinitenessError("Definiteness of the empty divisor is undefined")
    if isinstance(g, Chain) and order is None:
        return all(d > 0 for d in tail_discriminants(g))
    return all(m > 0 for m in leading_minors(g, order))


def classify(g: GraphLike) -> Classification:
    """
    Tips (branching number 1), branching vertices (at least 3) and maximal twigs, tip first.
    A chain has no branching vertex and is reported as such, without maximal twigs.
    """
    graph = as_graph(g)
    if not graph.is_tree:
        raise errors.InvalidGraphError(f"Classification needs a non empty tree, got {graph!r}")
    branching_numbers = {v: graph.degree(v) for v in graph.vertices}
    tips = tuple(v for v in graph.vertices if branching_numbers[v] == 1)
    branching = tuple(v for v in graph.vertices if branching_numbers[v] >= 3)
    if not branching:
        return Classification(tips, branching, branching_numbers, (), (), True)
    twig_vertices = []
    for tip in tips:
        path = [tip]
        previous, current = None, tip
        while True:
            following = [n for n in graph.neighbours(current) if n != previous][0]
            if branching_numbers[following] >= 3:
                break
            path.append(following)
            previous, current = current, following
        twig_vertices.append(tuple(path))
    maximal_twigs = tuple(Chain(-graph.weight(v) for v in path) for path in twig_vertices)
    return Classification(tips, branching, branching_numbers, tuple(twig_vertices), maximal_twigs, False)


def contractible_vertices(g: DualGraph) -> typing.List[VertexId]:
    return [v for v in g.vertices if g.weight(v) == -1 and g.degree(v) <= 2]


def contract_once(g: GraphLike, vertex_id: VertexId) -> DualGraph:
    """
    Contract the (-1)-curve ``vertex_id``: each neighbour gains one in self-intersection, two neighbours become adjacent.
    """
    graph = as_graph(g)
    if vertex_id not in graph:
        raise errors.ContractionError(f"Unknown vertex {vertex_id!r}")
    if graph.weight(vertex_id) != -1:
        raise errors.ContractionError(f"Vertex {vertex_id!r} has self-intersection {graph.weight(vertex_id)}, not -1")
    neighbours = graph.neighbours(vertex_id)
    if len(neighbours) > 2:
        raise errors.ContractionError(f"Contracting {vertex_id!r} would break normal crossings "
                                      f"({len(neighbours)} neighbours)")
    if len(neighbours) == 2 and graph.graph.has_edge(*neighbours):
        raise errors.ContractionError(f"Contracting {vertex_id!r} would create a multi-edge")
    vertices = [(v, graph.weight(v) + (1 if v in neighbours else 0)) for v in graph.vertices if v != vertex_id]
    edges = [e for e in graph.graph.edges if vertex_id not in e]
    if len(neighbours) == 2:
        edges.append(tuple(neighbours))
    marks = {m: v for m, v in graph.marks.items() if v != vertex_id}
    return DualGraph(vertices, edges, marks)


def _chain_contracts_to_point(weights: typing.List[int]) -> bool:
    # Any (-1) of a chain is contractible and the outcome does not depend on the order
    weights = list(weights)
    while weights:
        try:
            i = weights.index(1)
        except ValueError:
            return False
        if i > 0:
            weights[i - 1] -= 1
        if i < len(weights) - 1:
            weights[i + 1] -= 1
        del weights[i]
    return True


def contracts_to_point(g: GraphLike) -> bool:
    """
    Whether some sequence of (-1)-contractions, each keeping normal crossings, removes the whole divisor.
    """
    if isinstance(g, Chain):
        return _chain_contracts_to_point(list(g.weights))
    graph = as_graph(g)
    if not graph.is_forest:
        return False
    seen = set()

    def search(current: DualGraph) -> bool:
        if current.is_empty:
            return True
        key = current.key
        if key in seen:
            return False
        seen.add(key)
        for v in contractible_vertices(current):
            try:
                contracted = contract_once(current, v)
            except errors.ContractionError:
                continue
            if search(contracted):
                return True
        return False

    result = search(graph)
    robot_logger.debug(f"contracts_to_point visited {len(seen)} states: {result}")
    return result


def canonical_pairing(g: GraphLike, sub: typing.Iterable[VertexId] = None) -> PairingResult:
    """
    ``K.R`` by adjunction over the components of ``R``, ``R^2`` and ``p_a(R)``.
    ``sub`` defaults to every vertex.
    """
    graph = as_graph(g)
    vertex_ids = set(graph.vertices if sub is None else sub)
    for v in vertex_ids:
        if v not in graph:
            raise errors.InvalidGraphError(f"Subdivisor uses unknown vertex {v!r}")
    induced = graph.subgraph(vertex_ids)
    k_dot = sum(-induced.weight(v) - 2 for v in induced.vertices)
    self_intersection = sum(induced.weight(v) for v in induced.vertices) + 2 * induced.graph.number_of_edges()
    components = networkx.number_connected_components(induced.graph) if vertex_ids else 0
    genus = (k_dot + self_intersection) // 2 + components
    return PairingResult(k_dot, self_intersection, genus)
