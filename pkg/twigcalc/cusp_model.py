from __future__ import annotations
import typing
import dataclasses
import math
import re
import robot.api.logger as robot_logger
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph

Pair = typing.Tuple[int, int]
Exponent = typing.Union[int, str]

_PAIR_PATTERN = re.compile(r"\s*\(\s*(\d+)\s*/\s*(\d+)\s*\)(?:\s*\^\s*([A-Za-z_]\w*|\d+))?")


@dataclasses.dataclass(frozen=True)
class HNPairSeq:
    """
    Hamburger-Noether pairs ``((c1, p1), ..., (ch, ph))`` of one cusp.
    """
    pairs: typing.Tuple[Pair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(c), int(p)) for c, p in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> typing.Iterator[Pair]:
        return iter(self.pairs)

    def __str__(self) -> str:
        return "".join(f"({c}/{p})" for c, p in self.pairs)


@dataclasses.dataclass(frozen=True)
class MultiplicitySequence:
    m: typing.Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.m)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(self.m)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.m) + ")"


@dataclasses.dataclass(frozen=True)
class HNTemplate:
    """
    Pair sequence where a pair may repeat a symbolic number of times: ``(12/12)^k``.
    """
    terms: typing.Tuple[typing.Tuple[int, int, Exponent], ...]

    @property
    def symbols(self) -> typing.List[str]:
        return sorted({e for _, _, e in self.terms if isinstance(e, str)})

    def bind(self, params: typing.Mapping[str, int] = None) -> HNPairSeq:
        params = dict(params or {})
        pairs = []
        for c, p, exponent in self.terms:
            if isinstance(exponent, str):
                if exponent not in params:
                    raise errors.ParseError(f"Parameter '{exponent}' is not bound (use --param {exponent}=N)")
                exponent = params[exponent]
            if exponent < 0:
                raise errors.ParseError(f"Repetition count for ({c}/{p}) should be non negative, got {exponent}")
            pairs.extend([(c, p)] * exponent)
        return HNPairSeq(tuple(pairs))

    def __str__(self) -> str:
        parts = []
        for c, p, exponent in self.terms:
            parts.append(f"({c}/{p})" if exponent == 1 else f"({c}/{p})^{exponent}")
        return "".join(parts)


@dataclasses.dataclass(frozen=True)
class MIInvariants:
    M: int
    I: int


@dataclasses.dataclass(frozen=True)
class GenusCheck:
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclasses.dataclass(frozen=True)
class StarSegment:
    segment: dual_graph.Chain
    count_delta: int
    K_delta: int


def parse_hn_template(text: str, source: str = None) -> HNTemplate:
    """
    Parses ``"(36/24)(12/12)^k(12/6)(6/6)^l(6/5)"``.
    """
    terms = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _PAIR_PATTERN.match(stripped, position)
        if match is None:
            raise errors.ParseError(f"Expected a pair like (3/2) at {stripped[position:]!r}", source, 1, position + 1)
        c, p, exponent = match.groups()
        if exponent is None:
            exponent = 1
        elif exponent.isdigit():
            exponent = int(exponent)
        terms.append((int(c), int(p), exponent))
        position = match.end()
    if not terms:
        raise errors.ParseError("Empty Hamburger-Noether sequence", source, 1, 1)
    return HNTemplate(tuple(terms))


def parse_hn(text: str, params: typing.Mapping[str, int] = None, source: str = None) -> HNPairSeq:
    return parse_hn_template(text, source).bind(params)


def validate_hn(seq: HNPairSeq) -> typing.Optional[str]:
    """
    ``None`` when ``seq`` is valid, otherwise a description of the first violated condition.
    """
    pairs = seq.pairs
    if not pairs:
        return "empty sequence"
    for j, (c, p) in enumerate(pairs, start=1):
        if c <= 0 or p <= 0:
            return f"pair {j} ({c}/{p}): entries should be positive"
        if p > c:
            return f"pair {j} ({c}/{p}): p={p} exceeds c={c}"
    for j in range(len(pairs) - 1):
        (c, p), (next_c, _) = pairs[j], pairs[j + 1]
        if math.gcd(c, p) != next_c:
            return f"gcd({c},{p})={math.gcd(c, p)} != {next_c} (pair {j + 2})"
    c, p = pairs[-1]
    if math.gcd(c, p) != 1:
        return f"gcd({c},{p})={math.gcd(c, p)} != 1 (last pair)"
    return None


def _check(seq: HNPairSeq) -> None:
    violation = validate_hn(seq)
    if violation is not None:
        raise errors.InvalidPairsError(f"Invalid pairs {seq}: {violation}")


def _euclid_block(c: int, p: int) -> typing.List[int]:
    block = []
    a, b = c, p
    while b:
        q, r = divmod(a, b)
        block.extend([b] * q)
        a, b = b, r
    return block


def hn_multiplicities(seq: HNPairSeq) -> MultiplicitySequence:
    """
    Full multiplicity sequence (1's included) by Euclidean expansion of every pair.
    """
    _check(seq)
    m = []
    for c, p in seq.pairs:
        m.extend(_euclid_block(c, p))
    return MultiplicitySequence(tuple(m))


def mi_invariants(seq: HNPairSeq) -> MIInvariants:
    """
    ``M = c1 + sum(p) - 1`` and ``I = sum(c * p)``. Both are checked against the multiplicity sequence.
    """
    multiplicities = hn_multiplicities(seq)
    big_m = seq.pairs[0][0] + sum(p for _, p in seq.pairs) - 1
    big_i = sum(c * p for c, p in seq.pairs)
    assert big_m == sum(multiplicities), f"M={big_m} differs from the multiplicity sum {sum(multiplicities)}"
    assert big_i == sum(m * m for m in multiplicities), f"I={big_i} differs from the sum of squares"
    return MIInvariants(big_m, big_i)


class BlowUpSimulator:
    """
    Blows up the infinitely near points of a cusp one after the other and tracks the dual graph of the total transform.

    ``P_j`` always lies on the last exceptional curve ``E_(j-1)``; it also lies on ``E_i`` when ``P_j`` is proximate
    to ``P_i``, and on the head curve when the head passes through it. A point lies on at most two curves.
    Blowing up a point lowers the self-intersection of every curve through it by one; blowing up the intersection
    point of two curves separates them.
    """

    def __init__(self,
                 multiplicities: typing.Sequence[int],
                 head_weight: int = None,
                 head_intersection: int = None, ) -> None:
        self.multiplicities = list(multiplicities)
        assert self.multiplicities, f"Nothing to blow up"
        assert all(a >= b for a, b in zip(self.multiplicities, self.multiplicities[1:])), \
            f"Multiplicities should not increase: {self.multiplicities}"
        self.head_weight = head_weight
        self.head_points = self._head_points(head_intersection)
        self.proximities = self._proximities()

    @staticmethod
    def from_pairs(seq: HNPairSeq, **kwargs) -> BlowUpSimulator:
        _check(seq)
        return BlowUpSimulator(BlowUpSimulator.multiplicities_from_orders(seq), **kwargs)

    @staticmethod
    def multiplicities_from_orders(seq: HNPairSeq) -> typing.List[int]:
        """
        Multiplicities read off the orders of the two local coordinates along the branch: each blow-up at a point
        of multiplicity ``min(a, b)`` lowers the larger order by the smaller one.
        """
        m = []
        for c, p in seq.pairs:
            a, b = c, p
            while a and b:
                smaller = min(a, b)
                m.append(smaller)
                a, b = (a - smaller, b) if a >= b else (a, b - smaller)
        return m

    def _head_points(self, head_intersection: typing.Optional[int]) -> int:
        if head_intersection is None:
            return 0
        total = 0
        for r, m in enumerate(self.multiplicities, start=1):
            total += m
            if total == head_intersection:
                return r
            if total > head_intersection:
                break
        raise errors.InvalidPairsError(f"Head intersection {head_intersection} is not a partial sum of "
                                       f"{self.multiplicities}")

    def _proximities(self) -> typing.List[typing.Set[int]]:
        # on[j]: earlier points P_i whose exceptional curve passes through P_j
        n = len(self.multiplicities)
        on = [set() for _ in range(n)]
        for i in range(n - 1):
            total, j = 0, i + 1
            while j < n and total < self.multiplicities[i]:
                total += self.multiplicities[j]
                on[j].add(i)
                j += 1
            if total != self.multiplicities[i]:
                raise errors.InvalidPairsError(f"Multiplicity {self.multiplicities[i]} at point {i} is not the sum "
                                               f"of the multiplicities of its proximate points: {self.multiplicities}")
        return on

    def curves_through(self, j: int) -> typing.List[int]:
        curves = sorted(self.proximities[j])
        if j < self.head_points:
            curves.append(constants.HEAD_ID)
        if len(curves) > 2:
            raise errors.InvalidPairsError(f"Point {j} lies on {len(curves)} curves: {curves}")
        return curves

    def run(self) -> dual_graph.DualGraph:
        weights = {}
        edges = set()
        if self.head_weight is not None:
            weights[constants.HEAD_ID] = -self.head_weight
        for j in range(len(self.multiplicities)):
            through = self.curves_through(j)
            if len(through) == 2:
                edge = frozenset(through)
                if edge not in edges:
                    raise errors.InvalidPairsError(f"Point {j} is not the intersection point of {through}")
                edges.remove(edge)
            weights[j] = -1
            for curve in through:
                weights[curve] -= 1
                edges.add(frozenset((curve, j)))
        last = len(self.multiplicities) - 1
        graph = dual_graph.DualGraph(weights, [tuple(e) for e in edges],
                                     {constants.MARK_MINUS_ONE: last, constants.MARK_CURVE: last})
        robot_logger.debug(f"Blow-up of {self.multiplicities}: {graph!r}")
        return graph


def hn_resolution_graph(seq: HNPairSeq) -> dual_graph.DualGraph:
    """
    Dual graph ``Q`` of the minimal embedded resolution of the cusp. ``minus_one`` marks its only (-1)-curve,
    which is also where the proper transform of the curve is attached (``curve``).
    """
    _check(seq)
    if seq.pairs[0][1] < 2:
        raise errors.InvalidPairsError(f"First pair of {seq} has p=1: the branch is smooth, not a cusp")
    simulator = BlowUpSimulator.from_pairs(seq)
    graph = simulator.run()
    minus_ones = [v for v in graph.vertices if graph.weight(v) == -1]
    assert graph.is_tree, f"Resolution graph of {seq} is not a tree"
    assert minus_ones == [graph.mark(constants.MARK_MINUS_ONE)], \
        f"Resolution graph of {seq} should have a single (-1)-curve, found {minus_ones}"
    assert graph.degree(minus_ones[0]) >= 2, f"The (-1)-curve of {seq} is a tip"
    assert dual_graph.contracts_to_point(graph), f"Resolution graph of {seq} does not contract to a point"
    return graph


def pairs_from_chain(chain: dual_graph.Chain) -> HNPairSeq:
    """
    Single pair ``(d(T''), d(T'))`` of a chain-shaped resolution ``T' + [1] + T''``, where ``d(T') < d(T'')``.
    """
    import twigcalc.chain_search as chain_search
    resolution = chain_search.ResolutionChain.from_chain(chain)
    return HNPairSeq((resolution.pair,))


def genus_check(d: int, cusps: typing.Sequence[HNPairSeq]) -> GenusCheck:
    """
    Genus formula for a rational cuspidal curve of degree ``d``: ``sum C(m, 2) = C(d - 1, 2)``.
    """
    lhs = 0
    big_i, big_m = 0, 0
    for seq in cusps:
        multiplicities = hn_multiplicities(seq)
        lhs += sum(math.comb(m, 2) for m in multiplicities)
        invariants = mi_invariants(seq)
        big_i += invariants.I
        big_m += invariants.M
    assert 2 * lhs == big_i - big_m, f"sum C(m,2)={lhs} differs from (I - M)/2 = {(big_i - big_m) / 2}"
    rhs = (d - 1) * (d - 2) // 2
    return GenusCheck(lhs, rhs)


def star_segment(n: int, k: int, head_weight: int = 1) -> StarSegment:
    """
    Chain grown from a smooth curve ``C'`` of weight ``head_weight`` by a subsequence ``(n/n)^k (n/n-1)``.
    """
    if n < 2:
        raise errors.InvalidPairsError(f"Star segment needs n >= 2, got {n}")
    if k < 0:
        raise errors.InvalidPairsError(f"Star segment needs k >= 0, got {k}")
    if k >= 1:
        weights = [head_weight + 1] + [2] * (k - 1) + [3] + [2] * (n - 2) + [1, n]
    else:
        weights = [head_weight + 2] + [2] * (n - 2) + [1, n]
    return StarSegment(dual_graph.Chain(weights), k + n, n - 1)


def simulate_star_segment(n: int, k: int, head_weight: int = 1) -> dual_graph.Chain:
    """
    The same chain obtained by blowing up, with the head curve meeting the cusp with intersection ``n``.
    """
    seq = HNPairSeq(tuple([(n, n)] * k + [(n, n - 1)]))
    multiplicities = [m for c, p in seq.pairs for m in _euclid_block(c, p)]
    graph = BlowUpSimulator(multiplicities, head_weight=head_weight, head_intersection=n).run()
    if not graph.is_tree or any(graph.degree(v) > 2 for v in graph.vertices) or graph.degree(constants.HEAD_ID) != 1:
        raise errors.InvalidPairsError(f"Star segment ({n},{k}) is not a chain hanging from the head curve")
    far_end = [v for v in graph.vertices if graph.degree(v) == 1 and v != constants.HEAD_ID][0]
    return dual_graph.Chain(-graph.weight(v) for v in graph.path_between(constants.HEAD_ID, far_end))
