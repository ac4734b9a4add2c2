from __future__ import annotations
import typing
import dataclasses
import functools
import itertools
import math
from fractions import Fraction
import robot.api.logger as robot_logger
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph
import twigcalc.twig_calculus as twig_calculus
import twigcalc.cusp_model as cusp_model

Chain = dual_graph.Chain

PRUNED = "pruned"
EXHAUSTIVE = "exhaustive"


@dataclasses.dataclass(frozen=True)
class ResolutionChain:
    """
    Chain-shaped resolution ``T' + C + T''`` of a cusp, ``C`` the only (-1)-curve.
    Both twigs are stored tip first and ``d(T') < d(T'')``.
    """
    t_prime: Chain
    t_second: Chain

    @staticmethod
    def from_chain(chain: Chain) -> ResolutionChain:
        ones = [i for i, w in enumerate(chain) if w == 1]
        if len(ones) != 1:
            raise errors.SearchError(f"{chain} should contain exactly one (-1)-curve")
        i = ones[0]
        if i == 0 or i == len(chain) - 1:
            raise errors.SearchError(f"The (-1)-curve of {chain} is a tip")
        if any(w < 2 for j, w in enumerate(chain) if j != i):
            raise errors.SearchError(f"{chain} has a curve of non negative self-intersection")
        left, right = chain[:i], chain[i + 1:].reversed()
        if left.discriminant() > right.discriminant():
            left, right = right, left
        resolution = ResolutionChain(left, right)
        violation = resolution.violation()
        if violation is not None:
            raise errors.SearchError(f"{chain} is not a resolution chain: {violation}")
        return resolution

    @property
    def full(self) -> Chain:
        return self.t_prime + [1] + self.t_second.reversed()

    @property
    def pair(self) -> cusp_model.Pair:
        """
        Hamburger-Noether pair ``(c, p) = (d(T''), d(T'))`` whose blow-up produces this chain.
        """
        return self.t_second.discriminant(), self.t_prime.discriminant()

    @property
    def sort_key(self) -> typing.Tuple[int, typing.Tuple[int, ...]]:
        return self.full.sort_key

    @property
    def delta_bar(self) -> Fraction:
        return Fraction(1, self.t_prime.discriminant()) + Fraction(1, self.t_second.discriminant())

    @property
    def e_bar(self) -> Fraction:
        return twig_calculus.twig_invariants(self.t_prime).e + twig_calculus.twig_invariants(self.t_second).e

    @property
    def u_bar(self) -> Fraction:
        return self.e_bar - self.delta_bar

    def violation(self) -> typing.Optional[str]:
        full = self.full
        if full.discriminant() != 1:
            return f"d={full.discriminant()}"
        if math.gcd(self.t_prime.discriminant(), self.t_second.discriminant()) != 1:
            return "d(T') and d(T'') are not coprime"
        if not dual_graph.contracts_to_point(full):
            return "does not contract to a point"
        return None

    def to_json(self) -> dict:
        return {
            "chain": str(self.full),
            "t_prime": str(self.t_prime),
            "t_second": str(self.t_second),
            "u_bar": str(self.u_bar),
            "delta_bar": str(self.delta_bar),
            "e_bar": str(self.e_bar),
        }

    def __lt__(self, other: ResolutionChain) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return str(self.full)


@dataclasses.dataclass(frozen=True)
class SmallUEntry:
    chain: ResolutionChain
    u_bar: Fraction
    delta_bar: Fraction


@dataclasses.dataclass(frozen=True)
class FiveCuspSolution:
    chains: typing.Tuple[ResolutionChain, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chains", tuple(sorted(self.chains)))

    @property
    def u_bars(self) -> typing.Tuple[Fraction, ...]:
        return tuple(c.u_bar for c in self.chains)

    @property
    def delta_bars(self) -> typing.Tuple[Fraction, ...]:
        return tuple(c.delta_bar for c in self.chains)

    @property
    def delta_D(self) -> Fraction:
        return sum(self.delta_bars, Fraction(0))

    @property
    def e_D(self) -> Fraction:
        return sum((c.e_bar for c in self.chains), Fraction(0))

    @property
    def u_sum(self) -> Fraction:
        return sum(self.u_bars, Fraction(0))

    @property
    def sort_key(self) -> tuple:
        return tuple(c.sort_key for c in self.chains)

    def to_json(self) -> dict:
        return {
            "chains": [str(c) for c in self.chains],
            "u_bar": [str(u) for u in self.u_bars],
            "delta_bar": [str(d) for d in self.delta_bars],
            "delta_D": str(self.delta_D),
            "e_D": str(self.e_D),
        }

    def __str__(self) -> str:
        return " + ".join(str(c) for c in self.chains)


@dataclasses.dataclass(frozen=True)
class UFamily:
    """
    ``T' + C + T''_k`` with ``T''_k = (2)_k + tail``; ``u_bar = shift - numerator / (slope * k + offset)``.
    """
    name: str
    t_prime: Chain
    tail: Chain
    shift: Fraction
    numerator: int
    slope: int
    offset: int

    def t_second(self, k: int) -> Chain:
        return Chain.twos(k) + self.tail

    def closed_form(self, k: int) -> Fraction:
        return self.shift - Fraction(self.numerator, self.slope * k + self.offset)


U_FAMILIES = (
    UFamily("[2]", Chain([2]), Chain([3]), Fraction(1), 3, 2, 3),
    UFamily("[2,2]", Chain([2, 2]), Chain([4]), Fraction(4, 3), 4, 3, 4),
    UFamily("[3]", Chain([3]), Chain([3, 2]), Fraction(1), 4, 3, 5),
    UFamily("[4]", Chain([4]), Chain([3, 2, 2]), Fraction(1), 5, 4, 7),
)


@dataclasses.dataclass(frozen=True)
class UFamilyEntry:
    family: str
    k: int
    chain: Chain
    is_resolution_chain: bool
    u_bar: Fraction
    closed_form: Fraction

    @property
    def ok(self) -> bool:
        return self.is_resolution_chain and self.u_bar == self.closed_form


@dataclasses.dataclass(frozen=True)
class CompletenessResult:
    family: str
    max_disc: int
    found: int
    outside_family: typing.Tuple[Chain, ...]

    @property
    def ok(self) -> bool:
        return not self.outside_family


@dataclasses.dataclass(frozen=True)
class UFamilyReport:
    k_max: int
    entries: typing.Tuple[UFamilyEntry, ...]
    completeness: typing.Tuple[CompletenessResult, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries) and all(c.ok for c in self.completeness)

    @property
    def failures(self) -> typing.List[str]:
        failures = [f"{e.family} k={e.k}: {e.chain}" for e in self.entries if not e.ok]
        failures += [f"{c.family}: {', '.join(str(t) for t in c.outside_family)}" for c in self.completeness if not c.ok]
        return failures


@dataclasses.dataclass(frozen=True)
class AuditRow:
    t5: Chain
    t10: Chain
    u_bar: Fraction
    delta_bar: Fraction
    e_bar: Fraction

    @property
    def delta_ok(self) -> bool:
        return self.delta_bar > Fraction(1, 6)

    @property
    def e_ok(self) -> bool:
        return self.e_bar <= constants.E_BAR_MAX_SINGLE

    @property
    def survives(self) -> bool:
        return self.delta_ok and self.e_ok


@dataclasses.dataclass(frozen=True)
class DegreeElimination:
    solution: FiveCuspSolution
    genus_sum: int
    bracket: typing.Tuple[int, int]
    degree: typing.Optional[int]

    @property
    def eliminated(self) -> bool:
        return self.degree is None


def hj_chain(x: int, y: int) -> Chain:
    """
    Hirzebruch-Jung expansion ``x/y = w1 - 1/(w2 - 1/(...))``, for coprime ``x > y >= 1``.
    """
    assert x > y >= 1 and math.gcd(x, y) == 1, f"Expected coprime x > y >= 1, got {x}/{y}"
    weights = []
    while y:
        w = -(-x // y)
        weights.append(w)
        x, y = y, w * y - x
    return Chain(weights)


@functools.lru_cache(maxsize=None)
def _chains_with_discriminant(n: int) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    if n == 1:
        return ((),)
    found = []
    for m in range(1, n):
        for rest in _chains_with_discriminant(m):
            following = dual_graph.discriminant_by_recursion(Chain(rest[1:])) if rest else 0
            w, remainder = divmod(n + following, m)
            if remainder == 0 and w >= 2:
                found.append((w,) + rest)
    return tuple(sorted(found))


def enum_chains_by_discriminant(n: int) -> typing.List[Chain]:
    """
    Every chain without (-1)-curves with ``d(T) = n``, lexicographically ordered.
    Built by prepending tips, since ``d(T) = w1 * d(T - T1) - d(T - T1 - T2)`` and ``d(T) > d(T - T1)``.
    """
    if n < 1:
        raise errors.SearchError(f"Discriminant should be positive, got {n}")
    return [Chain(weights) for weights in _chains_with_discriminant(n)]


def enum_resolution_chains(max_components: int = constants.MAX_COMPONENTS) -> typing.List[ResolutionChain]:
    """
    Chain-shaped exceptional divisors of connected blow-up sequences, up to ``max_components`` curves.

    A state is the chain of weights and the position of the last exceptional curve. The next centre is either a
    free point of the last curve (only when this keeps a chain) or its intersection with a neighbour.
    """
    if max_components < 3:
        raise errors.SearchError(f"max_components should be at least 3, got {max_components}")
    found = set()
    stack = [((1,), 0)]
    while stack:
        weights, last = stack.pop()
        n = len(weights)
        neighbours = [i for i in (last - 1, last + 1) if 0 <= i < n]
        if len(neighbours) == 2:
            found.add(ResolutionChain.from_chain(Chain(weights)))
        if n == max_components:
            continue
        if len(neighbours) < 2:
            grown = list(weights)
            grown[last] += 1
            if last == n - 1:
                stack.append((tuple(grown) + (1,), n))
            else:
                stack.append(((1,) + tuple(grown), 0))
        for neighbour in neighbours:
            grown = list(weights)
            grown[last] += 1
            grown[neighbour] += 1
            position = max(last, neighbour)
            stack.append((tuple(grown[:position] + [1] + grown[position:]), position))
    robot_logger.debug(f"enum_resolution_chains({max_components}): {len(found)} chains")
    return sorted(found)


def completions(t_prime: Chain, max_disc: int) -> typing.List[ResolutionChain]:
    """
    Every ``T''`` with ``d(T') < d(T'') <= max_disc`` such that ``T' + C + T''`` is a resolution chain.

    With ``a = d(T')``, ``b = d(T' - A)`` (``A`` the component of ``T'`` next to ``C``), ``x = d(T'')`` and
    ``y = d(T'' - A'')`` the determinant formula gives ``d = a(x - y) - bx``, so ``d = 1`` fixes ``y`` from ``x``.
    """
    a = t_prime.discriminant()
    b = t_prime[:-1].discriminant()
    found = []
    for x in range(a + 1, max_disc + 1):
        y, remainder = divmod((a - b) * x - 1, a)
        if remainder or not 1 <= y < x or math.gcd(x, y) != 1:
            continue
        side = hj_chain(x, y)
        chain = t_prime + [1] + side
        if chain.discriminant() != 1 or not dual_graph.contracts_to_point(chain):
            continue
        found.append(ResolutionChain(t_prime, side.reversed()))
    return found


def verify_u_families(k_max: int = constants.K_MAX) -> UFamilyReport:
    """
    Checks the four families of resolution chains with ``d(T') <= 4`` and ``u(T') < 1/2`` member by member,
    and that no other completion of ``T'`` exists up to the discriminant of the member ``k_max``.
    """
    if k_max < 0:
        raise errors.SearchError(f"k_max should be non negative, got {k_max}")
    entries = []
    completeness = []
    for family in U_FAMILIES:
        members = set()
        for k in range(k_max + 1):
            t_second = family.t_second(k)
            chain = family.t_prime + [1] + t_second.reversed()
            resolution = ResolutionChain(family.t_prime, t_second)
            is_resolution = resolution.violation() is None and family.t_prime.discriminant() < t_second.discriminant()
            entries.append(UFamilyEntry(family.name, k, chain, is_resolution, resolution.u_bar, family.closed_form(k)))
            members.add(t_second)
        max_disc = family.t_second(k_max).discriminant()
        found = completions(family.t_prime, max_disc)
        outside = tuple(r.t_second for r in found if r.t_second not in members)
        completeness.append(CompletenessResult(family.name, max_disc, len(found), outside))
    report = UFamilyReport(k_max, tuple(entries), tuple(completeness))
    robot_logger.info(f"verify_u_families(k_max={k_max}): ok={report.ok}")
    return report


def classify_small_u() -> typing.List[SmallUEntry]:
    """
    Resolution chains with ``d(T') <= 4`` and ``0 < u_bar < 1/2``.

    ``u_bar = u(T') + 1 - (d(T') + 1)/d(T'')``, so ``u(T') >= 1/2`` rules ``T'`` out and otherwise
    ``d(T'') <= 2 d(T') + 1``.
    """
    result = []
    for a in range(2, 5):
        for t_prime in enum_chains_by_discriminant(a):
            if twig_calculus.twig_invariants(t_prime).u >= constants.U_BOUND:
                robot_logger.debug(f"classify_small_u: T'={t_prime} skipped, u(T') >= 1/2")
                continue
            for resolution in completions(t_prime, 2 * a + 1):
                if 0 < resolution.u_bar < constants.U_BOUND:
                    result.append(SmallUEntry(resolution, resolution.u_bar, resolution.delta_bar))
    result.sort(key=lambda entry: entry.chain.sort_key)
    return result


def resolution_chain_for_pair(c: int, p: int) -> ResolutionChain:
    graph = cusp_model.hn_resolution_graph(cusp_model.HNPairSeq(((c, p),)))
    resolution = ResolutionChain.from_chain(graph.as_chain())
    assert resolution.pair == (c, p), f"Pair ({c}/{p}) gives {resolution} with pair {resolution.pair}"
    return resolution


def delta_bar_min() -> Fraction:
    return constants.DELTA_D_MIN - (constants.CUSPS - 1) * constants.DELTA_BAR_MAX


def single_cusp_candidates(u_bound: Fraction = constants.U_BOUND) -> typing.List[ResolutionChain]:
    """
    Resolution chains that may occur in a five-cusp configuration: ``delta_bar >= 1/6`` and ``u_bar <= u_bound``.
    ``delta_bar = 1/p + 1/c`` with ``p < c`` bounds ``p``; ``u_bar >= 1 - (p + 1)/c`` bounds ``c``.
    """
    if not 0 <= u_bound < 1:
        raise errors.SearchError(f"u_bound should be in [0, 1), got {u_bound}")
    minimum = delta_bar_min()
    pool = []
    p = 2
    while Fraction(1, p) + Fraction(1, p + 1) >= minimum:
        c_max = math.floor((p + 1) / (1 - u_bound))
        for c in range(p + 1, c_max + 1):
            if math.gcd(c, p) != 1:
                continue
            resolution = resolution_chain_for_pair(c, p)
            if resolution.delta_bar >= minimum and resolution.u_bar <= u_bound:
                pool.append(resolution)
        for c in range(c_max + 1, c_max + p + 1):
            if math.gcd(c, p) == 1:
                beyond = resolution_chain_for_pair(c, p)
                assert beyond.u_bar > u_bound, f"{beyond} lies beyond the bound on c but has u_bar={beyond.u_bar}"
        p += 1
    pool.sort(key=lambda r: (-r.delta_bar, r.sort_key))
    robot_logger.debug(f"single_cusp_candidates(u_bound={u_bound}): {len(pool)} chains")
    return pool


def _accepts(delta_sum: Fraction, u_sum: Fraction, e_sum: Fraction, u_bound: Fraction) -> bool:
    return delta_sum >= constants.DELTA_D_MIN and delta_sum < e_sum <= constants.E_D_MAX and 0 < u_sum <= u_bound


def _pruned_search(pool: typing.List[ResolutionChain], u_bound: Fraction) -> typing.List[FiveCuspSolution]:
    solutions = []
    data = [(r, r.delta_bar, r.u_bar, r.e_bar) for r in pool]
    min_e = min((e for _, _, _, e in data), default=Fraction(0))

    def extend(start: int, chosen: list, delta_sum: Fraction, u_sum: Fraction, e_sum: Fraction) -> None:
        remaining = constants.CUSPS - len(chosen)
        if remaining == 0:
            if _accepts(delta_sum, u_sum, e_sum, u_bound):
                solutions.append(FiveCuspSolution(tuple(chosen)))
            return
        for index in range(start, len(data)):
            resolution, delta, u, e = data[index]
            # Pool is sorted by decreasing delta_bar
            if delta_sum + remaining * delta < constants.DELTA_D_MIN:
                break
            if u_sum + u > u_bound:
                continue
            if e_sum + e + (remaining - 1) * min_e > constants.E_D_MAX:
                continue
            extend(index, chosen + [resolution], delta_sum + delta, u_sum + u, e_sum + e)

    extend(0, [], Fraction(0), Fraction(0), Fraction(0))
    return solutions


def _exhaustive_search(pool: typing.List[ResolutionChain], u_bound: Fraction) -> typing.List[FiveCuspSolution]:
    # Integers over a common denominator keep the full product cheap
    values = [(r.delta_bar, r.u_bar, r.e_bar) for r in pool]
    scale = 1
    for triple in values:
        for value in triple:
            scale = scale * value.denominator // math.gcd(scale, value.denominator)
    scale = scale * u_bound.denominator // math.gcd(scale, u_bound.denominator)
    scaled = [tuple(int(v * scale) for v in triple) for triple in values]
    delta_min = int(constants.DELTA_D_MIN * scale)
    e_max = int(constants.E_D_MAX * scale)
    u_max = int(u_bound * scale)
    solutions = []
    for combination in itertools.combinations_with_replacement(range(len(pool)), constants.CUSPS):
        delta_sum = sum(scaled[i][0] for i in combination)
        u_sum = sum(scaled[i][1] for i in combination)
        e_sum = sum(scaled[i][2] for i in combination)
        if delta_sum >= delta_min and delta_sum < e_sum <= e_max and 0 < u_sum <= u_max:
            solutions.append(FiveCuspSolution(tuple(pool[i] for i in combination)))
    return solutions


def five_cusp_search(u_bound: Fraction = constants.U_BOUND, mode: str = PRUNED) -> typing.List[FiveCuspSolution]:
    """
    Multisets of five resolution chains with ``7/2 <= delta(D) < e(D) <= 4`` and ``0 < sum(u_bar) <= u_bound``.
    """
    pool = single_cusp_candidates(u_bound)
    if mode == PRUNED:
        solutions = _pruned_search(pool, u_bound)
    elif mode == EXHAUSTIVE:
        solutions = _exhaustive_search(pool, u_bound)
    else:
        raise errors.SearchError(f"Unknown search mode '{mode}', use '{PRUNED}' or '{EXHAUSTIVE}'")
    unique = {s.sort_key: s for s in solutions}
    result = [unique[key] for key in sorted(unique)]
    robot_logger.info(f"five_cusp_search(u_bound={u_bound}, mode={mode}): {len(result)} solutions "
                      f"from {len(pool)} candidates")
    return result


def genus_sum(solution: FiveCuspSolution) -> int:
    total = 0
    for resolution in solution.chains:
        multiplicities = cusp_model.hn_multiplicities(cusp_model.HNPairSeq((resolution.pair,)))
        total += sum(math.comb(m, 2) for m in multiplicities)
    return total


def five_cusp_degree_elimination(solutions: typing.Sequence[FiveCuspSolution]) -> typing.List[DegreeElimination]:
    """
    For each solution, the genus formula ``sum C(m, 2) = C(deg - 1, 2)`` and the two consecutive values of
    ``C(n, 2)`` around the sum. ``degree`` is ``None`` when no degree fits.
    """
    report = []
    for solution in solutions:
        value = genus_sum(solution)
        n = 1
        while math.comb(n, 2) < value:
            n += 1
        degree = n + 1 if math.comb(n, 2) == value else None
        bracket = (math.comb(n - 1, 2), math.comb(n, 2))
        report.append(DegreeElimination(solution, value, bracket, degree))
    return report


def single_cusp_audit_table() -> typing.List[AuditRow]:
    """
    For every ``T5`` with ``5 <= d(T5) <= 11``, ``e(T5) < 2/3``, at least two components and not only (-2)-curves,
    every ``T10`` completing it with ``u_bar < 1/2``.
    """
    rows = []
    for a in range(5, 12):
        for t5 in enum_chains_by_discriminant(a):
            if len(t5) < 2 or t5.is_all_twos():
                continue
            if twig_calculus.twig_invariants(t5).e >= constants.E_BAR_MAX_SINGLE:
                continue
            for resolution in completions(t5, 2 * a + 1):
                if resolution.u_bar < constants.U_BOUND:
                    rows.append(AuditRow(t5, resolution.t_second, resolution.u_bar, resolution.delta_bar,
                                         resolution.e_bar))
    rows.sort(key=lambda row: (row.t5.sort_key, row.t10.sort_key))
    return rows


def audit_t5_candidates() -> typing.List[Chain]:
    return sorted(t5 for a in range(5, 12) for t5 in enum_chains_by_discriminant(a)
                  if len(t5) >= 2 and not t5.is_all_twos()
                  and twig_calculus.twig_invariants(t5).e < constants.E_BAR_MAX_SINGLE)
