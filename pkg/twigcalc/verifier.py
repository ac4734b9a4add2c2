from __future__ import annotations
import typing
import dataclasses
import concurrent.futures
import functools
import itertools
import os
import random
import time
from fractions import Fraction
import robot.api.logger as robot_logger
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph
import twigcalc.twig_calculus as twig_calculus
import twigcalc.cusp_model as cusp_model
import twigcalc.chain_search as chain_search
import twigcalc.curve_config as curve_config
import twigcalc.report as report

Chain = dual_graph.Chain
CheckFunction = typing.Callable[..., typing.Any]

CHECKS: typing.Dict[str, CheckFunction] = {}


def check(function: CheckFunction) -> CheckFunction:
    CHECKS[function.__name__] = function
    return function


@dataclasses.dataclass
class VerificationReport:
    """
    Result of a claim run. ``checks`` is deterministic; ``timing`` holds the wall time of every check.
    """
    root: report.ReportNode
    timing: typing.Dict[str, float]

    @property
    def checks(self) -> typing.List[report.ReportNode]:
        return self.root.claims

    @property
    def failures(self) -> typing.List[report.ReportNode]:
        return [claim for claim in self.checks if claim.status == constants.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "checks": [claim.to_json() for claim in self.checks],
            "summary": {
                "total": len(self.checks),
                "passed": sum(1 for claim in self.checks if claim.status == constants.PASS),
                "failed": len(self.failures),
                "assumed": sum(1 for claim in self.checks if claim.status == constants.ASSUMED),
            },
            "timing": self.timing,
        }

    def render(self) -> str:
        summary = self.to_json()["summary"]
        return (f"{self.root.render()}\n"
                f"{summary['total']} checks: {summary['passed']} passed, {summary['failed']} failed, "
                f"{summary['assumed']} assumed")


def _random_chain(rng: random.Random, max_length: int = 8, max_weight: int = 9) -> Chain:
    return Chain(rng.randint(1, max_weight) for _ in range(rng.randint(1, max_length)))


def _random_tree(rng: random.Random, first_id: int = 0, max_size: int = 8) -> dual_graph.DualGraph:
    size = rng.randint(1, max_size)
    vertices = [(first_id + i, -rng.randint(1, 9)) for i in range(size)]
    edges = [(first_id + i, first_id + rng.randrange(i)) for i in range(1, size)]
    return dual_graph.DualGraph(vertices, edges)


@functools.lru_cache(maxsize=None)
def _five_cusp_solutions(u_bound: Fraction = constants.U_BOUND,
                         mode: str = chain_search.PRUNED) -> typing.Tuple[chain_search.FiveCuspSolution, ...]:
    return tuple(chain_search.five_cusp_search(u_bound, mode))


@functools.lru_cache(maxsize=None)
def _four_cusp_case(case_id: int) -> curve_config.CaseReport:
    return curve_config.four_cusp_case(case_id)


@functools.lru_cache(maxsize=None)
def _u_families(k_max: int) -> chain_search.UFamilyReport:
    return chain_search.verify_u_families(k_max)


def _k_max() -> int:
    value = os.environ.get(constants.ENV_MAX_K)
    if value is None:
        return constants.K_MAX
    try:
        k_max = int(value)
    except ValueError as ex:
        raise errors.ParseError(f"Expected an integer, got {value!r}", constants.ENV_MAX_K) from ex
    if k_max < 1:
        raise errors.ParseError(f"Should be positive, got {k_max}", constants.ENV_MAX_K)
    return k_max


@check
def chains_by_discriminant(n: int) -> typing.List[str]:
    return [str(chain) for chain in chain_search.enum_chains_by_discriminant(n)]


@check
def discriminant_recursion() -> bool:
    for length in range(1, 5):
        for weights in itertools.product(range(1, 10), repeat=length):
            chain = Chain(weights)
            if chain.discriminant() != dual_graph.discriminant(chain.to_graph()):
                return False
    rng = random.Random(constants.SEED)
    for _ in range(constants.PROPERTY_CASES):
        chain = _random_chain(rng)
        if chain.discriminant() != dual_graph.discriminant(chain.to_graph()):
            return False
    return True


@check
def det_formula() -> bool:
    rng = random.Random(constants.SEED)
    for _ in range(constants.PROPERTY_CASES):
        s = _random_tree(rng)
        t = _random_tree(rng, first_id=100)
        if not dual_graph.check_det_formula(s, t, rng.choice(s.vertices), rng.choice(t.vertices)):
            return False
    return True


@check
def hn_golden(c: int, p: int) -> dict:
    seq = cusp_model.HNPairSeq(((c, p),))
    graph = cusp_model.hn_resolution_graph(seq)
    invariants = cusp_model.mi_invariants(seq)
    return {
        "chain": str(chain_search.ResolutionChain.from_chain(graph.as_chain())),
        "M": invariants.M,
        "I": invariants.I,
        "multiplicities": str(cusp_model.hn_multiplicities(seq)),
    }


@check
def resolution_round_trip(max_components: int) -> bool:
    for resolution in chain_search.enum_resolution_chains(max_components):
        seq = cusp_model.pairs_from_chain(resolution.full)
        rebuilt = chain_search.ResolutionChain.from_chain(cusp_model.hn_resolution_graph(seq).as_chain())
        if rebuilt != resolution:
            robot_logger.info(f"resolution_round_trip: {resolution} rebuilt as {rebuilt}")
            return False
    return True


@check
def star_segments(n_max: int, k_max: int) -> bool:
    for n in range(2, n_max + 1):
        for k in range(k_max + 1):
            if cusp_model.star_segment(n, k).segment != cusp_model.simulate_star_segment(n, k):
                return False
    return True


@check
def bark_of_twig(weights: typing.List[int]) -> typing.List[str]:
    graph = dual_graph.fork([Chain(weights), Chain([2]), Chain([3])])
    coefficients = twig_calculus.bark(graph)
    return [str(coefficients[v]) for v in range(1, len(weights) + 1)]


@check
def bark_properties() -> bool:
    rng = random.Random(constants.SEED)
    for _ in range(constants.PROPERTY_CASES):
        twigs = [_random_chain(rng, max_length=4) for _ in range(rng.randint(3, 4))]
        twigs = [Chain(max(w, 2) for w in twig) for twig in twigs]
        graph = dual_graph.fork(twigs, center_weight=-rng.randint(1, 4))
        coefficients = twig_calculus.bark(graph)
        if coefficients != twig_calculus.bark_by_linear_solve(graph):
            return False
        if twig_calculus.bark_square(graph) != -twig_calculus.divisor_invariants(graph).e:
            return False
    return True


@check
def twos_invariants(k_max: int) -> bool:
    for k in range(1, k_max + 1):
        invariants = twig_calculus.twig_invariants(Chain.twos(k))
        expected = (k + 1, Fraction(1, k + 1), Fraction(k, k + 1), Fraction(k - 1, k + 1))
        if (invariants.d, invariants.delta, invariants.e, invariants.u) != expected:
            return False
    return True


@check
def u_family_members() -> bool:
    return all(entry.ok for entry in _u_families(_k_max()).entries)


@check
def u_family_completeness() -> bool:
    return all(result.ok for result in _u_families(_k_max()).completeness)


@check
def u_bar_identity(max_components: int) -> bool:
    for resolution in chain_search.enum_resolution_chains(max_components):
        a, x = resolution.t_prime.discriminant(), resolution.t_second.discriminant()
        u_prime = twig_calculus.twig_invariants(resolution.t_prime).u
        if resolution.u_bar != u_prime + 1 - Fraction(a + 1, x):
            return False
    return True


@check
def small_u_tprimes() -> typing.List[str]:
    return [str(chain) for n in range(2, 5) for chain in chain_search.enum_chains_by_discriminant(n)
            if twig_calculus.twig_invariants(chain).u < constants.U_BOUND]


@check
def small_u_classification() -> typing.List[dict]:
    return [{"chain": str(entry.chain), "u_bar": str(entry.u_bar), "delta_bar": str(entry.delta_bar)}
            for entry in chain_search.classify_small_u()]


@check
def five_cusp_solutions(u_bound: str) -> typing.List[str]:
    return [str(solution) for solution in _five_cusp_solutions(Fraction(u_bound))]


@check
def five_cusp_modes_agree() -> bool:
    return _five_cusp_solutions() == _five_cusp_solutions(constants.U_BOUND, chain_search.EXHAUSTIVE)


@check
def u_bound_superset(u_bound: str) -> bool:
    relaxed = {solution.sort_key for solution in _five_cusp_solutions(Fraction(u_bound))}
    return all(solution.sort_key in relaxed for solution in _five_cusp_solutions())


@check
def audit_t5_count() -> int:
    return len(chain_search.audit_t5_candidates())


@check
def audit_survivors() -> typing.List[str]:
    return [f"{row.t5} / {row.t10}" for row in chain_search.single_cusp_audit_table() if row.survives]


@check
def five_cusp_multiplicity_data() -> bool:
    return curve_config.verify_five_cusp_multiplicity_data(_five_cusp_solutions()).ok


@check
def degree_elimination() -> dict:
    eliminations = chain_search.five_cusp_degree_elimination(_five_cusp_solutions())
    return {"genus_sums": [e.genus_sum for e in eliminations], "eliminated": all(e.eliminated for e in eliminations)}


@check
def twig_options(target: str) -> typing.List[str]:
    return [f"{a} + {b}" for a, b in curve_config.four_cusp_twig_options(Fraction(target))]


@check
def four_cusp_case(case: int) -> dict:
    case_report = _four_cusp_case(case)
    return {
        "polynomials": case_report.polynomials_ok,
        "relation": case_report.relation_matches,
        "residues": case_report.residue.ok,
        "sweep": case_report.sweep.ok,
        "noether": all(n.ok for n in case_report.noether),
    }


def tricuspidal_quartic() -> curve_config.CurveConfig:
    return curve_config.CurveConfig(4, tuple(cusp_model.HNPairSeq(((3, 2),)) for _ in range(3)), True, True)


@check
def quartic_certificate() -> dict:
    inequalities = curve_config.inequality_report(tricuspidal_quartic())
    surface = inequalities.surface
    return {
        "E_self": surface.E_self,
        "gamma": surface.gamma,
        "s": surface.s,
        "K_sq": surface.K_sq,
        "component_count": surface.component_count,
        "t": surface.t,
        "delta_D": str(surface.delta_D),
        "e_D": str(surface.e_D),
        "P_sq": str(surface.P_sq),
        "star": [str(inequalities.star.lhs), str(inequalities.star.mid), str(inequalities.star.rhs)],
        "certificate": inequalities.certificate,
    }


@check
def five_cusps_impossible() -> bool:
    complete = five_cusp_modes_agree() and u_bound_superset("3/5")
    eliminated = all(e.eliminated for e in chain_search.five_cusp_degree_elimination(_five_cusp_solutions()))
    return complete and eliminated and five_cusp_multiplicity_data()


@check
def four_cusps_impossible() -> bool:
    options = twig_options(str(constants.TWIG_OPTION_TARGET))
    return len(options) == 3 and all(_four_cusp_case(case).certified for case in range(1, 6))


@check
def twig_count_derivation(c_max: int) -> dict:
    bounds = curve_config.twig_count_bounds(c_max)
    return {"t_max": [bound.t_max for bound in bounds],
            "max_cusps": max(bound.c for bound in bounds if bound.t_max is not None)}


@check
def twig_bound() -> bool:
    derivation = twig_count_derivation(constants.TWIG_DERIVATION_CUSPS)
    # Ten twigs stay open only with four or five cusps; the two searches close them
    above = [c for c, t_max in enumerate(derivation["t_max"], start=1)
             if t_max is not None and t_max > constants.TWIG_BOUND]
    bounded = all(t_max is None or t_max <= constants.TWIG_BOUND + 1 for t_max in derivation["t_max"])
    return (bounded and above == [constants.CUSPS - 1, constants.CUSPS] and derivation["max_cusps"] == constants.CUSPS
            and five_cusps_impossible() and four_cusps_impossible())


@check
def assumptions() -> typing.List[str]:
    return list(curve_config.assumptions(tricuspidal_quartic()))


def run_claim(claim: report.ReportNode) -> typing.Tuple[report.ReportNode, float]:
    start = time.perf_counter()
    function = CHECKS.get(claim.check)
    if function is None:
        claim.status, claim.details = constants.FAIL, f"Unknown check '{claim.check}'"
        return claim, time.perf_counter() - start
    try:
        claim.observed = function(**claim.args)
    except Exception as ex:
        claim.status, claim.details = constants.FAIL, f"{type(ex).__name__}: {ex}"
        return claim, time.perf_counter() - start
    if claim.assumed:
        claim.status = constants.ASSUMED
    elif claim.observed == claim.expected:
        claim.status = constants.PASS
    else:
        claim.status = constants.FAIL
    robot_logger.debug(f"{claim.claim_id}: {claim.status}")
    return claim, time.perf_counter() - start


def verify_claims(group: str = None,
                  parallel: bool = False,
                  manifest: typing.Union[None, dict, str, os.PathLike] = None,
                  section: str = None, ) -> VerificationReport:
    """
    Runs every claim of the manifest (or of one ``group``, or the claims anchored in one ``section``) and returns
    the annotated claim tree.
    With ``parallel`` the checks run on a thread pool; the report keeps the manifest order.
    """
    _k_max()
    root = report.ClaimLoader.load_manifest(manifest, group, section)
    claims = root.claims
    if parallel:
        with concurrent.futures.ThreadPoolExecutor() as executor:
            results = list(executor.map(run_claim, claims))
    else:
        results = [run_claim(claim) for claim in claims]
    timing = {claim.claim_id: round(seconds, 6) for claim, seconds in results}
    verification = VerificationReport(root, timing)
    robot_logger.info(f"verify_claims(group={group}, section={section}): "
                      f"{len(claims)} checks, {len(verification.failures)} failed")
    return verification
