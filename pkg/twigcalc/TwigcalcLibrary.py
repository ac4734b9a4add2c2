from __future__ import annotations
import typing
from fractions import Fraction
import robot.api.deco as robot_deco
import robot.api.logger as robot_logger
import twigcalc.dual_graph as dual_graph
import twigcalc.twig_calculus as twig_calculus
import twigcalc.cusp_model as cusp_model
import twigcalc.chain_search as chain_search
import twigcalc.curve_config as curve_config
import twigcalc.verifier as verifier
import twigcalc.data_loader as data_loader


@robot_deco.library(scope="GLOBAL", auto_keywords=False)
class TwigcalcLibrary:
    """
    Robot Framework library over twigcalc. Chains use the shorthand ``[2,1,3]``, pairs the ``(3/2)`` syntax and
    rationals are returned as text, like ``7/10``, so that suites compare them exactly.

    | Library | twigcalc.TwigcalcLibrary |
    """

    @robot_deco.keyword
    def discriminant_of(self, graph: str) -> int:
        """
        Returns d(T) of a chain shorthand, an inline JSON graph or a graph file.
        """
        return dual_graph.discriminant(data_loader.DataLoader.load_graph(graph))

    @robot_deco.keyword
    def twig_invariants_of(self, chain: str) -> typing.Dict[str, str]:
        """
        Returns ``d``, ``delta``, ``e`` and ``u`` of a twig, tip first.
        """
        invariants = twig_calculus.twig_invariants(data_loader.parse_chain(chain))
        return {key: str(value) for key, value in invariants.to_json().items()}

    @robot_deco.keyword
    def chains_with_discriminant(self, n: int) -> str:
        return "[" + ",".join(str(chain) for chain in chain_search.enum_chains_by_discriminant(int(n))) + "]"

    @robot_deco.keyword
    def small_u_chains(self) -> typing.List[str]:
        """
        Returns ``chain u_bar delta_bar`` for every resolution chain with d(T') <= 4 and 0 < u_bar < 1/2.
        """
        return [f"{e.chain} {e.u_bar} {e.delta_bar}" for e in chain_search.classify_small_u()]

    @robot_deco.keyword
    def five_cusp_solutions(self, u_bound: str = "1/2", exhaustive: bool = False) -> typing.List[str]:
        mode = chain_search.EXHAUSTIVE if exhaustive else chain_search.PRUNED
        solutions = chain_search.five_cusp_search(Fraction(u_bound), mode)
        robot_logger.info(f"{len(solutions)} five-cusp solutions")
        return [str(solution) for solution in solutions]

    @robot_deco.keyword
    def resolution_of_pairs(self, pairs: str, **params: str) -> str:
        """
        Returns the resolution chain of a cusp whose resolution graph is a chain.

        | ${chain} = | Resolution Of Pairs | (16/9) |
        | ${chain} = | Resolution Of Pairs | (6/4)(2/2)^k(2/1) | k=2 |
        """
        seq = cusp_model.parse_hn(pairs, {name: int(value) for name, value in params.items()})
        return str(chain_search.ResolutionChain.from_chain(cusp_model.hn_resolution_graph(seq).as_chain()))

    @robot_deco.keyword
    def multiplicities_of_pairs(self, pairs: str) -> str:
        return str(cusp_model.hn_multiplicities(cusp_model.parse_hn(pairs)))

    @robot_deco.keyword
    def certificate_for_curve(self, config: str) -> str:
        """
        Returns ``rectifiable`` or ``inconclusive`` for a curve config file.
        """
        report = curve_config.inequality_report(curve_config.load_config(config))
        for reason in report.reasons:
            robot_logger.info(reason)
        return report.certificate

    @robot_deco.keyword
    def four_cusp_case_should_be_certified(self, case: int) -> None:
        report = curve_config.four_cusp_case(int(case))
        assert report.certified, f"Case {case} is not certified: {report.to_json()}"

    @robot_deco.keyword
    def claims_should_hold(self, group: str = None, section: str = None) -> int:
        """
        Runs the claim manifest (or one group or source section of it), fails listing the failed claims, and
        returns the number of checks.
        """
        report = verifier.verify_claims(group, section=section)
        robot_logger.info(report.render())
        failed = [claim.claim_id for claim in report.failures]
        assert not failed, f"Failed claims: {', '.join(failed)}"
        return len(report.checks)
