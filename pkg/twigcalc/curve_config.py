from __future__ import annotations
import typing
import dataclasses
import itertools
import math
import os
from fractions import Fraction
import sympy
import robot.api.logger as robot_logger
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph
import twigcalc.twig_calculus as twig_calculus
import twigcalc.cusp_model as cusp_model
import twigcalc.chain_search as chain_search
import twigcalc.data_loader as data_loader

D_SYMBOL, K_SYMBOL, L_SYMBOL, GAMMA_SYMBOL = sympy.symbols("d k l gamma", integer=True)
SYMBOLS = {"d": D_SYMBOL, "k": K_SYMBOL, "l": L_SYMBOL, "gamma": GAMMA_SYMBOL}


@dataclasses.dataclass(frozen=True)
class CurveConfig:
    """
    Rational cuspidal plane curve of degree ``degree`` with the given cusps.

    ``kappa_KE_nonneg`` assumes ``kappa(K + E) >= 0``; ``kappa_KD_two`` assumes ``kappa(K + D) = 2`` and
    is set automatically (``None``) when there are at least three cusps.
    """
    degree: int
    cusps: typing.Tuple[cusp_model.HNPairSeq, ...]
    kappa_KE_nonneg: bool = True
    kappa_KD_two: typing.Optional[bool] = None

    @property
    def c(self) -> int:
        return len(self.cusps)

    @property
    def epsilon(self) -> int:
        return 1 if self.c == 1 else 0

    @property
    def kappa_KD_two_effective(self) -> bool:
        if self.kappa_KD_two is None:
            return self.c >= 3
        if not self.kappa_KD_two and self.c >= 3:
            raise errors.ConfigurationFlagError(
                f"kappa(K+D) = 2 holds for every configuration with c >= 3 (c = {self.c}); the flag cannot be false")
        return self.kappa_KD_two


@dataclasses.dataclass(frozen=True)
class SurfaceReport:
    D: dual_graph.DualGraph
    cusp_vertices: typing.Tuple[typing.FrozenSet[int], ...]
    E_self: int
    gamma: int
    K_sq: int
    s: int
    component_count: int
    t: int
    delta_D: typing.Optional[Fraction]
    e_D: typing.Optional[Fraction]
    K_dot_E: int
    K_dot_KplusD: int
    P_sq: typing.Optional[Fraction]
    h0_2KD: typing.Optional[int]
    cusp_twig_discriminants: typing.Tuple[typing.Tuple[int, ...], ...]
    twig_in_each_cusp: bool

    def to_json(self) -> dict:
        return {
            "E_self": self.E_self,
            "gamma": self.gamma,
            "K_sq": self.K_sq,
            "s": self.s,
            "component_count": self.component_count,
            "t": self.t,
            "delta_D": _text(self.delta_D),
            "e_D": _text(self.e_D),
            "K_dot_E": self.K_dot_E,
            "K_dot_KplusD": self.K_dot_KplusD,
            "P_sq": _text(self.P_sq),
            "h0_2KD": _text(self.h0_2KD),
            "cusp_twig_discriminants": [list(discriminants) for discriminants in self.cusp_twig_discriminants],
            "twig_in_each_cusp": self.twig_in_each_cusp,
        }


@dataclasses.dataclass(frozen=True)
class StarInequality:
    lhs: Fraction
    mid: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.mid <= self.rhs

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "mid": str(self.mid), "rhs": str(self.rhs), "holds": self.holds}


@dataclasses.dataclass(frozen=True)
class DiamondInequality:
    lhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= 5

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "holds": self.holds}


@dataclasses.dataclass(frozen=True)
class InequalityReport:
    surface: SurfaceReport
    star: typing.Optional[StarInequality]
    diamond: typing.Optional[DiamondInequality]
    gamma_ok: bool
    degree_ok: bool
    twig_bound_ok: bool
    assumptions: typing.Tuple[str, ...]
    reasons: typing.Tuple[str, ...]

    @property
    def certificate(self) -> str:
        return constants.RECTIFIABLE if self.reasons else constants.INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "star": self.star.to_json() if self.star is not None else constants.UNKNOWN,
            "diamond": self.diamond.to_json() if self.diamond is not None else constants.UNKNOWN,
            "gamma_ok": self.gamma_ok,
            "degree_ok": self.degree_ok,
            "twig_bound_ok": self.twig_bound_ok,
            "assumptions": list(self.assumptions),
            "reasons": list(self.reasons),
            "certificate": self.certificate,
        }


@dataclasses.dataclass(frozen=True)
class TwigCountBound:
    """
    Largest twig count ``t_max`` left open with ``c`` cusps (``None`` when even ``t = 2c`` is excluded).
    """
    c: int
    t_max: typing.Optional[int]
    steps: typing.Tuple[str, ...]

    def to_json(self) -> dict:
        return {"c": self.c, "t_max": self.t_max, "steps": list(self.steps)}


@dataclasses.dataclass(frozen=True)
class AffineIntPoly:
    """
    ``a0 + a_k * k + a_l * l`` with integer coefficients.
    """
    a0: int = 0
    a_k: int = 0
    a_l: int = 0

    @property
    def triple(self) -> typing.Tuple[int, int, int]:
        return self.a0, self.a_k, self.a_l

    def evaluate(self, k: int = 0, l: int = 0) -> int:
        return self.a0 + self.a_k * k + self.a_l * l

    def as_expr(self) -> sympy.Expr:
        return self.a0 + self.a_k * K_SYMBOL + self.a_l * L_SYMBOL

    def __add__(self, other: AffineIntPoly) -> AffineIntPoly:
        return AffineIntPoly(self.a0 + other.a0, self.a_k + other.a_k, self.a_l + other.a_l)

    def __str__(self) -> str:
        return str(self.as_expr())


@dataclasses.dataclass(frozen=True)
class PolynomialMatch:
    name: str
    computed: AffineIntPoly
    printed: AffineIntPoly

    @property
    def ok(self) -> bool:
        return self.computed == self.printed


@dataclasses.dataclass(frozen=True)
class ResidueCertificate:
    modulus: int
    variables: typing.Tuple[str, ...]
    checked: int
    zeros: typing.Tuple[typing.Tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.zeros


@dataclasses.dataclass(frozen=True)
class SweepResult:
    d_range: typing.Tuple[int, int]
    k_range: typing.Tuple[int, int]
    solutions: typing.Tuple[typing.Tuple[int, int, Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.solutions


@dataclasses.dataclass(frozen=True)
class NoetherCheck:
    k: int
    l: int
    difference: int

    @property
    def expected(self) -> int:
        return constants.NOETHER_OFFSET + self.k + self.l

    @property
    def ok(self) -> bool:
        return self.difference == self.expected


@dataclasses.dataclass(frozen=True)
class CaseReport:
    case_id: int
    polynomials: typing.Tuple[PolynomialMatch, ...]
    relation: str
    printed_relation: str
    relation_matches: bool
    residue: ResidueCertificate
    discriminant: typing.Optional[int]
    sweep: SweepResult
    noether: typing.Tuple[NoetherCheck, ...]

    @property
    def polynomials_ok(self) -> bool:
        return all(p.ok for p in self.polynomials)

    @property
    def certified(self) -> bool:
        return (self.polynomials_ok and self.relation_matches and self.residue.ok and self.sweep.ok
                and all(n.ok for n in self.noether))

    def to_json(self) -> dict:
        return {
            "case": self.case_id,
            "polynomials": {p.name: {"computed": list(p.computed.triple), "printed": list(p.printed.triple),
                                     "ok": p.ok} for p in self.polynomials},
            "relation": self.relation,
            "printed_relation": self.printed_relation,
            "relation_matches": self.relation_matches,
            "residue": {"modulus": self.residue.modulus, "variables": list(self.residue.variables),
                        "checked": self.residue.checked, "zeros": [list(z) for z in self.residue.zeros]},
            "discriminant": self.discriminant,
            "sweep": {"d": list(self.sweep.d_range), "k": list(self.sweep.k_range),
                      "solutions": [[str(x) for x in s] for s in self.sweep.solutions]},
            "noether": [{"k": n.k, "l": n.l, "difference": n.difference, "ok": n.ok} for n in self.noether],
            "certified": self.certified,
        }


@dataclasses.dataclass(frozen=True)
class FiveCuspDataRow:
    solution: chain_search.FiveCuspSolution
    multiplicities: typing.Tuple[cusp_model.MultiplicitySequence, ...]
    patterns: typing.Tuple[typing.Optional[str], ...]
    round_trip: bool
    bounds_consistent: bool

    @property
    def ok(self) -> bool:
        return self.round_trip and self.bounds_consistent and all(p is not None for p in self.patterns)


@dataclasses.dataclass(frozen=True)
class FiveCuspDataReport:
    rows: typing.Tuple[FiveCuspDataRow, ...]
    eliminations: typing.Tuple[chain_search.DegreeElimination, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and all(e.eliminated for e in self.eliminations)


def _text(value: typing.Any) -> typing.Optional[str]:
    return None if value is None else str(value)


def _fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def load_config(file: typing.Union[str, os.PathLike], params: typing.Mapping[str, int] = None) -> CurveConfig:
    """
    Reads ``{"degree": 4, "cusps": ["(3/2)", ...], "params": {"k": 1}, "assume": {"kappa_KD_two": true}}``.
    ``params`` overrides the file's parameters.
    """
    source = str(file)
    data = data_loader.DataLoader.load_yaml_file(file)
    if not isinstance(data, dict):
        raise errors.ParseError("Curve config should be a mapping", source)
    unknown = set(data) - {"degree", "cusps", "params", "assume"}
    if unknown:
        raise errors.ParseError(f"Unknown config keys: {sorted(unknown)}", source)
    degree = data.get("degree")
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
        raise errors.ParseError(f"'degree' should be a positive integer, got {degree!r}", source)
    bound = dict(data.get("params") or {})
    bound.update(params or {})
    cusps = data.get("cusps") or []
    if not isinstance(cusps, list) or not all(isinstance(cusp, str) for cusp in cusps):
        raise errors.ParseError("'cusps' should be a list of pair sequences like \"(3/2)\"", source)
    assume = data.get("assume") or {}
    unknown = set(assume) - {"kappa_KE_nonneg", "kappa_KD_two"}
    if unknown:
        raise errors.ParseError(f"Unknown assumption flags: {sorted(unknown)}", source)
    return CurveConfig(degree,
                       tuple(cusp_model.parse_hn(cusp, bound, source) for cusp in cusps),
                       bool(assume.get("kappa_KE_nonneg", True)),
                       assume.get("kappa_KD_two"))


def build_surface(cfg: CurveConfig) -> SurfaceReport:
    """
    Assembles ``D = E + Q_1 + ... + Q_c``, ``E`` joined to the (-1)-curve of every ``Q_i``, and computes the
    invariants of the minimal log resolution.
    """
    if not cfg.cusps:
        raise errors.ImpossibleConfigurationError("A cuspidal configuration needs at least one cusp")
    genus = cusp_model.genus_check(cfg.degree, cfg.cusps)
    if not genus.ok:
        raise errors.ImpossibleConfigurationError(
            f"impossible configuration: sum C(m,2) = {genus.lhs} but C(d-1,2) = {genus.rhs} for d = {cfg.degree}")
    kappa_KD_two = cfg.kappa_KD_two_effective
    if cfg.kappa_KD_two is None and kappa_KD_two:
        robot_logger.warn(f"kappa(K+D) = 2 assumed automatically (c = {cfg.c} >= 3)")

    sum_m = sum(cusp_model.mi_invariants(seq).M for seq in cfg.cusps)
    sum_i = sum(cusp_model.mi_invariants(seq).I for seq in cfg.cusps)
    s = sum(len(cusp_model.hn_multiplicities(seq)) for seq in cfg.cusps)
    E_self = cfg.degree ** 2 - sum_i

    vertices = [(constants.CURVE_ID, E_self)]
    edges = []
    cusp_vertices = []
    offset = constants.CURVE_ID + 1
    for seq in cfg.cusps:
        q = cusp_model.hn_resolution_graph(seq).relabeled(offset)
        vertices.extend((v, q.weight(v)) for v in q.vertices)
        edges.extend(q.edges)
        edges.append((constants.CURVE_ID, q.mark(constants.MARK_MINUS_ONE)))
        cusp_vertices.append(frozenset(q.vertices))
        offset += len(q)
    D = dual_graph.DualGraph(vertices, edges, {constants.MARK_CURVE: constants.CURVE_ID})

    gamma = -E_self
    K_sq = 9 - s
    component_count = len(D)
    assert s == component_count - 1, f"{s} blow-ups but {component_count} components"
    assert K_sq + component_count == constants.NOETHER_TOTAL, f"K^2 + #D = {K_sq + component_count}"
    assert gamma - 2 + 3 * cfg.degree == sum_m, f"gamma - 2 + 3d = {gamma - 2 + 3 * cfg.degree}, sum M = {sum_m}"
    assert gamma + cfg.degree ** 2 == sum_i, f"gamma + d^2 = {gamma + cfg.degree ** 2}, sum I = {sum_i}"
    K_dot_E = dual_graph.canonical_pairing(D, [constants.CURVE_ID]).k_dot
    assert K_dot_E == -3 * cfg.degree + sum_m, f"K.E = {K_dot_E}, expected {-3 * cfg.degree + sum_m}"

    classification = dual_graph.classify(D)
    t = classification.twig_count
    try:
        invariants = twig_calculus.divisor_invariants(D)
        delta_D, e_D = invariants.delta, invariants.e
        assert twig_calculus.bark_square(D) == -e_D
    except errors.DefinitenessError as ex:
        robot_logger.warn(f"{ex}: delta(D), e(D) and P^2 are unknown")
        delta_D, e_D = None, None
    K_dot_KplusD = K_sq + dual_graph.canonical_pairing(D).k_dot
    P_sq = K_dot_KplusD - 2 + e_D if e_D is not None else None
    h0_2KD = K_dot_KplusD if kappa_KD_two else None
    cusp_twig_discriminants = tuple(
        tuple(sorted(twig.discriminant() for path, twig in zip(classification.twig_vertices, classification.maximal_twigs)
                     if set(path) <= vertices))
        for vertices in cusp_vertices)
    # Every Q_i carries a maximal twig T with d(T) >= 3
    twig_in_each_cusp = all(discriminants and discriminants[-1] >= 3 for discriminants in cusp_twig_discriminants)
    assert twig_in_each_cusp, f"Some Q_i has no maximal twig with d >= 3: {cusp_twig_discriminants}"

    report = SurfaceReport(D, tuple(cusp_vertices), E_self, gamma, K_sq, s, component_count, t, delta_D, e_D,
                           K_dot_E, K_dot_KplusD, P_sq, h0_2KD, cusp_twig_discriminants, twig_in_each_cusp)
    robot_logger.info(f"build_surface(d={cfg.degree}, c={cfg.c}): {report.to_json()}")
    return report


def star_inequality(t: int, c: int, delta_D: Fraction, P_sq: Fraction) -> StarInequality:
    epsilon = 1 if c == 1 else 0
    return StarInequality(t - Fraction(c + epsilon, 2), delta_D + 1 + P_sq, delta_D + 4)


def diamond_inequality(h0_2KD: int, e_D: Fraction) -> DiamondInequality:
    return DiamondInequality(h0_2KD + e_D)


def assumptions(cfg: CurveConfig) -> typing.Tuple[str, ...]:
    notes = [f"chi(X - D) = {constants.EULER_CHARACTERISTIC} (Q-acyclic complement)",
             f"log BMY: P^2 <= {constants.BMY_FACTOR} chi(X - D)",
             "negative part of K + D equals the bark of D"]
    if cfg.kappa_KE_nonneg:
        notes.append("kappa(K + E) >= 0")
    if cfg.kappa_KD_two_effective:
        notes.append("kappa(K + D) = 2" + (" (automatic, c >= 3)" if cfg.kappa_KD_two is None else ""))
    return tuple(notes)


def inequality_report(cfg: CurveConfig) -> InequalityReport:
    """
    Necessary conditions for ``kappa(K + E) >= 0``. Any violation certifies the curve as rectifiable;
    satisfying all of them proves nothing.
    """
    surface = build_surface(cfg)
    star = None
    diamond = None
    if surface.P_sq is not None:
        star = star_inequality(surface.t, cfg.c, surface.delta_D, surface.P_sq)
        if surface.h0_2KD is not None:
            diamond = diamond_inequality(surface.h0_2KD, surface.e_D)
    gamma_ok = surface.gamma >= constants.GAMMA_MIN
    degree_ok = cfg.degree >= constants.MIN_DEGREE
    twig_bound_ok = surface.t <= constants.TWIG_BOUND
    reasons = []
    if cfg.kappa_KE_nonneg:
        if star is not None and not star.holds:
            reasons.append(f"star inequality fails: {star.lhs} <= {star.mid} <= {star.rhs}")
        if diamond is not None and not diamond.holds:
            reasons.append(f"diamond inequality fails: {diamond.lhs} > 5")
        if not gamma_ok:
            reasons.append(f"gamma = {surface.gamma} < {constants.GAMMA_MIN}")
        if not degree_ok:
            reasons.append(f"degree {cfg.degree} < {constants.MIN_DEGREE}")
        if not twig_bound_ok:
            reasons.append(f"t = {surface.t} > {constants.TWIG_BOUND}")
    report = InequalityReport(surface, star, diamond, gamma_ok, degree_ok, twig_bound_ok, assumptions(cfg),
                              tuple(reasons))
    robot_logger.info(f"inequality_report: {report.certificate}")
    return report


def twig_bounds_consistent(t: int, c: int, delta_D: Fraction, e_D: Fraction) -> bool:
    """
    Outer bounds used by the twig searches: ``t - (c + eps)/2 <= delta(D) + 4`` and ``e(D) <= 4``.
    """
    epsilon = 1 if c == 1 else 0
    return t - Fraction(c + epsilon, 2) <= delta_D + 4 and e_D <= constants.E_D_MAX


def twig_count_bound(c: int) -> TwigCountBound:
    """
    Every Q_i holds at least two maximal twigs, one of them with d >= 3, so ``t >= 2c`` and
    ``delta(D) <= c/3 + (t - c)/2``. The star inequality with ``P^2 <= 3 chi(X - D)`` bounds ``t``.
    With ``c >= 3`` also ``kappa(K + D) = 2``, and the diamond inequality gives ``delta(D) <= e(D) <= 4``.
    """
    if c < 1:
        raise errors.SearchError(f"Cusp count should be positive, got {c}")
    p_sq_max = Fraction(constants.BMY_FACTOR * constants.EULER_CHARACTERISTIC)
    assert diamond_inequality(1, constants.E_D_MAX).holds, f"e(D) = {constants.E_D_MAX} should satisfy the diamond"
    t_max = None
    steps = []
    t = 2 * c
    while True:
        delta_max = Fraction(c, 3) + Fraction(t - c, 2)
        if c >= 3:
            delta_max = min(delta_max, constants.E_D_MAX)
        star = star_inequality(t, c, delta_max, p_sq_max)
        steps.append(f"t = {t}: {star.lhs} <= {star.rhs}")
        if star.lhs > star.rhs:
            break
        t_max = t
        t += 1
    robot_logger.debug(f"twig_count_bound(c={c}): t_max = {t_max}")
    return TwigCountBound(c, t_max, tuple(steps))


def twig_count_bounds(c_max: int = constants.TWIG_DERIVATION_CUSPS) -> typing.List[TwigCountBound]:
    return [twig_count_bound(c) for c in range(1, c_max + 1)]


def four_cusp_twig_options(target: Fraction = constants.TWIG_OPTION_TARGET) -> typing.List[
        typing.Tuple[dual_graph.Chain, dual_graph.Chain]]:
    """
    Pairs of one-component twigs ``([a], [b])`` with ``1/a + 1/b = target``.
    """
    target = Fraction(target)
    if target <= 0:
        raise errors.SearchError(f"Target should be positive, got {target}")
    options = []
    a = 2
    while Fraction(2, a) >= target:
        rest = target - Fraction(1, a)
        if rest > 0 and rest.numerator == 1 and rest.denominator >= a:
            b = rest.denominator
            options.append((dual_graph.Chain([a]), dual_graph.Chain([b])))
            if b != a:
                options.append((dual_graph.Chain([b]), dual_graph.Chain([a])))
        a += 1
    return options


def template_mi(template: cusp_model.HNTemplate) -> typing.Tuple[AffineIntPoly, AffineIntPoly]:
    """
    ``M`` and ``I`` of a pair sequence with symbolic repetitions, as affine polynomials in ``k`` and ``l``.
    """
    first_c, _, first_exponent = template.terms[0]
    if first_exponent != 1:
        raise errors.InvalidPairsError(f"The first pair of {template} should not repeat")
    big_m = AffineIntPoly(first_c - 1)
    big_i = AffineIntPoly()
    for c, p, exponent in template.terms:
        if exponent == "k":
            big_m, big_i = big_m + AffineIntPoly(0, p), big_i + AffineIntPoly(0, c * p)
        elif exponent == "l":
            big_m, big_i = big_m + AffineIntPoly(0, 0, p), big_i + AffineIntPoly(0, 0, c * p)
        elif isinstance(exponent, int):
            big_m, big_i = big_m + AffineIntPoly(exponent * p), big_i + AffineIntPoly(exponent * c * p)
        else:
            raise errors.ParseError(f"Only the parameters k and l are supported, got '{exponent}'")
    return big_m, big_i


def four_cusp_cases() -> typing.Dict[int, dict]:
    data = data_loader.DataLoader.load_resource(constants.FOUR_CUSP_CASES_FILE)
    return {case["case"]: dict(case, fixed_cusps=data["fixed_cusps"]) for case in data["cases"]}


def _case_data(case_id: int) -> dict:
    cases = four_cusp_cases()
    if case_id not in cases:
        raise errors.SearchError(f"Unknown four-cusp case {case_id}, expected one of {sorted(cases)}")
    return cases[case_id]


def _parse_relation(text: str) -> sympy.Expr:
    lhs, rhs = text.split("=")
    return sympy.expand(sympy.sympify(lhs, locals=SYMBOLS) - sympy.sympify(rhs, locals=SYMBOLS))


def _same_relation(a: sympy.Expr, b: sympy.Expr) -> bool:
    generators = sorted(a.free_symbols | b.free_symbols, key=str)
    poly_a, poly_b = sympy.Poly(a, *generators), sympy.Poly(b, *generators)
    return sympy.expand(a * poly_b.LC() - b * poly_a.LC()) == 0


def _case_equations(case: dict) -> typing.Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
    sum_m = AffineIntPoly()
    sum_i = AffineIntPoly()
    for text in [case["q1"], case["q2"]] + list(case["fixed_cusps"]):
        big_m, big_i = template_mi(cusp_model.parse_hn_template(text))
        sum_m, sum_i = sum_m + big_m, sum_i + big_i
    d, k, l, gamma = D_SYMBOL, K_SYMBOL, L_SYMBOL, GAMMA_SYMBOL
    first = gamma - 2 + 3 * d - sum_m.as_expr()
    second = gamma + d ** 2 - sum_i.as_expr()
    noether = l - (gamma - k - constants.NOETHER_OFFSET)
    return first, second, noether


def case_relation(case_id: int) -> sympy.Expr:
    """
    Relation left after eliminating the case's two variables with the two linear equations, as a primitive
    integer polynomial with positive leading coefficient.
    """
    case = _case_data(case_id)
    first, second, noether = _case_equations(case)
    eliminated = [SYMBOLS[name] for name in case["eliminate"]]
    solution = sympy.solve([first, noether], eliminated, dict=True)[0]
    numerator, _ = sympy.fraction(sympy.together(second.subs(solution)))
    generators = sorted(numerator.free_symbols, key=str)
    _, primitive = sympy.Poly(sympy.expand(numerator), *generators).primitive()
    if primitive.LC() < 0:
        primitive = -primitive
    return primitive.as_expr()


def residue_certificate(relation: sympy.Expr, modulus: int) -> ResidueCertificate:
    generators = sorted(relation.free_symbols, key=str)
    poly = sympy.Poly(relation, *generators)
    terms = [(tuple(monomial), int(coefficient)) for monomial, coefficient in poly.terms()]
    zeros = []
    checked = 0
    for residues in itertools.product(range(modulus), repeat=len(generators)):
        checked += 1
        value = sum(coefficient * math.prod(r ** e for r, e in zip(residues, monomial))
                    for monomial, coefficient in terms)
        if value % modulus == 0:
            zeros.append(residues)
    return ResidueCertificate(modulus, tuple(str(g) for g in generators), checked, tuple(zeros))


def sweep(case_id: int, bound: int = constants.SWEEP_BOUND) -> SweepResult:
    """
    Integer solutions with ``6 <= d <= bound``, ``0 <= k <= bound`` and ``l >= 0``, solving the two linear
    equations for ``gamma`` and ``l``.
    """
    first, second, noether = _case_equations(_case_data(case_id))
    solution = sympy.solve([first, noether], [GAMMA_SYMBOL, L_SYMBOL], dict=True)[0]
    numerator, _ = sympy.fraction(sympy.together(second.subs(solution)))
    residual = sympy.Poly(sympy.expand(numerator), K_SYMBOL)
    assert residual.degree() <= 1, f"Case {case_id} residual is not linear in k"
    coefficients = residual.all_coeffs()
    a1 = sympy.Poly(coefficients[0], D_SYMBOL) if len(coefficients) == 2 else sympy.Poly(0, D_SYMBOL)
    a0 = sympy.Poly(coefficients[-1], D_SYMBOL)
    gamma_expr, l_expr = solution[GAMMA_SYMBOL], solution[L_SYMBOL]
    found = []
    for d in range(constants.MIN_DEGREE, bound + 1):
        slope, constant = int(a1.eval(d)), int(a0.eval(d))
        if slope == 0:
            candidates = range(bound + 1) if constant == 0 else []
        else:
            k, remainder = divmod(-constant, slope)
            candidates = [k] if remainder == 0 and 0 <= k <= bound else []
        for k in candidates:
            gamma = _fraction(gamma_expr.subs({D_SYMBOL: d, K_SYMBOL: k}))
            l = _fraction(l_expr.subs({D_SYMBOL: d, K_SYMBOL: k}))
            if gamma.denominator == 1 and l.denominator == 1 and l >= 0:
                found.append((d, k, gamma, l))
    return SweepResult((constants.MIN_DEGREE, bound), (0, bound), tuple(found))


def noether_reduction_check(case_id: int, k: int, l: int) -> NoetherCheck:
    """
    ``#Q1 + #Q2 - K.(Q1 + Q2)`` on the simulated resolution graphs of ``q1`` and ``q2``.
    """
    case = _case_data(case_id)
    difference = 0
    for text in (case["q1"], case["q2"]):
        graph = cusp_model.hn_resolution_graph(cusp_model.parse_hn(text, {"k": k, "l": l}))
        difference += len(graph) - dual_graph.canonical_pairing(graph).k_dot
    return NoetherCheck(k, l, difference)


def four_cusp_case(case_id: int, sweep_bound: int = constants.SWEEP_BOUND) -> CaseReport:
    case = _case_data(case_id)
    matches = []
    for name, text in (("1", case["q1"]), ("2", case["q2"])):
        template = cusp_model.parse_hn_template(text)
        big_m, big_i = template_mi(template)
        for params in ({"k": 0, "l": 0}, {"k": 1, "l": 2}, {"k": 3, "l": 1}):
            invariants = cusp_model.mi_invariants(template.bind(params))
            assert (invariants.M, invariants.I) == (big_m.evaluate(**params), big_i.evaluate(**params)), \
                f"Affine M/I of {text} disagree with the pair sequence at {params}"
        matches.append(PolynomialMatch(f"M{name}", big_m, AffineIntPoly(*case["polynomials"][f"M{name}"])))
        matches.append(PolynomialMatch(f"I{name}", big_i, AffineIntPoly(*case["polynomials"][f"I{name}"])))
    relation = case_relation(case_id)
    printed = _parse_relation(case["relation"])
    residue = residue_certificate(printed, case["modulus"])
    discriminant = None
    if printed.free_symbols == {D_SYMBOL}:
        discriminant = int(sympy.discriminant(printed, D_SYMBOL))
        assert discriminant < 0 or math.isqrt(discriminant) ** 2 != discriminant, \
            f"Case {case_id} relation has a square discriminant"
    noether = tuple(noether_reduction_check(case_id, k, l) for k, l in ((0, 0), (1, 0), (0, 1), (2, 3)))
    report = CaseReport(case_id, tuple(matches), str(relation), case["relation"], _same_relation(relation, printed),
                        residue, discriminant, sweep(case_id, sweep_bound), noether)
    robot_logger.info(f"four_cusp_case({case_id}): certified={report.certified}")
    return report


def _multiplicity_pattern(m: typing.Tuple[int, ...]) -> typing.Optional[str]:
    if m == (2, 1, 1):
        return "(2,1,1)"
    if m == (3, 2, 1, 1):
        return "(3,2,1,1)"
    if m == (9, 7, 2, 2, 2, 1, 1):
        return "(9,7,(2)_3,(1)_2)"
    n = m[0]
    if n >= 5 and m == (n, n - 1) + (1,) * (n - 1):
        return "(n,n-1,(1)_(n-1))"
    return None


def verify_five_cusp_multiplicity_data(
        solutions: typing.Sequence[chain_search.FiveCuspSolution] = None) -> FiveCuspDataReport:
    """
    Recovers the pairs of every cusp of every five-cusp solution, checks the multiplicity patterns and
    eliminates the degree with the genus formula.
    """
    if solutions is None:
        solutions = chain_search.five_cusp_search()
    rows = []
    for solution in solutions:
        multiplicities = []
        round_trip = True
        for resolution in solution.chains:
            seq = cusp_model.pairs_from_chain(resolution.full)
            multiplicities.append(cusp_model.hn_multiplicities(seq))
            rebuilt = chain_search.ResolutionChain.from_chain(cusp_model.hn_resolution_graph(seq).as_chain())
            round_trip = round_trip and rebuilt == resolution
        patterns = tuple(_multiplicity_pattern(m.m) for m in multiplicities)
        consistent = twig_bounds_consistent(2 * constants.CUSPS, constants.CUSPS, solution.delta_D, solution.e_D)
        rows.append(FiveCuspDataRow(solution, tuple(multiplicities), patterns, round_trip, consistent))
    eliminations = chain_search.five_cusp_degree_elimination(solutions)
    return FiveCuspDataReport(tuple(rows), tuple(eliminations))
