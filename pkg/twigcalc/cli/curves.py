import click
import twigcalc.constants as constants
import twigcalc.curve_config as curve_config
import twigcalc.cli.cli as cli


@click.command(name="check-curve")
@click.argument("config", type=click.Path())
@cli.param_option
@cli.json_option
@cli.handle_errors
def check_curve_command(config: str, params, as_json: bool) -> None:
    """
    Surface invariants and necessary inequalities of a curve config. A violation certifies rectifiability.
    """
    report = curve_config.inequality_report(curve_config.load_config(config, cli.parse_params(params)))

    def text() -> str:
        surface = report.surface
        lines = [f"E^2={surface.E_self} gamma={surface.gamma} s={surface.s} K^2={surface.K_sq} "
                 f"#D={surface.component_count} t={surface.t}",
                 f"delta(D)={surface.delta_D} e(D)={surface.e_D} K.(K+D)={surface.K_dot_KplusD} P^2={surface.P_sq}"]
        if report.star is not None:
            lines.append(f"star: {report.star.lhs} <= {report.star.mid} <= {report.star.rhs} "
                         f"{'holds' if report.star.holds else 'fails'}")
        lines.append(f"diamond: {report.diamond.lhs} <= 5 {'holds' if report.diamond.holds else 'fails'}"
                     if report.diamond is not None else f"diamond: {constants.UNKNOWN}")
        lines += [f"assumed: {note}" for note in report.assumptions]
        lines += [f"violated: {reason}" for reason in report.reasons]
        lines.append(f"certificate: {report.certificate}")
        return "\n".join(lines)

    cli.emit(report.to_json(), as_json, text)


@click.command(name="four-cusp")
@click.option("--case", "cases", type=click.IntRange(1, 5), multiple=True, help="Case number; all cases by default.")
@click.option("--sweep-bound", type=click.IntRange(min=constants.MIN_DEGREE), default=constants.SWEEP_BOUND,
              show_default=True, help="Largest d and k of the integer sweep.")
@cli.json_option
@cli.handle_errors
def four_cusp_command(cases, sweep_bound: int, as_json: bool) -> None:
    """
    Four cusps with ten maximal twigs: the five remaining cases.
    """
    reports = [curve_config.four_cusp_case(case, sweep_bound) for case in (cases or range(1, 6))]

    def text() -> str:
        lines = []
        for r in reports:
            lines.append(f"Case {r.case_id}: {r.printed_relation}")
            lines += [f"  {p.name} = {p.computed} {'ok' if p.ok else f'(printed {p.printed})'}" for p in r.polynomials]
            lines.append(f"  residues mod {r.residue.modulus} over {','.join(r.residue.variables)}: "
                         f"{r.residue.checked} checked, {len(r.residue.zeros)} zeros")
            if r.discriminant is not None:
                lines.append(f"  discriminant {r.discriminant}")
            lines.append(f"  sweep d <= {r.sweep.d_range[1]}, k <= {r.sweep.k_range[1]}: "
                         f"{len(r.sweep.solutions)} solutions")
            lines.append(f"  {'certified' if r.certified else 'NOT certified'}")
        return "\n".join(lines)

    cli.emit([r.to_json() for r in reports], as_json, text)
    cli.finish(all(r.certified for r in reports))
