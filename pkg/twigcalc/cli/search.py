import click
import twigcalc.constants as constants
import twigcalc.chain_search as chain_search
import twigcalc.cli.cli as cli


@click.group(name="classify")
def classify_command() -> None:
    """
    Classifications of resolution chains.
    """
    pass


@classify_command.command(name="small-u")
@cli.json_option
@cli.handle_errors
def small_u_command(as_json: bool) -> None:
    """
    Resolution chains with d(T') <= 4 and 0 < u_bar < 1/2.
    """
    entries = chain_search.classify_small_u()
    data = [{"chain": str(e.chain), "u_bar": str(e.u_bar), "delta_bar": str(e.delta_bar)} for e in entries]
    cli.emit(data, as_json, "\n".join(f"{e.chain} u_bar={e.u_bar} delta_bar={e.delta_bar}" for e in entries))


@click.group(name="search")
def search_command() -> None:
    """
    Searches behind the five-cusp argument.
    """
    pass


@search_command.command(name="five-cusps")
@click.option("--u-bound", type=cli.FRACTION, default=str(constants.U_BOUND), show_default=True,
              help="Bound on the sum of u_bar.")
@click.option("--exhaustive", is_flag=True, default=False, help="Unpruned product over the candidate pool.")
@cli.json_option
@cli.handle_errors
def five_cusps_command(u_bound, exhaustive: bool, as_json: bool) -> None:
    """
    Multisets of five resolution chains with 7/2 <= delta(D) < e(D) <= 4 and 0 < sum(u_bar) <= bound.
    """
    mode = chain_search.EXHAUSTIVE if exhaustive else chain_search.PRUNED
    solutions = chain_search.five_cusp_search(u_bound, mode)
    eliminations = chain_search.five_cusp_degree_elimination(solutions)
    data = [dict(solution.to_json(), genus_sum=e.genus_sum, degree=e.degree)
            for solution, e in zip(solutions, eliminations)]
    lines = [f"{solution}  delta(D)={solution.delta_D} e(D)={solution.e_D} genus sum={e.genus_sum} "
             f"{'no degree' if e.eliminated else f'degree {e.degree}'}"
             for solution, e in zip(solutions, eliminations)]
    cli.emit(data, as_json, "\n".join(lines + [f"{len(solutions)} solutions"]))


@search_command.command(name="audit-table")
@cli.json_option
@cli.handle_errors
def audit_table_command(as_json: bool) -> None:
    """
    Candidates T5 with their completions T10 with u_bar < 1/2.
    """
    rows = chain_search.single_cusp_audit_table()
    data = [{"t5": str(r.t5), "t10": str(r.t10), "u_bar": str(r.u_bar), "delta_bar": str(r.delta_bar),
             "e_bar": str(r.e_bar), "delta_ok": r.delta_ok, "e_ok": r.e_ok} for r in rows]
    lines = [f"{r.t5} / {r.t10}: u_bar={r.u_bar} delta_bar={r.delta_bar}{'' if r.delta_ok else ' (<= 1/6)'} "
             f"e_bar={r.e_bar}{'' if r.e_ok else ' (> 2/3)'}" for r in rows]
    cli.emit(data, as_json, "\n".join(lines))


@search_command.command(name="u-families")
@click.option("--k-max", type=click.IntRange(min=0), default=constants.K_MAX, show_default=True,
              envvar=constants.ENV_MAX_K, help="Largest member checked in every family.")
@cli.json_option
@cli.handle_errors
def u_families_command(k_max: int, as_json: bool) -> None:
    """
    Checks the four families of resolution chains with d(T') <= 4 and their completeness.
    """
    report = chain_search.verify_u_families(k_max)
    data = {"k_max": k_max, "ok": report.ok, "failures": report.failures,
            "completeness": [{"family": c.family, "max_disc": c.max_disc, "found": c.found} for c in report.completeness]}
    lines = [f"T'={c.family}: {c.found} completions up to d(T'')={c.max_disc}" for c in report.completeness]
    lines += report.failures + [f"{'ok' if report.ok else 'FAILED'} (k <= {k_max})"]
    cli.emit(data, as_json, "\n".join(lines))
    cli.finish(report.ok)


@search_command.command(name="resolution-chains")
@click.option("--max-components", type=int, default=constants.MAX_COMPONENTS, show_default=True)
@cli.json_option
@cli.handle_errors
def resolution_chains_command(max_components: int, as_json: bool) -> None:
    """
    Chain-shaped resolutions of cusps up to the given number of components.
    """
    chains = chain_search.enum_resolution_chains(max_components)
    cli.emit([r.to_json() for r in chains], as_json, "\n".join(f"{r} ({r.pair[0]}/{r.pair[1]})" for r in chains))
