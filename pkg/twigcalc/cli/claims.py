import click
import twigcalc.verifier as verifier
import twigcalc.cli.cli as cli


@click.command(name="verify-paper")
@click.option("--group", default=None, help="Run a single group: chains, bark, families, small-u, five-cusps, "
                                            "four-cusps or conclusions.")
@click.option("--section", default=None, metavar="N",
              help="Run the claims anchored in one source section, 1 to 5 (a leading § is accepted).")
@click.option("--parallel", is_flag=True, default=False, help="Run the checks on a thread pool.")
@click.option("--manifest", type=click.Path(), default=None, help="Alternative claim manifest.")
@cli.json_option
@cli.handle_errors
def verify_paper_command(group: str, section: str, parallel: bool, manifest: str, as_json: bool) -> None:
    """
    Recomputes every claim of the manifest. Exit code 1 when a claim fails.
    """
    report = verifier.verify_claims(group, parallel, manifest, section)
    cli.emit(report.to_json(), as_json, report.render)
    cli.finish(report.ok)
