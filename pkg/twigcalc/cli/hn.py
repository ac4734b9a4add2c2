import click
import twigcalc.cusp_model as cusp_model
import twigcalc.cli.cli as cli


@click.group(name="hn")
def hn_command() -> None:
    """
    Hamburger-Noether pairs, like "(3/2)" or "(36/24)(12/12)^k(12/6)".
    """
    pass


@hn_command.command(name="resolve")
@click.argument("pairs")
@cli.param_option
@cli.json_option
@cli.handle_errors
def resolve_command(pairs: str, params, as_json: bool) -> None:
    """
    Dual graph of the minimal resolution.
    """
    graph = cusp_model.hn_resolution_graph(cli.parse_pairs(pairs, params))
    if as_json:
        cli.emit(graph.to_json(), True)
    elif all(graph.degree(v) <= 2 for v in graph.vertices):
        cli.emit(None, False, str(graph.as_chain()))
    else:
        cli.emit(None, False, "\n".join(f"{v}: {graph.weight(v)} -- {graph.neighbours(v)}" for v in graph.vertices))


@hn_command.command(name="mults")
@click.argument("pairs")
@cli.param_option
@cli.json_option
@cli.handle_errors
def mults_command(pairs: str, params, as_json: bool) -> None:
    """
    Multiplicity sequence, trailing 1's included.
    """
    multiplicities = cusp_model.hn_multiplicities(cli.parse_pairs(pairs, params))
    cli.emit(list(multiplicities), as_json, str(multiplicities))


@hn_command.command(name="mi")
@click.argument("pairs")
@cli.param_option
@cli.json_option
@cli.handle_errors
def mi_command(pairs: str, params, as_json: bool) -> None:
    """
    M (sum of multiplicities) and I (sum of their squares).
    """
    invariants = cusp_model.mi_invariants(cli.parse_pairs(pairs, params))
    cli.emit({"M": invariants.M, "I": invariants.I}, as_json, f"M={invariants.M} I={invariants.I}")


@hn_command.command(name="validate")
@click.argument("pairs")
@cli.param_option
@cli.json_option
@cli.handle_errors
def validate_command(pairs: str, params, as_json: bool) -> None:
    """
    Checks the divisibility conditions of the pairs.
    """
    violation = cusp_model.validate_hn(cli.parse_pairs(pairs, params))
    cli.emit({"valid": violation is None, "violation": violation}, as_json, violation or "valid")
    cli.finish(violation is None)
