import click
import twigcalc.dual_graph as dual_graph
import twigcalc.twig_calculus as twig_calculus
import twigcalc.chain_search as chain_search
import twigcalc.cli.cli as cli


@click.command(name="disc")
@click.argument("graph")
@cli.json_option
@cli.handle_errors
def disc_command(graph: str, as_json: bool) -> None:
    """
    Discriminant d(T) = det(-Q(T)) of a chain like "[2,1,3]" or a graph file.
    """
    value = dual_graph.discriminant(cli.load_graph(graph))
    cli.emit({"discriminant": value}, as_json, str(value))


@click.command(name="twigs")
@click.argument("graph")
@cli.json_option
@cli.handle_errors
def twigs_command(graph: str, as_json: bool) -> None:
    """
    Twig invariants d, delta, e, u. A chain argument is read as a twig, tip first.
    """
    loaded = cli.load_graph(graph)
    if isinstance(loaded, dual_graph.Chain):
        invariants = twig_calculus.twig_invariants(loaded)
        cli.emit(invariants.to_json(), as_json,
                 " ".join(f"{key}={value}" for key, value in invariants.to_json().items()))
        return
    invariants = twig_calculus.divisor_invariants(loaded)
    data = {
        "twigs": [dict(twig=str(twig), **inv.to_json()) for twig, inv in invariants.twigs],
        "delta_D": str(invariants.delta),
        "e_D": str(invariants.e),
    }
    lines = [f"{twig}: d={inv.d} delta={inv.delta} e={inv.e} u={inv.u}" for twig, inv in invariants.twigs]
    lines.append(f"t={invariants.twig_count} delta(D)={invariants.delta} e(D)={invariants.e}")
    cli.emit(data, as_json, "\n".join(lines))


@click.command(name="bark")
@click.argument("graph")
@cli.json_option
@cli.handle_errors
def bark_command(graph: str, as_json: bool) -> None:
    """
    Bark coefficients on the maximal twigs of a tree and its self-intersection.
    """
    loaded = cli.load_graph(graph)
    coefficients = twig_calculus.bark(loaded)
    square = twig_calculus.bark_square(loaded)
    data = {"coefficients": {str(v): str(b) for v, b in coefficients.coefficients.items()}, "square": str(square)}
    lines = [f"{v}: {b}" for v, b in coefficients.coefficients.items()] + [f"Bk^2 = {square}"]
    cli.emit(data, as_json, "\n".join(lines))


@click.command(name="enum-chains")
@click.option("--disc", "n", type=int, required=True, help="Discriminant of the chains.")
@cli.json_option
@cli.handle_errors
def enum_chains_command(n: int, as_json: bool) -> None:
    """
    Every chain without (-1)-curves with the given discriminant.
    """
    chains = chain_search.enum_chains_by_discriminant(n)
    cli.emit([list(chain) for chain in chains], as_json, "[" + ",".join(str(chain) for chain in chains) + "]")
