import click
import twigcalc.cli.graphs as graphs
import twigcalc.cli.search as search
import twigcalc.cli.hn as hn
import twigcalc.cli.curves as curves
import twigcalc.cli.claims as claims


@click.group(name="twigcalc")
def twigcalc_command() -> None:
    """
    twigcalc command.
    """
    pass


def twigcalc_cli() -> click.Group:
    for command in (graphs.disc_command,
                    graphs.twigs_command,
                    graphs.bark_command,
                    graphs.enum_chains_command,
                    search.classify_command,
                    search.search_command,
                    hn.hn_command,
                    curves.check_curve_command,
                    curves.four_cusp_command,
                    claims.verify_paper_command, ):
        twigcalc_command.add_command(command)
    twigcalc_command.add_command(claims.verify_paper_command, name="verify-claims")
    return twigcalc_command


def twigcalc_entry() -> None:
    twigcalc_cli()()


if __name__ == '__main__':
    twigcalc_entry()
