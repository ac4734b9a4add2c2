from __future__ import annotations
import typing
import functools
import json
from fractions import Fraction
import click
import twigcalc.errors as errors
import twigcalc.dual_graph as dual_graph
import twigcalc.data_loader as data_loader
import twigcalc.cusp_model as cusp_model

json_option = click.option("--json", "as_json", is_flag=True, default=False, help="Machine readable output.")
param_option = click.option("--param", "params", multiple=True, metavar="NAME=N",
                            help="Bind a repetition count of the pair sequence, like k=2.")


class FractionType(click.ParamType):
    name = "fraction"

    def convert(self, value, param, ctx) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number like 1/2", param, ctx)


FRACTION = FractionType()


def handle_errors(function: typing.Callable) -> typing.Callable:
    """
    Invalid input ends the command with exit code 2 and the location of the problem.
    """

    @functools.wraps(function)
    def wrapper(*args, **kwargs):
        try:
            return function(*args, **kwargs)
        except errors.ParseError as ex:
            raise click.UsageError(ex.location_message)
        except errors.TwigcalcError as ex:
            raise click.UsageError(f"{type(ex).__name__}: {ex}")

    return wrapper


def load_graph(source: str) -> typing.Union[dual_graph.Chain, dual_graph.DualGraph]:
    return data_loader.DataLoader.load_graph(source)


def parse_params(values: typing.Iterable[str]) -> typing.Dict[str, int]:
    params = {}
    for value in values:
        name, separator, number = value.partition("=")
        if not separator or not name.strip() or not number.strip().lstrip("-").isdigit():
            raise click.BadParameter(f"Expected NAME=N, got {value!r}", param_hint="--param")
        params[name.strip()] = int(number)
    return params


def parse_pairs(text: str, params: typing.Iterable[str] = ()) -> cusp_model.HNPairSeq:
    return cusp_model.parse_hn(text, parse_params(params), "<argument>")


def emit(data: typing.Any, as_json: bool, text: typing.Union[str, typing.Callable[[], str]] = None) -> None:
    if as_json or text is None:
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(text() if callable(text) else text)


def finish(ok: bool) -> None:
    if not ok:
        raise click.exceptions.Exit(1)
