from __future__ import annotations
import typing


class TwigcalcError(Exception):
    pass


class InvalidGraphError(TwigcalcError):
    pass


class DefinitenessError(TwigcalcError):
    pass


class ContractionError(TwigcalcError):
    pass


class InvalidPairsError(TwigcalcError):
    pass


class ImpossibleConfigurationError(TwigcalcError):
    pass


class ConfigurationFlagError(TwigcalcError):
    pass


class SearchError(TwigcalcError):
    pass


class ParseError(TwigcalcError):
    """
    Malformed user input. ``source``, ``line`` and ``column`` locate the problem when known.
    """

    def __init__(self,
                 message: str,
                 source: str = None,
                 line: typing.Optional[int] = None,
                 column: typing.Optional[int] = None, ) -> None:
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        super().__init__(self.location_message)

    @property
    def location_message(self) -> str:
        location = self.source if self.source is not None else "<input>"
        if self.line is not None:
            location = f"{location}:{self.line}"
            if self.column is not None:
                location = f"{location}:{self.column}"
        return f"{location}: {self.message}"
