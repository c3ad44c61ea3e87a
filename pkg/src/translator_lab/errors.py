"""Exception types shared across the package."""


class TranslatorLabError(Exception):
    """Base class for all package errors."""


class DomainError(TranslatorLabError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConvergenceError(TranslatorLabError, RuntimeError):
    """A numerical search (bracketing, bisection, shooting) did not converge."""


class NumericalFailure(TranslatorLabError, RuntimeError):
    """An integration ended without a usable endpoint event."""


class Unclassified(TranslatorLabError):
    """An endpoint-behaviour pair outside the five translator types."""

    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"unclassified endpoint pair {self.pair}")
