"""Exception hierarchy shared across walab."""


class WalabError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class DivisionByZero(WalabError, ZeroDivisionError):
    pass


class FieldMismatch(WalabError):
    pass


class SingularBasis(WalabError):
    pass


class AlphabetMismatch(WalabError):
    pass


class UnknownSymbol(WalabError, KeyError):
    __str__ = Exception.__str__


class UnknownState(WalabError, KeyError):
    __str__ = Exception.__str__


class NotDeterministic(WalabError):
    pass


class LengthMismatch(WalabError, ValueError):
    pass


class TooLarge(WalabError):
    pass


class NotACounterexample(WalabError):
    pass


class NoViolatingState(WalabError):
    """Raised when counterexample analysis finds no violating state; the learner invariants are broken."""


class RankNotIncreased(WalabError):
    pass


class FormatError(WalabError):
    """Malformed automaton file. ``where`` locates the offending item."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
