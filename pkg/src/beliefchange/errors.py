"""Exception types raised by the library.

Every error derives from :class:`BeliefChangeError` so callers (the CLI in
particular) can map them onto exit codes without catching bare exceptions.
"""


class BeliefChangeError(Exception):
    """Base class for all library errors."""


class InputError(BeliefChangeError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    def caret(self):
        """Two-line rendering of the offending text with a caret under ``pos``."""
        return f"{self.text}\n{' ' * self.pos}^"


class UnknownAtomError(InputError):
    def __init__(self, name, signature, pos=None):
        self.name = name
        self.signature = tuple(signature)
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"unknown atom {name!r}{where}; signature is {{{', '.join(self.signature)}}}")


class NotHornError(InputError):
    def __init__(self, formula_text, offending=None):
        self.formula_text = formula_text
        self.offending = offending
        msg = f"not a Horn formula: {formula_text}"
        if offending is not None and offending != formula_text:
            msg += f" (offending subformula: {offending})"
        super().__init__(msg)


class LimitExceeded(BeliefChangeError):
    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}")


class InvalidSelection(InputError):
    pass


class InvalidIncision(InputError):
    def __init__(self, message, clause, unhit=None):
        self.clause = clause
        self.unhit = unhit
        super().__init__(message)


class InvalidInfraChoice(InputError):
    pass


class InvalidParameter(InputError):
    pass


class PreconditionError(InputError):
    pass


class UnknownPostulate(InputError):
    pass
