"""Exception hierarchy for pdacache.

Every error derives from :class:`PdaError`, which is a ``ValueError`` so
callers that only care about bad input can catch the builtin.
"""


class PdaError(ValueError):
    pass


class DimensionMismatch(PdaError):
    pass


class IntegerOutOfRange(PdaError):
    pass


class SuperscriptOutOfRange(PdaError):
    pass


class ParseError(PdaError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class HeaderMismatch(ParseError):
    pass


class InvalidT(PdaError):
    pass


class UnknownExemplar(PdaError, KeyError):
    pass


class InvalidParameter(PdaError):
    pass


class SearchSpaceTooLarge(PdaError):
    pass


class ProfileLengthMismatch(PdaError):
    pass


class EmptyNetwork(PdaError):
    pass


class InconsistentGrouping(PdaError):
    pass


class DemandLengthMismatch(PdaError):
    pass


class SubfileLengthMismatch(PdaError):
    pass


class MissingTransmission(PdaError):
    pass


class UndecipherableTerm(PdaError):
    pass


class NonIntegralT(PdaError):
    pass


class RatioMismatch(PdaError):
    pass
