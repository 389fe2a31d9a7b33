"""
Exception hierarchy for nlab.
Violations found by the checkers are values, not exceptions; these are input and contract errors.
"""


class NlabError(Exception):
    """Base class for every error raised by nlab"""


class DimensionMismatch(NlabError):
    pass


class IndexOutOfRange(NlabError):
    pass


class DivisionByZero(NlabError):
    pass


class NotDivisible(NlabError):
    """The dividend is not a polynomial multiple of the divisor"""


class ChartMismatch(NlabError):
    pass


class DegreeMismatch(NlabError):
    pass


class DegreeOverflow(NlabError):
    pass


class ArityMismatch(NlabError):
    pass


class ExtractionFailure(NlabError):
    """Bracket residual [X,fY] - f[X,Y] is not a common scalar multiple of the probe Y"""

    def __init__(self, message, probe=None, component=None):
        super().__init__(message)
        self.probe = probe
        self.component = component


class SceneError(NlabError):
    pass


class ParseError(NlabError):
    """Syntax error with a 1-based position in the parsed text"""

    def __init__(self, message, line=1, column=1, token=""):
        super().__init__(f"{line}:{column}: {message}" + (f" (got {token!r})" if token else ""))
        self.message = message
        self.line = line
        self.column = column
        self.token = token
