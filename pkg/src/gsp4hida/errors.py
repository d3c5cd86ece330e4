"""Exception hierarchy.

Every error carries a stable ``code`` string so the CLI can emit
machine-readable failures without string matching on messages.
"""


class Gsp4Error(Exception):
    code = "error"
    exit_code = 2


class ContextError(Gsp4Error):
    code = "InvalidContext"


class NonSimilitude(Gsp4Error):
    code = "NonSimilitude"


class NonInvertibleMultiplier(Gsp4Error):
    code = "NonInvertibleMultiplier"


class SingularBlock(Gsp4Error):
    code = "SingularBlock"


class LevelExceedsPrecision(Gsp4Error):
    code = "LevelExceedsPrecision"


class NotInParahoric(Gsp4Error):
    code = "NotInParahoric"


class PrecisionExhausted(Gsp4Error):
    code = "PrecisionExhausted"


class HypothesisViolated(Gsp4Error):
    code = "HypothesisViolated"


class ScaleRefused(Gsp4Error):
    code = "ScaleRefused"
    exit_code = 3


class NonIntegralConjugate(Gsp4Error):
    code = "NonIntegralConjugate"


class CounterexampleFound(Gsp4Error):
    code = "CounterexampleFound"
    exit_code = 1


class LevelMismatch(Gsp4Error):
    code = "LevelMismatch"


class ParityViolation(Gsp4Error):
    code = "ParityViolation"


class NonDominant(Gsp4Error):
    code = "NonDominant"


class NonRegular(Gsp4Error):
    code = "NonRegular"


class InvalidWQ(Gsp4Error):
    code = "InvalidWQ"


class UnsupportedDegree(Gsp4Error):
    code = "UnsupportedDegree"


class InconsistentDegrees(Gsp4Error):
    code = "InconsistentDegrees"


class UnderdeterminedCase(Gsp4Error):
    code = "UnderdeterminedCase"


class UnsortedInput(Gsp4Error):
    code = "UnsortedInput"


class EndpointMismatch(Gsp4Error):
    code = "EndpointMismatch"


class IndependenceViolated(Gsp4Error):
    code = "IndependenceViolated"


class UnknownParabolic(Gsp4Error):
    code = "UnknownParabolic"
