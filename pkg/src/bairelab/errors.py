"""Exception taxonomy.

Every domain error raised by the library derives from BaireLabError, so
callers (and the CLI) can distinguish contract violations from genuine
bugs: BaireLabError maps to exit code 2, anything else to exit code 1.
"""


class BaireLabError(Exception):
    """Base class for all contract and validation errors."""


class PrefixClosureViolation(BaireLabError):
    def __init__(self, node, missing_prefix):
        self.node = tuple(node)
        self.missing_prefix = tuple(missing_prefix)
        super().__init__(
            f"node {self.node} requires prefix {self.missing_prefix}, which is absent"
        )


class InvalidParameter(BaireLabError):
    pass


class BudgetExceeded(BaireLabError):
    pass


class TreeMismatch(BaireLabError):
    pass


class InvalidSegment(BaireLabError):
    pass


class TooLargeForOracle(BaireLabError):
    pass


class SupportsNotIncomparable(BaireLabError):
    def __init__(self, i, j, witness):
        self.i = i
        self.j = j
        self.witness = witness
        super().__init__(
            f"supports of vectors {i} and {j} share the comparable pair {witness}"
        )


class SupportNotChain(BaireLabError):
    pass


class NonzeroRootCoefficient(BaireLabError):
    pass


class BadIndexList(BaireLabError):
    pass


class NotInUnitBall(BaireLabError):
    def __init__(self, index, norm=None):
        self.index = index
        self.norm = norm
        super().__init__(f"vector {index} lies outside the unit ball")


class FamilyTooLarge(BaireLabError):
    pass


class FamilyTooSmall(BaireLabError):
    pass


class WindowOutOfRange(BaireLabError):
    pass


class FunctionalSetTooLarge(BaireLabError):
    pass


class KOutOfRange(BaireLabError):
    pass


class ParseError(BaireLabError):
    def __init__(self, path, location, message):
        self.path = str(path)
        self.location = str(location)
        super().__init__(f"{path}: {location}: {message}")


class ValidationError(BaireLabError):
    pass
