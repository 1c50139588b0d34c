"""Exception hierarchy shared by every module."""


class PolyDirError(Exception):
    """Base class for all errors raised by polydir."""


class BudgetExceeded(PolyDirError):
    def __init__(self, needed, budget):
        super().__init__(f"enumeration of {needed} items exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class DomainMismatch(PolyDirError, ValueError):
    """Two maps (or morphisms) do not compose or do not share a boundary."""


class IndexOutOfRange(PolyDirError, IndexError):
    pass


class EmptyDiagram(PolyDirError, ValueError):
    pass


class NotCartesian(PolyDirError, ValueError):
    pass


class NotMono(PolyDirError, ValueError):
    pass


class NonCanonicalBundle(PolyDirError, ValueError):
    pass


class IllFormedDiagram(PolyDirError, ValueError):
    pass


class ExprSyntaxError(PolyDirError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MixedKindError(ExprSyntaxError):
    pass
