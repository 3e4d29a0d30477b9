"""Exception hierarchy shared by every ldm module."""


class LDMError(Exception):
    """Base class for all library errors."""


# field core
class NotPrime(LDMError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class DivisionByZero(LDMError, ZeroDivisionError):
    pass


class MixedFields(LDMError, TypeError):
    pass


class NoSuchRoot(LDMError, ValueError):
    def __init__(self, order, field=None):
        where = f" in {field}" if field is not None else ""
        super().__init__(f"no primitive root of unity of order {order}{where}")
        self.order = order


# projective geometry
class ZeroVector(LDMError, ValueError):
    pass


class CoincidentArguments(LDMError, ValueError):
    pass


class FewerThanTwoDistinct(LDMError, ValueError):
    pass


class CenterOnPlane(LDMError, ValueError):
    pass


class ProjectingCenter(LDMError, ValueError):
    pass


class CharTwoUnsupported(LDMError, ValueError):
    pass


# loops and permutation groups
class NotLatin(LDMError, ValueError):
    def __init__(self, kind, index):
        super().__init__(f"not a latin square: {kind} {index} is not a permutation")
        self.kind = kind
        self.index = index


class NotAGroup(LDMError, ValueError):
    pass


class BadParameters(LDMError, ValueError):
    pass


class CapExceeded(LDMError, RuntimeError):
    pass


class IncompleteRow(LDMError, ValueError):
    def __init__(self, index):
        super().__init__(f"row {index} is not fully determined")
        self.index = index


# multinets
class InvariantViolation(LDMError, AssertionError):
    pass


class LabelNotOnLine(LDMError, ValueError):
    pass


class NotASubgroup(LDMError, ValueError):
    pass


class NotAGroupLabel(LDMError, ValueError):
    pass


class MissingLabels(LDMError, ValueError):
    pass


# constructions
class BadK(LDMError, ValueError):
    pass


class CharacteristicTooSmall(LDMError, ValueError):
    pass


class SamplingExhausted(LDMError, RuntimeError):
    pass


class FormatError(LDMError, ValueError):
    pass
