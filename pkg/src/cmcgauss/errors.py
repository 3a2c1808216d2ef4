"""Exception types raised by the geometry engine."""


class GeometryError(ValueError):
    pass


class InvalidParameterError(GeometryError):
    pass


class InvalidFrameError(GeometryError):
    pass


class DegenerateImmersionError(GeometryError):
    pass


class ConditioningError(GeometryError):
    pass


class OrderingError(InvalidParameterError):
    """Structure constants violate the ordering a theorem assumes."""


class OutOfScopeParameterError(InvalidParameterError):
    """Parameters describe a space with a larger isometry group."""


class WrongCaseError(GeometryError):
    pass
