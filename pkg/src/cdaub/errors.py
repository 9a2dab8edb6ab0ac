"""Exception hierarchy shared by every module of the package."""


class DaubletError(ValueError):
    """Base class for all errors raised by :mod:`cdaub`."""


class OrderUnsupported(DaubletError):
    pass


class GridTooLarge(DaubletError):
    pass


class GridTooCoarse(DaubletError):
    pass


class BranchSingularity(DaubletError):
    """omega*T is an integer multiple of pi; the phase formula divides by zero."""


class TangentSingularity(DaubletError):
    """|theta| = pi/2, where tan(theta) is unbounded."""


class InputNotSorted(DaubletError):
    pass


class Underdetermined(DaubletError):
    pass


class BadInput(DaubletError):
    pass


class DegenerateTarget(DaubletError):
    """Target has zero variance, so R^2 is undefined."""


class NoSuchPreset(DaubletError):
    pass


class BadScales(DaubletError):
    pass
