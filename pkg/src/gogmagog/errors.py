"""Exception types shared across the package."""

from __future__ import annotations


class GogmagogError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GogmagogError, ValueError):
    """An object violates one of its defining axioms.

    ``axiom`` is the short tag of the violated condition (e.g. ``"K4"``) and
    ``cell`` the 1-based position where it was first detected, if any.
    """

    def __init__(self, message: str, axiom: str | None = None, cell=None):
        super().__init__(message)
        self.axiom = axiom
        self.cell = cell


class ShapeError(ValidationError):
    """Rows or matrices have the wrong dimensions."""


class GravityError(ValidationError):
    """A pyramid tower has a white cube above a gray one."""


class CycleError(GogmagogError):
    """Adding relations to a poset produced a cycle."""


class InvalidN(GogmagogError, ValueError):
    pass


class BadK(GogmagogError, ValueError):
    pass


class InconsistentPlacement(GogmagogError, ValueError):
    """Singleton-versus-doubleton comparisons cannot be closed into a poset."""


class NotUniversallyComparable(GogmagogError, ValueError):
    pass


class NotDeFinetti(GogmagogError, ValueError):
    pass


class DomainError(GogmagogError, AssertionError):
    """An affine cube map left its target domain (never expected on valid input)."""


class Infeasible(GogmagogError):
    """The requested size is beyond the exhaustive-enumeration guard."""
