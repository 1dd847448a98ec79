"""Exception hierarchy shared by every spinlink module."""


class SpinlinkError(Exception):
    """Base class for all errors raised by spinlink."""


class InvalidArgument(SpinlinkError, ValueError):
    pass


class ResourceLimit(SpinlinkError):
    """An enumeration would exceed the configured group-size bound."""


class InvalidForm(SpinlinkError, ValueError):
    """Quadratic/bilinear data violate the refinement or order constraints."""


class DegenerateForm(SpinlinkError, ValueError):
    pass


class OddLattice(SpinlinkError, ValueError):
    """The Gram matrix has an odd diagonal entry (fermionic, unsupported)."""


class SpinViolation(SpinlinkError, ValueError):
    """A Kirby diagram has an odd framing, so the surgered manifold is not spin."""


class ParseError(SpinlinkError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class NotIsotropic(SpinlinkError, ValueError):
    pass


class NotLagrangian(SpinlinkError, ValueError):
    pass


class NotABoson(SpinlinkError, ValueError):
    pass


class TorsionLiftError(NotABoson):
    """The self-linking of the class is nonzero, so no torsion parallel exists."""


class ValidationError(SpinlinkError, ValueError):
    pass
