"""Exception hierarchy shared by all modules."""


class MagicBroadcastError(ValueError):
    """Base class for all package errors."""


class InvalidDimensionError(MagicBroadcastError):
    """Operand dimensions are incompatible or unsupported."""


class NotAStateError(MagicBroadcastError):
    """Input fails the physicality checks for a quantum state."""


class InvalidBasisError(MagicBroadcastError):
    """Basis states supplied to a superposition are not orthogonal."""


class UnsupportedError(MagicBroadcastError):
    """Requested system size or dimension is outside the supported range."""


class InvalidLevelError(MagicBroadcastError):
    """Polytope level below the stabilizer octahedron."""


class InconsistentReferenceError(MagicBroadcastError):
    """Endpoint states do not sit on a common reference polytope level."""


class InvalidMachineError(MagicBroadcastError):
    """Cloning-machine parameters violate their admissibility constraints."""


class InvalidSpecError(MagicBroadcastError):
    """Broadcaster specification does not have the required structure."""


class InvalidInputError(MagicBroadcastError):
    """Numerical input violates a precondition (e.g. non-normalized weights)."""


class InvalidUnitaryError(MagicBroadcastError):
    """Matrix supplied where a unitary was required."""
