"""Exception types shared across the package."""


class TbsimError(Exception):
    """Base class for all package errors."""


class ConfigurationError(TbsimError, ValueError):
    """Invalid user-supplied parameters or run configuration."""


class SolverError(TbsimError, RuntimeError):
    """Propagation could not be carried out (bad generator, bad state)."""


class DecompositionError(TbsimError, RuntimeError):
    """The propagator does not admit a trustworthy joint decomposition."""
