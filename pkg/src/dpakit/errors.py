"""Exception types shared across the package."""


class PhysicsDomainError(ValueError):
    """Parameters violate a physical validity condition (e.g. lambda >= omega)."""


class SingularTimeError(RuntimeError):
    """Evaluation requested at (or too close to) a singular time of mu_0."""


class CausticError(SingularTimeError):
    """Harmonic propagator evaluated at a caustic (sin omega*t = 0)."""


class ConvergenceError(RuntimeError):
    """An adaptive computation failed to reach its target tolerance."""
