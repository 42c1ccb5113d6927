"""Exception hierarchy shared by all modules."""


class SccError(ValueError):
    """Base class for every error raised by the package."""


class InvalidInputError(SccError):
    pass


class SingularConfigurationError(SccError):
    """Two bodies coincide or are antipodal."""

    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        if message is None:
            message = f"bodies {i} and {j} are coincident or antipodal"
        super().__init__(message)


class DegenerateConfigurationError(SccError):
    """Point matrix does not have the rank the operation needs."""


class WrongCodimensionError(SccError):
    """Configuration is not a Dziobek configuration (N points spanning R^(N-1))."""


class DegenerateMinorError(SccError):
    """Some signed maximal minor vanishes."""


class HemisphereObstructionError(SccError):
    """Signed minors of mixed sign: configuration sits in a closed hemisphere."""


class DomainError(SccError):
    """Family parameter outside its admissible domain."""


class SingularEncounterError(SccError):
    """A trajectory ran into a collision or antipodal encounter."""

    def __init__(self, time, pair):
        self.time = time
        self.pair = pair
        super().__init__(f"singular encounter of bodies {pair[0]} and {pair[1]} at t={time:.6g}")
