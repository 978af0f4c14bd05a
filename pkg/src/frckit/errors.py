"""Exception hierarchy shared by all frckit modules."""


class FrckitError(Exception):
    """Base class for all domain errors raised by this package."""


# ---- curve algebra -------------------------------------------------------

class EmptyCurve(FrckitError):
    """A piecewise-linear curve needs at least one breakpoint."""


class NonMonotoneBreakpoints(FrckitError):
    """Breakpoint abscissae must be strictly increasing (min gap 1e-12 Hz)."""


class NonFiniteValue(FrckitError):
    """A NaN or infinity appeared where a finite number is required."""


class NotMonotone(FrckitError):
    """Curve inversion requires a monotone non-increasing curve."""


class TargetUnreachable(FrckitError):
    """The requested power level is outside the curve's attainable range."""


# ---- fleet model ---------------------------------------------------------

class ParseError(FrckitError):
    """Malformed fleet or scenario document; names the offending path."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ValidationError(FrckitError):
    """A fleet violates one of its documented invariants."""


class UnknownUnit(FrckitError):
    """A toggle or request referenced a unit id not present in the fleet."""

    def __init__(self, unit_id: str):
        super().__init__(f"unknown unit id: {unit_id!r}")
        self.unit_id = unit_id


class InvalidSpec(FrckitError):
    """A synthetic-fleet generation spec is out of range."""


# ---- FRC engine ----------------------------------------------------------

class NoGovernor(FrckitError):
    """The unit has no governor model, so it has no FRC curve."""


class InvalidParams(FrckitError):
    """Governor/turbine parameters are inconsistent or out of range."""


class InconsistentBaseline(FrckitError):
    """An incremental curve update was given a baseline that does not match
    the fleet it claims to represent."""


# ---- aggregation / dynamics ----------------------------------------------

class ZeroBase(FrckitError):
    """Per-unit conversion needs a positive system MVA base."""


class DimensionMismatch(FrckitError):
    """A state vector does not match the block's model order."""


class NumericalDivergence(FrckitError):
    """Integration produced a non-finite state."""

    def __init__(self, time_s: float):
        super().__init__(f"non-finite state at t={time_s:.4f} s")
        self.time_s = time_s


class TrajectoryTooShort(FrckitError):
    """Metric extraction needs at least 5 s of post-event trajectory."""
