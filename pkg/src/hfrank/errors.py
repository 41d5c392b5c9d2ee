"""Exception hierarchy shared by every module.

Each class carries a stable ``code`` string (its class name) that the CLI
echoes into reports, so diagnostics stay machine-readable.
"""

from __future__ import annotations


class HFError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DocumentError(HFError):
    """Malformed input document (CLI exit code 2)."""


# -- traintrack --------------------------------------------------------------

class TrackError(HFError):
    pass


class InvalidSurface(TrackError):
    pass


class DanglingEnd(TrackError):
    pass


class LowValence(TrackError):
    pass


class OneSidedSwitch(TrackError):
    pass


class GeometryError(TrackError):
    pass


class MonogonFace(GeometryError):
    pass


class BigonFace(GeometryError):
    pass


class SmoothDiskFace(GeometryError):
    pass


class CusplessAnnulus(GeometryError):
    pass


class EulerMismatch(GeometryError):
    pass


class BoundaryFaceMismatch(GeometryError):
    pass


# -- carrying ----------------------------------------------------------------

class CarryingError(HFError):
    pass


class TrackMismatch(CarryingError):
    pass


class CountMismatch(CarryingError):
    pass


class DisconnectedEdgePath(CarryingError):
    pass


class SignDisagreement(CarryingError):
    pass


class InconsistentFaceImage(CarryingError):
    pass


class InconsistentCensus(CarryingError):
    pass


class InconsistentSwitchImage(CarryingError):
    pass


class NotAnAutomorphism(CarryingError):
    pass


class NotClosed(CarryingError):
    pass


class LefschetzMismatch(CarryingError):
    pass


# -- spectral ----------------------------------------------------------------

class SpectralError(HFError):
    pass


class NotPrimitive(SpectralError):
    pass


class NoConvergence(SpectralError):
    pass


# -- penner ------------------------------------------------------------------

class PennerError(HFError):
    pass


class InvalidCyclicOrder(PennerError):
    pass


class CurvesNotDisjoint(PennerError):
    pass


class UnknownCurve(PennerError):
    pass


class InvalidWord(PennerError):
    pass


class NotFilling(PennerError):
    pass


class MissingHomology(PennerError):
    pass


class HomologyMismatch(PennerError):
    pass


# -- reducible ---------------------------------------------------------------

class ReducibleError(HFError):
    pass


class InconsistentSigns(ReducibleError):
    pass


class InvalidDecomposition(ReducibleError):
    pass
