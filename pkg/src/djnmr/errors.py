"""Exception types raised across the package."""


class DJNMRError(Exception):
    """Base class for all djnmr errors."""


class PromiseViolation(DJNMRError):
    """A truth table is neither constant nor balanced."""


class ArityMismatch(DJNMRError):
    """An operation received parameters of the wrong arity."""


class DimensionMismatch(DJNMRError):
    """A state vector and an operator act on different qubit counts."""


class NotConstant(DJNMRError):
    """The embedding-impossibility witness requires a constant function."""


class ZeroBit(DJNMRError):
    """(0, 0) is not a valid complex bit and cannot be embedded."""


class ZeroVector(DJNMRError):
    """A zero magnetisation vector cannot be read out."""


class OutOfPlane(DJNMRError):
    """Readout requires the magnetisation to lie in the xy-plane."""


class ZeroOffsetDifference(DJNMRError):
    """A pre-acquisition delay needs a nonzero offset difference."""


class MissingSpecies(DJNMRError):
    """The pulse sequence requires more spin species than are configured."""


class UnknownSpecies(DJNMRError):
    """A pulse event targets a species that is not part of the run."""


class NyquistViolation(DJNMRError):
    """A species offset lies outside the sampled spectral width."""


class PeakNotFound(DJNMRError):
    """No usable peak near the expected species offset."""


class InconsistentReading(DJNMRError):
    """Phase readings do not correspond to any valid computation output."""


class GoldenMismatch(DJNMRError):
    """A regenerated table differs from its embedded reference copy."""


class ConfigError(DJNMRError):
    """Invalid run configuration; the message names the offending field."""
