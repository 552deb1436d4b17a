"""Semantic exception hierarchy.

Public operations raise these instead of bare ValueError so callers can
distinguish geometric degeneracies from numerical failures and usage errors.
"""


class MhmError(Exception):
    """Base class for all library errors."""


class DegenerateTuple(MhmError):
    """Points of a tuple coincide within tolerance where distinctness is required."""


class Boundary(MhmError):
    """Arc membership queried at an arc endpoint."""


class NotSeparating(MhmError):
    """Operation requires a pair of point-pairs that separate each other."""


class NotStrongCausal(MhmError):
    """Operation requires two disjoint, non-separating point-pairs."""


class NotAStrip(MhmError):
    """The two point-pairs do not satisfy the strip conditions."""


class NoCommonAxis(MhmError):
    """Two harmonic pairs were expected to share an axis but do not."""


class OnAxis(MhmError):
    """Projection argument coincides with an axis endpoint."""


class NoConvergence(MhmError):
    """A bracketed search failed: no sign change, or the iteration cap was hit.

    For the monotone kernels this signals a structure violating the
    monotonicity assumptions rather than a tuning problem.
    """


class OrientationError(MhmError):
    """A chart/arc orientation precondition failed."""


class TargetOutsideArc(MhmError):
    """Shift target does not lie in the admissible open arc."""


class InvalidPath(MhmError):
    """Zig-zag path failed structural validation."""


class NoSeparatingSample(MhmError):
    """Sampler could not produce a separating tuple within the retry budget."""


class ConfigError(MhmError):
    """Invalid experiment configuration."""


class StructureLoadError(MhmError):
    """Structure specification could not be resolved."""


class FormatError(StructureLoadError):
    """Malformed table-structure file."""
