"""Exception types shared across the toolkit."""


class CollapseError(ValueError):
    """Raised when a beam is at or past the transverse hinge condition.

    The bending model is undefined once the slack region wraps the full
    circumference at the root (root load coordinate >= pi); the beam
    buckles and collapses instead of holding a static deflection.
    """


class DegenerateLoadError(ValueError):
    """Raised when an operation requires a strictly positive tip load.

    The nondimensional scales divide by the load, so a zero-load case
    has no finite scaling; callers should use the trivial zero-deflection
    result instead.
    """


class GrazingContactError(ValueError):
    """Raised when the tip path is perpendicular to the obstacle surface.

    The differential growth relation divides by the component of the
    tip-to-contact vector along the surface direction; at (near) right
    angles that projection vanishes and the growth rate is singular.
    """
