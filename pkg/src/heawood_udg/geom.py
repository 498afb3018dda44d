"""Extended-precision planar geometry kernel.

Provides an explicit-precision real arithmetic context (no ambient global
precision state), 2D points, and the two-valued circle-circle intersection
that drives the compass-and-ruler construction chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from mpmath.ctx_mp import MPContext

DEFAULT_DPS = 60


class GeometryError(Exception):
    """Base class for geometric construction failures."""


class NoIntersection(GeometryError):
    """The two circles do not meet (gap or containment beyond tolerance)."""


class Tangent(GeometryError):
    """The two circles meet in a single point up to tolerance.

    Reported separately from :class:`NoIntersection` so callers can treat
    branch collisions (both intersection branches coinciding) explicitly.
    """


class ConcentricCircles(GeometryError):
    """The two centers coincide within tolerance; the branch is undefined."""


class RealContext:
    """Real arithmetic at a fixed decimal precision.

    Each instance owns an independent mpmath context, so the working
    precision is explicit in every computation and never shared mutable
    state.  Values produced under a context round-trip exactly through
    decimal strings of ``dps`` significant digits.
    """

    def __init__(self, dps: int = DEFAULT_DPS):
        if dps < 3:
            raise ValueError(f"precision must be at least 3 digits, got {dps}")
        self.dps = int(dps)
        self.mp = MPContext()
        self.mp.dps = self.dps

    def __repr__(self) -> str:
        return f"RealContext(dps={self.dps})"

    def mpf(self, value: Any):
        """Convert a number, decimal string or foreign mpf to this precision."""
        return self.mp.mpf(value)

    def point(self, x: Any, y: Any) -> "Point2":
        return Point2(self.mpf(x), self.mpf(y))

    def nstr(self, value: Any, digits: int | None = None) -> str:
        """Decimal string with ``digits`` significant digits (default dps)."""
        return self.mp.nstr(self.mpf(value), digits or self.dps)

    def sqrt(self, value: Any):
        return self.mp.sqrt(self.mpf(value))

    def cos(self, value: Any):
        return self.mp.cos(self.mpf(value))

    def sin(self, value: Any):
        return self.mp.sin(self.mpf(value))

    def atan2(self, y: Any, x: Any):
        return self.mp.atan2(self.mpf(y), self.mpf(x))

    @property
    def pi(self):
        return +self.mp.pi

    def pow10(self, exponent: int):
        """Exact power of ten, e.g. ``pow10(2 - dps)`` for residual bounds."""
        return self.mp.mpf(10) ** exponent

    @property
    def default_tol(self):
        """Default tangency/degeneracy tolerance, ``10^(-dps/2)``.

        The intersection discriminant loses about half the working digits
        near tangency, so half precision is the natural cutoff.
        """
        return self.mp.mpf(10) ** (-(self.dps // 2))


@dataclass(frozen=True)
class Point2:
    """A point in the plane; both components live in one precision context."""

    x: Any
    y: Any

    def __iter__(self):
        yield self.x
        yield self.y


def distance_squared(p: Point2, q: Point2):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def distance(ctx: RealContext, p: Point2, q: Point2):
    return ctx.sqrt(distance_squared(p, q))


def circle_circle_intersect(
    ctx: RealContext,
    c1: Point2,
    r1: Any,
    c2: Point2,
    r2: Any,
    bit: int,
    tol: Any = None,
) -> Point2:
    """Intersect the circles around ``c1`` (radius ``r1``) and ``c2`` (``r2``).

    Two-valued: ``bit`` 0 selects the intersection on the left of the
    directed center line c1 -> c2 (positive cross product), bit 1 the right.
    The orientation convention is stable under translation and rotation and
    independent of coordinate magnitudes.

    Raises :class:`ConcentricCircles` when the centers coincide within
    ``tol``, :class:`Tangent` when the discriminant vanishes within ``tol``
    and :class:`NoIntersection` when it is negative beyond ``tol``.
    """
    if bit not in (0, 1):
        raise ValueError(f"branch bit must be 0 or 1, got {bit!r}")
    if tol is None:
        tol = ctx.default_tol
    else:
        tol = ctx.mpf(tol)
    r1 = ctx.mpf(r1)
    r2 = ctx.mpf(r2)
    if r1 <= 0 or r2 <= 0:
        raise ValueError("circle radii must be positive")

    dx = c2.x - c1.x
    dy = c2.y - c1.y
    d2 = dx * dx + dy * dy
    d = ctx.sqrt(d2)
    if d <= tol:
        raise ConcentricCircles(f"center distance {ctx.nstr(d, 8)} below tolerance")

    # foot of the chord on the center line, measured from c1
    a = (d2 + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    if abs(h2) <= tol:
        raise Tangent(f"discriminant {ctx.nstr(h2, 8)} within tolerance of zero")
    if h2 < 0:
        raise NoIntersection(f"discriminant {ctx.nstr(h2, 8)} is negative")
    h = ctx.sqrt(h2)

    ux = dx / d
    uy = dy / d
    mx = c1.x + a * ux
    my = c1.y + a * uy
    if bit == 0:
        return Point2(mx - h * uy, my + h * ux)
    return Point2(mx + h * uy, my - h * ux)
