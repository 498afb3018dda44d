"""Independent certification of candidate embeddings.

Every check here recomputes distances from the candidate's coordinates
alone, so certification does not depend on how the candidate was produced.
A certificate records the worst unit-distance (flag) residual, the residual
of the collinearity restriction on l4, P4, l5, an exact-arithmetic sign
change of the coordinate polynomial across a tight rational bracket around
x_l4, the regularity margin (no vertex may lie on a non-incident edge), and
which reference table the candidate reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Any, Sequence

from .chain import EmbeddingCandidate, candidate_from_coords
from .charpoly import BigPoly, sign_at
from .geom import Point2, RealContext, distance_squared
from .incidence import IncidenceStructure, VertexLabel, build_heawood_incidence
from .refdata import TABLE_VERTICES

_L4 = VertexLabel.parse("l4")
_L5 = VertexLabel.parse("l5")
_P4 = VertexLabel.parse("P4")

# Reflection across the horizontal midline of the pinned rectangle maps the
# pinned positions onto themselves under this relabeling, which extends to
# a collineation of the incidence structure.
MIRROR_RELABEL = {
    "P5": "P2", "P2": "P5",
    "l5": "l7", "l7": "l5",
    "P4": "P6", "P6": "P4",
    "l2": "l6", "l6": "l2",
    "P7": "P7", "P3": "P3", "P1": "P1",
    "l1": "l1", "l3": "l3", "l4": "l4",
}


@dataclass(frozen=True)
class Certificate:
    """Verification record for one candidate embedding.

    ``matched_table`` is the 1-based index of the reference table the
    candidate reproduces coordinate-wise within the matching tolerance,
    or None.
    """

    max_flag_residual: Any
    collinearity_residual: Any
    charpoly_bracket_ok: bool
    regularity_margin: Any
    precision: int
    matched_table: int | None = None

    @property
    def passes(self) -> bool:
        bound = RealContext(self.precision).pow10(4 - self.precision)
        return (
            self.max_flag_residual < bound
            and self.collinearity_residual < bound
            and self.charpoly_bracket_ok
            and self.regularity_margin > 0
        )

    def to_json_dict(self) -> dict:
        ctx = RealContext(self.precision)
        return {
            "pass": self.passes,
            "max_flag_residual": ctx.nstr(self.max_flag_residual, 8),
            "collinearity_residual": ctx.nstr(self.collinearity_residual, 8),
            "charpoly_bracket_ok": self.charpoly_bracket_ok,
            "regularity_margin": ctx.nstr(self.regularity_margin, 8),
            "precision": self.precision,
            "matched_table": self.matched_table,
        }


def flag_residuals(candidate: EmbeddingCandidate, inc: IncidenceStructure | None = None) -> list:
    """|d(P, l)^2 - 1| for each of the 21 flags, as (flag, residual) pairs."""
    inc = inc or build_heawood_incidence()
    out = []
    for flag in sorted(inc.flags):
        p, ln = flag
        res = abs(distance_squared(candidate.coords[p], candidate.coords[ln]) - 1)
        out.append((flag, res))
    return out


def max_flag_residual(candidate: EmbeddingCandidate, inc: IncidenceStructure | None = None):
    return max(res for _, res in flag_residuals(candidate, inc))


def collinearity_residual(candidate: EmbeddingCandidate):
    """Worst residual of the extra restriction: l4, P4, l5 on one line with
    d(l4, l5) = 2 and P4 their midpoint."""
    l4 = candidate.coords[_L4]
    l5 = candidate.coords[_L5]
    p4 = candidate.coords[_P4]
    cross = (l4.x - l5.x) * (p4.y - l5.y) - (l4.y - l5.y) * (p4.x - l5.x)
    spacing = distance_squared(l4, l5) - 4
    mid_x = p4.x - (l4.x + l5.x) / 2
    mid_y = p4.y - (l4.y + l5.y) / 2
    return max(abs(cross), abs(spacing), abs(mid_x), abs(mid_y))


def _point_segment_distance(ctx: RealContext, p: Point2, a: Point2, b: Point2):
    vx = b.x - a.x
    vy = b.y - a.y
    t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / (vx * vx + vy * vy)
    t = max(ctx.mpf(0), min(ctx.mpf(1), t))
    qx = a.x + t * vx
    qy = a.y + t * vy
    return ctx.sqrt((p.x - qx) ** 2 + (p.y - qy) ** 2)


def regularity_check(candidate: EmbeddingCandidate, inc: IncidenceStructure | None = None):
    """Minimum distance from any vertex to any edge it is not an endpoint
    of; a positive margin certifies the embedding is regular (vertices only
    touch their own edges)."""
    inc = inc or build_heawood_incidence()
    ctx = candidate.context()
    margin = None
    for v in candidate.coords:
        for p, ln in sorted(inc.flags):
            if v == p or v == ln:
                continue
            d = _point_segment_distance(
                ctx, candidate.coords[v], candidate.coords[p], candidate.coords[ln]
            )
            if margin is None or d < margin:
                margin = d
    return margin


def mirror_image(candidate: EmbeddingCandidate) -> EmbeddingCandidate:
    """Reflect across the rectangle midline y = 1 and relabel so the pinned
    configuration is restored.

    The image satisfies the pinned positions and all 21 flag constraints
    (reflection is an isometry and the relabeling is a collineation).  It
    is generally NOT in the solution set of the full system, because the
    collinearity restriction on (l4, P4, l5) maps to a condition on
    (l4, P6, l7) that the system does not impose.
    """
    ctx = candidate.context()
    coords = {}
    for name, target in MIRROR_RELABEL.items():
        src = candidate.coords[VertexLabel.parse(name)]
        coords[VertexLabel.parse(target)] = Point2(src.x, 2 - src.y)
    dependent = {
        label: pt for label, pt in coords.items()
        if str(label) not in ("P5", "P2", "l5", "l7", "P7", "l3")
    }
    return candidate_from_coords(dependent, candidate.precision)


def _mpf_to_fraction(ctx: RealContext, x) -> Fraction:
    return Fraction(Decimal(ctx.nstr(x)))


def charpoly_bracket(candidate: EmbeddingCandidate, poly: BigPoly, width: Fraction = Fraction(1, 10 ** 20)):
    """Exact rational bracket of the stated width centered at the
    candidate's x_l4; returns (lo, hi, sign_change_ok)."""
    ctx = candidate.context()
    center = _mpf_to_fraction(ctx, candidate.coords[_L4].x)
    lo = center - width / 2
    hi = center + width / 2
    ok = sign_at(poly, lo) * sign_at(poly, hi) < 0
    return lo, hi, ok


def match_table(candidate: EmbeddingCandidate, tables: Sequence[dict], tol) -> int | None:
    """1-based index of the unique reference table whose 16 dependent
    coordinates all agree with the candidate within ``tol``, else None."""
    ctx = candidate.context()
    tol = ctx.mpf(tol)
    for idx, table in enumerate(tables, start=1):
        agrees = True
        for name in TABLE_VERTICES:
            pt = candidate.coords[VertexLabel.parse(name)]
            tx, ty = table[name]
            if abs(pt.x - ctx.mpf(tx)) >= tol or abs(pt.y - ctx.mpf(ty)) >= tol:
                agrees = False
                break
        if agrees:
            return idx
    return None


def certify(
    candidate: EmbeddingCandidate,
    poly: BigPoly,
    inc: IncidenceStructure | None = None,
    tables: Sequence[dict] | None = None,
    match_tol: Any = "1e-13",
) -> Certificate:
    """Assemble the full certificate for a candidate.

    Failing checks yield a non-passing certificate rather than an error.
    The default table-matching tolerance 1e-13 assumes reference rows
    accurate to their printed 15 digits; see :mod:`heawood_udg.refdata`
    for the one known exception.
    """
    inc = inc or build_heawood_incidence()
    _, _, bracket_ok = charpoly_bracket(candidate, poly)
    matched = match_table(candidate, tables, match_tol) if tables is not None else None
    return Certificate(
        max_flag_residual=max_flag_residual(candidate, inc),
        collinearity_residual=collinearity_residual(candidate),
        charpoly_bracket_ok=bracket_ok,
        regularity_margin=regularity_check(candidate, inc),
        precision=candidate.precision,
        matched_table=matched,
    )
