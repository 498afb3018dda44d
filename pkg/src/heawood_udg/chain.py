"""The unit-distance constraint system as a compass-and-ruler chain.

Six vertices are pinned as a 1 x 2 rectangle with two edge midpoints.  One
further restriction places l4, P4, l5 on a common line, which forces
d(l4, l5) = 2 and makes P4 the midpoint of l4 and l5.  After parametrizing
l4 by an angle on the radius-2 circle around l5, each remaining vertex is
cut out by intersecting two unit circles around already-placed vertices,
one binary branch choice per step.  The last unit-distance constraint,
d(P1, l1) = 1, is left over as the closure residual; its zeros in the angle
are the unit-distance embeddings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Iterator, Mapping

from .geom import GeometryError, Point2, RealContext
from .geom import circle_circle_intersect, distance_squared
from .incidence import ALL_VERTICES, VertexLabel

# Pinned rectangle cycle, in cycle order; coordinates are exact integers.
FIXED_POSITIONS = {
    VertexLabel.parse("P5"): (0, 0),
    VertexLabel.parse("l5"): (1, 0),
    VertexLabel.parse("P7"): (1, 1),
    VertexLabel.parse("l7"): (1, 2),
    VertexLabel.parse("P2"): (0, 2),
    VertexLabel.parse("l3"): (0, 1),
}

RECTANGLE_CYCLE = tuple(FIXED_POSITIONS)

# Construction order: (new vertex, first center, second center).  Each step
# intersects the unit circles around the two centers.
CHAIN_STEPS = tuple(
    (VertexLabel.parse(v), VertexLabel.parse(a), VertexLabel.parse(b))
    for v, a, b in [
        ("P3", "l3", "l4"),
        ("P6", "l7", "l4"),
        ("l2", "P2", "P4"),
        ("l1", "P7", "P3"),
        ("l6", "P5", "P6"),
        ("P1", "l2", "l6"),
    ]
)

DEPENDENT_VERTICES = (VertexLabel.parse("l4"), VertexLabel.parse("P4")) + tuple(
    step[0] for step in CHAIN_STEPS
)


class ChainBroken(Exception):
    """A construction step failed; identifies the first failing vertex."""

    def __init__(self, step: VertexLabel, reason: GeometryError):
        self.step = step
        self.reason = reason
        super().__init__(f"chain broken at {step}: {reason}")


@dataclass(frozen=True)
class BranchVector:
    """One branch bit per two-valued intersection step, in chain order.

    Bit k selects the branch for the k-th entry of ``CHAIN_STEPS``
    (P3, P6, l2, l1, l6, P1); 64 vectors in total.
    """

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != len(CHAIN_STEPS):
            raise ValueError(f"branch vector needs {len(CHAIN_STEPS)} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"branch bits must be 0 or 1: {bits}")
        object.__setattr__(self, "bits", bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, k: int) -> int:
        return self.bits[k]

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_string(cls, s: str) -> "BranchVector":
        return cls(tuple(int(c) for c in s))

    @classmethod
    def from_index(cls, k: int) -> "BranchVector":
        if not 0 <= k < 2 ** len(CHAIN_STEPS):
            raise ValueError(f"branch index out of range: {k}")
        return cls(tuple((k >> (len(CHAIN_STEPS) - 1 - i)) & 1 for i in range(len(CHAIN_STEPS))))


def all_branch_vectors() -> Iterator[BranchVector]:
    for k in range(2 ** len(CHAIN_STEPS)):
        yield BranchVector.from_index(k)


@dataclass(frozen=True)
class EmbeddingCandidate:
    """All 14 vertex positions plus the provenance of their construction."""

    coords: Mapping[VertexLabel, Point2]
    theta: Any
    branch: BranchVector
    closure: Any
    precision: int

    def __post_init__(self):
        object.__setattr__(self, "coords", MappingProxyType(dict(self.coords)))
        missing = [str(v) for v in ALL_VERTICES if v not in self.coords]
        if missing:
            raise ValueError(f"candidate is missing vertices: {missing}")

    def __getitem__(self, label) -> Point2:
        if isinstance(label, str):
            label = VertexLabel.parse(label)
        return self.coords[label]

    def context(self) -> RealContext:
        return RealContext(self.precision)


def fixed_points(ctx: RealContext) -> dict:
    """The pinned rectangle at the context's precision (exact values)."""
    return {v: ctx.point(x, y) for v, (x, y) in FIXED_POSITIONS.items()}


def place_l4(ctx: RealContext, theta: Any) -> Point2:
    """Place l4 on the radius-2 circle around l5 = (1, 0) at angle theta."""
    t = ctx.mpf(theta)
    return Point2(1 + 2 * ctx.cos(t), 2 * ctx.sin(t))


def build_chain(theta: Any, branch: BranchVector, precision: int = 60) -> EmbeddingCandidate:
    """Construct all 14 vertices for the given angle and branch vector.

    Raises :class:`ChainBroken` naming the first vertex whose defining
    circles fail to intersect cleanly.
    """
    ctx = RealContext(precision)
    t = ctx.mpf(theta)
    coords = fixed_points(ctx)
    l4 = VertexLabel.parse("l4")
    p4 = VertexLabel.parse("P4")
    coords[l4] = place_l4(ctx, t)
    # exact halving: P4 is the midpoint of l4 and l5 by definition
    coords[p4] = Point2((coords[l4].x + 1) / 2, coords[l4].y / 2)
    for bit, (vertex, ca, cb) in zip(branch, CHAIN_STEPS):
        try:
            coords[vertex] = circle_circle_intersect(
                ctx, coords[ca], 1, coords[cb], 1, bit
            )
        except GeometryError as exc:
            raise ChainBroken(vertex, exc) from exc
    closure = _closure_from_coords(coords)
    return EmbeddingCandidate(
        coords=coords, theta=t, branch=branch, closure=closure, precision=precision
    )


def _closure_from_coords(coords: Mapping) -> Any:
    p1 = coords[VertexLabel.parse("P1")]
    l1 = coords[VertexLabel.parse("l1")]
    return distance_squared(p1, l1) - 1


def closure_residual(candidate: EmbeddingCandidate) -> Any:
    """The leftover unit-distance constraint d(P1, l1)^2 - 1."""
    return _closure_from_coords(candidate.coords)


def branch_vector_of(coords: Mapping) -> BranchVector:
    """Recover the branch bits from vertex positions via orientation signs."""
    bits = []
    for vertex, ca, cb in CHAIN_STEPS:
        u = coords[cb]
        a = coords[ca]
        q = coords[vertex]
        cross = (u.x - a.x) * (q.y - a.y) - (u.y - a.y) * (q.x - a.x)
        bits.append(0 if cross > 0 else 1)
    return BranchVector(tuple(bits))


def candidate_from_coords(coords: Mapping, precision: int) -> EmbeddingCandidate:
    """Wrap externally supplied positions (reference data, polished output).

    The angle parameter, branch vector and closure residual are derived
    from the coordinates; pinned vertices may be omitted and are filled in
    exactly.
    """
    ctx = RealContext(precision)
    full = fixed_points(ctx)
    for label, value in coords.items():
        if isinstance(label, str):
            label = VertexLabel.parse(label)
        if isinstance(value, Point2):
            full[label] = Point2(ctx.mpf(value.x), ctx.mpf(value.y))
        else:
            x, y = value
            full[label] = Point2(ctx.mpf(x), ctx.mpf(y))
    l4 = full[VertexLabel.parse("l4")]
    theta = ctx.atan2(l4.y / 2, (l4.x - 1) / 2)
    if theta < 0:
        theta = theta + 2 * ctx.pi
    return EmbeddingCandidate(
        coords=full,
        theta=theta,
        branch=branch_vector_of(full),
        closure=_closure_from_coords(full),
        precision=precision,
    )


# ---------------------------------------------------------------------------
# Equation registry


@dataclass(frozen=True)
class EquationEntry:
    """One constraint of the system with the unit-distance flags it pins.

    Kinds: ``unit-circle`` (one flag per circle equation), ``spacing``
    (d(l4, l5) = 2, which together with the midpoint equations pins the two
    P4 flags), ``midpoint`` (linear, non-flag), and ``rectangle-side``
    (pinned configuration edges).
    """

    eq_id: str
    kind: str
    flags: tuple

    @property
    def is_flag_constraint(self) -> bool:
        return bool(self.flags)


def _flag(p: str, ln: str) -> tuple:
    return (VertexLabel.parse(p), VertexLabel.parse(ln))


def equation_registry() -> tuple:
    """Every constraint of the system, in construction order.

    The union of all entries' flags is exactly the 21-flag set of the
    incidence structure; tests cross-check this against
    :func:`heawood_udg.incidence.build_heawood_incidence`.
    """
    entries = [
        EquationEntry("l4-l5-spacing", "spacing", (_flag("P4", "l4"), _flag("P4", "l5"))),
        EquationEntry("P4-midpoint-x", "midpoint", ()),
        EquationEntry("P4-midpoint-y", "midpoint", ()),
    ]
    for vertex, ca, cb in CHAIN_STEPS:
        for center in (ca, cb):
            pair = (vertex, center) if vertex.is_point else (center, vertex)
            entries.append(
                EquationEntry(f"{vertex}|{center}", "unit-circle", (pair,))
            )
    entries.append(
        EquationEntry("P1|l1-closure", "unit-circle", (_flag("P1", "l1"),))
    )
    cycle = RECTANGLE_CYCLE
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        pair = (v, w) if v.is_point else (w, v)
        entries.append(EquationEntry(f"rect:{v}-{w}", "rectangle-side", (pair,)))
    return tuple(entries)


def registry_flags() -> frozenset:
    """The flag set induced by the full constraint system."""
    return frozenset(f for e in equation_registry() for f in e.flags)


# ---------------------------------------------------------------------------
# Serialization

_VERTEX_ORDER = tuple(sorted(ALL_VERTICES, key=lambda v: (v.kind, v.index)))


def candidate_to_json_dict(candidate: EmbeddingCandidate) -> dict:
    """Schema: theta/closure as decimal strings, branch as a bit array,
    vertices as full-precision decimal string pairs keyed "P1".."l7"."""
    ctx = candidate.context()
    return {
        "theta": ctx.nstr(candidate.theta),
        "branch": list(candidate.branch),
        "precision": candidate.precision,
        "vertices": {
            str(v): [ctx.nstr(candidate.coords[v].x), ctx.nstr(candidate.coords[v].y)]
            for v in _VERTEX_ORDER
        },
        "closure": ctx.nstr(candidate.closure),
    }


def candidate_from_json_dict(data: dict) -> EmbeddingCandidate:
    precision = int(data["precision"])
    ctx = RealContext(precision)
    coords = {
        VertexLabel.parse(name): Point2(ctx.mpf(x), ctx.mpf(y))
        for name, (x, y) in data["vertices"].items()
    }
    return EmbeddingCandidate(
        coords=coords,
        theta=ctx.mpf(data["theta"]),
        branch=BranchVector(tuple(data["branch"])),
        closure=ctx.mpf(data["closure"]),
        precision=precision,
    )


def dump_candidates(candidates, fp=None) -> str:
    """Serialize candidates to canonical JSON (stable across runs)."""
    payload = [candidate_to_json_dict(c) for c in candidates]
    text = json.dumps(payload, indent=2) + "\n"
    if fp is not None:
        fp.write(text)
    return text


def load_candidates(text: str) -> list:
    return [candidate_from_json_dict(d) for d in json.loads(text)]
