"""Maximal arcs, and Denniston's construction of them in PG(2, 2^v).

A maximal (s, beta)-arc is a point set met by every line in 0 or beta
points; then s = 1 + (q+1)(beta-1). When beta^2 = q the arc and the lines
missing it form an s-by-s nonincident configuration of the largest
possible size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import external_line_bound
from .certificate import NonincidenceCertificate
from .errors import BadParameters, ConstructionCheckFailed, NotExtremal, OddOrderUnsupported
from .gf import FieldTable, quadratic_irreducible
from .plane import Plane, build_pg2, external_lines, intersection_sizes, point_set

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True)
class Denniston:
    v: int
    u: int
    b: int
    basis: tuple[int, ...]

    def describe(self) -> str:
        return f"denniston v={self.v} u={self.u} b={self.b} H=" + ",".join(map(str, self.basis))


@dataclass(frozen=True, eq=False)
class MaximalArc:
    plane: Plane
    Y: tuple[int, ...]
    beta: int
    construction: Denniston | None = None

    @property
    def s(self) -> int:
        return len(self.Y)


@dataclass(frozen=True)
class ArcCheck:
    is_arc: bool
    beta: int | None
    external: int
    secant: int


def verify_maximal_arc(pl: Plane, Y) -> ArcCheck:
    """Scan every line and decide whether Y is a maximal arc."""
    Y = point_set(pl, Y)
    if not Y:
        raise ValueError("maximal arc test needs a nonempty point set")
    sizes = intersection_sizes(pl, Y)
    nonzero = {k for k in sizes if k}
    external = sizes.count(0)
    secant = pl.n - external
    if len(nonzero) != 1:
        return ArcCheck(False, None, external, secant)
    beta = nonzero.pop()
    s, q = len(Y), pl.q
    # an arc necessarily has these parameters; failure here means a broken plane
    if s != 1 + (q + 1) * (beta - 1) or external != external_line_bound(q, s):
        raise ConstructionCheckFailed(f"arc counts inconsistent: s={s}, beta={beta}, external={external}")
    return ArcCheck(True, beta, external, secant)


def denniston_arc(v: int, u: int, *, field: FieldTable | None = None,
                  plane: Plane | None = None, max_order: int = DEFAULT_MAX_ORDER) -> MaximalArc:
    """Denniston maximal (1 + (q+1)(2^u - 1), 2^u)-arc in PG(2, 2^v).

    The quadratic form is x^2 + bxy + y^2 with the least b making
    x^2 + bx + 1 irreducible, and H is the additive subgroup spanned by
    1, x, ..., x^(u-1). The arc is the set of affine points (1, x, y) whose
    form value lies in H.
    """
    if field is not None and field.p != 2:
        raise OddOrderUnsupported(
            f"GF({field.order}) has odd characteristic; no nontrivial maximal arc "
            "exists in PG(2,q) for odd q (Ball, Blokhuis and Mazzocca)"
        )
    if not 0 < u < v:
        raise BadParameters(f"need 0 < u < v, got u={u}, v={v}")
    q = 1 << v
    if q > max_order:
        raise BadParameters(f"q = 2^{v} = {q} exceeds the cap {max_order}")
    f = field if field is not None else FieldTable(2, v)
    if f.k != v:
        raise BadParameters(f"field GF({f.order}) is not GF(2^{v})")
    pl = plane if plane is not None else build_pg2(f)
    if pl.field is not f and (pl.field is None or pl.field.modulus != f.modulus):
        raise BadParameters("plane was not built over the given field")

    b = next(c for c in range(1, q) if quadratic_irreducible(f, c))
    h_size = 1 << u  # H = {0, ..., 2^u - 1}: the span of the first u basis vectors
    mul = f.mul
    idx = pl.point_index
    Y = []
    for x in range(q):
        xx = mul(x, x)
        bx = mul(b, x)
        for y in range(q):
            if xx ^ mul(bx, y) ^ mul(y, y) < h_size:
                Y.append(idx[(1, x, y)])
    Y.sort()

    params = Denniston(v, u, b, tuple(1 << i for i in range(u)))
    check = verify_maximal_arc(pl, Y)
    s = 1 + (q + 1) * (h_size - 1)
    if not check.is_arc or check.beta != h_size or len(Y) != s:
        raise ConstructionCheckFailed(
            f"{params.describe()}: got {len(Y)} points, arc={check.is_arc}, beta={check.beta}"
        )
    return MaximalArc(pl, tuple(Y), h_size, params)


def extremal_arc(q: int, **kw) -> MaximalArc:
    """Denniston arc with beta = sqrt(q), for q an even power of two."""
    if q % 2:
        raise OddOrderUnsupported(
            f"q = {q} is odd; no nontrivial maximal arc exists in PG(2,q) for odd q "
            "(Ball, Blokhuis and Mazzocca)"
        )
    v = q.bit_length() - 1
    if q != 1 << v or v % 2:
        raise BadParameters(f"q = {q} is not an even power of 2")
    return denniston_arc(v, v // 2, **kw)


def nonincident_from_arc(arc: MaximalArc) -> NonincidenceCertificate:
    """The arc together with its external lines, when beta = sqrt(q)."""
    pl = arc.plane
    M = external_lines(pl, arc.Y)
    if arc.beta * arc.beta != pl.q or len(M) != arc.s:
        raise NotExtremal(
            f"beta = {arc.beta} is not sqrt({pl.q}): {arc.s} points but {len(M)} external lines"
        )
    desc = arc.construction.describe() if arc.construction else None
    return NonincidenceCertificate.make(pl, arc.Y, M, "arc-construction", desc)
