"""Projective planes as dense point/line incidence matrices.

Rows are points, columns are lines. Besides the boolean numpy matrix a plane
keeps every row and column as a Python int bitset, which is what the arc
and search code work with: ``point_rows[p]`` has bit ``l`` set iff point p is
on line l, ``line_cols[l]`` has bit ``p`` set iff the same holds.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import AxiomViolation, BadOrder, FormatError, IndexOutOfRange, NotSquare
from .gf import FieldTable

MAX_PG2_ORDER = 256


@dataclass(frozen=True, eq=False)
class Plane:
    q: int
    incidence: np.ndarray
    points: tuple[tuple[int, int, int], ...] | None = None
    lines: tuple[tuple[int, int, int], ...] | None = None
    origin: str = ""
    field: FieldTable | None = field(default=None, repr=False)

    def __repr__(self):
        return f"Plane(q={self.q}, n={self.n}, origin={self.origin!r})"

    @property
    def n(self) -> int:
        return self.incidence.shape[0]

    @cached_property
    def point_rows(self) -> list[int]:
        return [_pack(row) for row in self.incidence]

    @cached_property
    def line_cols(self) -> list[int]:
        return [_pack(col) for col in self.incidence.T]

    @cached_property
    def all_lines(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(incidence_text(self.incidence).encode()).hexdigest()

    @cached_property
    def point_index(self) -> dict[tuple[int, int, int], int]:
        if self.points is None:
            raise ValueError("imported plane has no coordinates")
        return {pt: i for i, pt in enumerate(self.points)}

    @cached_property
    def line_index(self) -> dict[tuple[int, int, int], int]:
        if self.lines is None:
            raise ValueError("imported plane has no coordinates")
        return {ln: i for i, ln in enumerate(self.lines)}

    def matches(self, ref: str) -> bool:
        """Whether a certificate's plane reference names this plane."""
        return ref == self.origin or ref == "sha256:" + self.digest


def _pack(bits: np.ndarray) -> int:
    # little-endian: bit i of the int is entry i
    return int.from_bytes(np.packbits(bits.astype(bool), bitorder="little").tobytes(), "little")


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return tuple(out)


def _check_indices(indices, n, what="point"):
    idx = tuple(sorted(set(int(i) for i in indices)))
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise IndexOutOfRange(f"{what} index out of range 0..{n - 1}")
    return idx


def order_from_size(n: int) -> int | None:
    """q with q^2 + q + 1 = n, or None."""
    d = 4 * n - 3
    r = math.isqrt(d)
    if r * r != d or (r - 1) % 2:
        return None
    return (r - 1) // 2


# -- construction ----------------------------------------------------------

def normalized_triples(q: int) -> list[tuple[int, int, int]]:
    """Nonzero triples whose first nonzero entry is 1, in lexicographic order."""
    return [t for t in product(range(q), repeat=3) if _first_nonzero(t) == 1]


def _first_nonzero(t):
    for x in t:
        if x:
            return x
    return 0


def build_pg2(f: FieldTable) -> Plane:
    """The desarguesian plane PG(2, q) over the given field."""
    q = f.order
    if q > MAX_PG2_ORDER:
        raise ValueError(f"PG(2,{q}) is too large for a dense incidence matrix")
    triples = normalized_triples(q)
    coords = np.array(triples, dtype=np.int64)
    add, mul = f.add_table, f.mul_table
    n = len(triples)
    inc = np.empty((n, n), dtype=bool)
    chunk = max(1, 2_000_000 // n)
    for start in range(0, n, chunk):
        P = coords[start:start + chunk]
        dot = mul[P[:, None, 0], coords[None, :, 0]]
        dot = add[dot, mul[P[:, None, 1], coords[None, :, 1]]]
        dot = add[dot, mul[P[:, None, 2], coords[None, :, 2]]]
        inc[start:start + chunk] = dot == 0
    inc.flags.writeable = False
    tt = tuple(triples)
    return Plane(q=q, incidence=inc, points=tt, lines=tt, origin="pg2:" + f.description, field=f)


def incident(pl: Plane, p: int, l: int) -> bool:
    if not (0 <= p < pl.n and 0 <= l < pl.n):
        raise IndexOutOfRange(f"({p}, {l}) outside 0..{pl.n - 1}")
    return bool(pl.incidence[p, l])


# -- import / export -------------------------------------------------------

def incidence_text(matrix: np.ndarray) -> str:
    n = matrix.shape[0]
    rows = ["".join("1" if x else "0" for x in row) for row in np.asarray(matrix, dtype=bool)]
    return f"PLANE {n}\n" + "\n".join(rows) + "\n"


def parse_incidence(text: str) -> np.ndarray:
    if not text.endswith("\n"):
        raise FormatError("incidence file must end with a newline")
    lines = text[:-1].split("\n")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "PLANE" or not head[1].isdigit():
        raise FormatError("first line must be 'PLANE <n>'")
    n = int(head[1])
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"expected {n} matrix rows, found {len(body)}")
    width = {len(r) for r in body}
    if any(set(r) - {"0", "1"} for r in body):
        raise FormatError("matrix rows may only contain 0 and 1")
    if len(width) > 1:
        raise FormatError("ragged matrix rows")
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    return np.array([[c == "1" for c in r] for r in body], dtype=bool)


def export_plane(pl: Plane, path) -> None:
    Path(path).write_text(incidence_text(pl.incidence))


def import_plane(path) -> Plane:
    return validate_imported(parse_incidence(Path(path).read_text()))


def validate_imported(matrix) -> Plane:
    """Check that a 0/1 matrix is the incidence matrix of a projective plane."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"matrix has shape {m.shape}")
    if not np.isin(m, (0, 1)).all():
        raise AxiomViolation("entries must be 0 or 1")
    m = m.astype(bool)
    n = m.shape[0]
    q = order_from_size(n)
    if q is None or q < 2:
        raise BadOrder(f"side {n} is not q^2+q+1 for an integer q >= 2")

    rs = m.sum(axis=1)
    bad = np.flatnonzero(rs != q + 1)
    if bad.size:
        r = int(bad[0])
        raise AxiomViolation(f"point {r} lies on {rs[r]} lines, expected {q + 1}", ("row", r))
    cs = m.sum(axis=0)
    bad = np.flatnonzero(cs != q + 1)
    if bad.size:
        c = int(bad[0])
        raise AxiomViolation(f"line {c} has {cs[c]} points, expected {q + 1}", ("col", c))

    mf = m.astype(np.float64)
    for gram, kind, noun in ((mf @ mf.T, "rows", "points"), (mf.T @ mf, "cols", "lines")):
        np.fill_diagonal(gram, 1)
        bad = np.argwhere(gram != 1)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            common = int(gram[i, j])
            what = "share" if noun == "points" else "meet in"
            raise AxiomViolation(
                f"{noun} {i} and {j} {what} {common} {'lines' if noun == 'points' else 'points'}, expected 1",
                (kind, i, j),
            )

    m.flags.writeable = False
    pl = Plane(q=q, incidence=m)
    object.__setattr__(pl, "origin", "sha256:" + pl.digest)
    return pl


# -- point-set queries -------------------------------------------------------

def point_set(pl: Plane, indices: Iterable[int]) -> tuple[int, ...]:
    """Validated, sorted, duplicate-free tuple of point indices."""
    return _check_indices(indices, pl.n, "point")


def line_set(pl: Plane, indices: Iterable[int]) -> tuple[int, ...]:
    return _check_indices(indices, pl.n, "line")


def hit_mask(pl: Plane, Y: Iterable[int]) -> int:
    """Bitset of lines meeting Y."""
    rows = pl.point_rows
    m = 0
    for y in point_set(pl, Y):
        m |= rows[y]
    return m


def external_lines(pl: Plane, Y: Iterable[int]) -> tuple[int, ...]:
    """Lines disjoint from the point set Y."""
    return from_mask(pl.all_lines & ~hit_mask(pl, Y))


def lines_meeting(pl: Plane, Y: Iterable[int]) -> tuple[int, ...]:
    return from_mask(hit_mask(pl, Y))


def intersection_sizes(pl: Plane, Y: Iterable[int]) -> list[int]:
    """|L ∩ Y| for every line L, in line order."""
    ym = to_mask(point_set(pl, Y))
    return [(ym & col).bit_count() for col in pl.line_cols]
