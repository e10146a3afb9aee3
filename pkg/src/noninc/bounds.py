"""Exact bounds on nonincident point/line sets.

Everything here is integer or ``Fraction`` arithmetic. Square roots are
removed algebraically, never evaluated in floating point.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotPerfectSquare
from .plane import Plane, intersection_sizes, point_set


@dataclass(frozen=True)
class BlockProfile:
    """Nonempty traces L ∩ Y of the lines on a point set Y.

    ``sizes`` is the multiset of trace sizes as a sorted tuple, ``b`` the
    number of traces, ``beta_bar`` the mean trace size over the traces
    through a fixed point, (q + s)/(q + 1).
    """

    q: int
    s: int
    sizes: tuple[int, ...]

    @property
    def b(self) -> int:
        return len(self.sizes)

    @property
    def beta_bar(self) -> Fraction:
        return Fraction(self.q + self.s, self.q + 1)

    @property
    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.sizes).items()))

    def identities(self) -> dict[str, bool]:
        q, s, sizes = self.q, self.s, self.sizes
        return {
            "count": sum(1 for _ in sizes) == self.b,
            "incidences": sum(sizes) == (q + 1) * s,
            "pairs": sum(math.comb(k, 2) for k in sizes) == math.comb(s, 2),
            "squares": sum(k * k for k in sizes) == s * (q + s),
        }

    def variance_sum(self) -> Fraction:
        """Sum over traces of (|B| - beta_bar)^2; zero exactly in the arc case."""
        bb = self.beta_bar
        return sum(((k - bb) ** 2 for k in self.sizes), Fraction(0))

    @property
    def meets_lower_bound(self) -> bool:
        return self.b == secant_lower_bound(self.q, self.s)


def block_profile(pl: Plane, Y: Iterable[int]) -> BlockProfile:
    Y = point_set(pl, Y)
    if not Y:
        raise ValueError("block profile needs a nonempty point set")
    sizes = tuple(sorted((k for k in intersection_sizes(pl, Y) if k), reverse=True))
    prof = BlockProfile(q=pl.q, s=len(Y), sizes=sizes)
    failed = [name for name, ok in prof.identities().items() if not ok]
    if failed:
        raise AssertionError(f"counting identities fail for {pl!r}: {failed}")
    return prof


def external_line_bound(q: int, s: int) -> Fraction:
    """Upper bound (q^3 + q^2 + q - qs)/(q + s) on lines missing an s-set."""
    if q < 2 or s < 0:
        raise ValueError("need q >= 2 and s >= 0")
    return Fraction(q**3 + q**2 + q - q * s, q + s)


def secant_lower_bound(q: int, s: int) -> Fraction:
    """Lower bound (q+1)^2 s/(q + s) on lines meeting an s-set."""
    return Fraction((q + 1) ** 2 * s, q + s)


def mullin_vanstone_bound(r: int, lam: int, v: int) -> Fraction:
    """Block-count bound r^2 v / (r + lam (v - 1)) for an (r, lam)-design on v points."""
    if r < 1 or lam < 1 or v < 1:
        raise ValueError("need r, lam, v >= 1")
    return Fraction(r * r * v, r + lam * (v - 1))


def stinson_bound(q: int) -> int:
    """Largest integer s with s^2 + 2qs <= q^3 + q^2 + q.

    This is the largest s for which s points can still leave s lines
    untouched, i.e. floor(-q + (q+1) sqrt(q)).
    """
    if q < 2:
        raise ValueError("need q >= 2")
    # (s + q)^2 <= q (q + 1)^2
    return math.isqrt(q * (q + 1) ** 2) - q


def crossing_point(q: int) -> int:
    """-q + (q+1) sqrt(q) for a perfect square q."""
    r = math.isqrt(q)
    if q < 1 or r * r != q:
        raise NotPerfectSquare(f"{q} is not a perfect square")
    return -q + (q + 1) * r


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def attained_by_construction(q: int) -> bool:
    """q an even power of 2, where a Denniston arc meets the bound."""
    return q >= 4 and q & (q - 1) == 0 and (q.bit_length() - 1) % 2 == 0
