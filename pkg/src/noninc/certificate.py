"""Nonincidence certificates: a point set Y and line set M with no incidences.

File format (newline-terminated lines)::

    CERT s=<s>
    PLANE <plane reference>
    Y <indices>
    M <indices>
    ARC ...          (optional, arc-built certificates only)
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, PlaneMismatch
from .plane import Plane, to_mask

PROVENANCES = ("search", "arc-construction", "manual")


@dataclass(frozen=True)
class NonincidenceCertificate:
    plane_ref: str
    Y: tuple[int, ...]
    M: tuple[int, ...]
    s: int
    provenance: str = "manual"
    arc: str | None = None

    @classmethod
    def make(cls, pl: Plane, Y, M, provenance="manual", arc=None):
        Y, M = tuple(sorted(Y)), tuple(sorted(M))
        if len(Y) != len(M):
            raise ValueError(f"|Y| = {len(Y)} but |M| = {len(M)}")
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        return cls(pl.origin, Y, M, len(Y), provenance, arc)

    def to_text(self) -> str:
        out = [
            f"CERT s={self.s}",
            f"PLANE {self.plane_ref}",
            " ".join(["Y", *map(str, self.Y)]),
            " ".join(["M", *map(str, self.M)]),
        ]
        if self.arc:
            out.append(f"ARC {self.arc}")
        return "\n".join(out) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())


def parse_certificate(text: str) -> NonincidenceCertificate:
    if not text.endswith("\n"):
        raise FormatError("certificate must end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) not in (4, 5):
        raise FormatError(f"certificate has {len(lines)} lines, expected 4 or 5")
    head, plane, ys, ms = lines[:4]
    if not head.startswith("CERT s="):
        raise FormatError("line 1 must be 'CERT s=<s>'")
    if not plane.startswith("PLANE ") or len(plane.split()) != 2:
        raise FormatError("line 2 must be 'PLANE <ref>'")
    try:
        s = int(head[len("CERT s="):])
        Y = _indices(ys, "Y")
        M = _indices(ms, "M")
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    arc = None
    provenance = "manual"
    if len(lines) == 5:
        if not lines[4].startswith("ARC "):
            raise FormatError("optional line 5 must start with 'ARC '")
        arc = lines[4][4:]
        provenance = "arc-construction"
    return NonincidenceCertificate(plane.split()[1], Y, M, s, provenance, arc)


def _indices(line: str, tag: str) -> tuple[int, ...]:
    parts = line.split(" ")
    if parts[0] != tag:
        raise ValueError(f"expected a line starting with {tag!r}")
    return tuple(int(x) for x in parts[1:] if x != "")


def read_certificate(path) -> NonincidenceCertificate:
    return parse_certificate(Path(path).read_text())


def verify_certificate(pl: Plane, cert: NonincidenceCertificate) -> bool:
    """True iff the certificate is a well-formed s-by-s nonincident set of ``pl``."""
    if not pl.matches(cert.plane_ref):
        raise PlaneMismatch(f"certificate is for {cert.plane_ref!r}, plane is {pl.origin!r}")
    Y, M = cert.Y, cert.M
    if len(Y) != cert.s or len(M) != cert.s:
        return False
    if len(set(Y)) != len(Y) or len(set(M)) != len(M):
        return False
    n = pl.n
    if any(not 0 <= i < n for i in Y + M):
        return False
    mmask = to_mask(M)
    rows = pl.point_rows
    return all(rows[y] & mmask == 0 for y in Y)
