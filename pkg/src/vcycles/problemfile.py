"""Line-oriented problem files (UTF-8, `#` comments).

Header keys, one per line:

    field: q | fp:<prime>
    vars: x1 x2 x3 x4
    twist: 3
    genus: 5              (optional; enables the implied-degree report)
    seed: 1               (optional)
    center: 0 0 1/2       (optional rational point)

Sections hold one polynomial per line in the shared text grammar:

    ideal:                variety / ambient ideal generators
    system:               linear-system forms or multiplicity target ideal
    center-ideal:         affine-linear forms cutting a positive-dimensional
                          center (optional)

Bound profiles use rows `dim mult degree [flag,flag]`:

    profile:
      0 2 1
      1 2 1 simple-non-jacobian

Parsing then serializing a canonical file is the identity.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from .bounds import SingularityProfile, profile as build_profile
from .errors import ParseError
from .ideals import Ideal
from .poly import GF, QQ, CoefficientField, Polynomial, Ring
from .vogel import VogelProblem

_HEADER_KEYS = ("field", "vars", "twist", "genus", "seed", "center")
_SECTION_KEYS = ("ideal", "system", "center-ideal", "profile")


@dataclass
class ProblemFile:
    ring: Ring
    twist: Optional[int] = None
    seed: int = 1
    genus: Optional[int] = None
    ideal_gens: tuple = ()
    system: tuple = ()
    center: Optional[tuple] = None
    center_ideal_gens: tuple = ()
    profile_rows: tuple = ()
    name: str = ""

    @property
    def field(self) -> CoefficientField:
        return self.ring.field

    def variety(self) -> Ideal:
        return Ideal(self.ring, list(self.ideal_gens))

    def center_ideal(self) -> Ideal:
        return Ideal(self.ring, list(self.center_ideal_gens))

    def vogel_problem(self) -> VogelProblem:
        if self.twist is None:
            raise ParseError("a degree problem needs a `twist:` header")
        if not self.system:
            raise ParseError("a degree problem needs a `system:` section")
        return VogelProblem(
            ring=self.ring,
            variety=self.variety(),
            system=tuple(self.system),
            twist=self.twist,
            seed=self.seed,
            name=self.name,
        )

    def singularity_profile(self) -> SingularityProfile:
        if self.genus is None:
            raise ParseError("a profile file needs a `genus:` header")
        return build_profile(self.genus, list(self.profile_rows))

    def serialize(self) -> str:
        lines = []
        if self.field.char:
            lines.append(f"field: fp:{self.field.char}")
        else:
            lines.append("field: q")
        lines.append("vars: " + " ".join(self.ring.names))
        if self.twist is not None:
            lines.append(f"twist: {self.twist}")
        if self.genus is not None:
            lines.append(f"genus: {self.genus}")
        lines.append(f"seed: {self.seed}")
        if self.center is not None:
            lines.append("center: " + " ".join(str(c) for c in self.center))
        if self.ideal_gens:
            lines.append("ideal:")
            for g in self.ideal_gens:
                lines.append("  " + g.to_text())
        if self.system:
            lines.append("system:")
            for g in self.system:
                lines.append("  " + g.to_text())
        if self.center_ideal_gens:
            lines.append("center-ideal:")
            for g in self.center_ideal_gens:
                lines.append("  " + g.to_text())
        if self.profile_rows:
            lines.append("profile:")
            for row in self.profile_rows:
                text = f"  {row[0]} {row[1]} {row[2]}"
                if len(row) > 3 and row[3]:
                    text += " " + ",".join(sorted(row[3]))
                lines.append(text)
        return "\n".join(lines) + "\n"


def parse_problem(text: str, name: str = "") -> ProblemFile:
    headers: dict = {}
    sections: dict = {key: [] for key in _SECTION_KEYS}
    current_section = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        key, sep, rest = stripped.partition(":")
        key = key.strip().lower()
        if sep and key in _SECTION_KEYS and not rest.strip():
            current_section = key
            continue
        if sep and key in _HEADER_KEYS:
            headers[key] = rest.strip()
            current_section = None
            continue
        if current_section is None:
            raise ParseError(f"line outside any section: {stripped!r}")
        sections[current_section].append(stripped)

    if "vars" not in headers:
        raise ParseError("missing `vars:` header")
    field_text = headers.get("field", "q").replace(" ", "")
    if field_text in ("q", "qq", "rationals"):
        coeff_field = QQ
    elif field_text.startswith("fp:") or field_text.startswith("fp"):
        digits = field_text.split(":", 1)[1] if ":" in field_text else field_text[2:]
        try:
            coeff_field = GF(int(digits))
        except ValueError as exc:
            raise ParseError(f"bad prime field spec {field_text!r}: {exc}") from exc
    else:
        raise ParseError(f"unknown field spec {field_text!r}")
    ring = Ring(coeff_field, headers["vars"].split())

    def parse_polys(lines):
        out = []
        for line in lines:
            try:
                out.append(ring.parse(line))
            except ParseError as exc:
                raise ParseError(f"bad polynomial {line!r}: {exc}") from exc
        return tuple(out)

    twist = int(headers["twist"]) if "twist" in headers else None
    genus = int(headers["genus"]) if "genus" in headers else None
    seed = int(headers.get("seed", "1"))
    center = None
    if "center" in headers:
        coords = []
        for token in headers["center"].split():
            if "/" in token:
                num, den = token.split("/")
                coords.append(coeff_field.of_fraction(int(num), int(den)))
            else:
                coords.append(coeff_field.of_int(int(token)))
        if len(coords) != ring.nvars:
            raise ParseError(
                f"center has {len(coords)} coordinates for {ring.nvars} variables"
            )
        center = tuple(coords)
    rows = []
    for line in sections["profile"]:
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ParseError(f"profile row needs `dim mult degree [flags]`: {line!r}")
        row = [int(parts[0]), int(parts[1]), int(parts[2])]
        if len(parts) == 4:
            row.append(tuple(sorted(parts[3].split(","))))
        rows.append(tuple(row))
    return ProblemFile(
        ring=ring,
        twist=twist,
        seed=seed,
        genus=genus,
        ideal_gens=parse_polys(sections["ideal"]),
        system=parse_polys(sections["system"]),
        center=center,
        center_ideal_gens=parse_polys(sections["center-ideal"]),
        profile_rows=tuple(rows),
        name=name,
    )


def load_problem(path) -> ProblemFile:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_problem(text, name=p.stem)


def file_digest(path) -> str:
    from pathlib import Path

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
