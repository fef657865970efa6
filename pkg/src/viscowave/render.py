"""Deterministic CSV / JSON rendering of report rows.

CSV dialect: comma separated, '.' decimal, one '#'-prefixed metadata line
(tool version and normalization constants, never timestamps), then the
header line, then the rows with floats at 6 significant digits.  JSON keeps
full double precision.  Identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Optional, Sequence

from . import __version__
from .core import OMEGA, PERIOD, V_REF, WAVELENGTH

SIGNIFICANT_DIGITS = 6


def format_number(value, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed significant-digit rendering; empty string for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int,)) or (isinstance(value, float) and value.is_integer() and abs(value) < 1e15):
        return str(int(value))
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{digits}g}"
    return str(value)


def metadata_line(extra: Optional[Mapping[str, object]] = None) -> str:
    parts = [
        f"viscowave {__version__}",
        f"omega={OMEGA!r}",
        f"period={PERIOD:g}",
        f"v_ref={V_REF:g}",
        f"wavelength={WAVELENGTH:g}",
    ]
    if extra:
        parts.extend(f"{key}={format_number(val)}" for key, val in extra.items())
    return "# " + " ".join(parts)


def rows_to_csv(
    rows: Sequence[Mapping[str, object]],
    fieldnames: Optional[Sequence[str]] = None,
    meta: Optional[Mapping[str, object]] = None,
) -> str:
    """Render rows as the deterministic CSV dialect described above."""
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    lines = [metadata_line(meta), ",".join(fieldnames)]
    for row in rows:
        lines.append(",".join(format_number(row.get(name)) for name in fieldnames))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[list[str], list[dict[str, str]]]:
    """Parse the dialect back into header names and string-valued rows."""
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


def to_json(payload: object) -> str:
    """Full-precision JSON (repr round-trips doubles exactly)."""
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def iter_fieldnames(rows: Iterable[Mapping[str, object]]) -> list[str]:
    """Union of row keys in first-seen order (rows may have optional columns)."""
    seen: dict[str, None] = {}
    for row in rows:
        for key in row:
            seen.setdefault(key, None)
    return list(seen)
