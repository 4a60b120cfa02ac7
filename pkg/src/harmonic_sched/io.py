"""File formats: problem JSON, matrix CSV with an a.u. sidecar, scheme JSON.

Rationals are always written as ``"num/den"`` strings, never floats.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import (
    AssignmentMatrix,
    ProblemSpec,
    Scheme,
    SchemeError,
    Segment,
    format_rational,
    to_rational,
)


class FormatError(ValueError):
    """Malformed input file."""


def spec_to_dict(spec: ProblemSpec) -> dict[str, Any]:
    return {
        "classes": [
            {"time": format_rational(c.completion_time), "count": c.count} for c in spec.classes
        ],
        "objects": spec.objects,
    }


def spec_from_dict(data: dict[str, Any]) -> ProblemSpec:
    try:
        pairs = [(to_rational(str(c["time"])), int(c["count"])) for c in data["classes"]]
        objects = data.get("objects")
        return ProblemSpec.from_pairs(pairs, None if objects is None else int(objects))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad problem spec: {exc}") from exc


def load_spec(path: str | Path) -> ProblemSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return spec_from_dict(data)


def matrix_to_csv(m: AssignmentMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["object", *range(1, m.n + 1)])
    for i, row in enumerate(m.entries, start=1):
        w.writerow([i, *row])
    return buf.getvalue()


def matrix_sidecar(m: AssignmentMatrix) -> dict[str, Any]:
    return {"n": m.n, "au_hours": format_rational(m.au_hours)}


def sidecar_path(csv_path: str | Path) -> Path:
    return Path(str(csv_path) + ".json")


def matrix_from_csv(text: str, au_hours: Fraction) -> AssignmentMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 2:
        raise FormatError("matrix CSV needs a header and at least one row")
    try:
        header = [int(x) for x in rows[0][1:]]
        body = [[int(x) for x in r[1:]] for r in rows[1:]]
        labels = [int(r[0]) for r in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"matrix CSV: non-integer cell ({exc})") from exc
    n = len(body)
    if header != list(range(1, n + 1)) or labels != list(range(1, n + 1)):
        raise FormatError("matrix CSV: header and object labels must run 1..n")
    try:
        return AssignmentMatrix(tuple(tuple(r) for r in body), au_hours)
    except SchemeError as exc:
        raise FormatError(f"matrix CSV: {exc}") from exc


def write_matrix(path: str | Path, m: AssignmentMatrix) -> None:
    Path(path).write_text(matrix_to_csv(m))
    sidecar_path(path).write_text(dumps(matrix_sidecar(m)))


def load_matrix(path: str | Path, default_au: Fraction | None = None) -> AssignmentMatrix:
    side = sidecar_path(path)
    if side.exists():
        try:
            au = to_rational(str(json.loads(side.read_text())["au_hours"]))
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise FormatError(f"{side}: bad sidecar ({exc})") from exc
    elif default_au is not None:
        au = default_au
    else:
        raise FormatError(f"{path}: no au_hours sidecar at {side}")
    return matrix_from_csv(Path(path).read_text(), au)


def type_matrix_csv(grid: tuple[tuple[int, ...], ...]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["object", *range(1, len(grid) + 1)])
    for i, row in enumerate(grid, start=1):
        w.writerow([i, *row])
    return buf.getvalue()


def scheme_to_dict(s: Scheme) -> dict[str, Any]:
    return {
        "segments": [
            [
                {"agent": seg.agent, "start": format_rational(seg.start), "end": format_rational(seg.end)}
                for seg in row
            ]
            for row in s.segments
        ]
    }


def scheme_from_dict(data: dict[str, Any]) -> Scheme:
    try:
        return Scheme(
            tuple(
                tuple(
                    Segment(int(seg["agent"]), to_rational(str(seg["start"])), to_rational(str(seg["end"])))
                    for seg in row
                )
                for row in data["segments"]
            )
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad scheme: {exc}") from exc


def load_scheme(path: str | Path) -> Scheme:
    try:
        return scheme_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def _default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data: Any) -> str:
    """Deterministic JSON: sorted keys, Fractions as strings, trailing newline."""
    return json.dumps(data, default=_default, indent=2, sort_keys=True) + "\n"
