"""JSON/CSV formats. Every exact value is written as a ``"p/q"`` string."""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile

from .errors import ParseError
from .geometry import Polytope, convex_hull
from .rational import format_rational, parse_rational

CSV_FIELDS = ["name", "n", "lambda", "j", "lhs", "rhs", "gap", "satisfied"]


def polytope_to_json(p: Polytope) -> dict:
    return {"dim": p.dim, "vertices": [[format_rational(c) for c in v] for v in p.vertices]}


def dump_polytope(p: Polytope) -> str:
    return json.dumps(polytope_to_json(p))


def polytope_from_json(obj) -> Polytope:
    if not isinstance(obj, dict) or "dim" not in obj or "vertices" not in obj:
        raise ParseError('expected an object with "dim" and "vertices"')
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"bad dimension {dim!r}")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not verts:
        raise ParseError("vertices must be a nonempty list")
    pts = []
    for k, row in enumerate(verts):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"vertex {k} does not have {dim} coordinates")
        pts.append(tuple(parse_rational(c) for c in row))
    return convex_hull(pts)


def parse_polytope(text) -> Polytope:
    """Parse the polytope JSON format; the hull is recomputed."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return polytope_from_json(obj)


def reports_to_csv(reports) -> str:
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def write_atomic(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


__all__ = [
    "CSV_FIELDS", "dump_polytope", "parse_polytope", "polytope_from_json",
    "polytope_to_json", "reports_to_csv", "write_atomic",
]
