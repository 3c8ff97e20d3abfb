"""JSON-lines point-set records and SVG / ASCII grid pictures.

A record is one JSON object per line::

    {"q": 11, "p": 11, "r": 1, "size": 7, "points": [[0, 0], [0, 1], ...]}

Coordinates are element codes (sum of c_i p^i over the polynomial basis),
so a record is independent of how the field is built in memory.
Extra keys (``stab_order``, ``orbit_len``, ...) are carried along.
"""
from __future__ import annotations

import json
from typing import Iterable, TextIO

from .field import FieldCtx, make_field
from .plane import PointSet


class FormatError(ValueError):
    pass


def pointset_record(P: PointSet, **extra) -> dict:
    f = P.field
    rec = {"q": f.q, "p": f.p, "r": f.r, "size": len(P), "points": [list(c) for c in P.coords()]}
    rec.update(extra)
    return rec


def dump_records(records: Iterable[dict], fh: TextIO):
    for rec in records:
        fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def parse_record(obj) -> PointSet:
    if not isinstance(obj, dict) or "points" not in obj:
        raise FormatError("record needs a 'points' list")
    try:
        if "p" in obj:
            ctx = make_field(int(obj["p"]), int(obj.get("r", 1)))
            if "q" in obj and int(obj["q"]) != ctx.q:
                raise FormatError(f"q={obj['q']} does not equal p^r={ctx.q}")
        elif "q" in obj:
            from .field import field_of_order
            ctx = field_of_order(int(obj["q"]))
        else:
            raise FormatError("record needs 'q' or 'p'")
        pts = [tuple(int(v) for v in pt) for pt in obj["points"]]
        if any(len(pt) != 2 for pt in pts):
            raise FormatError("points must be [x, y] pairs")
        return PointSet(ctx, pts)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc


def load_pointsets(fh: TextIO) -> list[PointSet]:
    """Read a JSON document or JSON lines holding one or more records."""
    text = fh.read()
    try:
        doc = json.loads(text)
        objs = doc if isinstance(doc, list) else [doc]
    except json.JSONDecodeError:
        objs = []
        for n, line in enumerate(text.splitlines(), 1):
            if line.strip():
                try:
                    objs.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise FormatError(f"line {n}: {exc.msg}") from exc
    if not objs:
        raise FormatError("no point set found")
    return [parse_record(o) for o in objs]


def render_svg(P: PointSet, cell: int = 20, margin: int = 4) -> str:
    """q x q grid (q + 1 lines each way) with a dot in every occupied cell; y grows upwards."""
    q = P.field.q
    side = q * cell
    w = side + 2 * margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">',
           f'<g stroke="black" stroke-width="1" transform="translate({margin},{margin})">']
    for k in range(q + 1):
        out.append(f'<line x1="0" y1="{k * cell}" x2="{side}" y2="{k * cell}"/>')
        out.append(f'<line x1="{k * cell}" y1="0" x2="{k * cell}" y2="{side}"/>')
    out.append("</g>")
    out.append(f'<g fill="black" transform="translate({margin},{margin})">')
    r = cell * 0.3
    for x, y in P.coords():
        cx = (x + 0.5) * cell
        cy = (q - 1 - y + 0.5) * cell
        out.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="{r:g}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(P: PointSet) -> str:
    q = P.field.q
    occupied = set(P.coords())
    rows = []
    for y in range(q - 1, -1, -1):
        rows.append(" ".join("#" if (x, y) in occupied else "." for x in range(q)))
    return "\n".join(rows) + "\n"


def field_header(ctx: FieldCtx) -> dict:
    return {"q": ctx.q, "p": ctx.p, "r": ctx.r, "irreducible": list(ctx.irreducible)}
