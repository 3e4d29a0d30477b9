"""Reading and writing the ``ldm-1`` JSON multinet format."""
from __future__ import annotations

import json
from pathlib import Path

from .errors import FormatError
from .fields import Field
from .loops import MultTable
from .multinet import LabeledMultinet
from .projective import normalize

FORMAT = "ldm-1"


def to_dict(m: LabeledMultinet) -> dict:
    return {
        "format": FORMAT,
        "field": m.field.to_json(),
        "order": m.order,
        "components": [[p.to_json() for p in comp] for comp in m.components],
        "labels": None if m.labels is None else {"table": m.labels.to_json()["table"], "names": list(m.labels.names)},
        "provenance": m.provenance,
    }


def dumps(m: LabeledMultinet) -> str:
    return json.dumps(to_dict(m), indent=1) + "\n"


def from_dict(data: dict) -> LabeledMultinet:
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object")
    if data.get("format") != FORMAT:
        raise FormatError(f"unsupported format {data.get('format')!r}")
    try:
        field = Field.from_json(data["field"])
        comps = []
        for comp in data["components"]:
            pts = []
            for raw in comp:
                if len(raw) != 3:
                    raise FormatError("points must have three coordinates")
                p = normalize([field.element_from_json(c) for c in raw])
                if [c.to_json() for c in p.coords] != raw:
                    raise FormatError(f"point {raw} is not in normalized form")
                pts.append(p)
            comps.append(tuple(pts))
        if len(comps) != 3 or len({len(c) for c in comps}) != 1:
            raise FormatError("need three components of equal size")
        if data.get("order") != len(comps[0]):
            raise FormatError("order does not match component size")
        labels = data.get("labels")
        table = None if labels is None else MultTable.from_json(labels)
        return LabeledMultinet(field, tuple(comps), table, data.get("provenance") or {})
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed ldm-1 data: {exc}") from exc


def loads(text: str) -> LabeledMultinet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def read(path: str | Path) -> LabeledMultinet:
    return loads(Path(path).read_text())


def write(m: LabeledMultinet, path: str | Path) -> None:
    Path(path).write_text(dumps(m))
