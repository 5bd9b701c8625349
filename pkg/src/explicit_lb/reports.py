"""Report envelopes and the three output formats.

Every report is a JSON object ``{"schema": 1, "kind", "version",
"provenance", "data"}``. Nothing time- or host-dependent goes into it, so
identical inputs give byte-identical output.

CSV output is long format with the fixed columns ``CSV_COLUMNS``:

    kind   report kind (bound_report, campaign_report, ...)
    item   the record a row belongs to (a term name, a claim id, a label)
    field  which quantity of that record
    value  the quantity, repr-formatted for floats
    tag    provenance tag of a bound term, else empty
"""
from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources

from . import __version__
from ._accel import backend_name

SCHEMA_VERSION = 1
PACKAGE = "artifact"
CSV_COLUMNS = ("kind", "item", "field", "value", "tag")
SCHEMA_FILES = {
    "envelope": "envelope.schema.json",
    "bound_report": "bound_report.schema.json",
    "campaign_report": "campaign_report.schema.json",
    "desk_report": "desk_report.schema.json",
}


def _clean(obj):
    """Make ``obj`` strict-JSON: tuples to lists, numpy scalars to Python, non-finite to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, complex):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    return obj


def envelope(kind: str, data: dict, command=(), config: dict | None = None) -> dict:
    prov = {
        "package": PACKAGE,
        "version": __version__,
        "backend": backend_name(),
        "command": [str(c) for c in command],
    }
    if config is not None:
        prov["config"] = config
    return _clean({"schema": SCHEMA_VERSION, "kind": kind, "version": __version__,
                   "provenance": prov, "data": data})


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _rows(kind: str, data: dict):
    if kind == "bound_report":
        for t in data["terms"]:
            yield t["name"], "term", t["value"], t["tag"]
        for key in ("total", "comparison", "slack"):
            yield data["name"], key, data.get(key), ""
        for key, v in data.get("extras", {}).items():
            if not isinstance(v, (list, dict)):
                yield data["name"], key, v, ""
    elif kind == "campaign_report":
        for c in data.get("campaigns", []):
            for key in ("status", "claimed", "range", "checkpoints", "worst_margin", "worst_point"):
                yield c["claim_id"], key, c[key], ""
            yield c["claim_id"], "violation_count", len(c["violations"]), ""
            for key, v in c.items():
                if key == "recheck":
                    for k2, v2 in v.items():
                        yield c["claim_id"], f"recheck_{k2}", v2, ""
                elif key.startswith("counterexamples"):
                    yield c["claim_id"], key, v, ""
        if "lambda" in data:
            for key, v in data["lambda"].items():
                yield "lambda", key, v, ""
        for k in data.get("constants", []):
            for key in ("computed", "displayed", "direction", "margin", "ok"):
                yield k["name"], key, k[key], k.get("route", "")
    elif kind == "desk_report":
        for key, v in data["summary"].items():
            yield "summary", key, v, ""
        for r in data["rows"]:
            for key, v in r.items():
                if key != "label":
                    yield r["label"], key, v, ""
    else:
        for key, v in data.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                for i, row in enumerate(v):
                    for k2, v2 in row.items():
                        yield f"{key}[{i}]", k2, v2, ""
            else:
                yield kind, key, v, ""


def to_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for item, fld, value, tag in _rows(doc["kind"], doc["data"]):
        w.writerow((doc["kind"], item, fld, _fmt(value), tag))
    return buf.getvalue()


def to_human(doc: dict) -> str:
    lines = [f"# {doc['kind']}  {PACKAGE} {doc['version']}  backend={doc['provenance']['backend']}"]
    for item, fld, value, tag in _rows(doc["kind"], doc["data"]):
        shown = f"{value:.10g}" if isinstance(value, float) else _fmt(value)
        suffix = f"  [{tag}]" if tag else ""
        lines.append(f"{item:<40} {fld:<24} {shown}{suffix}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "human":
        return to_human(doc)
    raise ValueError(f"unknown format {fmt!r}")


def load_schema(name: str) -> dict:
    text = resources.files("explicit_lb").joinpath("schemas", SCHEMA_FILES[name]).read_text(encoding="utf-8")
    return json.loads(text)


def validate(doc: dict) -> None:
    """Validate the envelope and, when a schema exists for its kind, the payload.

    Needs the optional ``jsonschema`` package.
    """
    import jsonschema

    jsonschema.validate(doc, load_schema("envelope"))
    if doc["kind"] in SCHEMA_FILES:
        jsonschema.validate(doc["data"], load_schema(doc["kind"]))
