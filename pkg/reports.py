"""
Run reports: one dict per CLI run, written as JSON or as readable text.

Everything except `elapsed_ms` and the `timing` block is reproducible from
the seeds, so payload_bytes() is what determinism checks compare.
"""
import dataclasses
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from config import load_config
from graphs import EdgeColouring, Graph, PartialColouring

UNTIMED_KEYS = ("elapsed_ms", "timing")


def build_report(subcommand: str, inputs: Dict[str, Any], result: Dict[str, Any],
                 seeds: Optional[List[int]] = None, elapsed_ms: float = 0.0,
                 timing: Optional[dict] = None) -> dict:
    report = {
        "schema_version": load_config()["schema_version"],
        "subcommand": subcommand,
        "inputs": inputs,
        "result": result,
        "seeds": list(seeds or []),
        "elapsed_ms": round(elapsed_ms, 3),
    }
    if timing:
        report["timing"] = timing
    return report


def _key(key) -> str:
    if isinstance(key, tuple):
        return ",".join(str(part) for part in key)
    return str(key)


def to_jsonable(obj):
    """Turn results (dataclasses, frames, colourings, numpy values) into plain JSON data."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, np.generic):
        return to_jsonable(obj.item())
    if isinstance(obj, pd.DataFrame):
        return [to_jsonable(row) for row in obj.to_dict(orient="records")]
    if isinstance(obj, Graph):
        return {"n": obj.n, "edges": [list(e) for e in obj.sorted_edges]}
    if isinstance(obj, (EdgeColouring, PartialColouring)):
        return {"r": obj.r, "edges": [[u, v, colour] for (u, v), colour in obj.items()]}
    if hasattr(obj, "to_dict") and callable(obj.to_dict):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(x) for x in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return str(obj)


def _dumps(data) -> str:
    return json.dumps(to_jsonable(data), indent=2, ensure_ascii=False, sort_keys=True)


def payload_bytes(report: dict) -> bytes:
    return _dumps({k: v for k, v in report.items() if k not in UNTIMED_KEYS}).encode("utf-8")


def render_text(report: dict) -> str:
    """Readable rendering: tables via DataFrame.to_string, everything else as indented JSON."""
    lines = [f"{report['subcommand']} (schema {report['schema_version']})", "=" * 60]
    for section in ("inputs", "result"):
        lines.append(f"{section}:")
        for key, value in report[section].items():
            if isinstance(value, pd.DataFrame):
                lines.append(f"  {key}:")
                lines.extend("    " + row for row in value.to_string(index=False).splitlines())
            else:
                lines.append(f"  {key}: {json.dumps(to_jsonable(value), ensure_ascii=False, sort_keys=True)}")
    lines.append(f"seeds: {report['seeds']}")
    lines.append(f"elapsed_ms: {report['elapsed_ms']}")
    return "\n".join(lines) + "\n"


def write_report(report: dict, output: Optional[Union[str, Path]] = None, fmt: str = "json") -> str:
    """Render the report and write it to `output`, or to stdout when no path is given."""
    text = render_text(report) if fmt == "text" else _dumps(report) + "\n"
    if output is None:
        print(text, end="")
    else:
        Path(output).write_text(text, encoding="utf-8")
    return text
