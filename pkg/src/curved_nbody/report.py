"""JSON and CSV output with round-trip-exact numbers.

Every float is written with 17 significant digits; NaN and infinities
become ``null`` in JSON and empty fields in CSV.
"""

import csv
import json
import math

import numpy as np

_MARK = "\x00f{}\x00"


def _prepare(obj, floats):
    if isinstance(obj, dict):
        return {str(k): _prepare(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_prepare(v, floats) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        floats.append(format(x, ".17g"))
        return _MARK.format(len(floats) - 1)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj, indent=2):
    """``json.dumps`` with floats formatted to 17 significant digits."""
    floats = []
    text = json.dumps(_prepare(obj, floats), indent=indent, sort_keys=False)
    for i, f in enumerate(floats):
        text = text.replace(json.dumps(_MARK.format(i)), f, 1)
    return text


def format_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g") if math.isfinite(v) else ""
    return str(v)


def write_csv(fh, columns, rows):
    """Rows are dicts keyed by ``columns``."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_cell(row.get(c)) for c in columns])
