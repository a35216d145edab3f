"""File formats: covariance-matrix JSON, quadrature-sample CSV, number formatting."""
import csv
import hashlib
import json
import math

import numpy as np

from gsnw.errors import ConventionError, InputError

CONVENTION = "vacuum_half"
SAMPLE_HEADER = ["q1", "p1", "q2", "p2"]
SIG_DIGITS = 9
LOSSLESS_DIGITS = 17


def fmt(x):
    """Fixed 9-significant-digit text for CSV cells."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return f"{float(x):.{SIG_DIGITS}g}"


def jsonable(obj):
    """Recursively convert to JSON types with floats rounded to 9 significant digits."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(f"{x:.{SIG_DIGITS}g}")
    return obj


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2) + "\n"


def file_sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def parse_cm_document(doc):
    if not isinstance(doc, dict):
        raise InputError("covariance document must be a JSON object")
    conv = doc.get("convention")
    if conv != CONVENTION:
        raise ConventionError(f"unsupported convention {conv!r}; expected {CONVENTION!r}")
    rows = doc.get("matrix")
    if not (isinstance(rows, list) and len(rows) == 4 and all(isinstance(r, list) and len(r) == 4 for r in rows)):
        raise InputError("'matrix' must be a 4x4 array of numbers")
    try:
        m = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError):
        raise InputError("'matrix' must contain only numbers") from None
    return m


def read_cm_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    return parse_cm_document(doc)


def cm_document(cm):
    return {"convention": CONVENTION, "matrix": np.asarray(cm, dtype=float).tolist()}


def write_cm_json(cm, fh):
    """Write a CM document with 17 significant digits, enough to round-trip exactly.

    Rounding a pure-state matrix to fewer digits can push its smaller
    symplectic eigenvalue below the bona fide tolerance.
    """
    m = np.asarray(cm, dtype=np.float64)
    if m.shape != (4, 4) or not np.all(np.isfinite(m)):
        raise InputError("covariance matrix must be a finite 4x4 array")
    rows = ",\n".join("    [" + ", ".join(f"{x:.{LOSSLESS_DIGITS}g}" for x in row) + "]" for row in m)
    fh.write(f'{{\n  "convention": "{CONVENTION}",\n  "matrix": [\n{rows}\n  ]\n}}\n')


def read_samples_csv(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != SAMPLE_HEADER:
                raise InputError(f"sample CSV header must be {','.join(SAMPLE_HEADER)}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 4:
                    raise InputError(f"line {lineno}: expected 4 fields, got {len(row)}")
                try:
                    rows.append([float(v) for v in row])
                except ValueError:
                    raise InputError(f"line {lineno}: non-numeric field") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return np.array(rows, dtype=np.float64).reshape(-1, 4)


def write_samples_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SAMPLE_HEADER)
    for rec in np.asarray(records):
        w.writerow([repr(float(v)) for v in rec])


def write_csv(columns, rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row.get(c)) for c in columns])
