"""CSV serialization of sweep results.

Layout: ``# key: value`` metadata lines, one header row, then data rows.
Floats are written as shortest round-trip decimals, booleans as
``true``/``false``.
"""

import csv
import io
import math

from .sweep import SweepResult


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(text):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return float(text)
    except ValueError:
        return text


def body_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_format(row.get(c, "")) for c in result.columns])
    return buf.getvalue()


def to_csv(result: SweepResult, extra_metadata=None) -> str:
    meta = dict(result.metadata)
    meta.update(extra_metadata or {})
    lines = [f"# {k}: {_format(v)}" for k, v in meta.items()]
    return "\n".join(lines) + "\n" + body_csv(result)


def write_csv(result: SweepResult, path, extra_metadata=None):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(result, extra_metadata))


def parse_csv(text: str) -> SweepResult:
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = _parse(value.strip())
        elif line.strip():
            body.append(line)
    reader = csv.reader(body)
    try:
        columns = next(reader)
    except StopIteration:
        raise ValueError("CSV has no header row") from None
    rows = []
    for record in reader:
        if len(record) != len(columns):
            raise ValueError(f"row has {len(record)} fields, header has {len(columns)}")
        row = {}
        for c, v in zip(columns, record):
            row[c] = v if c == "error" else _parse(v)
        rows.append(row)
    return SweepResult(meta, columns, rows)


def read_csv(path) -> SweepResult:
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read())


def max_relative_difference(a: SweepResult, b: SweepResult) -> float:
    """Largest ``|x - y| / max(|x|, |y|)`` over numeric cells of two tables.

    Raises ``ValueError`` when the shapes, headers or non-numeric cells differ.
    """
    if a.columns != b.columns or len(a.rows) != len(b.rows):
        raise ValueError("tables differ in columns or row count")
    worst = 0.0
    for ra, rb in zip(a.rows, b.rows):
        for c in a.columns:
            x, y = ra[c], rb[c]
            if isinstance(x, bool) or isinstance(y, bool) or isinstance(x, str) or isinstance(y, str):
                if x != y:
                    raise ValueError(f"column {c}: {x!r} != {y!r}")
                continue
            if math.isnan(x) and math.isnan(y):
                continue
            scale = max(abs(x), abs(y))
            if scale > 0:
                worst = max(worst, abs(x - y) / scale)
    return worst
