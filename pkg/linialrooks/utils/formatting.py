"""
Rendering of command payloads as JSON, CSV or a LaTeX tabular.
"""

import csv
import io
import json
from typing import Any, List, Tuple

from pydantic import BaseModel

from linialrooks.models.schemas import OutputFormat


def to_jsonable(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, dict):
        return {k: to_jsonable(v) for k, v in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [to_jsonable(v) for v in payload]
    return payload


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"), ensure_ascii=False)
    return "" if value is None else str(value)


def _is_scalar_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def to_table(data: Any) -> Tuple[List[str], List[List[str]]]:
    """
    Flattens a payload into (header, rows). Equal-length scalar lists become
    columns, a list of objects becomes one row per object, anything else is a
    single row.
    """
    if isinstance(data, list):
        if data and all(isinstance(d, dict) for d in data):
            header = list(data[0])
            return header, [[_cell(d.get(h)) for h in header] for d in data]
        return ["index", "value"], [[str(i), _cell(v)] for i, v in enumerate(data)]

    if not isinstance(data, dict):
        return ["value"], [[_cell(data)]]

    columns = {k: v for k, v in data.items() if _is_scalar_list(v) and v}
    if columns and len({len(v) for v in columns.values()}) == 1:
        length = len(next(iter(columns.values())))
        header = list(columns)
        if "n" not in columns:
            header = ["index"] + header
            return header, [[str(i)] + [_cell(columns[h][i]) for h in header[1:]] for i in range(length)]
        return header, [[_cell(columns[h][i]) for h in header] for i in range(length)]

    nested = [k for k, v in data.items() if isinstance(v, list) and v and all(isinstance(x, dict) for x in v)]
    if len(nested) == 1:
        rows = data[nested[0]]
        header = list(rows[0])
        return header, [[_cell(r.get(h)) for h in header] for r in rows]

    header = list(data)
    return header, [[_cell(data[h]) for h in header]]


def render_csv(data: Any) -> str:
    header, rows = to_table(data)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


_LATEX_SPECIALS = {"\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#", "_": r"\_", "{": r"\{", "}": r"\}"}


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def render_latex(data: Any) -> str:
    header, rows = to_table(data)
    lines = [
        "\\begin{tabular}{" + "r" * len(header) + "}",
        "\\hline",
        " & ".join(_latex_escape(h) for h in header) + r" \\",
        "\\hline",
    ]
    lines += [" & ".join(_latex_escape(c) for c in row) + r" \\" for row in rows]
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines)


def render(payload: Any, output_format: OutputFormat = OutputFormat.JSON) -> str:
    data = to_jsonable(payload)
    output_format = OutputFormat(output_format)
    if output_format is OutputFormat.CSV:
        return render_csv(data)
    if output_format is OutputFormat.LATEX:
        return render_latex(data)
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
