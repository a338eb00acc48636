"""
Shared argparse plumbing for the command groups.
"""

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List

from linialrooks.errors import InvalidInputError
from linialrooks.models.schemas import OutputFormat


class EngineArgumentParser(argparse.ArgumentParser):
    """Usage errors become InvalidInputError instead of exiting the process."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise InvalidInputError(f"{self.prog}: {message}")


def common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", dest="output_format", type=OutputFormat, default=OutputFormat.JSON,
                        choices=list(OutputFormat), help="json (default), csv or latex")
    parent.add_argument("--max-states", type=int, default=None, help="Row cap for the rook and bipartite matching DPs")
    parent.add_argument("--max-enum", type=int, default=None, help="Cap on enumerated objects")
    parent.add_argument("--log-level", default=None, help="Override LINIALROOKS_LOG_LEVEL")
    return parent


def int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}")


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"expected a rational number such as 3 or 1/2, got {text!r}")


def assignments(text: str) -> Dict[str, Fraction]:
    """Parses 'u1=1/2,v1=2' into {'u1': Fraction(1, 2), 'v1': Fraction(2)}."""
    out: Dict[str, Fraction] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        name, sep, value = part.partition("=")
        if not sep:
            raise InvalidInputError(f"expected name=value, got {part!r}")
        out[name.strip()] = rational(value)
    return out


def variables_from(values: Dict[str, Fraction], k: int, default_u, default_v):
    """u and v vectors of length k; missing names fall back to the defaults."""
    unknown = set(values) - {f"u{i}" for i in range(1, k + 1)} - {f"v{i}" for i in range(1, k + 1)}
    if unknown:
        raise InvalidInputError(f"unknown parameters {sorted(unknown)} for k={k}")
    u = [values.get(f"u{i}", default_u[i - 1]) for i in range(1, k + 1)]
    v = [values.get(f"v{i}", default_v[i - 1]) for i in range(1, k + 1)]
    return u, v


def read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}")
