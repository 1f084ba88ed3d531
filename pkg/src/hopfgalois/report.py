"""Deterministic text and JSON reports.

A report is a list of :class:`Section` objects.  The text form is one header
line followed by each section as a ``== title ==`` line, a ``status:`` line
and its body lines.  The structured form is JSON with sorted keys.  Both are
pure functions of the sections, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

HEADER = "hopfgalois report v1"
PASS, FAIL, INFO, UNKNOWN = "PASS", "FAIL", "INFO", "UNKNOWN"


@dataclass
class Section:
    title: str
    status: str = INFO
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, line: str):
        self.lines.append(line)

    def as_dict(self):
        return {"title": self.title, "status": self.status, "lines": list(self.lines), "data": self.data}


def axiom_lines(report):
    """One ``PASS name`` / ``FAIL name at witness`` line per axiom result."""
    out = []
    for r in report.results:
        if r.passed:
            out.append(f"PASS {r.name}")
        elif r.witness is None:
            out.append(f"FAIL {r.name}")
        else:
            out.append(f"FAIL {r.name} at {_witness_text(r.witness)}")
    return out


def _witness_text(w):
    if isinstance(w, tuple):
        return "(" + ", ".join(str(x) for x in w) + ")"
    return str(w)


def axiom_section(title, report) -> Section:
    return Section(title, PASS if report.passed else FAIL, axiom_lines(report),
                   {"axioms": {r.name: bool(r.passed) for r in report.results}})


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def emit_report(results, format="text") -> bytes:
    sections = list(results or [])
    if format == "text":
        out = [HEADER]
        for s in sections:
            out.append(f"== {s.title} ==")
            out.append(f"status: {s.status}")
            out.extend(s.lines)
        return ("\n".join(out) + "\n").encode("utf-8")
    if format == "structured":
        doc = {"format": HEADER, "sections": [_jsonable(s.as_dict()) for s in sections]}
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")
