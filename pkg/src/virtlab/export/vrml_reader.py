"""Minimal VRML97 reader for the emitted node subset.

Parses header, brace structure, DEF names, and ROUTE statements; enough to
round-trip what write_vrml produces and to catch malformed output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_DEF_RE = re.compile(r"\bDEF\s+([A-Za-z0-9_]+)\s+([A-Za-z]+)")
_ROUTE_RE = re.compile(r"^ROUTE\s+(\S+)\s+TO\s+(\S+)\s*$", re.MULTILINE)


@dataclass
class VrmlSummary:
    header: str
    def_names: list[str] = field(default_factory=list)
    def_types: dict[str, str] = field(default_factory=dict)
    transform_count: int = 0
    viewpoint_count: int = 0
    routes: list[tuple[str, str]] = field(default_factory=list)


def _strip_comments(text: str) -> str:
    out = []
    for line in text.split("\n"):
        in_string = False
        for i, ch in enumerate(line):
            if ch == '"' and (i == 0 or line[i - 1] != "\\"):
                in_string = not in_string
            elif ch == "#" and not in_string:
                line = line[:i]
                break
        out.append(line)
    return "\n".join(out)


def read_vrml(text: str) -> VrmlSummary:
    """Structural summary of a VRML97 document; raises on malformed input."""
    lines = text.split("\n")
    if not lines or lines[0] != "#VRML V2.0 utf8":
        raise ValueError("missing VRML97 header")
    body = _strip_comments("\n".join(lines[1:]))

    depth = 0
    in_string = False
    prev = ""
    for ch in body:
        if ch == '"' and prev != "\\":
            in_string = not in_string
        elif not in_string:
            if ch in "{[":
                depth += 1
            elif ch in "}]":
                depth -= 1
                if depth < 0:
                    raise ValueError("unbalanced brackets")
        prev = ch
    if depth != 0 or in_string:
        raise ValueError("unbalanced brackets or string")

    summary = VrmlSummary(header=lines[0])
    for name, node_type in _DEF_RE.findall(body):
        if name in summary.def_types:
            raise ValueError(f"duplicate DEF name {name}")
        summary.def_names.append(name)
        summary.def_types[name] = node_type
    summary.transform_count = sum(
        1 for t in summary.def_types.values() if t == "Transform"
    )
    summary.viewpoint_count = len(re.findall(r"\bViewpoint\s*\{", body))
    summary.routes = [(a, b) for a, b in _ROUTE_RE.findall(body)]
    for src, dst in summary.routes:
        for endpoint in (src, dst):
            node = endpoint.split(".", 1)[0]
            if node not in summary.def_types:
                raise ValueError(f"ROUTE references unknown node {node}")
    return summary
