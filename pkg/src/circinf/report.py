"""Deterministic reports emitted by the command line front end.

A report has four parts: the command line, a digest of its inputs, a tree
of results and a list of named diagnostics. Leaves are booleans, integers,
strings or null; rationals are written as ``"p/q"`` strings, so no consumer
ever sees a float.

The line format is one leaf per line::

    # circinf-report 1
    command = "classify triangle.txt"
    inputs.digest = "9f86d0..."
    results.shape = "CYCLE"
    results.inertia[0] = 1
    diagnostics.minkowski = true

Keys are dotted paths; list positions are written ``[i]`` and keys outside
``[A-Za-z0-9_-]`` are JSON-quoted. Values are JSON.
"""

from __future__ import annotations

import enum
import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import frac_str
from .quadratic import QuadNum

HEADER = "# circinf-report 1"
_PLAIN = re.compile(r"[A-Za-z0-9_-]+")


def normalize(value):
    """Map a result tree onto JSON-safe exact leaves."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else frac_str(value)
    if isinstance(value, QuadNum):
        return normalize(value.a) if value.b == 0 else str(value)
    if isinstance(value, enum.Enum):
        return value.value if isinstance(value.value, str) else value.name
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    return str(value)


def digest(inputs: dict) -> str:
    blob = json.dumps(normalize(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool) -> bool:
        self.diagnostics[name] = bool(ok)
        return ok

    def tree(self) -> dict:
        return {
            "command": self.command,
            "inputs": {"digest": digest(self.inputs)},
            "results": normalize(self.results),
            "diagnostics": normalize(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.tree(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [HEADER]
        _flatten(self.tree(), [], lines)
        return "\n".join(lines) + "\n"


# -- serialization ----------------------------------------------------------

def _key(seg) -> str:
    if isinstance(seg, int):
        return f"[{seg}]"
    return seg if _PLAIN.fullmatch(seg) else json.dumps(seg)


def _join(path) -> str:
    out = ""
    for seg in path:
        k = _key(seg)
        out += k if (isinstance(seg, int) or not out) else "." + k
    return out


def _flatten(node, path, lines):
    if isinstance(node, dict) and node:
        for k, v in node.items():
            _flatten(v, path + [k], lines)
    elif isinstance(node, list) and node:
        for i, v in enumerate(node):
            _flatten(v, path + [i], lines)
    else:
        lines.append(f"{_join(path)} = {json.dumps(node)}")


_TOKEN = re.compile(r'\[(\d+)\]|"((?:[^"\\]|\\.)*)"|([A-Za-z0-9_-]+)')


def _split(key: str) -> list:
    segs, pos = [], 0
    while pos < len(key):
        if key[pos] == "." and segs:
            pos += 1
        m = _TOKEN.match(key, pos)
        if not m:
            raise ValueError(f"bad key {key!r} at {pos}")
        if m.group(1) is not None:
            segs.append(int(m.group(1)))
        elif m.group(2) is not None:
            segs.append(json.loads(m.group(0)))
        else:
            segs.append(m.group(3))
        pos = m.end()
    return segs


def _insert(root: dict, path: list, value):
    node = root
    for seg, nxt in zip(path, path[1:]):
        child = [] if isinstance(nxt, int) else {}
        if isinstance(node, list):
            while len(node) <= seg:
                node.append(None)
            if node[seg] is None:
                node[seg] = child
            node = node[seg]
        else:
            node = node.setdefault(seg, child)
    last = path[-1]
    if isinstance(node, list):
        while len(node) <= last:
            node.append(None)
        node[last] = value
    else:
        node[last] = value


def from_text(text: str) -> dict:
    """Parse the line format back into the value tree of ``Report.tree``."""
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise ValueError("missing report header")
    root: dict = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        key, sep, value = line.partition(" = ")
        if not sep:
            raise ValueError(f"malformed report line {line!r}")
        _insert(root, _split(key), json.loads(value))
    return root


def from_json(text: str) -> dict:
    return json.loads(text)
