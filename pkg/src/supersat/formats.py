"""Serialization: graph6, DOT, and JSON adjacency lists.

The graph6 codec follows the standard byte layout exactly (6-bit groups,
big-endian, upper triangle read column by column), so output can be compared
byte for byte with other tools.
"""
from __future__ import annotations

import json
from collections.abc import Mapping

from .graphs import Graph

_G6_HEADER = ">>graph6<<"


def _g6_size_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes([(n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return b"~~" + bytes((n >> s & 63) + 63 for s in range(30, -6, -6))
    raise ValueError("vertex count too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string (no trailing newline)."""
    out = bytearray(_g6_size_bytes(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adjacency_mask(j)
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    """Decode one graph6 line, tolerating the optional format header."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    data = s.encode("ascii")
    if not data:
        raise ValueError("empty graph6 string")
    vals = [b - 63 for b in data]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("invalid graph6 byte")
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] != 63:
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        body = vals[8:]
    else:
        raise ValueError("truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = 0
    for v in body:
        bits = bits << 6 | v
    total = len(body) * 6
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits >> (total - 1 - pos) & 1:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


def to_dot(g: Graph, labels: Mapping[int, str] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if labels and v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: Graph, labels: Mapping[int, str] | None = None) -> str:
    doc: dict = {
        "schema": 1,
        "n": g.n,
        "adjacency": [sorted(g.neighbors(v)) for v in range(g.n)],
    }
    if labels:
        doc["labels"] = {str(v): labels[v] for v in sorted(labels)}
    return json.dumps(doc, indent=2, sort_keys=True)


def from_json(text: str) -> tuple[Graph, dict[int, str]]:
    doc = json.loads(text)
    if doc.get("schema") != 1:
        raise ValueError("unsupported schema version")
    n = doc["n"]
    edges = []
    for u, nbrs in enumerate(doc["adjacency"]):
        for v in nbrs:
            if u < v:
                edges.append((u, v))
    labels = {int(k): v for k, v in doc.get("labels", {}).items()}
    return Graph(n, edges), labels
