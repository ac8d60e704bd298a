"""Text form of neighbor reports.

One line per element, ``"e: f1(K) f2(K) ..."`` with ``K`` one of ``V``, ``E``,
``F``, ``C``. An element without neighbors renders as ``"e:"``. Lines end with
LF only.
"""

import re

from .._errors import MeshSyntaxError
from ..adjacency import NeighborReport
from ..mesh import Nearness

__all__ = ["render_report", "render_line", "render_table", "parse_report", "write_report"]

_CODE = {int(n): n.code for n in Nearness}
_TOKEN = re.compile(r"^(\d+)\(([VEFC])\)$")


def render_line(report):
    parts = [f"{report.elem}:"]
    parts.extend(f"{f}({Nearness(c).code})" for f, c in report.neighbors)
    return " ".join(parts)


def render_report(reports):
    return "".join(render_line(r) + "\n" for r in reports)


def render_table(table):
    """Render a :class:`~tetnear.adjacency.NeighborTable` straight from its arrays."""
    ids = table.ids.tolist()
    codes = [_CODE[c] for c in table.shared.tolist()]
    offsets = table.offsets.tolist()
    out = []
    for i in range(len(table)):
        a, b = offsets[i], offsets[i + 1]
        if a == b:
            out.append(f"{table.start + i}:\n")
        else:
            body = " ".join(f"{f}({k})" for f, k in zip(ids[a:b], codes[a:b]))
            out.append(f"{table.start + i}: {body}\n")
    return "".join(out)


def write_report(reports, stream):
    for r in reports:
        stream.write(render_line(r) + "\n")


def parse_report(text):
    reports = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.isdigit():
            raise MeshSyntaxError(lineno, f"report line must start with 'e:', got {line!r}")
        neighbors = []
        for tok in rest.split():
            m = _TOKEN.match(tok)
            if not m:
                raise MeshSyntaxError(lineno, f"bad neighbor token {tok!r}")
            neighbors.append((int(m.group(1)), Nearness.from_code(m.group(2))))
        reports.append(NeighborReport(int(head), tuple(neighbors)))
    return reports
