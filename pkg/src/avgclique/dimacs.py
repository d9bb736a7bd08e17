"""DIMACS edge format.

Header ``p edge <n> <m>``, comment lines starting with ``c`` and edge lines
``e <u> <v>`` with 1-based endpoints.  ``m`` must equal the number of edge
lines; repeated edge lines collapse to one edge.
"""
from .errors import MalformedInputError
from .graph import Graph

__all__ = ["parse_dimacs", "serialize_dimacs", "read_dimacs", "write_dimacs"]


def _int(token, line_no):
    try:
        return int(token)
    except ValueError:
        raise MalformedInputError(f"expected an integer, got {token!r}", line_no) from None


def parse_dimacs(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedInputError(f"non-ASCII input: {exc}") from None
    n = declared_m = None
    edges = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise MalformedInputError("second problem line", line_no)
            if len(fields) != 4 or fields[1] != "edge":
                raise MalformedInputError("problem line must read 'p edge <n> <m>'", line_no)
            n, declared_m = _int(fields[2], line_no), _int(fields[3], line_no)
            if n < 0 or declared_m < 0:
                raise MalformedInputError("negative size in problem line", line_no)
        elif tag == "e":
            if n is None:
                raise MalformedInputError("edge line before problem line", line_no)
            if len(fields) != 3:
                raise MalformedInputError("edge line must read 'e <u> <v>'", line_no)
            u, v = _int(fields[1], line_no), _int(fields[2], line_no)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise MalformedInputError(f"vertex {x} outside 1..{n}", line_no)
            if u == v:
                raise MalformedInputError(f"self-loop at vertex {u}", line_no)
            edges.append((u - 1, v - 1))
        else:
            raise MalformedInputError(f"unknown line type {tag!r}", line_no)
    if n is None:
        raise MalformedInputError("missing problem line")
    if len(edges) != declared_m:
        raise MalformedInputError(f"problem line declares {declared_m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_dimacs(graph):
    edges = graph.edges()
    lines = [f"p edge {graph.n} {len(edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_dimacs(path):
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


def write_dimacs(graph, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(serialize_dimacs(graph))
