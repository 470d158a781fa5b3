"""Reading and writing the ``.gl`` text format.

::

    # comment
    n 2            # vertex count
    v 1 0 +
    v 2 0 -
    e 1 2

Indices are 1-based in files and 0-based in :class:`LabeledGraph`.
"""

from __future__ import annotations

from .graph import LabeledGraph

_SIGNS = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}


class GraphFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFileError(f"expected an integer, got {tok!r}", line) from None


def parse(text: str) -> LabeledGraph:
    n = None
    n_line = None
    vertices: dict[int, tuple[int, int, int]] = {}
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "n":
            if len(tok) != 2:
                raise GraphFileError("expected 'n <count>'", lineno)
            if n is not None:
                raise GraphFileError(f"vertex count already given on line {n_line}", lineno)
            n, n_line = _int(tok[1], lineno), lineno
            if n < 0:
                raise GraphFileError("negative vertex count", lineno)
        elif head == "v":
            if len(tok) != 4:
                raise GraphFileError("expected 'v <index> <framing> <sign>'", lineno)
            idx = _int(tok[1], lineno)
            framing = _int(tok[2], lineno)
            if framing not in (0, 1):
                raise GraphFileError(f"framing must be 0 or 1, got {framing}", lineno)
            if tok[3] not in _SIGNS:
                raise GraphFileError(f"sign must be one of + - +1 -1, got {tok[3]!r}", lineno)
            if idx in vertices:
                raise GraphFileError(f"vertex {idx} declared twice (first on line {vertices[idx][0]})", lineno)
            vertices[idx] = (lineno, framing, _SIGNS[tok[3]])
        elif head == "e":
            if len(tok) != 3:
                raise GraphFileError("expected 'e <i> <j>'", lineno)
            i, j = _int(tok[1], lineno), _int(tok[2], lineno)
            if i == j:
                raise GraphFileError(f"loop edge at vertex {i}", lineno)
            edges.append((lineno, i, j))
        else:
            raise GraphFileError(f"unknown record {head!r}", lineno)

    if n is None:
        raise GraphFileError("missing 'n <count>' line")
    for idx, (lineno, _, _) in vertices.items():
        if not (1 <= idx <= n):
            raise GraphFileError(f"vertex index {idx} out of range 1..{n}", lineno)
    missing = [i for i in range(1, n + 1) if i not in vertices]
    if missing:
        raise GraphFileError(f"vertex {missing[0]} is not declared")
    pairs = set()
    for lineno, i, j in edges:
        for k in (i, j):
            if not (1 <= k <= n):
                raise GraphFileError(f"edge endpoint {k} out of range 1..{n}", lineno)
        pairs.add((min(i, j) - 1, max(i, j) - 1))
    labels = [(vertices[i][1], vertices[i][2]) for i in range(1, n + 1)]
    return LabeledGraph.from_edges(labels, sorted(pairs))


def serialize(g: LabeledGraph) -> str:
    lines = [f"n {g.n}"]
    for i, (f, s) in enumerate(g.labels(), start=1):
        lines.append(f"v {i} {f} {'+' if s > 0 else '-'}")
    for i, j in g.edges():
        lines.append(f"e {i + 1} {j + 1}")
    return "\n".join(lines) + "\n"
