"""Update-stream text format and the per-query report CSV.

Stream grammar, one item per line::

    n=<int> <directed|undirected> <incremental|decremental|fully-dynamic>
    e <u> <v>      initial edge
    + <u> <v>      insertion
    - <u> <v>      deletion
    q              query point
    # <label>      stage marker
    ; ...          comment (also allowed after an item)
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .errors import ModeViolation, ParseError
from .graph import DynamicGraph, EdgeUpdate, Mode, UpdateKind, is_finite


@dataclass(frozen=True)
class QueryMark:
    pass


@dataclass(frozen=True)
class StageMark:
    label: str


@dataclass
class UpdateStream:
    n: int
    directed: bool
    mode: Mode
    initial_edges: list = field(default_factory=list)
    events: list = field(default_factory=list)

    def initial_graph(self) -> DynamicGraph:
        return DynamicGraph(self.n, self.directed, self.initial_edges)

    def updates(self):
        return [e for e in self.events if isinstance(e, EdgeUpdate)]


def _edge_key(directed, u, v):
    return (u, v) if directed or u < v else (v, u)


def parse_stream(text: str) -> UpdateStream:
    stream = None
    present = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if stream is None:
            stream = _parse_header(line, lineno)
            continue
        tok = line.split()
        head = tok[0]
        if head == "q" and len(tok) == 1:
            stream.events.append(QueryMark())
        elif head == "#":
            stream.events.append(StageMark(line[1:].strip()))
        elif head in ("e", "+", "-"):
            u, v = _parse_pair(tok, stream.n, lineno)
            key = _edge_key(stream.directed, u, v)
            if head == "e":
                if stream.events:
                    raise ParseError("initial edge after the first event", lineno)
                if key in present:
                    raise ParseError(f"parallel edge {u} {v}", lineno)
                present.add(key)
                stream.initial_edges.append((u, v))
            elif head == "+":
                if stream.mode is Mode.DECREMENTAL:
                    raise ModeViolation("insertion in a decremental stream", lineno)
                if key in present:
                    raise ParseError(f"insertion of present edge {u} {v}", lineno)
                present.add(key)
                stream.events.append(EdgeUpdate.insert(u, v))
            else:
                if stream.mode is Mode.INCREMENTAL:
                    raise ModeViolation("deletion in an incremental stream", lineno)
                if key not in present:
                    raise ParseError(f"deletion of absent edge {u} {v}", lineno)
                present.discard(key)
                stream.events.append(EdgeUpdate.delete(u, v))
        else:
            raise ParseError(f"unrecognised line {raw!r}", lineno)
    if stream is None:
        raise ParseError("missing header", 1)
    return stream


def _parse_header(line, lineno):
    tok = line.split()
    if len(tok) != 3 or not tok[0].startswith("n="):
        raise ParseError("header must be 'n=<int> <directed|undirected> <mode>'", lineno)
    try:
        n = int(tok[0][2:])
    except ValueError:
        raise ParseError(f"bad vertex count {tok[0]!r}", lineno) from None
    if n < 0:
        raise ParseError("negative vertex count", lineno)
    if tok[1] not in ("directed", "undirected"):
        raise ParseError(f"bad graph kind {tok[1]!r}", lineno)
    try:
        mode = Mode(tok[2])
    except ValueError:
        raise ParseError(f"bad mode {tok[2]!r}", lineno) from None
    return UpdateStream(n, tok[1] == "directed", mode)


def _parse_pair(tok, n, lineno):
    if len(tok) != 3:
        raise ParseError("expected two vertex ids", lineno)
    try:
        u, v = int(tok[1]), int(tok[2])
    except ValueError:
        raise ParseError("vertex ids must be integers", lineno) from None
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
    if u == v:
        raise ParseError(f"self-loop at {u}", lineno)
    return u, v


def format_stream(stream: UpdateStream) -> str:
    """Canonical text form; ``parse_stream`` inverts it exactly."""
    kind = "directed" if stream.directed else "undirected"
    lines = [f"n={stream.n} {kind} {Mode(stream.mode).value}"]
    lines += [f"e {u} {v}" for u, v in stream.initial_edges]
    for ev in stream.events:
        if isinstance(ev, EdgeUpdate):
            lines.append(f"{ev.kind.value} {ev.u} {ev.v}")
        elif isinstance(ev, QueryMark):
            lines.append("q")
        else:
            lines.append(f"# {ev.label}")
    return "\n".join(lines) + "\n"


REPORT_COLUMNS = ("event_index", "param", "estimate", "oracle", "lower_bound",
                  "upper_bound", "ok", "reinit_count", "phase")


@dataclass
class EstimateRecord:
    event_index: int
    param: str
    estimate: object
    oracle: object = None
    lower_bound: object = None
    upper_bound: object = None
    ok: object = None
    reinit_count: int = 0
    phase: int = 0


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if not is_finite(x):
        return "inf"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def write_report(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in records:
        w.writerow([_cell(getattr(r, c)) for c in REPORT_COLUMNS])
    return buf.getvalue()


__all__ = ["UpdateStream", "QueryMark", "StageMark", "UpdateKind", "parse_stream",
           "format_stream", "EstimateRecord", "write_report", "REPORT_COLUMNS"]
