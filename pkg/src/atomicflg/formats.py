"""Instance documents (JSON), result rendering (JSON/TSV) and DOT export.

Exact scalars are always written as strings; decimal approximations appear
only in fields whose name ends in ``_approx`` and are never read back.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .game import ClientProfile, HostGraph, Instance
from .scalar import Scalar, parse_scalar

__all__ = [
    "FORMAT_TAG", "FORMAT_VERSION", "instance_to_dict", "instance_from_dict",
    "serialize_instance", "parse_instance", "scalar_str", "approx", "profile_rows",
    "render_json", "render_tsv", "to_dot", "parse_dimacs",
]

FORMAT_TAG = "atomicflg-instance"
FORMAT_VERSION = 1


def scalar_str(x) -> str:
    return str(x if isinstance(x, Scalar) else Scalar(x))


def approx(x) -> str:
    return f"{float(x):.6f}"


def instance_to_dict(inst: Instance) -> dict:
    g = inst.graph
    names = g.names
    if inst.unrestricted:
        allowed = "all"
    else:
        allowed = ["all" if len(a) == g.n else [names[v] for v in sorted(a)] for a in inst.allowed]
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "vertices": [{"id": names[v], "weight": scalar_str(g.weights[v])} for v in range(g.n)],
        "edges": [[names[a], names[b]] for a, b in sorted(g.edges)],
        "facilities": {"k": inst.k, "allowed": allowed},
    }


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def _fail(path, message):
    raise InputError(f"{path}: {message}")


def _expect(value, kind, path):
    if not isinstance(value, kind) or isinstance(value, bool):
        _fail(path, f"expected {kind.__name__ if isinstance(kind, type) else 'value'}, got {type(value).__name__}")
    return value


def instance_from_dict(doc) -> Instance:
    _expect(doc, dict, "$")
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        _fail("$.format", f"unknown format tag {doc.get('format')!r}")
    if doc.get("version") != FORMAT_VERSION:
        _fail("$.version", f"unsupported version {doc.get('version')!r}, expected {FORMAT_VERSION}")
    vertices = _expect(doc.get("vertices"), list, "$.vertices")
    names, weights = [], []
    seen = set()
    for i, item in enumerate(vertices):
        path = f"$.vertices[{i}]"
        _expect(item, dict, path)
        vid = item.get("id")
        if not isinstance(vid, str) or not vid:
            _fail(f"{path}.id", "vertex id must be a nonempty string")
        if vid in seen:
            _fail(f"{path}.id", f"duplicate vertex id {vid!r}")
        seen.add(vid)
        raw = item.get("weight")
        if isinstance(raw, int) and not isinstance(raw, bool):
            raw = str(raw)
        if not isinstance(raw, str):
            _fail(f"{path}.weight", "weight must be an exact string such as \"3/2\"")
        try:
            w = parse_scalar(raw)
        except ValueError as exc:
            _fail(f"{path}.weight", str(exc))
        if w.sign() <= 0:
            _fail(f"{path}.weight", f"weight must be positive, got {w}")
        names.append(vid)
        weights.append(w)
    index = {x: i for i, x in enumerate(names)}
    edges = []
    for i, e in enumerate(_expect(doc.get("edges", []), list, "$.edges")):
        path = f"$.edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            _fail(path, "edge must be a pair [from, to]")
        for j, x in enumerate(e):
            if x not in index:
                _fail(f"{path}[{j}]", f"unknown vertex {x!r}")
        if e[0] == e[1]:
            _fail(path, f"self-loop at {e[0]!r}")
        edges.append((index[e[0]], index[e[1]]))
    fac = _expect(doc.get("facilities"), dict, "$.facilities")
    k = fac.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        _fail("$.facilities.k", f"facility count must be a positive integer, got {k!r}")
    raw_allowed = fac.get("allowed", "all")
    allowed = None
    if raw_allowed != "all":
        _expect(raw_allowed, list, "$.facilities.allowed")
        if len(raw_allowed) != k:
            _fail("$.facilities.allowed", f"expected {k} entries, got {len(raw_allowed)}")
        allowed = []
        for f, a in enumerate(raw_allowed):
            path = f"$.facilities.allowed[{f}]"
            if a == "all":
                allowed.append(frozenset(range(len(names))))
                continue
            _expect(a, list, path)
            if not a:
                _fail(path, "allowed set is empty")
            for j, x in enumerate(a):
                if x not in index:
                    _fail(f"{path}[{j}]", f"unknown vertex {x!r}")
            allowed.append(frozenset(index[x] for x in a))
    graph = HostGraph(tuple(weights), frozenset(edges), tuple(names))
    return Instance(graph, k, None if allowed is None else tuple(allowed))


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def parse_dimacs(text: str):
    """Read a DIMACS CNF file into a :class:`~atomicflg.instances.CnfFormula`."""
    from .instances import CnfFormula

    m = None
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"line {lineno}: bad problem line {line!r}")
            m = int(parts[2])
            continue
        if m is None:
            raise InputError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InputError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if m is None:
        raise InputError("missing 'p cnf' problem line")
    return CnfFormula(m, tuple(clauses))


# --------------------------------------------------------------------------
# results


def profile_rows(inst: Instance, sigma: ClientProfile) -> list:
    names = inst.graph.names
    rows = []
    for v in range(inst.n):
        for f in range(inst.k):
            p = sigma.prob(v, f)
            if p:
                rows.append({"client": names[v], "facility": f, "prob": scalar_str(p)})
    return rows


def _jsonable(x):
    if isinstance(x, (Scalar, Fraction)):
        return scalar_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in sorted(x)]
    return x


def render_json(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _cell(x) -> str:
    if isinstance(x, (list, tuple)):
        return ",".join(_cell(v) for v in x)
    if x is None:
        return ""
    return str(x)


def render_tsv(doc: dict) -> str:
    """Flatten a result document: ``key<TAB>value`` lines, tables as blocks with a header."""
    doc = _jsonable(doc)
    lines = []
    tables = []
    for key, value in doc.items():
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            tables.append((key, value))
        elif isinstance(value, dict):
            for k2, v2 in value.items():
                lines.append(f"{key}.{k2}\t{_cell(v2)}")
        else:
            lines.append(f"{key}\t{_cell(value)}")
    for key, rows in tables:
        cols = []
        for r in rows:
            cols += [c for c in r if c not in cols]
        lines.append("")
        lines.append(f"# {key}")
        lines.append("\t".join(cols))
        lines += ["\t".join(_cell(r.get(c)) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(inst: Instance, s=None, classes=None) -> str:
    """Graphviz digraph; facility locations and class membership appear in node labels."""
    g = inst.graph
    here = {}
    if s is not None:
        for f, v in enumerate(s):
            here.setdefault(v, []).append(f)
    lines = ["digraph host {"]
    for v in range(g.n):
        label = f"{g.names[v]}\\nw={g.weights[v]}"
        if v in here:
            label += "\\nfacilities " + ",".join(str(f) for f in here[v])
        if classes is not None and v in classes.class_of_client:
            label += f"\\nclass {classes.class_of_client[v] + 1}"
        shape = ', shape=doublecircle' if v in here else ""
        lines.append(f'  {_dot_id(g.names[v])} [label="{label}"{shape}];')
    for a, b in sorted(g.edges):
        lines.append(f"  {_dot_id(g.names[a])} -> {_dot_id(g.names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
