"""Dual graphs of principalizations with their numerical data.

A :class:`DualGraph` lists the components of the total transform (exceptional
curves and weak-transform branches) with ``(N, nu)`` and, for exceptional
curves, the self-intersection number.  Edges are intersection points; the
edge collection is a multiset.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable

import jsonschema
import networkx as nx

EXCEPTIONAL = "exceptional"
WEAK = "weak"


class GraphError(ValueError):
    """Invalid graph data (bad JSON, contradictory fields, negative counts)."""


@dataclass(frozen=True)
class Component:
    id: str
    kind: str
    N: int
    nu: int
    self_intersection: int | None = None
    n_generic: int | None = None
    over_origin: bool = True
    # optional hints for graph-only monodromy: image component label and mapping degree
    image: str | None = None
    degree: int | None = None

    @property
    def is_exceptional(self) -> bool:
        return self.kind == EXCEPTIONAL

    @property
    def data(self) -> tuple[int, int]:
        return self.N, self.nu

    def label(self) -> str:
        return f"{self.id} ({self.N},{self.nu})"


@dataclass(frozen=True)
class DualGraph:
    components: tuple[Component, ...]
    edges: tuple[tuple[str, str], ...] = ()
    metadata: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(sorted(_edge_key(a, b) for a, b in self.edges)))

    # -- lookups -------------------------------------------------------
    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def exceptional(self) -> list[Component]:
        return [c for c in self.components if c.kind == EXCEPTIONAL]

    def weak(self) -> list[Component]:
        return [c for c in self.components if c.kind == WEAK]

    def neighbors(self, cid: str) -> list[str]:
        """Neighbor ids, repeated once per intersection point."""
        out = []
        for a, b in self.edges:
            if a == cid:
                out.append(b)
            if b == cid:
                out.append(a)
        return out

    def valence(self, cid: str) -> int:
        """Number of intersection points of ``cid`` with other components."""
        return sum((a == cid) + (b == cid) for a, b in self.edges)

    def edge_multiplicity(self, a: str, b: str) -> int:
        key = _edge_key(a, b)
        return sum(1 for e in self.edges if e == key)

    def to_networkx(self, exceptional_only: bool = False) -> nx.MultiGraph:
        g = nx.MultiGraph()
        keep = {c.id for c in self.components if c.is_exceptional or not exceptional_only}
        g.add_nodes_from(sorted(keep))
        g.add_edges_from((a, b) for a, b in self.edges if a in keep and b in keep)
        return g

    def with_generic_counts(self) -> "DualGraph":
        counts = derive_generic_counts(self)
        comps = tuple(replace(c, n_generic=counts[c.id]) if c.id in counts else c for c in self.components)
        return DualGraph(comps, self.edges, dict(self.metadata))

    def numerical_data(self) -> list[tuple[int, int]]:
        return [c.data for c in self.exceptional()]


def _edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if _sort_id(a) <= _sort_id(b) else (b, a)


def _sort_id(cid: str):
    # E2 < E10; ids without digits sort lexicographically
    head = cid.rstrip("0123456789")
    tail = cid[len(head):]
    return (head, int(tail) if tail else -1, cid)


def sort_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=_sort_id)


# -- combinatorial invariants ---------------------------------------------


def chi_open(g: DualGraph, cid: str) -> int:
    """Euler characteristic of the open stratum of an exceptional curve.

    Exceptional curves are rational, so this is 2 minus the number of
    intersection points with other components.  Generic-curve points are not
    subtracted.
    """
    comp = g.component(cid)
    if not comp.is_exceptional:
        raise GraphError(f"chi of the open stratum is only defined for exceptional components, not {cid}")
    return 2 - g.valence(cid)


def derive_generic_counts(g: DualGraph) -> dict[str, int]:
    """Intersection counts of the generic curve with each exceptional curve.

    Uses ``kappa * N = sum(N of neighbors) + n`` with ``kappa = -E.E``.  When a
    self-intersection is missing the supplied ``n_generic`` is used instead.
    """
    out = {}
    for c in g.exceptional():
        if c.self_intersection is None:
            if c.n_generic is None:
                raise GraphError(f"{c.id}: need self_intersection or n_generic")
            out[c.id] = c.n_generic
            continue
        kappa = -c.self_intersection
        n = kappa * c.N - sum(g.component(nb).N for nb in g.neighbors(c.id))
        if n < 0:
            raise GraphError(f"{c.id}: derived generic count {n} is negative")
        out[c.id] = n
    return out


@dataclass
class Check:
    name: str
    ok: bool
    location: str = ""
    detail: str = ""


@dataclass
class Diagnostics:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, location: str = "", detail: str = ""):
        self.checks.append(Check(name, ok, location, detail))

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            where = f" [{c.location}]" if c.location else ""
            extra = f": {c.detail}" if c.detail else ""
            lines.append(f"{mark} {c.name}{where}{extra}")
        return "\n".join(lines)

    def to_json(self) -> list[dict]:
        return [{"check": c.name, "ok": c.ok, "location": c.location, "detail": c.detail} for c in self.checks]


def validate(g: DualGraph) -> Diagnostics:
    """Run the structural and numerical consistency checks on a dual graph."""
    diag = Diagnostics()
    ids = g.ids()
    dup = [k for k, v in Counter(ids).items() if v > 1]
    diag.add("unique ids", not dup, ",".join(dup))
    known = set(ids)
    dangling = [f"{a}-{b}" for a, b in g.edges if a not in known or b not in known]
    diag.add("edge endpoints exist", not dangling, ",".join(dangling))
    if dup or dangling:
        return diag

    for c in g.components:
        where = c.id
        if c.N < 1:
            diag.add("N positive", False, where, f"N={c.N}")
        if c.kind == WEAK:
            diag.add("weak has nu = 1", c.nu == 1, where, f"nu={c.nu}")
        elif c.kind == EXCEPTIONAL:
            diag.add("exceptional has nu >= 2", c.nu >= 2, where, f"nu={c.nu}")
            if c.self_intersection is not None:
                diag.add("self-intersection <= -1", c.self_intersection <= -1, where, f"E.E={c.self_intersection}")
        else:
            diag.add("known kind", False, where, c.kind)

    try:
        counts = derive_generic_counts(g)
    except GraphError as exc:
        diag.add("kappa*N relation (derived n >= 0)", False, "", str(exc))
        return diag
    diag.add("kappa*N relation (derived n >= 0)", True)
    for c in g.exceptional():
        if c.self_intersection is not None and c.n_generic is not None:
            diag.add("n_generic consistent", c.n_generic == counts[c.id], c.id,
                     f"supplied {c.n_generic}, derived {counts[c.id]}")

    for c in g.exceptional():
        ratio = Fraction(c.nu, c.N)
        nbs = [g.component(nb) for nb in g.neighbors(c.id)]
        m = len(nbs)
        alphas = [nb.nu - ratio * nb.N for nb in nbs]
        lhs = sum(alphas, Fraction(0))
        rhs = m - 2 + ratio * counts[c.id]
        diag.add("alpha sum relation", lhs == rhs, c.id, f"sum={lhs}, expected {rhs}")
        for nb, a in zip(nbs, alphas):
            ok = -1 <= a < 1 and (a != -1 or m == 1)
            if not ok:
                diag.add("alpha range", False, f"{c.id}->{nb.id}", f"alpha={a}, m={m}")
        if all(-1 <= a < 1 and (a != -1 or m == 1) for a in alphas):
            diag.add("alpha range", True, c.id)

    exc = g.to_networkx(exceptional_only=True)
    if exc.number_of_nodes():
        is_tree = nx.is_connected(exc) and exc.number_of_edges() == exc.number_of_nodes() - 1
        diag.add("exceptional graph is a tree", is_tree, "",
                 f"{exc.number_of_nodes()} nodes, {exc.number_of_edges()} edges")
        chi_sum = sum(2 - exc.degree(n) for n in exc.nodes)
        diag.add("tree chi sum = 2", chi_sum == 2, "", f"sum={chi_sum}")
    return diag


# -- serialization ---------------------------------------------------------

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["components", "edges"],
    "properties": {
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind", "N", "nu"],
                "properties": {
                    "id": {"type": "string"},
                    "kind": {"enum": [EXCEPTIONAL, WEAK]},
                    "N": {"type": "integer", "minimum": 1},
                    "nu": {"type": "integer", "minimum": 1},
                    "self_intersection": {"type": ["integer", "null"]},
                    "n_generic": {"type": ["integer", "null"], "minimum": 0},
                    "over_origin": {"type": "boolean"},
                    "image": {"type": ["string", "null"]},
                    "degree": {"type": ["integer", "null"], "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "metadata": {"type": "object"},
    },
    "additionalProperties": False,
}


def graph_to_dict(g: DualGraph) -> dict:
    comps = []
    for c in g.components:
        d: dict[str, Any] = {"id": c.id, "kind": c.kind, "N": c.N, "nu": c.nu}
        if c.self_intersection is not None:
            d["self_intersection"] = c.self_intersection
        if c.n_generic is not None:
            d["n_generic"] = c.n_generic
        d["over_origin"] = c.over_origin
        if c.image is not None:
            d["image"] = c.image
        if c.degree is not None:
            d["degree"] = c.degree
        comps.append(d)
    return {"components": comps, "edges": [list(e) for e in g.edges], "metadata": dict(g.metadata)}


def to_json(g: DualGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)


def graph_from_dict(data: Any) -> DualGraph:
    validator = jsonschema.Draft7Validator(GRAPH_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
        raise GraphError(f"schema error at {path}: {err.message}")
    comps = []
    for d in data["components"]:
        comps.append(Component(
            id=d["id"], kind=d["kind"], N=d["N"], nu=d["nu"],
            self_intersection=d.get("self_intersection"),
            n_generic=d.get("n_generic"),
            over_origin=d.get("over_origin", d["kind"] == EXCEPTIONAL),
            image=d.get("image"), degree=d.get("degree"),
        ))
    return DualGraph(tuple(comps), tuple((a, b) for a, b in data["edges"]), dict(data.get("metadata", {})))


def from_json(text: str) -> DualGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def to_dot(g: DualGraph) -> str:
    """Graphviz rendering; generic-curve arcs are dashed pseudo-edges."""
    lines = ["graph dual {", "  node [shape=box];"]
    for c in g.components:
        style = "" if c.is_exceptional else ", style=dashed"
        lines.append(f'  "{c.id}" [label="{c.label()}"{style}];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    counts = {}
    try:
        counts = derive_generic_counts(g)
    except GraphError:
        pass
    arcs = [(cid, n) for cid, n in counts.items() if n > 0]
    if arcs:
        lines.append('  "generic" [shape=plaintext, label="generic curve"];')
        for cid, n in arcs:
            attrs = "style=dashed" + (f', label="{n}"' if n > 1 else "")
            lines.append(f'  "generic" -- "{cid}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def ascii_diagram(g: DualGraph) -> str:
    """Adjacency list with numerical data, one component per line."""
    counts = {}
    try:
        counts = derive_generic_counts(g)
    except GraphError:
        pass
    lines = []
    for c in g.components:
        nbs = ", ".join(sort_ids(g.neighbors(c.id))) or "-"
        extra = ""
        if c.is_exceptional:
            si = "?" if c.self_intersection is None else str(c.self_intersection)
            extra = f"  E.E={si}  generic={counts.get(c.id, '?')}"
        lines.append(f"  {c.label():<14} {c.kind:<11} meets: {nbs}{extra}")
    return "\n".join(lines)
