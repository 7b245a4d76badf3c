"""Fusion graphs with the canonical 2-dimensional module and their affine ADE types."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .characters import character_table
from .cyclotomic import Cyclotomic
from . import fusion as _fusion
from .fusion import IrrepLabel, Representations, fusion_with_G_module
from .groups import FiniteGroup, Subgroup, centralizer
from .polyhedral import recognize
from .qdouble import GTQD

__all__ = [
    "ADELabel",
    "UnrecognizedDiagram",
    "McKayGraph",
    "build_graph",
    "components",
    "classify_ADE",
    "classical_mckay",
    "expected_correspondent",
    "verify_theorem",
    "TheoremReport",
]


@dataclass(frozen=True, order=True)
class ADELabel:
    family: str  # "A~", "D~" or "E~"
    index: int

    def __post_init__(self):
        if self.family not in ("A~", "D~", "E~"):
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def nodes(self) -> int:
        return self.index + 1

    def __str__(self):
        return f"{self.family}_{self.index}"


class UnrecognizedDiagram(ValueError):
    def __init__(self, msg: str, degrees: Sequence[int] = ()):
        super().__init__(msg)
        self.degrees = tuple(degrees)


@dataclass
class McKayGraph:
    nodes: tuple[IrrepLabel, ...]
    adjacency: np.ndarray
    components: list[tuple[int, ...]] = field(default_factory=list)
    component_class: list[int | None] = field(default_factory=list)
    component_type: list[ADELabel | None] = field(default_factory=list)
    class_names: tuple[str, ...] = ()

    def to_json(self) -> dict:
        n = len(self.nodes)
        return {
            "schema": "gtqd/1",
            "kind": "mckay",
            "nodes": [{"index": i, "class_index": l.class_index, "stab_char_index": l.stab_char_index,
                       "dimension": l.dimension, "label": self.node_name(i)} for i, l in enumerate(self.nodes)],
            "components": [{"class_index": c, "class_rep": self._class_name(c), "type": _type_name(t), "nodes": list(comp)}
                           for comp, c, t in zip(self.components, self.component_class, self.component_type)],
            "edges": [[i, j, int(self.adjacency[i, j])] for i in range(n) for j in range(i, n) if self.adjacency[i, j]],
        }

    def _class_name(self, c: int | None) -> str:
        if c is None:
            return "mixed"
        return self.class_names[c] if self.class_names else str(c)

    def node_name(self, i: int) -> str:
        l = self.nodes[i]
        return f"{self._class_name(l.class_index)}/{l.stab_char_index} (dim {l.dimension})"

    def to_dot(self) -> str:
        lines = ["graph mckay {"]
        for k, (comp, c, t) in enumerate(zip(self.components, self.component_class, self.component_type)):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f'    label="class={self._class_name(c)} type={_type_name(t)}";')
            for i in comp:
                lines.append(f'    n{i} [label="{self.node_name(i)}"];')
            lines.append("  }")
        n = len(self.nodes)
        for i in range(n):
            for j in range(i, n):
                m = int(self.adjacency[i, j])
                if m:
                    lines.append(f"  n{i} -- n{j} [weight={m}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _type_name(t: ADELabel | None) -> str:
    return "unrecognized" if t is None else str(t)


def components(adjacency: np.ndarray) -> list[tuple[int, ...]]:
    """Connected components (union-find), each sorted, ordered by smallest node."""
    n = len(adjacency)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for i, j in zip(*np.nonzero(adjacency)):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def _arm(adj: np.ndarray, center: int, start: int) -> int:
    """Number of nodes on the path leaving center through start."""
    prev, cur, count = center, start, 1
    while True:
        nxt = [int(k) for k in np.nonzero(adj[cur])[0] if k != prev]
        if len(nxt) != 1:
            return count if not nxt else -1
        prev, cur = cur, nxt[0]
        count += 1


def classify_ADE(adj: np.ndarray) -> ADELabel:
    """Affine ADE type of a connected multigraph given by its adjacency matrix."""
    adj = np.asarray(adj, dtype=np.int64)
    n = len(adj)
    deg = [int(v) for v in adj.sum(axis=1)]
    if np.any(np.diag(adj)):
        raise UnrecognizedDiagram("self-loop", deg)
    if len(components(adj)) != 1:
        raise UnrecognizedDiagram("not connected", deg)
    if n == 2 and adj[0, 1] == 2:
        return ADELabel("A~", 1)
    if np.any(adj > 1):
        raise UnrecognizedDiagram("multiple edge", deg)
    edges = int(adj.sum()) // 2
    if n >= 3 and edges == n and all(d == 2 for d in deg):
        return ADELabel("A~", n - 1)
    if edges != n - 1:
        raise UnrecognizedDiagram("neither a cycle nor a tree", deg)
    counts = Counter(deg)
    leaves = [i for i in range(n) if deg[i] == 1]
    if max(deg) > 4 or (max(deg) == 4 and n != 5):
        raise UnrecognizedDiagram("vertex of degree above 3", deg)
    if max(deg) == 4:
        return ADELabel("D~", 4)
    branch = [i for i in range(n) if deg[i] == 3]
    if counts[3] == 2:
        leafset = set(leaves)
        if all(sum(1 for k in np.nonzero(adj[b])[0] if int(k) in leafset) == 2 for b in branch):
            return ADELabel("D~", n - 1)
        raise UnrecognizedDiagram("two branch points without paired leaves", deg)
    if counts[3] == 1:
        c = branch[0]
        arms = sorted(_arm(adj, c, int(k)) for k in np.nonzero(adj[c])[0])
        found = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}.get(tuple(arms))
        if found:
            return ADELabel("E~", found)
        raise UnrecognizedDiagram(f"trivalent tree with arms {arms}", deg)
    raise UnrecognizedDiagram("path or unsupported tree", deg)


def expected_correspondent(H: Subgroup | FiniteGroup) -> ADELabel:
    spec = recognize(H)
    if spec.kind == "cyclic":
        return ADELabel("A~", spec.param - 1)
    if spec.kind == "bd":
        return ADELabel("D~", spec.param + 2)
    return ADELabel("E~", {"bt": 6, "bo": 7, "bi": 8}[spec.kind])


def _finish(graph: McKayGraph) -> McKayGraph:
    graph.components = components(graph.adjacency)
    graph.component_class = []
    graph.component_type = []
    for comp in graph.components:
        cls = {graph.nodes[i].class_index for i in comp}
        graph.component_class.append(cls.pop() if len(cls) == 1 else None)
        try:
            graph.component_type.append(classify_ADE(graph.adjacency[np.ix_(comp, comp)]))
        except UnrecognizedDiagram:
            graph.component_type.append(None)
    return graph


def classical_mckay(H: FiniteGroup) -> McKayGraph:
    """McKay graph of a finite subgroup of SU2 from its ordinary characters and the trace character."""
    if H.matrix_rep is None:
        raise ValueError("need the 2x2 matrices of the group")
    W = [m[0] + m[3] for m in H.matrix_rep]
    T = character_table(H)
    rows = [T.row_on_elements(i) for i in range(len(T))]
    n = len(rows)
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        prod = [a * w for a, w in zip(rows[i], W)]
        for j in range(n):
            s = Cyclotomic.from_rational(0)
            for a, b in zip(prod, rows[j]):
                if not a.is_zero() and not b.is_zero():
                    s = s + a * b.conj()
            v = s.to_fraction() / H.order
            if v.denominator != 1 or v < 0:
                raise ArithmeticError(f"non-integral multiplicity {v}")
            A[i, j] = int(v)
    nodes = tuple(IrrepLabel(0, i, d, d, 0) for i, d in enumerate(T.degrees))
    return _finish(McKayGraph(nodes, A, class_names=("1",)))


def build_graph(D: GTQD, W: Sequence[Cyclotomic], reps: Representations | None = None,
                cross_check: bool | None = None) -> McKayGraph:
    """Vertices are simple modules; U -- V carries the multiplicity of V in U (x) W."""
    reps = reps if reps is not None else Representations(D)
    W = tuple(getattr(W, "values", W))
    labels = reps.labels
    n = len(labels)
    if cross_check is None:
        cross_check = _fusion.CROSS_CHECK
    A = np.zeros((n, n), dtype=np.int64)
    for i, U in enumerate(labels):
        for j, V in enumerate(labels):
            if U.class_index == V.class_index or cross_check:
                A[i, j] = fusion_with_G_module(reps, U, W, V, cross_check=cross_check)
    if not np.array_equal(A, A.T):
        raise ArithmeticError("fusion graph is not symmetric; W is not self-dual")
    return _finish(McKayGraph(labels, A, class_names=tuple(D.Gbar.labels[c.rep] for c in reps.classes)))


@dataclass
class Clause:
    name: str
    passed: bool
    witness: object = None


@dataclass
class TheoremReport:
    graph: McKayGraph
    clauses: list[Clause]
    asserted: bool  # False when |N| > 2, where the statement is only explored

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def to_json(self) -> dict:
        return {"passed": self.passed, "asserted": self.asserted,
                "clauses": [{"name": c.name, "passed": c.passed, "witness": None if c.witness is None else str(c.witness)}
                            for c in self.clauses]}


def verify_theorem(D: GTQD, W: Sequence[Cyclotomic], reps: Representations | None = None,
                   cross_check: bool | None = None) -> TheoremReport:
    reps = reps if reps is not None else Representations(D)
    g = build_graph(D, W, reps, cross_check)
    Gb = D.Gbar
    ncls = len(Gb.classes)
    clauses = [Clause("no self-loops", not np.any(np.diag(g.adjacency)),
                      [i for i in range(len(g.nodes)) if g.adjacency[i, i]] or None)]
    clauses.append(Clause("one component per class", len(g.components) == ncls,
                          None if len(g.components) == ncls else (len(g.components), ncls)))
    seen = [c for c in g.component_class if c is not None]
    exact = len(seen) == len(g.components) and sorted(seen) == list(range(ncls))
    if exact:
        for comp, c in zip(g.components, g.component_class):
            exact = exact and set(comp) == {i for i, l in enumerate(g.nodes) if l.class_index == c}
    clauses.append(Clause("components are the classes", exact,
                          None if exact else [(comp[:4], c) for comp, c in zip(g.components, g.component_class)]))
    types_ok, parity_ok, bad_type, bad_parity = True, True, [], []
    for comp, c, t in zip(g.components, g.component_class, g.component_type):
        if c is None:
            types_ok = False
            continue
        rep = reps.classes[c].rep
        want = expected_correspondent(centralizer(D.G, D.quotient, rep))
        if t != want:
            types_ok = False
            bad_type.append((g.class_names[c], _type_name(t), str(want)))
        if int(Gb.element_orders[rep]) > 2 and (t is None or t.family != "A~" or t.nodes % 2):
            parity_ok = False
            bad_parity.append((g.class_names[c], _type_name(t)))
    clauses.append(Clause("types match the stabilizer correspondents", types_ok, bad_type or None))
    clauses.append(Clause("classes of order above 2 give even cycles", parity_ok, bad_parity or None))
    return TheoremReport(g, clauses, D.N.order <= 2)
