"""Multigraphs, spanning data, and graph Coxeter presentations.

Vertices are 1-based integers; edge ids are symbolic tokens so a doubled
graph can name its second copies with primes.  The Coxeter builder emits
relation families R1-R5 as positive words over the edge generators.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .presentation import Presentation
from .words import Word, parse_letter


class MultiGraph:
    __slots__ = ("vertex_count", "edges", "_by_id")

    def __init__(self, vertex_count: int, edges: Iterable[Tuple[str, Tuple[int, int]]]):
        if vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        self.vertex_count = vertex_count
        self.edges: Tuple[Tuple[str, Tuple[int, int]], ...] = tuple(
            (edge_id, (min(u, v), max(u, v))) for edge_id, (u, v) in edges)
        self._by_id: Dict[str, Tuple[int, int]] = {}
        for edge_id, (u, v) in self.edges:
            if u == v:
                raise ValueError(f"edge {edge_id} is a loop")
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValueError(f"edge {edge_id} endpoint out of range")
            if edge_id in self._by_id:
                raise ValueError(f"duplicate edge id {edge_id}")
            self._by_id[edge_id] = (u, v)

    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(edge_id for edge_id, _ in self.edges)

    def endpoints(self, edge_id: str) -> Tuple[int, int]:
        return self._by_id[edge_id]

    def edges_at(self, vertex: int) -> Tuple[str, ...]:
        return tuple(edge_id for edge_id, (u, v) in self.edges if vertex in (u, v))

    def degree(self, vertex: int) -> int:
        return len(self.edges_at(vertex))

    def adjacency(self) -> Dict[int, Set[int]]:
        nbrs: Dict[int, Set[int]] = {v: set() for v in range(1, self.vertex_count + 1)}
        for _, (u, v) in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def is_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        nbrs = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            for w in nbrs[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def parallel_classes(self) -> Dict[Tuple[int, int], Tuple[str, ...]]:
        classes: Dict[Tuple[int, int], List[str]] = {}
        for edge_id, pair in self.edges:
            classes.setdefault(pair, []).append(edge_id)
        return {pair: tuple(ids) for pair, ids in classes.items()}

    def is_bipartite(self) -> bool:
        nbrs = self.adjacency()
        color: Dict[int, int] = {}
        for start in range(1, self.vertex_count + 1):
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for w in nbrs[v]:
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
        return True


class SpanningData:
    __slots__ = ("tree_edges", "cycle_edges")

    def __init__(self, tree_edges: Iterable[str], cycle_edges: Iterable[Tuple[str, int, int]]):
        self.tree_edges: FrozenSet[str] = frozenset(tree_edges)
        self.cycle_edges: Tuple[Tuple[str, int, int], ...] = tuple(cycle_edges)

    def cycle_ids(self) -> Tuple[str, ...]:
        return tuple(edge_id for edge_id, _, _ in self.cycle_edges)

    def orientation(self, edge_id: str) -> Tuple[int, int]:
        for eid, alpha, beta in self.cycle_edges:
            if eid == edge_id:
                return (alpha, beta)
        raise KeyError(edge_id)


def spanning_is_valid(g: MultiGraph, s: SpanningData) -> bool:
    ids = set(g.edge_ids())
    cycle_ids = set(s.cycle_ids())
    if s.tree_edges | cycle_ids != ids or s.tree_edges & cycle_ids:
        return False
    if len(s.tree_edges) != g.vertex_count - 1:
        return False
    parent = list(range(g.vertex_count + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge_id in s.tree_edges:
        u, v = g.endpoints(edge_id)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    for edge_id, alpha, beta in s.cycle_edges:
        if {alpha, beta} != set(g.endpoints(edge_id)):
            return False
    return True


def cycle_rank(g: MultiGraph) -> int:
    if not g.is_connected():
        raise ValueError("cycle rank needs a connected graph")
    return len(g.edges) - g.vertex_count + 1


def doubled(g: MultiGraph) -> MultiGraph:
    """Second parallel copy of every edge, named with a prime."""
    edges = list(g.edges)
    edges.extend((edge_id + "'", pair) for edge_id, pair in g.edges)
    return MultiGraph(g.vertex_count, edges)


def _covered(g: MultiGraph, edge_ids: Sequence[str]) -> int:
    vertices: Set[int] = set()
    for edge_id in edge_ids:
        vertices.update(g.endpoints(edge_id))
    return len(vertices)


def coxeter_presentation(g: MultiGraph) -> Presentation:
    """One involution per edge; relations read off the incidence pattern.

    R1: each generator squares to 1.  R2: disjoint edges commute.  R3:
    edges sharing one vertex braid, (uv)^3 = 1.  R4: for edges u,v,w at a
    common vertex covering four vertices, u commutes with vwv.  R5: for a
    parallel pair u,u' on {x,y} and edges v at x, w at y covering four
    vertices, uvu commutes with u'wu'.
    """
    ids = g.edge_ids()
    letters = {edge_id: parse_letter(edge_id) for edge_id in ids}
    relators: List[Word] = []
    for edge_id in ids:
        a = letters[edge_id]
        relators.append((a, a))
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            a, b = letters[ids[i]], letters[ids[j]]
            shared = set(g.endpoints(ids[i])) & set(g.endpoints(ids[j]))
            if len(shared) == 0:
                relators.append((a, b, a, b))
            elif len(shared) == 1:
                relators.append((a, b, a, b, a, b))
    for vertex in range(1, g.vertex_count + 1):
        local = g.edges_at(vertex)
        for u in local:
            others = [e for e in local if e != u]
            for i in range(len(others)):
                for j in range(i + 1, len(others)):
                    v, w = others[i], others[j]
                    if _covered(g, (u, v, w)) < 4:
                        continue
                    a, b, c = letters[u], letters[v], letters[w]
                    relators.append((a, b, c, b, a, b, c, b))
    for pair, klass in sorted(g.parallel_classes().items()):
        if len(klass) < 2:
            continue
        for ui in range(len(klass)):
            for uj in range(ui + 1, len(klass)):
                u, u2 = klass[ui], klass[uj]
                for x, y in (pair, pair[::-1]):
                    for v in g.edges_at(x):
                        if v in (u, u2):
                            continue
                        for w in g.edges_at(y):
                            if w in (u, u2) or w == v:
                                continue
                            if _covered(g, (u, u2, v, w)) < 4:
                                continue
                            a = (letters[u], letters[v], letters[u])
                            b = (letters[u2], letters[w], letters[u2])
                            relators.append(a + b + a + b)
    return Presentation(ids, relators)


def braid_expectations(g: MultiGraph) -> Tuple[int, int]:
    """(disjoint pairs, one-shared-vertex pairs) over all edge pairs."""
    ids = g.edge_ids()
    commuting = order3 = 0
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            shared = set(g.endpoints(ids[i])) & set(g.endpoints(ids[j]))
            if len(shared) == 0:
                commuting += 1
            elif len(shared) == 1:
                order3 += 1
    return commuting, order3


def parse_graph(text: str) -> Tuple[MultiGraph, Optional[SpanningData]]:
    vertex_count = None
    edges: List[Tuple[str, Tuple[int, int]]] = []
    tree: List[str] = []
    cycle: List[Tuple[str, int, int]] = []
    annotated = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices:":
            vertex_count = int(parts[1])
        elif parts[0] == "edge:":
            edge_id, u, v = parts[1], int(parts[2]), int(parts[3])
            edges.append((edge_id, (u, v)))
            if len(parts) > 4:
                annotated = True
                if parts[4] == "tree":
                    tree.append(edge_id)
                elif parts[4] == "cycle":
                    cycle.append((edge_id, int(parts[5]), int(parts[6])))
                else:
                    raise ValueError(f"bad edge annotation {parts[4]!r}")
        else:
            raise ValueError(f"bad graph line {raw!r}")
    if vertex_count is None:
        raise ValueError("missing vertices: line")
    graph = MultiGraph(vertex_count, edges)
    return graph, SpanningData(tree, cycle) if annotated else None


def format_graph(g: MultiGraph, spanning: Optional[SpanningData] = None) -> str:
    lines = [f"vertices: {g.vertex_count}"]
    for edge_id, (u, v) in g.edges:
        suffix = ""
        if spanning is not None:
            if edge_id in spanning.tree_edges:
                suffix = " tree"
            else:
                alpha, beta = spanning.orientation(edge_id)
                suffix = f" cycle {alpha} {beta}"
        lines.append(f"edge: {edge_id} {u} {v}{suffix}")
    return "\n".join(lines) + "\n"
