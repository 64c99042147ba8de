"""Bipartite representation of a digraph and proper-interval-bigraph tests.

The forbidden structures (long induced cycles, bipartite claw, net, tent) are
searched exhaustively; every use in this project targets the bipartite
representation of a small fixed digraph, never a problem input.

Pattern edge lists for the net and the tent were transcribed from the source
drawings (the running-text edge lists of net and tent are identical there,
which is an evident erratum).  The frozen lists are:

  claw: x4-y1, x1-y1, x4-y2, x2-y2, x4-y3, x3-y3
  net:  4-cycle y1-x3-y2-x4-y1 plus pendants x1-y1, x2-y2, y3-x4
  tent: 6-cycle x1-y2-x4-y1-x2-y3-x1 plus chord x1-y1 plus pendant x3-y1

Both were cross-validated against the hardness witnesses they are expected to
certify (see the classify tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .digraph import Digraph, GraphError, GuardExceeded, check_token

#: Default cap on the number of vertices searched for forbidden structures.
FORBIDDEN_GUARD = 16

CLAW_EDGES = (("x4", "y1"), ("x1", "y1"), ("x4", "y2"),
              ("x2", "y2"), ("x4", "y3"), ("x3", "y3"))
NET_EDGES = (("x3", "y1"), ("x4", "y1"), ("x3", "y2"), ("x4", "y2"),
             ("x1", "y1"), ("x2", "y2"), ("x4", "y3"))
TENT_EDGES = (("x1", "y2"), ("x4", "y2"), ("x4", "y1"), ("x2", "y1"),
              ("x2", "y3"), ("x1", "y3"), ("x1", "y1"), ("x3", "y1"))

PATTERNS = {
    "bipartite-claw": CLAW_EDGES,
    "bipartite-net": NET_EDGES,
    "bipartite-tent": TENT_EDGES,
}


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with ordered parts; every edge crosses the parts.

    The first/second part distinction is semantic (part-respecting
    homomorphism instances depend on it), so the parts are never swapped
    silently.
    """

    part1: tuple[str, ...]
    part2: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __init__(self, part1, part2, edges=()):
        p1 = tuple(part1)
        p2 = tuple(part2)
        for v in (*p1, *p2):
            check_token(v)
        if len(set(p1)) != len(p1) or len(set(p2)) != len(p2):
            raise GraphError("duplicate vertex declarations")
        if set(p1) & set(p2):
            raise GraphError("parts must be disjoint")
        s1, s2 = set(p1), set(p2)
        norm = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u in s1 and v in s2:
                norm.add((u, v))
            elif v in s1 and u in s2:
                norm.add((v, u))
            else:
                raise GraphError(f"edge ({u!r}, {v!r}) does not cross the parts")
        object.__setattr__(self, "part1", p1)
        object.__setattr__(self, "part2", p2)
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return self.part1 + self.part2

    def side(self, v: str) -> int:
        if v in self.part1:
            return 1
        if v in self.part2:
            return 2
        raise GraphError(f"unknown vertex {v!r}")

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if self.has_edge(v, w)]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def induced(self, subset) -> "BipartiteGraph":
        sub = set(subset)
        unknown = sub - set(self.vertices)
        if unknown:
            raise GraphError(f"unknown vertices in induced(): {sorted(unknown)}")
        return BipartiteGraph(
            (v for v in self.part1 if v in sub),
            (v for v in self.part2 if v in sub),
            ((u, v) for u, v in self.edges if u in sub and v in sub),
        )

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(tuple(v for v in self.vertices if v in comp))
        return out


@dataclass(frozen=True)
class ForbiddenStructure:
    """An induced forbidden structure with its embedding into the host.

    kind is one of 'long-induced-cycle', 'bipartite-claw', 'bipartite-net',
    'bipartite-tent'.  The embedding maps pattern labels (c1..cK for cycles,
    x1..x4/y1..y3 for the fixed patterns) to host vertices.
    """

    kind: str
    embedding: tuple[tuple[str, str], ...]

    def host_vertices(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.embedding)


def bg(h: Digraph) -> BipartiteGraph:
    """Bipartite representation: edge u_1 -- w_2 iff u -> w (loops included)."""
    return BipartiteGraph(
        (f"{v}_1" for v in h.vertices),
        (f"{v}_2" for v in h.vertices),
        ((f"{t}_1", f"{head}_2") for t, head in h.arcs),
    )


def _is_induced_cycle(g: BipartiteGraph, subset: tuple[str, ...]) -> bool:
    degs = []
    edge_count = 0
    for v in subset:
        d = sum(1 for w in subset if w != v and g.has_edge(v, w))
        degs.append(d)
        edge_count += d
    if any(d != 2 for d in degs):
        return False
    if edge_count // 2 != len(subset):
        return False
    # connectivity: walk from the first vertex
    seen = {subset[0]}
    stack = [subset[0]]
    while stack:
        v = stack.pop()
        for w in subset:
            if w not in seen and g.has_edge(v, w):
                seen.add(w)
                stack.append(w)
    return len(seen) == len(subset)


def _cycle_embedding(g: BipartiteGraph, subset: tuple[str, ...]) -> ForbiddenStructure:
    start = subset[0]
    in_cycle = set(subset)
    nbrs = [w for w in g.vertices if w in in_cycle and w != start and g.has_edge(start, w)]
    walk = [start, nbrs[0]]
    while len(walk) < len(subset):
        prev, cur = walk[-2], walk[-1]
        nxt = next(w for w in subset
                   if w != prev and w != cur and g.has_edge(cur, w))
        walk.append(nxt)
    emb = tuple((f"c{i + 1}", v) for i, v in enumerate(walk))
    return ForbiddenStructure("long-induced-cycle", emb)


def find_pattern(g: BipartiteGraph, kind: str) -> ForbiddenStructure | None:
    """Deterministic induced-embedding search for one fixed bipartite pattern."""
    edges = PATTERNS[kind]
    labels = sorted({lab for e in edges for lab in e})
    x_labels = [lab for lab in labels if lab.startswith("x")]
    pattern_adj = {(a, b) for a, b in edges} | {(b, a) for a, b in edges}
    for x_side in (1, 2):
        assign: dict[str, str] = {}
        used: set[str] = set()

        def ok(lab: str, v: str) -> bool:
            want_side = x_side if lab in x_labels else 3 - x_side
            if g.side(v) != want_side:
                return False
            for lab2, v2 in assign.items():
                if ((lab, lab2) in pattern_adj) != g.has_edge(v, v2):
                    return False
            return True

        def search(k: int) -> bool:
            if k == len(labels):
                return True
            lab = labels[k]
            for v in g.vertices:
                if v in used or not ok(lab, v):
                    continue
                assign[lab] = v
                used.add(v)
                if search(k + 1):
                    return True
                del assign[lab]
                used.remove(v)
            return False

        if search(0):
            return ForbiddenStructure(
                kind, tuple((lab, assign[lab]) for lab in labels)
            )
    return None


def find_forbidden(g: BipartiteGraph,
                   guard: int = FORBIDDEN_GUARD) -> ForbiddenStructure | None:
    """First forbidden structure in g, or None.

    Search order: induced cycles of even length 6, 8, ... (subsets in
    lexicographic order over the part1+part2 vertex sequence), then the claw,
    the net, and the tent.
    """
    n = len(g.vertices)
    if n > guard:
        raise GuardExceeded(
            f"forbidden-structure search is limited to {guard} vertices; "
            "raise the guard explicitly to search this graph"
        )
    for length in range(6, n + 1, 2):
        for subset in combinations(g.vertices, length):
            if _is_induced_cycle(g, subset):
                return _cycle_embedding(g, subset)
    for kind in ("bipartite-claw", "bipartite-net", "bipartite-tent"):
        found = find_pattern(g, kind)
        if found is not None:
            return found
    return None


def validate_forbidden(g: BipartiteGraph, fs: ForbiddenStructure) -> bool:
    """Re-check that an embedding induces its pattern exactly."""
    emb = dict(fs.embedding)
    hosts = list(emb.values())
    if len(set(hosts)) != len(hosts):
        return False
    if fs.kind == "long-induced-cycle":
        k = len(hosts)
        if k < 6 or k % 2:
            return False
        cyc = [emb[f"c{i + 1}"] for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                expect = abs(i - j) == 1 or {i, j} == {0, k - 1}
                if g.has_edge(cyc[i], cyc[j]) != expect:
                    return False
        return True
    edges = PATTERNS[fs.kind]
    adj = {(a, b) for a, b in edges} | {(b, a) for a, b in edges}
    labels = list(emb)
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if g.has_edge(emb[a], emb[b]) != ((a, b) in adj):
                return False
    return True


def is_proper_interval_bigraph(
        g: BipartiteGraph,
        guard: int = FORBIDDEN_GUARD) -> tuple[bool, ForbiddenStructure | None]:
    """True iff no component of g contains a forbidden structure.

    The false certificate is the forbidden structure found.
    """
    for comp in g.components():
        fs = find_forbidden(g.induced(comp), guard=guard)
        if fs is not None:
            return False, fs
    return True, None


# -- part-respecting instance transformation ------------------------------


def digraph_instance_from_bipartite(g: BipartiteGraph, h: Digraph, costs):
    """Convert a part-respecting bipartite instance over BG(h) into a digraph
    instance over h with the same optimal cost.

    Edges of g are oriented from part1 to part2; the new cost of assigning
    h-vertex x to u is the old cost of x_1 (u in part1) or x_2 (u in part2).
    """
    from .solver import CostMatrix

    bgh = bg(h)
    valid_targets = set(bgh.vertices)
    valid_inputs = set(g.vertices)
    for (u, i) in costs.entries:
        if u not in valid_inputs or i not in valid_targets:
            raise GraphError(
                f"cost entry ({u!r}, {i!r}) does not match the instance shape"
            )
    d = Digraph(g.vertices, g.edges)
    entries = {}
    for u in g.vertices:
        suffix = "_1" if u in g.part1 else "_2"
        for x in h.vertices:
            c = costs.cost(u, f"{x}{suffix}")
            if c:
                entries[(u, x)] = c
    return d, CostMatrix(entries)


def lift_solution(g: BipartiteGraph, h: Digraph,
                  mapping: dict[str, str]) -> dict[str, str]:
    """Lift a homomorphism of the transformed digraph instance (into h) to a
    part-respecting homomorphism of g into BG(h)."""
    for u in g.vertices:
        if u not in mapping:
            raise GraphError(f"mapping is not total: missing {u!r}")
        if mapping[u] not in h.vertices:
            raise GraphError(f"image {mapping[u]!r} is not a vertex of the target")
    for s, t in g.edges:
        if not h.has_arc(mapping[s], mapping[t]):
            raise GraphError(
                f"not a homomorphism: edge ({s}, {t}) maps to a non-arc"
            )
    return {u: mapping[u] + ("_1" if u in g.part1 else "_2") for u in g.vertices}


def project_solution(g: BipartiteGraph, h: Digraph,
                     mapping: dict[str, str]) -> dict[str, str]:
    """Inverse of lift_solution: strip part subscripts, validating that the
    input is a part-respecting homomorphism of g into BG(h)."""
    bgh = bg(h)
    out = {}
    for u in g.vertices:
        if u not in mapping:
            raise GraphError(f"mapping is not total: missing {u!r}")
        img = mapping[u]
        want = "_1" if u in g.part1 else "_2"
        if not img.endswith(want) or img not in bgh.vertices:
            raise GraphError(f"image {img!r} does not respect the parts")
        out[u] = img[: -len(want)]
    for s, t in g.edges:
        if not bgh.has_edge(mapping[s], mapping[t]):
            raise GraphError(
                f"not a homomorphism: edge ({s}, {t}) maps to a non-edge"
            )
    return out
