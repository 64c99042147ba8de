"""Digraph data model, standard constructions, and structural predicates.

Digraphs may carry loops but never parallel arcs.  Vertex iteration order is
the declaration order; every derived set is emitted in a deterministic order
so that CLI output and test goldens are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations


class GraphError(ValueError):
    """Invalid graph data or operation input."""


class NotMultipartiteTournament(GraphError):
    """The digraph (ignoring loops) is not an orientation of a complete
    multipartite graph."""


class GuardExceeded(GraphError):
    """An exhaustive search was asked to run beyond its configured size
    guard."""


#: Hard cap for the brute-force isomorphism search.
ISO_GUARD = 10


def check_token(name: str) -> str:
    """Validate a vertex name: nonempty, no whitespace, no commas."""
    if not isinstance(name, str) or not name:
        raise GraphError(f"vertex name must be a nonempty string, got {name!r}")
    if "," in name or any(ch.isspace() for ch in name):
        raise GraphError(
            f"bad vertex name {name!r}: whitespace and commas are not allowed"
        )
    return name


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph: ordered vertices, arc set (loops allowed)."""

    vertices: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]

    def __init__(self, vertices, arcs=()):
        vs = tuple(vertices)
        for v in vs:
            check_token(v)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex declarations")
        declared = set(vs)
        aset = frozenset((str(t), str(h)) for t, h in arcs)
        for t, h in aset:
            if t not in declared or h not in declared:
                raise GraphError(f"arc ({t!r}, {h!r}) references an undeclared vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arcs", aset)

    @classmethod
    def from_arcs(cls, arcs, vertices=()) -> "Digraph":
        """Build a digraph, auto-declaring arc endpoints in first-use order."""
        order = list(vertices)
        seen = set(order)
        arcs = [(str(t), str(h)) for t, h in arcs]
        for t, h in arcs:
            for v in (t, h):
                if v not in seen:
                    seen.add(v)
                    order.append(v)
        return cls(order, arcs)

    # -- basic accessors ---------------------------------------------------

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def decl_index(self, v: str) -> int:
        return self._index[v]

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def has_arc(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs

    def has_loop(self, v: str) -> bool:
        return (v, v) in self.arcs

    def loops(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if (v, v) in self.arcs)

    def nonloop_arcs(self) -> frozenset[tuple[str, str]]:
        return frozenset((t, h) for t, h in self.arcs if t != h)

    def sorted_arcs(self) -> list[tuple[str, str]]:
        return sorted(self.arcs)

    def out_neighbors(self, v: str) -> list[str]:
        """Out-neighbors in declaration order (including v itself on a loop)."""
        return [w for w in self.vertices if (v, w) in self.arcs]

    def in_neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if (w, v) in self.arcs]

    def adjacent(self, u: str, v: str) -> bool:
        """True iff u and v are joined by an arc in either direction (u != v)."""
        return u != v and ((u, v) in self.arcs or (v, u) in self.arcs)

    # -- constructions -----------------------------------------------------

    def converse(self) -> "Digraph":
        """Reverse every arc (loops are fixed points)."""
        return Digraph(self.vertices, ((h, t) for t, h in self.arcs))

    def reflexive_closure(self) -> "Digraph":
        """Add a loop to every vertex lacking one.  Idempotent."""
        return Digraph(self.vertices, set(self.arcs) | {(v, v) for v in self.vertices})

    def induced(self, subset) -> "Digraph":
        """Subdigraph induced by the given vertices (declaration order kept)."""
        sub = set(subset)
        unknown = sub - set(self.vertices)
        if unknown:
            raise GraphError(f"unknown vertices in induced(): {sorted(unknown)}")
        vs = tuple(v for v in self.vertices if v in sub)
        return Digraph(vs, ((t, h) for t, h in self.arcs if t in sub and h in sub))

    def underlying_graph(self) -> "UndirectedGraph":
        """Disregard orientation; a digon collapses to one edge."""
        edges = set()
        for t, h in self.arcs:
            edges.add((t, h) if (t, h) == tuple(sorted((t, h))) else (h, t))
        return UndirectedGraph(self.vertices, edges)


@dataclass(frozen=True)
class UndirectedGraph:
    """Immutable undirected graph with possible self-loops."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __init__(self, vertices, edges=()):
        vs = tuple(vertices)
        for v in vs:
            check_token(v)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex declarations")
        declared = set(vs)
        norm = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u not in declared or v not in declared:
                raise GraphError(f"edge ({u!r}, {v!r}) references an undeclared vertex")
            norm.add((u, v) if u <= v else (v, u))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, u: str, v: str) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.edges

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if w != v and self.has_edge(v, w)]


# -- whole-digraph predicates and builders --------------------------------


def components(h: Digraph) -> list[tuple[str, ...]]:
    """Connected components of the underlying graph.

    Each component is sorted by declaration order; the list is sorted by its
    smallest member (also by declaration order).
    """
    g = h.underlying_graph()
    seen: set[str] = set()
    out = []
    for start in h.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(tuple(v for v in h.vertices if v in comp))
    return out


def is_acyclic(h: Digraph) -> tuple[bool, tuple[str, ...] | None]:
    """Test whether the loopless part of h has no directed cycle.

    Loops are ignored: a loop is not a cycle.  On success also returns an
    acyclic ordering of all vertices, ties broken by declaration order.
    """
    indeg = {v: 0 for v in h.vertices}
    for t, head in h.nonloop_arcs():
        indeg[head] += 1
    order: list[str] = []
    remaining = list(h.vertices)
    while remaining:
        pick = next((v for v in remaining if indeg[v] == 0), None)
        if pick is None:
            return False, None
        remaining.remove(pick)
        order.append(pick)
        for t, head in h.nonloop_arcs():
            if t == pick:
                indeg[head] -= 1
    return True, tuple(order)


@dataclass(frozen=True)
class PartiteStructure:
    """Partite sets of a multipartite tournament, in canonical order."""

    parts: tuple[tuple[str, ...], ...]

    def part_of(self, v: str) -> tuple[str, ...]:
        for p in self.parts:
            if v in p:
                return p
        raise GraphError(f"vertex {v!r} not in any part")


def partite_structure(h: Digraph) -> PartiteStructure:
    """Partite sets of h, ignoring loops.

    Raises NotMultipartiteTournament unless nonadjacency is an equivalence
    relation and every cross pair carries exactly one arc.
    """
    groups: dict[frozenset, list[str]] = {}
    for v in h.vertices:
        nonadj = frozenset(w for w in h.vertices if w == v or not h.adjacent(v, w))
        groups.setdefault(nonadj, []).append(v)
    parts = []
    for key, members in groups.items():
        if set(members) != set(key):
            raise NotMultipartiteTournament(
                "nonadjacency is not an equivalence relation"
            )
        parts.append(tuple(sorted(members)))
    for a, b in combinations(parts, 2):
        for u in a:
            for v in b:
                fwd = (u, v) in h.arcs
                bwd = (v, u) in h.arcs
                if fwd == bwd:
                    which = "two arcs" if fwd else "no arc"
                    raise NotMultipartiteTournament(
                        f"cross pair ({u}, {v}) has {which}"
                    )
    parts.sort(key=lambda p: (len(p), p[0]))
    return PartiteStructure(tuple(parts))


def make_tt(p: int) -> Digraph:
    """Transitive tournament TT_p on vertices 1..p, arcs i->j for i < j."""
    if p < 1:
        raise GraphError(f"TT_p needs p >= 1, got {p}")
    vs = [str(i) for i in range(1, p + 1)]
    return Digraph(vs, ((str(i), str(j)) for i in range(1, p + 1)
                        for j in range(i + 1, p + 1)))


def make_tt_minus(p: int) -> Digraph:
    """TT_p without the arc 1->p (p >= 2)."""
    if p < 2:
        raise GraphError(f"TT_p^- needs p >= 2, got {p}")
    base = make_tt(p)
    return Digraph(base.vertices, base.arcs - {("1", str(p))})


def make_cycle(k: int) -> Digraph:
    """Directed k-cycle on vertices 1..k (k >= 2)."""
    if k < 2:
        raise GraphError(f"directed cycle needs k >= 2, got {k}")
    vs = [str(i) for i in range(1, k + 1)]
    return Digraph(vs, ((str(i), str(i % k + 1)) for i in range(1, k + 1)))


def make_oriented_kb(n: int, m: int) -> Digraph:
    """K_{n,m} oriented from the size-n side (vertices 1..n) to the size-m
    side (vertices n+1..n+m)."""
    if n < 1 or m < 1:
        raise GraphError(f"oriented K needs n, m >= 1, got ({n}, {m})")
    vs = [str(i) for i in range(1, n + m + 1)]
    return Digraph(vs, ((str(i), str(j)) for i in range(1, n + 1)
                        for j in range(n + 1, n + m + 1)))


def extend(h: Digraph, sizes: dict[str, int]) -> tuple[Digraph, dict[str, str]]:
    """Substitute each vertex u by an independent set of sizes[u] copies.

    Only defined for loopless h.  Returns the extension together with the
    decomposition map (new vertex -> original vertex).
    """
    if h.loops():
        raise GraphError("extend() requires a loopless digraph")
    if set(sizes) != set(h.vertices):
        raise GraphError("sizes must cover exactly the vertices of h")
    for u, c in sizes.items():
        if c < 1:
            raise GraphError(f"size for {u!r} must be positive, got {c}")
    new_vertices = []
    decomposition = {}
    copies: dict[str, list[str]] = {}
    for u in h.vertices:
        copies[u] = [f"{u}_{i}" for i in range(1, sizes[u] + 1)]
        for w in copies[u]:
            new_vertices.append(w)
            decomposition[w] = u
    arcs = [(a, b) for t, head in h.arcs for a in copies[t] for b in copies[head]]
    return Digraph(new_vertices, arcs), decomposition


def _iso_profile(h: Digraph, v: str) -> tuple[int, int, int]:
    outd = sum(1 for t, head in h.arcs if t == v and head != v)
    ind = sum(1 for t, head in h.arcs if head == v and t != v)
    return outd, ind, int(h.has_loop(v))


def is_isomorphic(h1: Digraph, h2: Digraph,
                  guard: int = ISO_GUARD) -> dict[str, str] | None:
    """Search for an arc-preserving-and-reflecting bijection h1 -> h2.

    Returns the lexicographically first bijection (h1 vertices in declaration
    order, candidates in h2 declaration order), or None.  Exhaustive with
    degree pruning; refuses graphs beyond the guard.
    """
    if len(h1.vertices) > guard or len(h2.vertices) > guard:
        raise GuardExceeded(
            f"isomorphism search is limited to {guard} vertices; "
            "pass a larger guard explicitly to override"
        )
    if len(h1.vertices) != len(h2.vertices) or len(h1.arcs) != len(h2.arcs):
        return None
    prof1 = {v: _iso_profile(h1, v) for v in h1.vertices}
    prof2 = {v: _iso_profile(h2, v) for v in h2.vertices}
    if sorted(prof1.values()) != sorted(prof2.values()):
        return None

    order = h1.vertices
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def compatible(v: str, w: str) -> bool:
        if prof1[v] != prof2[w]:
            return False
        for v2, w2 in mapping.items():
            if ((v, v2) in h1.arcs) != ((w, w2) in h2.arcs):
                return False
            if ((v2, v) in h1.arcs) != ((w2, w) in h2.arcs):
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in h2.vertices:
            if w in used or not compatible(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return dict(mapping) if search(0) else None
