"""Complexity classification of target digraphs with certificates.

Verdicts for the named target families come from their stated
characterizations (family membership); witnesses and orderings are
explanatory certificates, extracted best-effort and always re-validated.
A hardness witness is either an induced directed cycle carrying a loop, or
a small induced subdigraph whose bipartite representation contains a
forbidden structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .birep import ForbiddenStructure, bg, find_forbidden, validate_forbidden
from .digraph import (Digraph, GraphError, NotMultipartiteTournament,
                      is_acyclic, is_isomorphic, make_cycle, make_tt,
                      make_tt_minus, partite_structure)
from .minmax import (FIND_GUARD, Ordering, canonical_ordering, find_minmax,
                     verify_minmax)

POLY = "poly"
NP_HARD = "np-hard"
UNKNOWN = "unknown"

#: Largest induced subset inspected by the witness search; every hardness
#: case certified here lives in a <= 4-vertex induced subdigraph.
WITNESS_SUBSET_CAP = 4


@dataclass(frozen=True)
class ReflexiveCycleWitness:
    """An induced directed cycle (length >= 3) with at least one loop."""

    cycle: tuple[str, ...]
    looped: str

    kind = "reflexive-cycle"


@dataclass(frozen=True)
class BGForbiddenWitness:
    """A forbidden structure inside the bipartite representation of a small
    induced subdigraph."""

    subset: tuple[str, ...]
    structure: ForbiddenStructure

    kind = "bg-forbidden"


Witness = ReflexiveCycleWitness | BGForbiddenWitness


@dataclass(frozen=True)
class Classification:
    """Verdict, the rule that produced it, and an optional certificate."""

    verdict: str
    rule: str
    ordering: Ordering | None = None
    witness: Witness | None = None
    notes: tuple[str, ...] = ()


def validate_witness(h: Digraph, w: Witness) -> bool:
    """Re-check a hardness witness against its host digraph."""
    if isinstance(w, ReflexiveCycleWitness):
        cyc = w.cycle
        k = len(cyc)
        if k < 3 or len(set(cyc)) != k:
            return False
        if w.looped not in cyc or not h.has_loop(w.looped):
            return False
        sub = h.induced(cyc)
        want = {(cyc[i], cyc[(i + 1) % k]) for i in range(k)}
        return sub.nonloop_arcs() == frozenset(want)
    if isinstance(w, BGForbiddenWitness):
        g = bg(h.induced(w.subset))
        if not validate_forbidden(g, w.structure):
            return False
        hosts = set(w.structure.host_vertices())
        return any(hosts <= set(comp) for comp in g.components())
    return False


def _induced_cycle_with_loop(h: Digraph,
                             subset: tuple[str, ...]) -> ReflexiveCycleWitness | None:
    sub = h.induced(subset)
    arcs = sub.nonloop_arcs()
    k = len(subset)
    if len(arcs) != k:
        return None
    succ = {}
    for t, head in arcs:
        if t in succ:
            return None
        succ[t] = head
    if set(succ) != set(subset) or len(set(succ.values())) != k:
        return None
    walk = [subset[0]]
    while len(walk) < k:
        nxt = succ[walk[-1]]
        if nxt in walk:
            return None
        walk.append(nxt)
    if succ[walk[-1]] != walk[0]:
        return None
    looped = next((v for v in walk if h.has_loop(v)), None)
    if looped is None:
        return None
    return ReflexiveCycleWitness(tuple(walk), looped)


def find_witness(h: Digraph) -> Witness | None:
    """Deterministic search for a machine-checkable hardness witness.

    First all induced directed cycles of length 3..4 carrying a loop, then
    all induced subsets of size <= 4 whose bipartite representation contains
    a forbidden structure.  The forbidden patterns are connected, so every
    hit automatically lies in one component of the bipartite graph.
    """
    n = len(h.vertices)
    for length in (3, 4):
        if length > n:
            break
        for subset in combinations(h.vertices, length):
            w = _induced_cycle_with_loop(h, subset)
            if w is not None:
                return w
    for size in range(1, min(n, WITNESS_SUBSET_CAP) + 1):
        for subset in combinations(h.vertices, size):
            fs = find_forbidden(bg(h.induced(subset)))
            if fs is not None:
                w = BGForbiddenWitness(subset, fs)
                assert validate_witness(h, w), "internal error: bad witness"
                return w
    return None


# -- reflexive multipartite tournaments -----------------------------------


def _transport_ordering(candidate: Digraph, ordering: Ordering,
                        h: Digraph) -> Ordering | None:
    iso = is_isomorphic(candidate, h)
    if iso is None:
        return None
    return Ordering(iso[v] for v in ordering.sequence)


def classify_reflexive_mpt(h: Digraph) -> Classification:
    """Dichotomy for reflexive multipartite tournaments.

    Polynomial exactly for the reflexive closures of TT_k, TT_{k+1}^-,
    and the two one-way orientations of K_{1,2}; NP-hard otherwise, with a
    validated witness.
    """
    if set(h.loops()) != set(h.vertices):
        raise GraphError("classify_reflexive_mpt requires a reflexive digraph")
    ps = partite_structure(h)
    k = len(ps.parts)
    n = len(h.vertices)
    if k < 2:
        raise GraphError("classify_reflexive_mpt requires at least 2 partite sets")

    if k == n:
        return classify_tournament_wpl(h)

    candidates: list[tuple[Digraph, Ordering]] = []
    if n >= 3 and k == n - 1:
        candidates.append(canonical_ordering("rc_ttminus", n))
    if n == 3:
        candidates.append(canonical_ordering("rc_k12"))
        candidates.append(canonical_ordering("rc_k21"))
    for cand, ordering in candidates:
        transported = _transport_ordering(cand, ordering, h)
        if transported is not None:
            ok, _ = verify_minmax(h, transported)
            assert ok, "internal error: transported ordering is not Min-Max"
            return Classification(POLY, "thm4.1", ordering=transported)

    w = find_witness(h)
    assert w is not None and validate_witness(h, w), \
        "internal error: no witness for a hard reflexive multipartite tournament"
    return Classification(NP_HARD, "thm4.1", witness=w)


def classify_tournament_wpl(h: Digraph) -> Classification:
    """Dichotomy for tournaments with possible loops.

    Polynomial iff the loopless part is acyclic (the acyclic ordering is then
    a Min-Max ordering) or h is the loopless directed 3-cycle.
    """
    for u, v in combinations(h.vertices, 2):
        fwd = (u, v) in h.arcs
        bwd = (v, u) in h.arcs
        if fwd == bwd:
            raise GraphError(
                "classify_tournament_wpl requires a tournament w.p.l. "
                f"(pair ({u}, {v}) breaks it)"
            )
    acyclic, order = is_acyclic(h)
    if acyclic:
        ordering = Ordering(order)
        ok, _ = verify_minmax(h, ordering)
        assert ok, "internal error: acyclic ordering should be Min-Max"
        return Classification(POLY, "thm4.3", ordering=ordering)
    if len(h.vertices) == 3 and not h.loops():
        return Classification(POLY, "thm4.3")
    w = find_witness(h)
    if w is not None:
        assert validate_witness(h, w)
    return Classification(NP_HARD, "thm4.3", witness=w)


# -- the 16-case family on four vertices ----------------------------------

T5_LOOPS = ("11", "22", "33", "44")
T5_BASE_ARCS = (("1", "2"), ("2", "3"), ("3", "4"), ("1", "4"), ("2", "4"))


def t5_config(loops) -> frozenset[str]:
    b = frozenset(str(x) for x in loops)
    bad = b - set(T5_LOOPS)
    if bad:
        raise GraphError(f"invalid loop indicators: {sorted(bad)}")
    return b


def build_theorem5_digraph(b) -> Digraph:
    """Digraph on {1,2,3,4} with arcs {12,23,34,14,24} plus the loops in b."""
    b = t5_config(b)
    arcs = list(T5_BASE_ARCS) + [(x[0], x[1]) for x in sorted(b)]
    return Digraph(("1", "2", "3", "4"), arcs)


def classify_theorem5(b) -> Classification:
    """Classify the four-vertex family: polynomial iff 33 in B and 44 not."""
    b = t5_config(b)
    h = build_theorem5_digraph(b)
    if "33" in b and "44" not in b:
        ordering = find_minmax(h)
        notes = () if ordering is not None else ("no-minmax-ordering-found",)
        return Classification(POLY, "thm5.1", ordering=ordering, notes=notes)
    w = find_witness(h)
    if w is not None:
        assert validate_witness(h, w)
        return Classification(NP_HARD, "thm5.1", witness=w)
    return Classification(NP_HARD, "thm5.1", notes=("no-witness-found",))


# -- generic sufficient conditions ----------------------------------------


def classify_general(h: Digraph, guard: int = FIND_GUARD) -> Classification:
    """Best-effort classification from the generic sufficient conditions.

    A found hardness witness gives NP-hard; a found Min-Max ordering gives
    polynomial; otherwise the verdict is unknown.  Never claims more than the
    sufficient conditions justify.
    """
    w = find_witness(h)
    if w is not None:
        assert validate_witness(h, w)
        rule = "lemma4.2" if isinstance(w, ReflexiveCycleWitness) else "bg-forbidden"
        return Classification(NP_HARD, rule, witness=w)
    if len(h.vertices) <= guard:
        ordering = find_minmax(h, guard=guard)
        if ordering is not None:
            return Classification(POLY, "minmax", ordering=ordering)
        return Classification(UNKNOWN, "none")
    return Classification(UNKNOWN, "none", notes=("minmax-skipped-guard",))


# -- exhaustive enumeration -----------------------------------------------


def _partitions(n: int, smallest: int = 1):
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_rmpt(n: int) -> list[Digraph]:
    """All reflexive multipartite tournaments on n vertices with >= 2 partite
    sets, up to isomorphism, in a deterministic order."""
    found: list[Digraph] = []
    for part_sizes in sorted(_partitions(n), reverse=True):
        if len(part_sizes) < 2:
            continue
        parts = []
        nxt = 1
        for size in part_sizes:
            parts.append([str(i) for i in range(nxt, nxt + size)])
            nxt += size
        vertices = [v for part in parts for v in part]
        cross = [(u, v) for a, b in combinations(parts, 2)
                 for u in a for v in b]
        for bits in product((0, 1), repeat=len(cross)):
            arcs = [(v, v) for v in vertices]
            for (u, v), bit in zip(cross, bits):
                arcs.append((u, v) if bit == 0 else (v, u))
            h = Digraph(vertices, arcs)
            if not any(is_isomorphic(h, seen) for seen in found):
                found.append(h)
    return found
