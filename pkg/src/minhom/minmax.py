"""Min-Max orderings: verification, exhaustive search, canonical families.

An ordering of V(H) is Min-Max when, for every non-trivial pair of arcs
e = ik and f = js (as position pairs), both (min(i,j), min(k,s)) and
(max(i,j), max(k,s)) are again arcs.  Targets with a Min-Max ordering admit
a polynomial minimum cost homomorphism solver (see solver.solve_minmax).
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (Digraph, GraphError, GuardExceeded, make_oriented_kb,
                      make_tt, make_tt_minus)

#: Default cap for the permutation search.
FIND_GUARD = 9


@dataclass(frozen=True)
class Ordering:
    """A permutation of the target's vertices, with 1-based ranks."""

    sequence: tuple[str, ...]

    def __init__(self, sequence):
        seq = tuple(str(v) for v in sequence)
        if len(set(seq)) != len(seq):
            raise GraphError("ordering contains a repeated vertex")
        object.__setattr__(self, "sequence", seq)

    def rank(self) -> dict[str, int]:
        return {v: i + 1 for i, v in enumerate(self.sequence)}

    def serialize(self) -> str:
        return ",".join(self.sequence)

    @classmethod
    def parse(cls, text: str) -> "Ordering":
        return cls(tok for tok in text.split(",") if tok)


@dataclass(frozen=True)
class ArcPair:
    """A pair of arcs in position space, with its coordinatewise min/max."""

    e: tuple[str, str]
    f: tuple[str, str]
    min_pair: tuple[int, int]
    max_pair: tuple[int, int]
    nontrivial: bool


def _check_permutation(h: Digraph, ordering: Ordering) -> dict[str, int]:
    pos = ordering.rank()
    if set(pos) != set(h.vertices):
        raise GraphError("ordering is not a permutation of the target's vertices")
    return pos


def verify_minmax(h: Digraph,
                  ordering: Ordering) -> tuple[bool, ArcPair | None]:
    """Check the Min-Max condition; on failure return the lexicographically
    first violating pair (arcs compared as position pairs)."""
    pos = _check_permutation(h, ordering)
    seq = ordering.sequence
    pos_arcs = sorted((pos[t], pos[head]) for t, head in h.arcs)
    arc_set = set(pos_arcs)
    for a in range(len(pos_arcs)):
        i, k = pos_arcs[a]
        for b in range(a + 1, len(pos_arcs)):
            j, s = pos_arcs[b]
            mn = (min(i, j), min(k, s))
            mx = (max(i, j), max(k, s))
            if {mn, mx} == {(i, k), (j, s)}:
                continue
            if mn not in arc_set or mx not in arc_set:
                pair = ArcPair(
                    e=(seq[i - 1], seq[k - 1]),
                    f=(seq[j - 1], seq[s - 1]),
                    min_pair=mn,
                    max_pair=mx,
                    nontrivial=True,
                )
                return False, pair
    return True, None


def find_minmax(h: Digraph, guard: int = FIND_GUARD) -> Ordering | None:
    """Lexicographically first Min-Max ordering, or None.

    Permutations are explored in declaration order with incremental pruning:
    a partial placement is abandoned as soon as some fully placed pair of
    arcs violates the condition.
    """
    n = len(h.vertices)
    if n > guard:
        raise GuardExceeded(
            f"Min-Max ordering search is limited to {guard} vertices; "
            "raise the guard explicitly to search this target"
        )
    if n == 0:
        return Ordering(())

    seq: list[str] = []
    placed: dict[str, int] = {}

    def placed_arcs() -> list[tuple[int, int]]:
        return [(placed[t], placed[head]) for t, head in h.arcs
                if t in placed and head in placed]

    def consistent() -> bool:
        arcs = placed_arcs()
        arc_set = set(arcs)
        last = len(seq)
        for a in range(len(arcs)):
            i, k = arcs[a]
            for b in range(a + 1, len(arcs)):
                j, s = arcs[b]
                mn = (min(i, j), min(k, s))
                mx = (max(i, j), max(k, s))
                if {mn, mx} == {(i, k), (j, s)}:
                    continue
                # min/max positions are all <= the largest placed rank, so
                # both candidate arcs are decided already
                if mn not in arc_set or mx not in arc_set:
                    return False
        return True

    def search() -> bool:
        if len(seq) == n:
            return True
        for v in h.vertices:
            if v in placed:
                continue
            seq.append(v)
            placed[v] = len(seq)
            if consistent() and search():
                return True
            seq.pop()
            del placed[v]
        return False

    if search():
        return Ordering(seq)
    return None


def make_rc_k12() -> Digraph:
    """Reflexive closure of the single-source orientation of K_{1,2}."""
    return make_oriented_kb(1, 2).reflexive_closure()


def make_rc_k21() -> Digraph:
    """Reflexive closure of the single-sink orientation of K_{2,1}."""
    return make_oriented_kb(2, 1).reflexive_closure()


def canonical_ordering(family: str, p: int | None = None
                       ) -> tuple[Digraph, Ordering]:
    """Known Min-Max ordering for one of the polynomial target families.

    family is 'rc_tt', 'rc_ttminus' (both take p), 'rc_k12' or 'rc_k21'.
    """
    if family == "rc_tt":
        if p is None:
            raise GraphError("rc_tt needs a size parameter")
        h = make_tt(p).reflexive_closure()
        return h, Ordering(h.vertices)
    if family == "rc_ttminus":
        if p is None:
            raise GraphError("rc_ttminus needs a size parameter")
        h = make_tt_minus(p).reflexive_closure()
        return h, Ordering(h.vertices)
    if family == "rc_k12":
        # the source vertex sits between the two sinks
        return make_rc_k12(), Ordering(("2", "1", "3"))
    if family == "rc_k21":
        # converse-symmetric placement: the sink sits between the two sources
        return make_rc_k21(), Ordering(("1", "3", "2"))
    raise GraphError(f"unknown canonical family {family!r}")
