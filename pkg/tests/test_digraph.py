import pytest

from minhom import (Digraph, GraphError, GuardExceeded,
                    NotMultipartiteTournament, components, extend, is_acyclic,
                    is_isomorphic, make_cycle, make_oriented_kb, make_tt,
                    make_tt_minus, partite_structure)


def test_vertex_name_validation():
    with pytest.raises(GraphError):
        Digraph(("a b",))
    with pytest.raises(GraphError):
        Digraph(("a,b",))
    with pytest.raises(GraphError):
        Digraph(("",))
    with pytest.raises(GraphError):
        Digraph(("a", "a"))


def test_arcs_need_declared_endpoints():
    with pytest.raises(GraphError):
        Digraph(("a",), [("a", "b")])


def test_converse_single_arc():
    h = make_tt(2)
    assert h.converse().arcs == frozenset({("2", "1")})


def test_converse_is_involution():
    h = Digraph.from_arcs([("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")])
    assert h.converse().converse() == h


def test_converse_of_rc_k12_is_rc_k21():
    k12 = make_oriented_kb(1, 2).reflexive_closure()
    k21 = make_oriented_kb(2, 1).reflexive_closure()
    assert is_isomorphic(k12.converse(), k21)


def test_reflexive_closure():
    h = make_tt(2).reflexive_closure()
    assert h.arcs == frozenset({("1", "2"), ("1", "1"), ("2", "2")})
    assert h.reflexive_closure() == h  # idempotent
    c3 = make_cycle(3).reflexive_closure()
    assert len(c3.arcs) == 6


def test_reflexive_closure_adds_exactly_missing_loops():
    h = Digraph.from_arcs([("a", "a"), ("a", "b"), ("b", "c")])
    rc = h.reflexive_closure()
    assert len(rc.arcs) - len(h.arcs) == 2


def test_induced():
    h = make_tt(3).reflexive_closure()
    sub = h.induced({"1", "3"})
    assert sub.arcs == frozenset({("1", "3"), ("1", "1"), ("3", "3")})
    assert h.induced(h.vertices) == h
    assert h.induced(()).vertices == ()
    with pytest.raises(GraphError):
        h.induced({"nope"})


def test_underlying_graph():
    digon = make_cycle(2)
    g = digon.underlying_graph()
    assert g.edges == frozenset({("1", "2")})
    tri = make_tt(3).underlying_graph()
    assert len(tri.edges) == 3
    loop = Digraph(("v",), [("v", "v")]).underlying_graph()
    assert loop.edges == frozenset({("v", "v")})


def test_components():
    assert components(make_tt(3)) == [("1", "2", "3")]
    two = Digraph(("a", "b"), [("a", "a"), ("b", "b")])
    assert components(two) == [("a",), ("b",)]
    assert components(Digraph(())) == []


def test_is_acyclic():
    ok, order = is_acyclic(make_tt(4).reflexive_closure())
    assert ok and order == ("1", "2", "3", "4")
    assert is_acyclic(make_cycle(3).reflexive_closure()) == (False, None)
    ok, order = is_acyclic(Digraph(("v",), [("v", "v")]))
    assert ok and order == ("v",)  # a loop is not a cycle


def test_is_acyclic_matches_converse():
    for h in (make_tt(3), make_cycle(4), make_tt_minus(4).reflexive_closure()):
        assert is_acyclic(h)[0] == is_acyclic(h.converse())[0]


def test_partite_structure():
    ps = partite_structure(make_oriented_kb(1, 2).reflexive_closure())
    assert ps.parts == (("1",), ("2", "3"))
    assert partite_structure(make_tt(3)).parts == (("1",), ("2",), ("3",))
    with pytest.raises(NotMultipartiteTournament):
        partite_structure(Digraph(("a", "b", "c"), [("a", "b")]))
    with pytest.raises(NotMultipartiteTournament):
        partite_structure(make_cycle(2))  # digon: two arcs across a pair


def test_partite_structure_ignores_loops():
    h = make_oriented_kb(2, 2)
    assert partite_structure(h) == partite_structure(h.reflexive_closure())


def test_multipartite_arc_count():
    # non-loop arcs = C(n,2) - sum C(|S_i|,2)
    from math import comb
    for h in (make_oriented_kb(2, 3), make_tt(4), make_oriented_kb(1, 2)):
        ps = partite_structure(h)
        n = len(h.vertices)
        expect = comb(n, 2) - sum(comb(len(p), 2) for p in ps.parts)
        assert len(h.nonloop_arcs()) == expect


def test_makers():
    assert make_tt(3).arcs == frozenset({("1", "2"), ("1", "3"), ("2", "3")})
    assert make_tt_minus(3).arcs == frozenset({("1", "2"), ("2", "3")})
    assert make_cycle(2).arcs == frozenset({("1", "2"), ("2", "1")})
    assert make_oriented_kb(2, 1).arcs == frozenset({("1", "3"), ("2", "3")})
    for bad in (lambda: make_tt(0), lambda: make_tt_minus(1),
                lambda: make_cycle(1), lambda: make_oriented_kb(0, 1)):
        with pytest.raises(GraphError):
            bad()


def test_extend():
    hp, decomp = extend(make_tt(2), {"1": 2, "2": 1})
    assert is_isomorphic(hp, make_oriented_kb(2, 1))
    assert set(decomp.values()) == {"1", "2"}

    hp, _ = extend(make_cycle(3), {"1": 1, "2": 1, "3": 2})
    assert len(hp.vertices) == 4 and len(hp.arcs) == 5

    h = Digraph.from_arcs([("a", "b"), ("b", "c")])
    hp, _ = extend(h, {v: 1 for v in h.vertices})
    assert is_isomorphic(hp, h)

    with pytest.raises(GraphError):
        extend(Digraph(("a",), [("a", "a")]), {"a": 1})
    with pytest.raises(GraphError):
        extend(make_tt(2), {"1": 0, "2": 1})


def test_is_isomorphic():
    assert is_isomorphic(make_tt(3), make_cycle(3)) is None
    h = make_tt(3).reflexive_closure()
    assert is_isomorphic(h, h) == {v: v for v in h.vertices}
    shuffled = Digraph(("x", "y", "z"), [("y", "x"), ("y", "z"), ("x", "z")])
    iso = is_isomorphic(make_tt(3), shuffled)
    assert iso == {"1": "y", "2": "x", "3": "z"}
    with pytest.raises(GuardExceeded):
        is_isomorphic(make_tt(11), make_tt(11))
    assert is_isomorphic(make_tt(11), make_tt(11), guard=11)
