import json
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from storyplan import (
    GraphStory,
    all_windows_planar,
    is_planar,
    k5_window,
    make_story,
    parse_story,
    story_from_obj,
    story_to_document,
    story_to_obj,
    visible_filter,
    window_graph,
)

from helpers import planar_by_rotations, random_story

K5 = [(a, b) for a in range(1, 6) for b in range(a + 1, 6)]


def stories(max_n=9):
    return st.builds(
        lambda n, omega, density, seed: random_story(
            __import__("random").Random(seed), n, omega, density
        ),
        st.integers(2, max_n),
        st.integers(1, 6),
        st.floats(0.1, 0.9),
        st.integers(0, 10 ** 6),
    )


class TestGraphStory:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            GraphStory(n=3, omega=2, k=0, edges=frozenset({(2, 2)}))

    def test_rejects_bad_omega(self):
        with pytest.raises(ValueError):
            GraphStory(n=3, omega=0, k=0, edges=frozenset())

    def test_rejects_negative_k(self):
        with pytest.raises(ValueError):
            GraphStory(n=3, omega=2, k=-1, edges=frozenset())

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(ValueError):
            make_story(3, 2, 0, [(1, 4)])

    def test_minimal_flag(self):
        assert GraphStory(n=2, omega=2, k=0, edges=frozenset()).minimal
        assert not GraphStory(n=2, omega=2, k=1, edges=frozenset()).minimal

    def test_trivial_story(self):
        s = make_story(1, 1, 0, [])
        assert s.n == 1 and s.points == 1


def test_parse_story_roundtrip():
    s = make_story(8, 5, 1, [(1, 2), (2, 3), (4, 8)], labels=list("abcdefgh"))
    again = parse_story(story_to_document(s))
    assert again == s
    assert story_from_obj(story_to_obj(s)) == s


def test_parse_story_malformed():
    with pytest.raises(ValueError):
        parse_story("not json at all")
    with pytest.raises(ValueError):
        parse_story(json.dumps({"n": 3, "omega": 2}))


def test_parse_story_drops_invisible_edge():
    doc = json.dumps({"n": 8, "omega": 5, "k": 0, "edges": [[1, 2], [1, 7]]})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s = parse_story(doc)
    assert s.edges == frozenset({(1, 2)})
    assert len(caught) == 1


class TestVisibleFilter:
    def test_k5_window5_unchanged(self):
        s = make_story(5, 5, 0, K5)
        out, removed = visible_filter(s)
        assert removed == 0 and out == s

    def test_k5_window4_drops_long_edge(self):
        out, removed = visible_filter(
            GraphStory(n=5, omega=4, k=0, edges=frozenset(K5))
        )
        assert removed == 1
        assert (1, 5) not in out.edges

    def test_path_never_filtered(self):
        s = make_story(10, 2, 0, [(i, i + 1) for i in range(1, 10)])
        assert visible_filter(s)[1] == 0

    @given(stories())
    @settings(max_examples=40, deadline=None)
    def test_idempotent(self, s):
        once, _ = visible_filter(s)
        twice, removed = visible_filter(once)
        assert removed == 0 and twice == once


class TestWindowGraph:
    def test_suffix_window(self):
        w = window_graph(make_story(8, 5, 0, [(4, 8), (1, 2)]), 8)
        assert w.vertices == tuple(range(4, 9))
        assert w.edges == ((4, 8),)

    def test_prefix_window(self):
        w = window_graph(make_story(8, 5, 0, []), 3)
        assert w.vertices == (1, 2, 3)

    def test_full_window(self):
        w = window_graph(make_story(8, 5, 0, []), 5)
        assert w.vertices == tuple(range(1, 6))

    def test_out_of_range(self):
        s = make_story(4, 2, 0, [])
        with pytest.raises(IndexError):
            window_graph(s, 0)
        with pytest.raises(IndexError):
            window_graph(s, 5)

    @given(stories(), st.integers(1, 8))
    @settings(max_examples=60, deadline=None)
    def test_consecutive_overlap(self, s, i):
        # windows i and i+1 share exactly min(omega-1, i) vertices
        if i >= s.n:
            return
        a = set(window_graph(s, i).vertices)
        b = set(window_graph(s, i + 1).vertices)
        assert len(a & b) == min(s.omega - 1, i)


class TestPlanarity:
    def test_k4(self):
        assert is_planar(range(1, 5), [(a, b) for a in range(1, 5)
                                       for b in range(a + 1, 5)])

    def test_k5(self):
        assert not is_planar(range(1, 6), K5)

    def test_every_four_vertex_graph(self):
        pairs = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
        for mask in range(1 << 6):
            es = [pairs[i] for i in range(6) if mask >> i & 1]
            assert is_planar(range(1, 5), es)

    def test_matches_rotation_oracle_small(self):
        # every graph on up to 4 vertices, both routes
        pairs = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
        for mask in range(1 << 6):
            es = [pairs[i] for i in range(6) if mask >> i & 1]
            assert is_planar(range(1, 5), es) == planar_by_rotations(
                range(1, 5), es
            )

    @given(st.integers(0, 2 ** 10 - 1))
    @settings(max_examples=80, deadline=None)
    def test_matches_rotation_oracle_five(self, mask):
        pairs = [(a, b) for a in range(1, 6) for b in range(a + 1, 6)]
        es = [pairs[i] for i in range(10) if mask >> i & 1]
        assert is_planar(range(1, 6), es) == planar_by_rotations(range(1, 6), es)

    def test_named_six_vertex_graphs(self):
        # the oracle scans all rotation systems, so keep degrees modest
        k33 = [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]
        k33e = k33 + [(1, 2)]
        prism = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6),
                 (1, 4), (2, 5), (3, 6)]
        octa = [(a, b) for a in range(1, 7) for b in range(a + 1, 7)
                if (a, b) not in {(1, 6), (2, 5), (3, 4)}]
        for es in (k33, k33e, prism, octa):
            assert is_planar(range(1, 7), es) == planar_by_rotations(
                range(1, 7), es
            )


class TestWindowChecks:
    def test_k5_story_fails_at_five(self):
        s = make_story(5, 5, 0, K5)
        assert all_windows_planar(s) == 5
        assert k5_window(s) == 5

    @given(stories(max_n=8).filter(lambda s: s.omega <= 4))
    @settings(max_examples=30, deadline=None)
    def test_narrow_windows_always_planar(self, s):
        assert all_windows_planar(s) is None

    def test_path_story_clean(self):
        s = make_story(9, 5, 0, [(i, i + 1) for i in range(1, 9)])
        assert all_windows_planar(s) is None
        assert k5_window(s) is None

    def test_k5_inside_larger_story(self):
        edges = K5 + [(5, 6), (6, 7)]
        s = make_story(7, 5, 0, edges)
        assert k5_window(s) == 5
