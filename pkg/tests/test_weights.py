import pytest
from hypothesis import given, settings, strategies as st

from storyplan import (
    WeightedEmbedding,
    compatible,
    distribute_weights,
    enumerate_plane_embeddings,
    weighted_from_obj,
    weighted_key,
    weighted_to_obj,
    window_graph,
)
from storyplan.generators import gen_path_story
from storyplan.weights import remove_vertex

K4 = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
TRIANGLE = [(1, 2), (2, 3), (1, 3)]


def _emb(vertices, edges, idx=0):
    return enumerate_plane_embeddings(vertices, edges)[idx]


@pytest.mark.parametrize("faces,k,count", [(2, 0, 1), (3, 2, 6), (2, 3, 4)])
def test_distribution_counts(faces, k, count):
    if faces == 2:
        emb = _emb(range(1, 4), TRIANGLE)
    else:
        emb = _emb(range(1, 5), [(1, 2), (2, 3), (1, 3), (3, 4), (1, 4)])
    assert len(emb.faces) == faces
    outs = distribute_weights(emb, k)
    assert len(outs) == count
    assert all(w.total == k for w in outs)
    assert len({weighted_key(w) for w in outs}) == count


def test_remove_vertex_from_k4():
    w = distribute_weights(_emb(range(1, 5), K4), 0)[0]
    out = remove_vertex(w, 4)
    assert out.total == 1
    assert sorted(out.weights) == [0, 1]
    assert len(out.embedding.faces) == 2


def test_remove_isolated_vertex_bumps_host_face():
    emb = _emb(range(1, 5), TRIANGLE)
    for w in distribute_weights(emb, 1):
        host = next(
            i for i, f in enumerate(emb.faces) if 4 in f.isolated
        )
        out = remove_vertex(w, 4)
        assert out.total == 2
        assert out.weights[host] == w.weights[host] + 1


def test_remove_cut_vertex_of_path():
    w = distribute_weights(_emb(range(1, 4), [(1, 2), (2, 3)]), 0)[0]
    out = remove_vertex(w, 2)
    assert len(out.embedding.faces) == 1
    assert sorted(out.embedding.faces[0].isolated) == [1, 3]
    assert out.weights == (1,)


@given(st.integers(0, 7), st.integers(0, 2), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_removal_conserves_weight(emb_idx, k, victim):
    embs = enumerate_plane_embeddings(range(1, 5), K4)
    w = distribute_weights(embs[emb_idx], k)[0]
    out = remove_vertex(w, victim)
    assert out.total == w.total + 1
    assert sum(out.weights) == out.total


def test_compatible_empty_intersection():
    # window 1 stories share nothing; any pair of single-vertex frames joins
    a = distribute_weights(_emb([1], []), 0)[0]
    b = distribute_weights(_emb([2], []), 0)[0]
    assert compatible(a, b, 1, 2)


def test_compatible_along_path_story():
    story = gen_path_story(5, 3)
    wins = {i: window_graph(story, i) for i in (4, 5)}
    picks = {}
    for i, win in wins.items():
        for emb in enumerate_plane_embeddings(win.vertices, win.edges):
            picks.setdefault(i, []).append(distribute_weights(emb, 0)[0])
    joined = [
        (a, b)
        for a in picks[4]
        for b in picks[5]
        if compatible(a, b, 2, 5)
    ]
    assert joined


def test_compatible_reflexive_on_shared_removal():
    w = distribute_weights(_emb(range(1, 5), K4), 0)[0]
    key = weighted_key(remove_vertex(w, 1))
    assert key == weighted_key(remove_vertex(w, 1))


def test_minimal_removal_has_single_marked_face():
    # with k=0 the removal frees exactly one point, so exactly one face
    # carries weight 1 and the rest carry 0
    for edges in (K4, TRIANGLE + [(3, 4), (1, 4)], [(1, 2), (2, 3), (3, 4)]):
        verts = sorted({v for e in edges for v in e})
        for emb in enumerate_plane_embeddings(verts, edges):
            zero = distribute_weights(emb, 0)[0]
            for v in verts:
                out = remove_vertex(zero, v)
                assert sorted(out.weights, reverse=True)[0] == 1
                assert sum(out.weights) == 1


def test_weighted_key_separates_distributions():
    emb = _emb(range(1, 4), TRIANGLE)
    a, b = distribute_weights(emb, 1)
    assert weighted_key(a) != weighted_key(b)


def test_weighted_key_sees_outer_face():
    one, two = enumerate_plane_embeddings(range(1, 4), TRIANGLE)
    assert weighted_key(distribute_weights(one, 0)[0]) != weighted_key(
        distribute_weights(two, 0)[0]
    )


def test_weighted_serialization_roundtrip():
    for w in distribute_weights(_emb(range(1, 5), K4), 2)[:5]:
        again = weighted_from_obj(weighted_to_obj(w))
        assert weighted_key(again) == weighted_key(w)
        assert isinstance(again, WeightedEmbedding)
