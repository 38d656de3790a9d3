from itertools import combinations

import pytest

from storyplan import (
    canonical_form,
    embedding_from_obj,
    embedding_problem,
    embedding_to_obj,
    enumerate_plane_embeddings,
    restrict,
    trace_faces,
)
from storyplan.embedding import remove_edge, remove_vertex

from helpers import plane_census, signature_of

K4 = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
TRIANGLE = [(1, 2), (2, 3), (1, 3)]
CUBE = [(1, 2), (1, 3), (1, 5), (2, 4), (2, 6), (3, 4), (3, 7), (4, 8),
        (5, 6), (5, 7), (6, 8), (7, 8)]
TPRISM = [(1, 2), (1, 4), (1, 5), (2, 3), (2, 6), (3, 4), (3, 7), (4, 7),
          (5, 6), (5, 8), (6, 8), (7, 8)]


@pytest.mark.parametrize(
    "vertices,edges,count",
    [
        (range(1, 2), [], 1),
        (range(1, 3), [(1, 2)], 1),
        (range(1, 4), [(1, 2), (2, 3)], 1),
        (range(1, 4), TRIANGLE, 2),
        (range(1, 5), K4, 8),
        (range(1, 7), TRIANGLE + [(4, 5), (5, 6), (4, 6)], 12),
        (range(1, 6), [(a, b) for a in range(1, 6) for b in range(a + 1, 6)], 0),
        (range(1, 9), CUBE, 12),
        (range(1, 9), TPRISM, 12),
    ],
    ids=["isolated", "edge", "path3", "triangle", "k4", "two-triangles",
         "k5", "cube", "truncated-prism"],
)
def test_enumeration_matches_brute_force(vertices, edges, count):
    """Counts pinned by the independent rotation-system search."""
    pkg = enumerate_plane_embeddings(vertices, edges)
    assert len(pkg) == count
    assert {signature_of(e) for e in pkg} == plane_census(vertices, edges)


def test_enumeration_all_four_vertex_graphs():
    pairs = list(combinations(range(1, 5), 2))
    for mask in range(1 << 6):
        es = [pairs[i] for i in range(6) if mask >> i & 1]
        pkg = enumerate_plane_embeddings(range(1, 5), es)
        assert {signature_of(e) for e in pkg} == plane_census(range(1, 5), es)


def test_enumeration_deterministic_order():
    a = enumerate_plane_embeddings(range(1, 5), K4)
    b = enumerate_plane_embeddings(range(1, 5), K4)
    assert [canonical_form(x) for x in a] == [canonical_form(x) for x in b]
    keys = [canonical_form(x) for x in a]
    assert keys == sorted(keys)


def test_enumeration_refuses_large_input():
    with pytest.raises(ValueError):
        enumerate_plane_embeddings(range(1, 20), [], max_vertices=12)


def test_connected_count_is_rotations_times_faces():
    # one sphere map for K4 times 4 faces each, two maps total
    embs = enumerate_plane_embeddings(range(1, 5), K4)
    by_rot = {}
    for e in embs:
        by_rot.setdefault(tuple(sorted(e.rotations)), []).append(e)
    assert len(by_rot) == 2
    assert all(len(group) == 4 for group in by_rot.values())


def _containment_of(emb):
    """Outward-orbit and host maps recovered from stored face records."""
    comp_of = {}
    rot = dict(emb.rotations)
    for v in rot:
        if v in comp_of or not rot[v]:
            continue
        seen, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in rot[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        cid = min(seen)
        for x in seen:
            comp_of[x] = cid

    out, host, todo = {}, {}, []
    outer = emb.faces[emb.outer]
    for w in outer.walks:
        cid = comp_of[w[0][0]]
        out[cid] = w
        host[cid] = None
        todo.append(cid)
    for v in outer.isolated:
        host[v] = None
    walks_by_comp = {}
    for f in emb.faces:
        for w in f.walks:
            walks_by_comp.setdefault(comp_of[w[0][0]], []).append(w)
    face_of_walk = {w: f for f in emb.faces for w in f.walks}
    while todo:
        cid = todo.pop()
        for w in walks_by_comp[cid]:
            if w == out[cid]:
                continue
            f = face_of_walk[w]
            for w2 in f.walks:
                if w2 == w:
                    continue
                cid2 = comp_of[w2[0][0]]
                out[cid2] = w2
                host[cid2] = (cid, w)
                todo.append(cid2)
            for v in f.isolated:
                host[v] = (cid, w)
    return out, host


class TestTraceFaces:
    def test_triangle(self):
        emb = enumerate_plane_embeddings(range(1, 4), TRIANGLE)[0]
        assert len(emb.faces) == 2

    def test_k4(self):
        emb = enumerate_plane_embeddings(range(1, 5), K4)[0]
        assert len(emb.faces) == 4

    def test_nested_triangles_outer(self):
        embs = enumerate_plane_embeddings(
            range(1, 7), TRIANGLE + [(4, 5), (5, 6), (4, 6)]
        )
        nested = [
            e for e in embs
            if len(e.faces[e.outer].walks) == 1
        ]
        # 8 of the 12 embeddings nest one triangle inside the other
        assert len(nested) == 8
        for e in nested:
            outer_verts = {d[0] for w in e.faces[e.outer].walks for d in w}
            assert outer_verts in ({1, 2, 3}, {4, 5, 6})

    def test_roundtrip_against_stored_faces(self):
        # rebuild the containment data from the face records, re-trace, and
        # demand the exact same faces back
        for edges in (TRIANGLE, K4, [(1, 2), (2, 3)], TRIANGLE + [(4, 5)]):
            verts = sorted({v for e in edges for v in e} | {5})
            for emb in enumerate_plane_embeddings(verts, edges):
                out, host = _containment_of(emb)
                faces, outer = trace_faces(dict(emb.rotations), out, host)
                assert sorted(f.key() for f in faces) == sorted(
                    f.key() for f in emb.faces
                )
                assert outer.key() == emb.faces[emb.outer].key()


class TestRestrict:
    def test_identity(self):
        emb = enumerate_plane_embeddings(range(1, 5), K4)[0]
        assert canonical_form(restrict(emb, range(1, 5))) == canonical_form(emb)

    def test_k4_to_triangle(self):
        emb = enumerate_plane_embeddings(range(1, 5), K4)[0]
        tri = restrict(emb, {1, 2, 3})
        assert {tuple(sorted(ns)) for _, ns in tri.rotations} == {(2, 3), (1, 3), (1, 2)}
        assert len(tri.faces) == 2

    def test_path_to_isolated_pair(self):
        emb = enumerate_plane_embeddings(range(1, 4), [(1, 2), (2, 3)])[0]
        out = restrict(emb, {1, 3})
        assert len(out.faces) == 1
        assert sorted(out.faces[0].isolated) == [1, 3]

    def test_order_independence(self):
        for emb in enumerate_plane_embeddings(range(1, 7),
                                              TRIANGLE + [(3, 4), (4, 5), (5, 6)]):
            one = restrict(restrict(emb, {1, 2, 3, 4, 5}), {1, 2, 3})
            other = restrict(restrict(emb, {1, 2, 3, 6}), {1, 2, 3})
            assert canonical_form(one) == canonical_form(other)


class TestRemoval:
    def test_remove_vertex_reports_new_face(self):
        emb = enumerate_plane_embeddings(range(1, 5), K4)[0]
        res = remove_vertex(emb, 4)
        assert res.new_face is not None
        assert len(res.embedding.faces) == 2
        # untouched faces keep their identity through the face map
        assert len(res.face_map) == len(emb.faces)

    def test_remove_edge_merges_two_faces(self):
        emb = enumerate_plane_embeddings(range(1, 4), TRIANGLE)[0]
        res = remove_edge(emb, (1, 2))
        assert len(res.embedding.faces) == 1

    def test_remove_bridge_keeps_face_count(self):
        emb = enumerate_plane_embeddings(range(1, 3), [(1, 2)])[0]
        res = remove_edge(emb, (1, 2))
        assert len(res.embedding.faces) == 1
        assert sorted(res.embedding.faces[0].isolated) == [1, 2]


class TestCanonicalForm:
    def test_outer_face_distinguishes(self):
        a, b = enumerate_plane_embeddings(range(1, 4), TRIANGLE)
        assert canonical_form(a) != canonical_form(b)

    def test_mirror_distinguishes(self):
        keys = {canonical_form(e)
                for e in enumerate_plane_embeddings(range(1, 5), K4)}
        assert len(keys) == 8

    def test_serialization_roundtrip(self):
        for emb in enumerate_plane_embeddings(range(1, 5), K4):
            again = embedding_from_obj(embedding_to_obj(emb))
            assert canonical_form(again) == canonical_form(emb)


def test_embedding_problem_accepts_enumerated():
    for emb in enumerate_plane_embeddings(range(1, 5), K4):
        assert embedding_problem(emb, tuple(range(1, 5)), tuple(K4)) is None


def test_embedding_problem_rejects_wrong_graph():
    emb = enumerate_plane_embeddings(range(1, 4), TRIANGLE)[0]
    assert embedding_problem(emb, (1, 2, 3), ((1, 2), (2, 3))) is not None
