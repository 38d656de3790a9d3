"""Fast paths and diagnostics for structured stories.

Three independent tools live here: a certificate shortcut for outerplanar
graphs, a realization mode for window 5 that may redraw one edge per step,
and embedding diagnostics that detect cycles trapping a short-lived vertex.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import networkx as nx

from .embedding import (
    CombinatorialEmbedding,
    Face,
    canonical_form,
    embed_connected,
    enumerate_plane_embeddings,
    face_orbits,
    remove_vertex,
    restrict,
)
from .solver import BoundExceededError, Certificate, _check_normalized, certificate_problem
from .story import Edge, GraphStory, is_planar, k5_window, window_graph
from .weights import WeightedEmbedding
from .weights import remove_vertex as remove_weighted


class ContainsK5Error(Exception):
    """Some window graph is a complete graph on five vertices."""

    def __init__(self, index: int):
        super().__init__(f"window graph at index {index} contains K5")
        self.index = index


# ---------------------------------------------------------------------------
# outerplanar shortcut


def outerplanar_certificate(story: GraphStory) -> Certificate | None:
    """Certificate of restrictions of an outerplanar embedding, if one exists.

    When every vertex lies on the outer face, deleting any vertex merges its
    faces into the outer face, so both removals in the compatibility check
    land their weight on the same face and the restriction chain verifies
    as-is.  Returns None for non-outerplanar graphs; the caller falls back to
    the full solver.
    """
    if story.k != 0:
        raise ValueError("the outerplanar shortcut applies to k=0 stories only")
    _check_normalized(story)
    apex = 0
    G = nx.Graph(sorted(story.edges))
    G.add_nodes_from(range(1, story.n + 1))
    G.add_edges_from((apex, v) for v in range(1, story.n + 1))
    ok, planar = nx.check_planarity(G)
    if not ok:
        return None

    rotations = {v: tuple(planar.neighbors_cw_order(v)) for v in G.nodes}
    outer_walk = next(w for w in face_orbits(rotations) if any(apex in d for d in w))
    with_apex = embed_connected(rotations, outer_walk)
    phi = remove_vertex(with_apex, apex).embedding
    outer = phi.outer_face
    assert outer.boundary_vertices() == frozenset(range(1, story.n + 1))

    start = min(story.omega, story.n)
    sequence = []
    for i in range(start, story.n + 1):
        emb = restrict(phi, window_graph(story, i).vertices)
        sequence.append(WeightedEmbedding(emb, (0,) * len(emb.faces)))
    cert = Certificate(story, tuple(sequence))
    problem = certificate_problem(story, cert)
    if problem is not None:
        raise RuntimeError(f"outerplanar chain failed verification: {problem}")
    return cert


# ---------------------------------------------------------------------------
# window-5 realization with one redraw per step


@dataclass(frozen=True)
class Reroute:
    """One redrawn edge: the free point moves from ``source`` to ``target``.

    Both faces belong to the four-vertex embedding shared by steps ``step-1``
    and ``step``; the redrawn edge lies on both boundaries.
    """

    step: int
    edge: Edge
    source: Face
    target: Face


@dataclass(frozen=True)
class RerouteRealization:
    """Per-step window embeddings on five fixed point roles, plus the redo log.

    ``steps[i-1]`` is the embedding of the window graph at step i; vertex v
    occupies point role (v-1) mod 5.  Consecutive steps agree on their shared
    subgraph except for at most one redrawn edge per step.
    """

    story: GraphStory
    steps: tuple[CombinatorialEmbedding, ...]
    reroutes: tuple[Reroute, ...]

    def reroute_at(self, step: int) -> Reroute | None:
        for r in self.reroutes:
            if r.step == step:
                return r
        return None


@dataclass(frozen=True)
class _RerouteNode:
    emb: CombinatorialEmbedding
    in_red: WeightedEmbedding
    out_red: WeightedEmbedding

    @property
    def in_key(self) -> bytes:
        return canonical_form(self.in_red.embedding)

    @property
    def out_key(self) -> bytes:
        return canonical_form(self.out_red.embedding)


def _zero(emb: CombinatorialEmbedding) -> WeightedEmbedding:
    return WeightedEmbedding(emb, (0,) * len(emb.faces))


def _mark(red: WeightedEmbedding) -> int:
    """Index of the face holding the freed point after a removal."""
    return red.weights.index(1)


def _shared_edges(emb: CombinatorialEmbedding, fi: int, fj: int) -> list[Edge]:
    """Edges with one side on face fi and the other on face fj."""
    di = {d for w in emb.faces[fi].walks for d in w}
    dj = {d for w in emb.faces[fj].walks for d in w}
    return sorted({(min(a, b), max(a, b)) for (a, b) in di if (b, a) in dj})


def _step_link(prev: _RerouteNode, nxt: _RerouteNode) -> tuple[bool, list[Edge]]:
    """Whether the windows can follow each other; the edges a redraw may use.

    The reduced embeddings must agree outright.  The freed point must then
    sit in the arrival face already (no redraw, empty edge list) or in a face
    separated from it by a single edge, which a redraw carries it across.
    """
    if prev.out_red.embedding != nxt.in_red.embedding:
        return False, []
    src, tgt = _mark(prev.out_red), _mark(nxt.in_red)
    if src == tgt:
        return True, []
    edges = _shared_edges(prev.out_red.embedding, src, tgt)
    return bool(edges), edges


def one_reroute_realize(story: GraphStory) -> RerouteRealization:
    """Realize a window-5 minimal story, redrawing at most one edge per step.

    Raises ContainsK5Error exactly when some window is a complete five-vertex
    graph; every other window-5 story goes through, because a four-vertex
    plane graph's faces are pairwise adjacent, so one redraw moves the freed
    point wherever the next arrival needs it.
    """
    if story.omega != 5 or story.k != 0:
        raise ValueError("one-reroute realization requires omega=5 and k=0")
    _check_normalized(story)
    bad = k5_window(story)
    if bad is not None:
        raise ContainsK5Error(bad)

    def embeddings_of(i: int) -> list[CombinatorialEmbedding]:
        win = window_graph(story, i)
        found = enumerate_plane_embeddings(win.vertices, win.edges)
        if not found:
            raise RuntimeError(f"window {i} has no plane embedding")
        return found

    if story.n <= 5:
        phi = embeddings_of(story.n)[0]
        steps = [restrict(phi, range(1, i + 1)) for i in range(1, story.n)]
        return RerouteRealization(story, (*steps, phi), ())

    layers: list[list[_RerouteNode]] = []
    for i in range(5, story.n + 1):
        nodes = [
            _RerouteNode(emb, remove_weighted(_zero(emb), i), remove_weighted(_zero(emb), i - 4))
            for emb in embeddings_of(i)
        ]
        if layers:
            by_out: set[bytes] = {p.out_key for p in layers[-1]}
            nodes = [
                nd
                for nd in nodes
                if nd.in_key in by_out
                and any(_step_link(p, nd)[0] for p in layers[-1] if p.out_key == nd.in_key)
            ]
        if not nodes:
            raise RuntimeError(f"no continuation into window {i}")
        layers.append(nodes)

    alive: list[list[_RerouteNode]] = [layers[-1]]
    for layer in reversed(layers[:-1]):
        nxt = alive[0]
        alive.insert(
            0, [p for p in layer if any(_step_link(p, nd)[0] for nd in nxt)]
        )
        if not alive[0]:
            raise RuntimeError("pruning emptied a layer")

    chain = [min(alive[0], key=lambda nd: canonical_form(nd.emb))]
    for layer in alive[1:]:
        options = [nd for nd in layer if _step_link(chain[-1], nd)[0]]
        chain.append(min(options, key=lambda nd: canonical_form(nd.emb)))

    reroutes = []
    for j in range(1, len(chain)):
        prev, cur = chain[j - 1], chain[j]
        ok, edges = _step_link(prev, cur)
        assert ok
        if edges:
            emb = prev.out_red.embedding
            reroutes.append(
                Reroute(
                    step=5 + j,
                    edge=edges[0],
                    source=emb.faces[_mark(prev.out_red)],
                    target=emb.faces[_mark(cur.in_red)],
                )
            )

    prefix = [restrict(chain[0].emb, range(1, i + 1)) for i in range(1, 5)]
    steps = (*prefix, *(nd.emb for nd in chain))
    return RerouteRealization(story, steps, tuple(reroutes))


# ---------------------------------------------------------------------------
# trapped-vertex diagnostics


@dataclass(frozen=True)
class CriticalCycle:
    """A drawn cycle with a vertex inside that outlives none of its jailers."""

    cycle: tuple[int, ...]
    witness: int


def coeval(story: GraphStory, u: int, v: int) -> bool:
    """Whether two vertices appear together in some window."""
    for x in (u, v):
        if not 1 <= x <= story.n:
            raise ValueError(f"vertex {x} out of range")
    return abs(u - v) <= story.omega - 1


def _edge_life(story: GraphStory, e: Edge) -> tuple[int, int]:
    u, v = e
    return max(u, v), min(u, v) + story.omega - 1


def edges_coeval(story: GraphStory, e: Edge, f: Edge) -> bool:
    """Whether two edges are drawn together in some window."""
    lo_e, hi_e = _edge_life(story, e)
    lo_f, hi_f = _edge_life(story, f)
    return lo_e <= hi_f and lo_f <= hi_e


def _canon_cycle(cycle: list[int]) -> tuple[int, ...]:
    at = cycle.index(min(cycle))
    rolled = cycle[at:] + cycle[:at]
    if len(rolled) > 2 and rolled[-1] < rolled[1]:
        rolled = [rolled[0]] + rolled[1:][::-1]
    return tuple(rolled)


def _interior_faces(emb: CombinatorialEmbedding, cycle_edges: set[Edge]) -> set[int]:
    """Faces strictly inside the cycle: unreachable from the outer face in the
    dual graph once the cycle's edges are removed from it."""
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(emb.faces))}
    sides: dict[Edge, list[int]] = {}
    for idx, f in enumerate(emb.faces):
        for w in f.walks:
            for a, b in w:
                sides.setdefault((min(a, b), max(a, b)), []).append(idx)
    for e, fs in sides.items():
        if e in cycle_edges:
            continue
        for i in fs:
            for j in fs:
                adjacency[i].add(j)
    seen = {emb.outer}
    stack = [emb.outer]
    while stack:
        for j in adjacency[stack.pop()] - seen:
            seen.add(j)
            stack.append(j)
    return set(range(len(emb.faces))) - seen


def _witness_range(story: GraphStory) -> range:
    # arrivals in the first or last three positions are never trapped:
    # their whole neighborhood is still arriving or already leaving
    return range(4, story.n - 2)


def critical_cycles(
    story: GraphStory,
    embedding: CombinatorialEmbedding,
    crossings: Mapping[int, tuple[Edge, Edge]] | None = None,
) -> list[CriticalCycle]:
    """All drawn cycles enclosing a vertex that coexists with the whole cycle.

    ``embedding`` covers the full graph; crossings, if any, enter planarized
    as marked dummy vertices, with ``crossings`` naming the two original
    edges meeting at each dummy.  A cycle through a dummy counts only when it
    runs straight through, i.e. stays on one original edge.  For cubic
    triconnected graphs only cycle lengths six to eight can trap anyone, so
    the search is clipped accordingly.  One record per cycle, smallest
    witness.
    """
    crossings = dict(crossings or {})
    n = story.n
    degrees: dict[int, int] = {v: 0 for v in range(1, n + 1)}
    for u, v in story.edges:
        degrees[u] += 1
        degrees[v] += 1
    Gs = nx.Graph(sorted(story.edges))
    Gs.add_nodes_from(range(1, n + 1))
    clipped = (
        n >= 5
        and all(d == 3 for d in degrees.values())
        and nx.node_connectivity(Gs) >= 3
    )
    min_len, max_len = (6, 8) if clipped else (3, None)

    Gp = nx.Graph(sorted(embedding.edges()))
    Gp.add_nodes_from(embedding.vertices)

    found: dict[tuple[int, ...], int] = {}
    for cyc in nx.simple_cycles(Gp, length_bound=max_len):
        ok = True
        required: set[int] = set()
        for at, x in enumerate(cyc):
            if x in crossings:
                around = {cyc[at - 1], cyc[(at + 1) % len(cyc)]}
                for e in crossings[x]:
                    if around == set(e):
                        required |= set(e)
                        break
                else:
                    ok = False
                    break
            else:
                required.add(x)
        reals = [x for x in cyc if x not in crossings]
        if not ok or len(reals) < min_len or (max_len and len(reals) > max_len):
            continue
        edges_of_cycle = {
            (min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])
        }
        interior = _interior_faces(embedding, edges_of_cycle)
        if not interior:
            continue
        on_cycle = set(cyc)
        for w in _witness_range(story):
            if w in on_cycle or w in crossings:
                continue
            if any(abs(w - c) > story.omega - 1 for c in required):
                continue
            if embedding.faces_with(w) and embedding.faces_with(w)[0] in interior:
                key = _canon_cycle(reals)
                if key not in found or w < found[key]:
                    found[key] = w
                break
    return [CriticalCycle(c, w) for c, w in sorted(found.items())]


def is_good_embedding(
    story: GraphStory,
    embedding: CombinatorialEmbedding,
    crossings: Mapping[int, tuple[Edge, Edge]] | None = None,
) -> bool:
    """No cycle traps a coeval vertex and no two coeval edges cross."""
    crossings = dict(crossings or {})
    for e, f in crossings.values():
        if edges_coeval(story, e, f):
            return False
    return not critical_cycles(story, embedding, crossings)


def search_good_embedding(
    story: GraphStory, *, max_vertices: int = 12
) -> CombinatorialEmbedding | None:
    """First crossing-free good embedding of the whole graph, by key order.

    None means the planar search is exhausted; a good embedding with
    crossings between non-coeval edges could still exist, so None is not a
    proof of absence.
    """
    if story.n > max_vertices:
        raise BoundExceededError(
            f"graph has {story.n} vertices, above the search cap of {max_vertices}"
        )
    vertices = tuple(range(1, story.n + 1))
    if not is_planar(vertices, story.edges):
        raise ValueError("the graph is not planar; crossing layouts are not searched")
    for phi in enumerate_plane_embeddings(vertices, sorted(story.edges)):
        if is_good_embedding(story, phi):
            return phi
    return None
