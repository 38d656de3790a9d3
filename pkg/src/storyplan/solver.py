"""Realizability decision by a layered graph of weighted window embeddings.

One layer per full-size window, one node per face-weighted embedding of that
window graph.  Consecutive nodes are linked when deleting the departing
vertex from the earlier one and the arriving vertex from the later one give
the same weighted embedding of the shared subgraph; a story is realizable
exactly when a chain of links crosses all layers.  Links are found by an
equality join on the two removal keys rather than a pairwise scan, which is
the same predicate by definition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .embedding import (
    CombinatorialEmbedding,
    embedding_problem,
    enumerate_plane_embeddings,
    restrict,
)
from .story import (
    GraphStory,
    all_windows_planar,
    story_from_obj,
    story_to_obj,
    window_graph,
)
from .weights import (
    WeightedEmbedding,
    compatible,
    distribute_weights,
    remove_vertex,
    weighted_from_obj,
    weighted_key,
    weighted_to_obj,
)


class WindowNotPlanarError(Exception):
    """Some window graph is non-planar; no drawing of any kind exists."""

    def __init__(self, index: int):
        super().__init__(f"window graph at index {index} is not planar")
        self.index = index


class BoundExceededError(Exception):
    """A configured resource cap (layer size, vertex count) was hit."""


class LayerBoundExceededError(BoundExceededError):
    """A layer grew past the configured node cap."""

    def __init__(self, index: int, size: int, cap: int):
        super().__init__(
            f"layer {index} holds {size} nodes, exceeding the cap of {cap}"
        )
        self.index = index
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class LayerNode:
    """One weighted embedding of one window, with its two removal keys.

    ``in_key`` identifies the weighted embedding left after deleting the
    newest vertex ``i``; ``out_key`` the one after deleting the vertex that
    departs next, ``i - omega + 1``.  A key is None when the corresponding
    removal would empty the window (single-vertex windows).
    """

    i: int
    weighted: WeightedEmbedding
    in_key: bytes | None
    out_key: bytes | None


@dataclass(frozen=True)
class Certificate:
    """A compatible chain of weighted window embeddings proving realizability."""

    story: GraphStory
    sequence: tuple[WeightedEmbedding, ...]

    @property
    def start(self) -> int:
        return self.story.n - len(self.sequence) + 1

    def entry(self, i: int) -> WeightedEmbedding:
        return self.sequence[i - self.start]


def _check_normalized(story: GraphStory) -> None:
    if not story.visible_only():
        raise ValueError(
            "story holds invisible edges; apply visible_filter before solving"
        )


def _layer_nodes(story: GraphStory, i: int) -> list[LayerNode]:
    win = window_graph(story, i)
    nodes: list[LayerNode] = []
    single = len(win.vertices) == 1
    first_out = win.lo
    for emb in enumerate_plane_embeddings(
        win.vertices, win.edges, max_vertices=len(win.vertices)
    ):
        for w in distribute_weights(emb, story.k):
            in_key = None if single else weighted_key(remove_vertex(w, i))
            out_key = None if single else weighted_key(remove_vertex(w, first_out))
            nodes.append(LayerNode(i, w, in_key, out_key))
    return nodes


def _degenerate_certificate(story: GraphStory) -> Certificate:
    win = window_graph(story, story.n)
    best: WeightedEmbedding | None = None
    for emb in enumerate_plane_embeddings(
        win.vertices, win.edges, max_vertices=len(win.vertices)
    ):
        for w in distribute_weights(emb, story.k):
            if best is None or weighted_key(w) < weighted_key(best):
                best = w
    assert best is not None
    return Certificate(story, (best,))


def realize(
    story: GraphStory, *, max_layer: int | None = None
) -> Certificate | None:
    """Certificate for a realizable story, None for an unrealizable one.

    Deterministic: among all certificates the one whose per-layer canonical
    keys are lexicographically smallest is returned.  Raises
    WindowNotPlanarError when some window graph is not planar and
    LayerBoundExceededError when a layer outgrows ``max_layer``.
    """
    _check_normalized(story)
    bad = all_windows_planar(story)
    if bad is not None:
        raise WindowNotPlanarError(bad)
    if story.n <= story.omega:
        # A single window contains the whole graph; the chain condition is
        # vacuous and planarity has already been established.
        return _degenerate_certificate(story)

    layers: list[list[LayerNode]] = []
    for i in range(story.omega, story.n + 1):
        nodes = _layer_nodes(story, i)
        if max_layer is not None and len(nodes) > max_layer:
            raise LayerBoundExceededError(i, len(nodes), max_layer)
        if layers:
            admitted = {p.out_key for p in layers[-1]}
            nodes = [v for v in nodes if v.in_key in admitted]
        if not nodes:
            return None
        layers.append(nodes)

    # Backward pass: keep only nodes from which the last layer is reachable.
    alive = layers[-1]
    for idx in range(len(layers) - 2, -1, -1):
        wanted = {v.in_key for v in alive}
        alive = [v for v in layers[idx] if v.out_key in wanted]
        if not alive:
            return None
        layers[idx] = alive
    layers[-1] = sorted(layers[-1], key=lambda v: weighted_key(v.weighted))

    chain: list[WeightedEmbedding] = []
    need_in: bytes | None = None
    for idx, layer in enumerate(layers):
        if idx > 0:
            layer = [v for v in layer if v.in_key == need_in]
        pick = min(layer, key=lambda v: weighted_key(v.weighted))
        chain.append(pick.weighted)
        need_in = pick.out_key
    return Certificate(story, tuple(chain))


def min_k(story: GraphStory, k_max: int, *, max_layer: int | None = None) -> int | None:
    """Smallest k in [0, k_max] making the story realizable, else None.

    Realizability is monotone in k, so the scan stops at the first success.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    for k in range(k_max + 1):
        if realize(replace(story, k=k), max_layer=max_layer) is not None:
            return k
    return None


# ---------------------------------------------------------------------------
# verification


def certificate_problem(story: GraphStory, cert: Certificate) -> str | None:
    """First defect of the certificate against the story, or None if valid.

    Every check recomputes from definitions: window graphs, embedding
    validity, weight totals and pairwise compatibility.  No solver state is
    consulted.
    """
    if story_to_obj(cert.story) != story_to_obj(story):
        return "certificate refers to a different story"
    expected_start = min(story.omega, story.n)
    if cert.start != expected_start:
        return (
            f"certificate covers windows from {cert.start}, expected {expected_start}"
        )
    expected_total = story.k
    for i in range(expected_start, story.n + 1):
        w = cert.entry(i)
        win = window_graph(story, i)
        problem = embedding_problem(w.embedding, win.vertices, win.edges)
        if problem is not None:
            return f"window {i}: {problem}"
        if w.total != expected_total:
            return f"window {i}: weight total {w.total}, expected {expected_total}"
    for i in range(expected_start + 1, story.n + 1):
        if not compatible(cert.entry(i - 1), cert.entry(i), i - story.omega, i):
            return f"windows {i - 1} and {i} are not compatible"
    return None


def verify_certificate(story: GraphStory, cert: Certificate) -> bool:
    return certificate_problem(story, cert) is None


# ---------------------------------------------------------------------------
# independent brute-force oracle


def brute_force_realize(story: GraphStory) -> Certificate | None:
    """Depth-first search over full per-layer enumerations, no key join.

    Compatibility of consecutive picks is recomputed from scratch each time.
    Hard caps keep this honest and slow: n <= 12 and omega + k <= 5.
    """
    if story.n > 12:
        raise ValueError("brute force oracle caps n at 12")
    if story.omega + story.k > 5:
        raise ValueError("brute force oracle caps omega + k at 5")
    _check_normalized(story)
    bad = all_windows_planar(story)
    if bad is not None:
        raise WindowNotPlanarError(bad)
    if story.n <= story.omega:
        return _degenerate_certificate(story)

    start = story.omega
    layers: list[list[WeightedEmbedding]] = []
    for i in range(start, story.n + 1):
        win = window_graph(story, i)
        options = [
            w
            for emb in enumerate_plane_embeddings(
                win.vertices, win.edges, max_vertices=len(win.vertices)
            )
            for w in distribute_weights(emb, story.k)
        ]
        layers.append(sorted(options, key=weighted_key))

    chain: list[WeightedEmbedding] = []

    def extend(idx: int) -> bool:
        if idx == len(layers):
            return True
        i = start + idx
        for w in layers[idx]:
            if chain and not compatible(chain[-1], w, i - story.omega, i):
                continue
            chain.append(w)
            if extend(idx + 1):
                return True
            chain.pop()
        return False

    if not extend(0):
        return None
    return Certificate(story, tuple(chain))


# ---------------------------------------------------------------------------
# supporting embeddings


def _chain_realizable(
    story: GraphStory, chain: list[CombinatorialEmbedding]
) -> tuple[WeightedEmbedding, ...] | None:
    """Weight the fixed embedding chain so that it becomes compatible, if possible."""
    start = min(story.omega, story.n)
    weighted_layers: list[list[WeightedEmbedding]] = [
        distribute_weights(emb, story.k) for emb in chain
    ]
    partial: list[WeightedEmbedding] = []

    def extend(idx: int) -> bool:
        if idx == len(weighted_layers):
            return True
        i = start + idx
        for w in weighted_layers[idx]:
            if partial and not compatible(partial[-1], w, i - story.omega, i):
                continue
            partial.append(w)
            if extend(idx + 1):
                return True
            partial.pop()
        return False

    return tuple(partial) if extend(0) else None


def find_supporting_embedding(
    story: GraphStory, *, max_vertices: int = 12
) -> CombinatorialEmbedding | None:
    """An embedding of the whole graph whose window restrictions realize the story.

    Scans every plane embedding of G in canonical order and returns the first
    whose restriction chain can be weighted into a compatible sequence; None
    when no embedding of G supports the story.
    """
    _check_normalized(story)
    vertices = tuple(range(1, story.n + 1))
    start = min(story.omega, story.n)
    windows = [window_graph(story, i) for i in range(start, story.n + 1)]
    for phi in enumerate_plane_embeddings(
        vertices, sorted(story.edges), max_vertices=max_vertices
    ):
        chain = [restrict(phi, win.vertices) for win in windows]
        if _chain_realizable(story, chain) is not None:
            return phi
    return None


def supporting_certificate(
    story: GraphStory, phi: CombinatorialEmbedding
) -> Certificate | None:
    """Certificate formed by restricting one embedding of G, when compatible."""
    start = min(story.omega, story.n)
    chain = [
        restrict(phi, window_graph(story, i).vertices)
        for i in range(start, story.n + 1)
    ]
    weights = _chain_realizable(story, chain)
    if weights is None:
        return None
    return Certificate(story, weights)


# ---------------------------------------------------------------------------
# serialization


def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "story": story_to_obj(cert.story),
        "sequence": [weighted_to_obj(w) for w in cert.sequence],
    }


def certificate_from_obj(obj: object) -> Certificate:
    if not isinstance(obj, dict) or "story" not in obj or "sequence" not in obj:
        raise ValueError("malformed certificate: expected story and sequence fields")
    story = story_from_obj(obj["story"])
    seq = tuple(weighted_from_obj(rec) for rec in obj["sequence"])
    if not seq:
        raise ValueError("malformed certificate: empty sequence")
    return Certificate(story, seq)


def certificate_to_document(cert: Certificate) -> str:
    return json.dumps(certificate_to_obj(cert), indent=2) + "\n"


def parse_certificate(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed certificate: {exc}") from exc
    return certificate_from_obj(obj)
