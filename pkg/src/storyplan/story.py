"""Graph stories: instances, normalization, and sliding-window extraction.

A graph story is a graph whose vertices arrive one per time step and stay
alive for ``omega`` steps.  Vertices are identified with their arrival
positions ``1..n``; the arrival order is therefore implicit.  At time ``i``
the *window graph* ``G_i`` is the subgraph induced by the (up to) ``omega``
most recent vertices.  The drawings of all windows must share ``omega + k``
fixed points, ``k`` being the number of extra points beyond the window size.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field

import networkx as nx

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class GraphStory:
    """An ``n``-vertex story with window size ``omega`` and ``k`` extra points.

    ``edges`` holds unordered pairs of 1-based arrival indices, normalized to
    ``u < v``.  Edges with ``v - u >= omega`` ("invisible": the endpoints never
    share a window) are permitted by the constructor, so that normalization via
    :func:`visible_filter` is an explicit, observable step.  ``labels``, when
    present, keeps the original input names of the vertices for reporting; it
    plays no role in any algorithm.
    """

    n: int
    omega: int
    k: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.omega < 1:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.k < 0:
            raise ValueError(f"extra point count must be non-negative, got {self.k}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range or not normalized")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")

    @property
    def minimal(self) -> bool:
        return self.k == 0

    @property
    def points(self) -> int:
        return self.omega + self.k

    def visible_only(self) -> bool:
        return all(v - u < self.omega for u, v in self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class WindowGraph:
    """The induced subgraph ``G_i`` on the contiguous vertex range [lo, hi]."""

    index: int
    lo: int
    hi: int
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]


def make_story(
    n: int,
    omega: int,
    k: int,
    edges: "list[Edge] | set[Edge] | frozenset[Edge]",
    labels: tuple[str, ...] | None = None,
) -> GraphStory:
    """Build a story from any edge collection, normalizing pair order."""
    return GraphStory(
        n=n,
        omega=omega,
        k=k,
        edges=frozenset(_norm_edge(u, v) for u, v in edges),
        labels=labels,
    )


def story_from_obj(doc: object) -> GraphStory:
    """Build a story from a decoded document object, without visibility filtering."""
    if not isinstance(doc, dict):
        raise ValueError("malformed story document: expected an object")
    missing = {"n", "omega", "k", "edges"} - doc.keys()
    if missing:
        raise ValueError(f"story document lacks fields: {sorted(missing)}")
    n, omega, k = doc["n"], doc["omega"], doc["k"]
    if not (isinstance(n, int) and isinstance(omega, int) and isinstance(k, int)):
        raise ValueError("fields n, omega, k must be integers")
    edge_list = doc["edges"]
    if not isinstance(edge_list, list):
        raise ValueError("field edges must be a list of pairs")
    edges = []
    for item in edge_list:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ValueError(f"bad edge entry: {item!r}")
        u, v = item
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ValueError(f"bad edge entry: {item!r}")
        edges.append((u, v))
    labels = None
    if "labels" in doc and doc["labels"] is not None:
        labels = tuple(str(s) for s in doc["labels"])
    return make_story(n, omega, k, edges, labels)


def story_to_obj(story: GraphStory) -> dict:
    doc: dict = {
        "n": story.n,
        "omega": story.omega,
        "k": story.k,
        "edges": [list(e) for e in sorted(story.edges)],
    }
    if story.labels is not None:
        doc["labels"] = list(story.labels)
    return doc


def parse_story(text: str) -> GraphStory:
    """Parse a story document (JSON), renumber to arrival order, drop invisible edges.

    The document has fields ``n``, ``omega``, ``k``, ``edges`` (list of 1-based
    pairs) and optionally ``labels`` (one name per vertex).  Invisible edges
    are removed with a warning, per :func:`visible_filter`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed story document: {exc}") from exc
    story = story_from_obj(doc)
    story, removed = visible_filter(story)
    if removed:
        warnings.warn(f"removed {removed} invisible edge(s)", stacklevel=2)
    return story


def story_to_document(story: GraphStory) -> str:
    return json.dumps(story_to_obj(story), indent=2) + "\n"


def visible_filter(story: GraphStory) -> tuple[GraphStory, int]:
    """Drop edges whose endpoints never coexist in a window.

    An edge (u, v) is visible iff ``v - u < omega``.  The vertex set is
    unchanged.  Idempotent.
    """
    kept = frozenset(e for e in story.edges if e[1] - e[0] < story.omega)
    removed = len(story.edges) - len(kept)
    if removed == 0:
        return story, 0
    return (
        GraphStory(story.n, story.omega, story.k, kept, story.labels),
        removed,
    )


def window_graph(story: GraphStory, i: int) -> WindowGraph:
    """The subgraph induced by the window ending at arrival ``i``."""
    if not 1 <= i <= story.n:
        raise IndexError(f"window index {i} out of range [1, {story.n}]")
    lo = max(1, i - story.omega + 1)
    vertices = tuple(range(lo, i + 1))
    edges = tuple(sorted(e for e in story.edges if lo <= e[0] and e[1] <= i))
    return WindowGraph(index=i, lo=lo, hi=i, vertices=vertices, edges=edges)


def is_planar(vertices: "tuple[int, ...] | list[int]", edges: "tuple[Edge, ...] | list[Edge]") -> bool:
    """Planarity of the simple graph given by explicit vertex and edge lists."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    ok, _ = nx.check_planarity(graph)
    return ok


def all_windows_planar(story: GraphStory) -> int | None:
    """None if every window graph is planar, else the smallest failing index."""
    for i in range(1, story.n + 1):
        win = window_graph(story, i)
        # Windows on <= 4 vertices are subgraphs of K4.
        if len(win.vertices) <= 4:
            continue
        if not is_planar(win.vertices, win.edges):
            return i
    return None


def k5_window(story: GraphStory) -> int | None:
    """Smallest window index whose graph contains a complete graph on 5 vertices.

    For a story with only visible edges, the whole graph contains K5 exactly
    when five pairwise-adjacent vertices appear together in some window, so a
    window scan decides containment for G itself.
    """
    adj = story.adjacency()
    for j in range(5, story.n + 1):
        win = window_graph(story, j)
        for combo in itertools.combinations(win.vertices, 5):
            if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
                return j
    return None
