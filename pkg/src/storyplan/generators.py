"""Instance generators: structured families, fixed fixtures, random stories.

The two fixtures that cannot be produced by a formula (the unrealizable
series-parallel story and the cubic graph without a supporting embedding) are
stored as versioned JSON data files and only loaded here, so the exact edge
lists stay auditable.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from importlib import resources

from .story import Edge, GraphStory, make_story, visible_filter

_DATA = resources.files("storyplan.data")


def _load_fixture(name: str) -> GraphStory:
    doc = json.loads(_DATA.joinpath(name).read_text("utf-8"))
    return make_story(doc["n"], doc["omega"], doc["k"], [tuple(e) for e in doc["edges"]])


def gen_nested_triangles(h: int, k: int = 0) -> GraphStory:
    """Tower of ``h`` triangles, each linked to the next, with window 9.

    Vertices arrive three per level; level ``i`` closes the triangle
    ``(v_{3i-2}, v_{3i-1}, v_{3i})`` and every vertex is linked to its copy
    three positions later.  Triconnected for h >= 2.
    """
    if h < 2:
        raise ValueError("need at least two triangle levels")
    n = 3 * h
    edges: list[Edge] = []
    for i in range(3, n + 1, 3):
        edges += [(i - 2, i - 1), (i - 1, i), (i - 2, i)]
    for i in range(1, n - 2):
        edges.append((i, i + 3))
    return make_story(n, 9, k, edges)


def gen_sp_unrealizable(omega: int) -> GraphStory:
    """Series-parallel story that no choice of embeddings can realize at k=0.

    The base instance has 8 vertices and window 5.  For a wider window the
    same graph is padded with ``omega - 5`` isolated vertices arriving between
    positions 5 and 6, which keeps every window's subgraph intact while
    stretching the lifetimes.
    """
    if omega < 5:
        raise ValueError("window must be at least 5")
    base = _load_fixture("sp_unrealizable_base.json")
    if omega == 5:
        return base
    pad = omega - 5

    def shift(v: int) -> int:
        return v if v <= 5 else v + pad

    edges = [(shift(u), shift(v)) for u, v in base.edges]
    return make_story(base.n + pad, omega, 0, edges)


def gen_flags(omega: int) -> GraphStory:
    """Parallel composition of flags and a long path; the k threshold family.

    A flag is an edge in series with a triangle, strung between two pole
    vertices.  Apexes arrive first, then the series vertices, the poles, and
    finally a path whose vertices land on the points the apexes vacate.  For
    odd windows the first series vertex carries two apexes (a double flag).
    """
    if omega < 8:
        raise ValueError("window must be at least 8")
    edges: list[Edge] = []
    pole_a, pole_b = omega - 1, omega
    if omega % 2 == 0:
        m = omega // 2
        # flag j: apex j, series vertex m-1+j
        for j in range(1, m):
            s = m - 1 + j
            edges += [(pole_a, s), (s, j), (j, pole_b), (s, pole_b)]
    else:
        m = (omega + 1) // 2
        # double flag: apexes 1 and 2 share the series vertex m
        edges += [(pole_a, m), (m, pole_b)]
        for a in (1, 2):
            edges += [(m, a), (a, pole_b)]
        for j in range(3, m):
            s = m - 2 + j
            edges += [(pole_a, s), (s, j), (j, pole_b), (s, pole_b)]
    n = omega + m - 1
    path = [pole_a, *range(omega + 1, n + 1), pole_b]
    edges += list(zip(path, path[1:]))
    return make_story(n, omega, 0, edges)


def gen_no_supporting() -> GraphStory:
    """Story that is realizable but has no single supporting embedding."""
    return _load_fixture("no_supporting_base.json")


@dataclass(frozen=True)
class SunflowerInstance:
    """Three graphs sharing a common part; private edges pairwise disjoint.

    The private edge sets must be listed largest first; out-of-order input is
    sorted with a warning.
    """

    shared_vertices: tuple[int, ...]
    common_edges: frozenset[Edge]
    private_edges: tuple[frozenset[Edge], frozenset[Edge], frozenset[Edge]]

    def __post_init__(self) -> None:
        verts = set(self.shared_vertices)
        if len(self.shared_vertices) != len(verts):
            raise ValueError("duplicate shared vertices")
        every = [self.common_edges, *self.private_edges]
        for edge_set in every:
            for u, v in edge_set:
                if u not in verts or v not in verts or u == v:
                    raise ValueError(f"edge ({u}, {v}) not over the shared vertices")
        seen: set[Edge] = set()
        for edge_set in every:
            if seen & edge_set:
                raise ValueError("common and private edge sets must be disjoint")
            seen |= edge_set

    @property
    def pad_size(self) -> int:
        return max(len(p) for p in self.private_edges)


def make_sunflower(
    shared_vertices,
    common_edges,
    private_1,
    private_2,
    private_3,
) -> SunflowerInstance:
    def norm(pairs) -> frozenset[Edge]:
        return frozenset((min(u, v), max(u, v)) for u, v in pairs)

    privates = [norm(private_1), norm(private_2), norm(private_3)]
    if [len(p) for p in privates] != sorted((len(p) for p in privates), reverse=True):
        warnings.warn("private edge sets reordered largest first", stacklevel=2)
        privates.sort(key=len, reverse=True)
    return SunflowerInstance(
        shared_vertices=tuple(shared_vertices),
        common_edges=norm(common_edges),
        private_edges=(privates[0], privates[1], privates[2]),
    )


def gen_sunflower_reduction(inst: SunflowerInstance, k: int = 0) -> GraphStory:
    """Encode a three-graph shared-edge embedding instance as one story.

    Every private edge (u, v) is subdivided twice; the first subdivision
    vertex arrives long before the shared block and the second long after, so
    the three key windows each see exactly one of the three graphs with its
    private edges subdivided.  Spacer blocks of isolated vertices keep the
    window arithmetic uniform: with pad p = max private size, the window is
    |shared| + 6p and the story has |shared| + 10p vertices.
    """
    p = inst.pad_size
    base = len(inst.shared_vertices)
    omega = base + 6 * p
    n = base + 10 * p

    # arrival slots, in groups: D1a Spacer1 D2a Spacer2 D3a shared D1b Spacer3 D2b Spacer4 D3b
    group_starts = {}
    pos = 1
    for name, size in [
        ("d1a", p), ("s1", p), ("d2a", p), ("s2", p), ("d3a", p),
        ("shared", base),
        ("d1b", p), ("s3", p), ("d2b", p), ("s4", p), ("d3b", p),
    ]:
        group_starts[name] = pos
        pos += size
    assert pos - 1 == n

    arrival = {}
    for idx, v in enumerate(inst.shared_vertices):
        arrival[("shared", v)] = group_starts["shared"] + idx

    # private edge (u, v) becomes the path u - d^a - d^b - v
    edges: list[Edge] = []
    for u, v in inst.common_edges:
        edges.append((arrival[("shared", u)], arrival[("shared", v)]))
    for which, private in enumerate(inst.private_edges, start=1):
        for offset, (u, v) in enumerate(sorted(private)):
            da = group_starts[f"d{which}a"] + offset
            db = group_starts[f"d{which}b"] + offset
            edges += [(arrival[("shared", u)], da), (da, db), (db, arrival[("shared", v)])]
    return make_story(n, omega, k, edges)


def gen_path_story(n: int, omega: int, k: int = 0) -> GraphStory:
    if n < 1:
        raise ValueError("need at least one vertex")
    return make_story(n, omega, k, [(i, i + 1) for i in range(1, n)])


def gen_cycle_story(n: int, omega: int, k: int = 0) -> GraphStory:
    """Cycle through all vertices; the closing edge is dropped with a warning
    when the window is too short for its endpoints to coexist."""
    if n < 3:
        raise ValueError("need at least three vertices")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    story, removed = visible_filter(make_story(n, omega, k, edges))
    if removed:
        warnings.warn(
            f"dropped {removed} edge(s) whose endpoints never coexist", stacklevel=2
        )
    return story


def gen_random_story(
    n: int, omega: int, edge_probability: float, seed: int, k: int = 0
) -> GraphStory:
    """Independent coin flip per visible pair; deterministic for a fixed seed."""
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, min(i + omega, n + 1))
        if rng.random() < edge_probability
    ]
    return make_story(n, omega, k, edges)
