"""Labeled combinatorial embeddings of planar graphs.

An embedding is a rotation system (cyclic neighbor order around every vertex,
all read in the same fixed orientation of the plane) together with explicit
face records and a designated outer face.  Face records are global: in a
disconnected drawing a single face may carry boundary walks of several
components and any number of isolated vertices, so the records capture which
component sits inside which face of which other component.

Two embeddings are equal exactly when their canonical forms coincide.  Vertex
labels matter and orientation matters: a mirror image is a different embedding
unless some relabeling maps one to the other, which is never applied here.

Boundary walks are sequences of darts (directed edges).  The successor of the
dart (u, v) is (v, w) where w precedes u in the rotation of v; every dart lies
on exactly one walk.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

Dart = tuple[int, int]
Walk = tuple[Dart, ...]

CanonicalKey = bytes


def canonical_walk(walk: Sequence[Dart]) -> Walk:
    """Rotate a closed dart walk to start at its smallest dart.

    Darts on a walk are pairwise distinct, so the smallest starting point is
    unique and the result is a well-defined representative of the cyclic
    sequence.
    """
    w = tuple(walk)
    if not w:
        raise ValueError("empty boundary walk")
    m = w.index(min(w))
    return w[m:] + w[:m]


def _canonical_rotation(neighbors: Sequence[int]) -> tuple[int, ...]:
    ns = tuple(neighbors)
    if not ns:
        return ns
    m = ns.index(min(ns))
    return ns[m:] + ns[:m]


@dataclass(frozen=True)
class Face:
    """One face: its boundary walks plus the isolated vertices lying inside it."""

    walks: tuple[Walk, ...]
    isolated: tuple[int, ...] = ()

    def key(self) -> tuple:
        return (self.walks, self.isolated)

    def walk_vertices(self) -> frozenset[int]:
        return frozenset(d[0] for w in self.walks for d in w)

    def boundary_vertices(self) -> frozenset[int]:
        return self.walk_vertices() | frozenset(self.isolated)

    def touches(self, v: int) -> bool:
        return v in self.isolated or any(d[0] == v for w in self.walks for d in w)


def make_face(walks: Iterable[Sequence[Dart]], isolated: Iterable[int] = ()) -> Face:
    return Face(
        walks=tuple(sorted(canonical_walk(w) for w in walks)),
        isolated=tuple(sorted(isolated)),
    )


@dataclass(frozen=True)
class CombinatorialEmbedding:
    """Rotation system, face records and outer face, all in canonical form.

    ``rotations`` lists (vertex, cyclic neighbor tuple) pairs sorted by vertex,
    each cyclic tuple rotated to start at its smallest entry.  ``faces`` is
    sorted by record; ``outer`` indexes into it.  Instances compare by value,
    which by construction is equality of embeddings.
    """

    rotations: tuple[tuple[int, tuple[int, ...]], ...]
    faces: tuple[Face, ...]
    outer: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.rotations)

    @property
    def outer_face(self) -> Face:
        return self.faces[self.outer]

    def rotation_map(self) -> dict[int, tuple[int, ...]]:
        return dict(self.rotations)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation_map()[v]

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (v, u) if v < u else (u, v) for v, ns in self.rotations for u in ns
        )

    def faces_with(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.faces) if f.touches(v))


def make_embedding(
    rotations: Mapping[int, Sequence[int]],
    faces: Iterable[Face],
    outer: Face,
) -> CombinatorialEmbedding:
    """Canonicalize and assemble an embedding; ``outer`` must be one of ``faces``."""
    rot = tuple(
        sorted((v, _canonical_rotation(ns)) for v, ns in rotations.items())
    )
    face_list = sorted(
        (make_face(f.walks, f.isolated) for f in faces), key=Face.key
    )
    target = make_face(outer.walks, outer.isolated)
    try:
        idx = face_list.index(target)
    except ValueError:
        raise ValueError("outer face is not among the face records") from None
    return CombinatorialEmbedding(rot, tuple(face_list), idx)


def canonical_form(embedding: CombinatorialEmbedding) -> CanonicalKey:
    """Deterministic byte string; equal exactly for equal embeddings."""
    payload = (
        embedding.rotations,
        tuple(f.key() for f in embedding.faces),
        embedding.outer,
    )
    return repr(payload).encode("ascii")


# ---------------------------------------------------------------------------
# face tracing


def face_orbits(rotations: Mapping[int, Sequence[int]]) -> tuple[Walk, ...]:
    """All dart orbits of a rotation system, each in canonical form, sorted."""
    prev_in_rot: dict[Dart, int] = {}
    for v, ns in rotations.items():
        for i, u in enumerate(ns):
            prev_in_rot[(v, u)] = ns[i - 1]
    unused = set(prev_in_rot)
    orbits: list[Walk] = []
    while unused:
        start = min(unused)
        walk: list[Dart] = []
        d = start
        while True:
            walk.append(d)
            unused.discard(d)
            u, v = d
            d = (v, prev_in_rot[(v, u)])
            if d == start:
                break
        orbits.append(canonical_walk(walk))
    return tuple(sorted(orbits))


def _adjacency_of(rotations: Mapping[int, Sequence[int]]) -> dict[int, set[int]]:
    return {v: set(ns) for v, ns in rotations.items()}


def _edge_components(rotations: Mapping[int, Sequence[int]]) -> list[tuple[int, ...]]:
    """Connected components among vertices of positive degree, sorted."""
    adj = _adjacency_of(rotations)
    seen: set[int] = set()
    comps: list[tuple[int, ...]] = []
    for v in sorted(adj):
        if v in seen or not adj[v]:
            continue
        stack, members = [v], set()
        while stack:
            x = stack.pop()
            if x in members:
                continue
            members.add(x)
            stack.extend(adj[x] - members)
        seen |= members
        comps.append(tuple(sorted(members)))
    return comps


def _check_rotation_system(rotations: Mapping[int, Sequence[int]]) -> None:
    for v, ns in rotations.items():
        if len(set(ns)) != len(ns):
            raise ValueError(f"repeated neighbor in rotation of {v}")
        if v in ns:
            raise ValueError(f"self-loop in rotation of {v}")
        for u in ns:
            if u not in rotations or v not in set(rotations[u]):
                raise ValueError(f"rotation system is not symmetric at ({v}, {u})")


HostSlot = "tuple[int, Walk] | None"


def trace_faces(
    rotations: Mapping[int, Sequence[int]],
    out: Mapping[int, Walk],
    host: "Mapping[int, tuple[int, Walk] | None]",
) -> tuple[tuple[Face, ...], Face]:
    """Assemble global face records from a rotation system and containment data.

    Components are named by their smallest vertex.  ``out`` picks, for every
    component, the orbit that faces its exterior.  ``host`` places every
    component and every isolated vertex either in the unbounded region (None)
    or inside an interior orbit of another component, given as (component,
    orbit).  Returns the face records together with the outer face.
    """
    _check_rotation_system(rotations)
    comps = _edge_components(rotations)
    comp_of: dict[int, int] = {}
    for c in comps:
        for v in c:
            comp_of[v] = c[0]
    isolated = [v for v, ns in rotations.items() if not ns]

    all_orbits = face_orbits(rotations)
    orbits_by_comp: dict[int, list[Walk]] = {c[0]: [] for c in comps}
    for w in all_orbits:
        orbits_by_comp[comp_of[w[0][0]]].append(w)

    for c in comps:
        cid = c[0]
        if len(c) - _comp_edge_count(rotations, c) + len(orbits_by_comp[cid]) != 2:
            raise ValueError(f"rotation system of component {cid} is not planar")
        if cid not in out:
            raise ValueError(f"no outward orbit chosen for component {cid}")
        if canonical_walk(out[cid]) not in orbits_by_comp[cid]:
            raise ValueError(f"outward orbit of component {cid} is not one of its orbits")

    # One interior slot per non-outward orbit, plus the unbounded region.
    slots: dict[tuple[int, Walk] | None, tuple[list[Walk], list[int]]] = {None: ([], [])}
    for c in comps:
        cid = c[0]
        for w in orbits_by_comp[cid]:
            if w != canonical_walk(out[cid]):
                slots[(cid, w)] = ([w], [])

    items = [c[0] for c in comps] + isolated
    if sorted(host) != sorted(items):
        raise ValueError("host map must cover each component and isolated vertex exactly once")
    for item in items:
        loc = host[item]
        if loc is None:
            key: tuple[int, Walk] | None = None
        else:
            d, w = loc
            key = (d, canonical_walk(w))
            if key not in slots:
                raise ValueError(f"host of {item} is not an interior orbit slot")
            if item in comp_of and comp_of[item] == d:
                raise ValueError(f"component {item} cannot sit inside itself")
        if item in comp_of:
            slots[key][0].append(canonical_walk(out[item]))
        else:
            slots[key][1].append(item)

    # Containment must bottom out in the unbounded region.
    parent = {c[0]: (host[c[0]][0] if host[c[0]] is not None else None) for c in comps}
    for cid in parent:
        hops, cur = 0, parent[cid]
        while cur is not None:
            cur = parent[cur]
            hops += 1
            if hops > len(comps):
                raise ValueError("containment relation has a cycle")

    faces = []
    outer_face: Face | None = None
    for key, (walks, iso) in slots.items():
        f = make_face(walks, iso)
        faces.append(f)
        if key is None:
            outer_face = f
    assert outer_face is not None
    return tuple(sorted(faces, key=Face.key)), outer_face


def _comp_edge_count(rotations: Mapping[int, Sequence[int]], comp: Sequence[int]) -> int:
    return sum(len(rotations[v]) for v in comp) // 2


def embed_connected(
    rotations: Mapping[int, Sequence[int]], outer_walk: Sequence[Dart]
) -> CombinatorialEmbedding:
    """Embedding of a connected rotation system with the given outer boundary."""
    comps = _edge_components(rotations)
    if len(comps) != 1 or any(not ns for ns in rotations.values()):
        raise ValueError("embed_connected requires a single edge-connected component")
    cid = comps[0][0]
    ow = canonical_walk(outer_walk)
    faces, outer = trace_faces(rotations, {cid: ow}, {cid: None})
    return make_embedding(rotations, faces, outer)


# ---------------------------------------------------------------------------
# enumeration


def _prefix_planar(rotations: dict[int, list[int]]) -> bool:
    # Genus of a sub-rotation-system never exceeds that of the full one, so
    # pruning non-planar prefixes loses no planar completion.
    orbit_count: dict[int, int] = {}
    comps = _edge_components(rotations)
    if not comps:
        return True
    comp_of = {v: c[0] for c in comps for v in c}
    for w in face_orbits(rotations):
        cid = comp_of[w[0][0]]
        orbit_count[cid] = orbit_count.get(cid, 0) + 1
    for c in comps:
        if len(c) - _comp_edge_count(rotations, c) + orbit_count.get(c[0], 0) != 2:
            return False
    return True


def _planar_rotation_systems(
    comp: Sequence[int], adj: Mapping[int, set[int]]
) -> list[dict[int, tuple[int, ...]]]:
    """All rotation systems of one component with every face orbit planar.

    Vertices are inserted in increasing label order.  Each insertion picks a
    cyclic order of the already-present neighbors ((d-1)! choices, first kept
    smallest so each cyclic order appears once) and one gap in each such
    neighbor's current rotation.  Every rotation system of the component
    arises from exactly one choice sequence.
    """
    vs = sorted(comp)
    results: list[dict[int, tuple[int, ...]]] = []

    def extend(i: int, rot: dict[int, list[int]]) -> None:
        if i == len(vs):
            results.append({v: tuple(r) for v, r in rot.items()})
            return
        v = vs[i]
        present = [u for u in vs[:i] if u in adj[v]]
        if not present:
            rot[v] = []
            extend(i + 1, rot)
            del rot[v]
            return
        head, rest = present[0], present[1:]
        for perm in itertools.permutations(rest):
            order = [head, *perm]
            gap_ranges = [range(max(1, len(rot[u]))) for u in present]
            for gaps in itertools.product(*gap_ranges):
                nxt = {u: list(r) for u, r in rot.items()}
                for u, g in zip(present, gaps):
                    nxt[u].insert(g, v)
                nxt[v] = order
                if _prefix_planar(nxt):
                    extend(i + 1, nxt)

    extend(0, {})
    return results


def _acyclic_host_assignments(
    comp_ids: Sequence[int],
    slot_lists: Mapping[int, Sequence["tuple[int, Walk] | None"]],
) -> "list[dict[int, tuple[int, Walk] | None]]":
    out: list[dict[int, tuple[int, Walk] | None]] = []
    for combo in itertools.product(*(slot_lists[c] for c in comp_ids)):
        host = dict(zip(comp_ids, combo))
        parent = {c: (loc[0] if loc is not None else None) for c, loc in host.items()}
        ok = True
        for c in comp_ids:
            cur, hops = parent[c], 0
            while cur is not None:
                cur = parent[cur]
                hops += 1
                if hops > len(comp_ids):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(host)
    return out


def enumerate_plane_embeddings(
    vertices: Sequence[int],
    edges: Iterable[tuple[int, int]],
    max_vertices: int = 12,
) -> tuple[CombinatorialEmbedding, ...]:
    """Every labeled plane embedding of the graph, sorted by canonical form.

    Both orientations, every choice of outer face and every nesting of
    components are produced, each exactly once.  Refuses graphs above
    ``max_vertices``; raise the bound explicitly for larger inputs.
    """
    verts = sorted(set(vertices))
    if not verts:
        raise ValueError("embedding enumeration needs at least one vertex")
    if len(verts) > max_vertices:
        raise ValueError(
            f"{len(verts)} vertices exceeds the enumeration bound {max_vertices}"
        )
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in edges:
        if u not in adj or v not in adj:
            raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
        adj[u].add(v)
        adj[v].add(u)

    base_rotations = {v: () for v in verts if not adj[v]}
    isolated = sorted(base_rotations)
    comp_list = _edge_components({v: tuple(sorted(adj[v])) for v in verts})
    systems_per_comp = [
        _planar_rotation_systems(c, adj) for c in comp_list
    ]

    found: dict[CanonicalKey, CombinatorialEmbedding] = {}
    for combo in itertools.product(*systems_per_comp):
        rotations: dict[int, tuple[int, ...]] = dict(base_rotations)
        for sys in combo:
            rotations.update(sys)
        all_orbits = face_orbits(rotations)
        comp_of = {v: c[0] for c in comp_list for v in c}
        orbits_by_comp: dict[int, list[Walk]] = {c[0]: [] for c in comp_list}
        for w in all_orbits:
            orbits_by_comp[comp_of[w[0][0]]].append(w)
        comp_ids = [c[0] for c in comp_list]

        for outs in itertools.product(*(orbits_by_comp[c] for c in comp_ids)):
            out = dict(zip(comp_ids, outs))
            all_slots: list[tuple[int, Walk] | None] = [None]
            for cid in comp_ids:
                all_slots.extend(
                    (cid, w) for w in orbits_by_comp[cid] if w != out[cid]
                )
            slot_lists = {
                cid: [s for s in all_slots if s is None or s[0] != cid]
                for cid in comp_ids
            }
            for comp_host in _acyclic_host_assignments(comp_ids, slot_lists):
                for iso_combo in itertools.product(
                    *(all_slots for _ in isolated)
                ):
                    host: dict[int, tuple[int, Walk] | None] = dict(comp_host)
                    host.update(zip(isolated, iso_combo))
                    faces, outer = trace_faces(rotations, out, host)
                    emb = make_embedding(rotations, faces, outer)
                    key = canonical_form(emb)
                    assert key not in found, "duplicate embedding generated"
                    found[key] = emb
    return tuple(found[k] for k in sorted(found))


# ---------------------------------------------------------------------------
# vertex removal and restriction


@dataclass(frozen=True)
class RemovalResult:
    """Embedding after deleting one vertex, with the face correspondence.

    ``face_map[i]`` is the index, in the new embedding, of the face that the
    old face ``i`` became.  Faces not touching the removed vertex keep their
    records; all faces touching it map to the single merged face
    ``new_face``.
    """

    embedding: CombinatorialEmbedding
    face_map: tuple[int, ...]
    new_face: int


def remove_vertex(embedding: CombinatorialEmbedding, v: int) -> RemovalResult:
    rot = embedding.rotation_map()
    if v not in rot:
        raise ValueError(f"vertex {v} is not in the embedding")
    if len(rot) == 1:
        raise ValueError("cannot remove the last vertex of an embedding")

    if not rot[v]:
        new_rot = {u: ns for u, ns in rot.items() if u != v}
        new_faces: list[Face] = []
        touched_new: Face | None = None
        for f in embedding.faces:
            if v in f.isolated:
                g = Face(f.walks, tuple(x for x in f.isolated if x != v))
                touched_new = g
                new_faces.append(g)
            else:
                new_faces.append(f)
        assert touched_new is not None
        return _reassemble(embedding, new_rot, new_faces, touched_new)

    adj = _adjacency_of(rot)
    comp = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)

    new_rot = {
        u: (tuple(x for x in ns if x != v) if u in adj[v] else ns)
        for u, ns in rot.items()
        if u != v
    }
    old_comp_orbits = {
        w
        for f in embedding.faces
        for w in f.walks
        if w[0][0] in comp
    }
    survivors = {w for w in old_comp_orbits if all(d[0] != v for d in w)}
    retraced = face_orbits({u: new_rot[u] for u in comp if u != v})
    fresh = [w for w in retraced if w not in survivors]
    newly_isolated = sorted(u for u in adj[v] if not new_rot[u])

    merged_walks: list[Walk] = list(fresh)
    merged_isolated: list[int] = list(newly_isolated)
    new_faces = []
    touched = embedding.faces_with(v)
    for i, f in enumerate(embedding.faces):
        if i in touched:
            merged_walks.extend(w for w in f.walks if all(d[0] != v for d in w))
            merged_isolated.extend(f.isolated)
        else:
            new_faces.append(f)
    merged = make_face(merged_walks, merged_isolated)
    new_faces.append(merged)
    return _reassemble(embedding, new_rot, new_faces, merged)


def _reassemble(
    old: CombinatorialEmbedding,
    new_rot: Mapping[int, Sequence[int]],
    new_faces: list[Face],
    touched_new: Face,
) -> RemovalResult:
    """Sort the new faces, recompute the outer index and the face map."""
    canon = [make_face(f.walks, f.isolated) for f in new_faces]
    order = sorted(range(len(canon)), key=lambda i: canon[i].key())
    position = {canon[i].key(): rank for rank, i in enumerate(order)}
    touched_key = make_face(touched_new.walks, touched_new.isolated).key()
    new_face_idx = position[touched_key]

    face_map = []
    for f in old.faces:
        k = f.key()
        face_map.append(position[k] if k in position else new_face_idx)
    outer_key = old.outer_face.key()
    new_outer = position[outer_key] if outer_key in position else new_face_idx

    emb = CombinatorialEmbedding(
        rotations=tuple(
            sorted((u, _canonical_rotation(ns)) for u, ns in new_rot.items())
        ),
        faces=tuple(canon[i] for i in order),
        outer=new_outer,
    )
    return RemovalResult(emb, tuple(face_map), new_face_idx)


def remove_edge(
    embedding: CombinatorialEmbedding, edge: tuple[int, int]
) -> RemovalResult:
    """Delete one edge; the at most two faces along it merge into ``new_face``.

    Removing a bridge leaves the region structure alone (the face keeps its
    identity but its boundary splits in two); removing any other edge merges
    the two faces on its sides.  Endpoints left without edges become isolated
    vertices of the merged face.
    """
    a, b = edge
    rot = embedding.rotation_map()
    if a not in rot or b not in set(rot.get(a, ())):
        raise ValueError(f"edge ({a}, {b}) is not in the embedding")

    adj = _adjacency_of(rot)
    comp = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)

    darts = {(a, b), (b, a)}
    new_rot = dict(rot)
    new_rot[a] = tuple(x for x in rot[a] if x != b)
    new_rot[b] = tuple(x for x in rot[b] if x != a)

    old_comp_orbits = {
        w for f in embedding.faces for w in f.walks if w[0][0] in comp
    }
    survivors = {w for w in old_comp_orbits if not darts & set(w)}
    retraced = face_orbits({u: new_rot[u] for u in comp})
    fresh = [w for w in retraced if w not in survivors]
    newly_isolated = sorted(u for u in (a, b) if not new_rot[u])

    touched = [
        i
        for i, f in enumerate(embedding.faces)
        if any(darts & set(w) for w in f.walks)
    ]
    merged_walks: list[Walk] = list(fresh)
    merged_isolated: list[int] = list(newly_isolated)
    new_faces = []
    for i, f in enumerate(embedding.faces):
        if i in touched:
            merged_walks.extend(w for w in f.walks if not darts & set(w))
            merged_isolated.extend(f.isolated)
        else:
            new_faces.append(f)
    merged = make_face(merged_walks, merged_isolated)
    new_faces.append(merged)
    return _reassemble(embedding, new_rot, new_faces, merged)


def restrict(
    embedding: CombinatorialEmbedding, keep: Iterable[int]
) -> CombinatorialEmbedding:
    """Sub-embedding induced on ``keep``; independent of deletion order.

    The outer face of the result is the face that inherited the region the
    original outer face was part of.
    """
    kept = frozenset(keep)
    present = set(embedding.vertices)
    if not kept:
        raise ValueError("cannot restrict to an empty vertex set")
    if not kept <= present:
        raise ValueError(f"unknown vertices in restriction: {sorted(kept - present)}")
    emb = embedding
    for v in sorted(present - kept, reverse=True):
        emb = remove_vertex(emb, v).embedding
    return emb


# ---------------------------------------------------------------------------
# validation and serialization


def embedding_problem(
    embedding: CombinatorialEmbedding,
    vertices: Sequence[int] | None = None,
    edges: Iterable[tuple[int, int]] | None = None,
) -> str | None:
    """First structural defect of the embedding, or None if it is valid.

    Checks the rotation system, per-component planarity, the partition of
    orbits and isolated vertices into faces, and that the face records
    describe a consistent nesting of components reachable from the outer
    face.  When a graph is supplied, also checks that the embedded graph is
    exactly that graph.
    """
    rot = embedding.rotation_map()
    try:
        _check_rotation_system(rot)
    except ValueError as exc:
        return str(exc)
    if vertices is not None and sorted(rot) != sorted(set(vertices)):
        return "vertex set differs from the expected graph"
    if edges is not None:
        want = frozenset((min(u, v), max(u, v)) for u, v in edges)
        if embedding.edges() != want:
            return "edge set differs from the expected graph"

    comps = _edge_components(rot)
    comp_of = {x: c[0] for c in comps for x in c}
    orbits = face_orbits(rot)
    orbits_by_comp: dict[int, set[Walk]] = {c[0]: set() for c in comps}
    for w in orbits:
        orbits_by_comp[comp_of[w[0][0]]].add(w)
    for c in comps:
        if len(c) - _comp_edge_count(rot, c) + len(orbits_by_comp[c[0]]) != 2:
            return f"component {c[0]} is not planar in this rotation system"

    listed = [w for f in embedding.faces for w in f.walks]
    if len(listed) != len(set(listed)):
        return "a boundary walk appears in two faces"
    if set(listed) != set(orbits):
        return "face walks do not match the orbits of the rotation system"
    iso_listed = [x for f in embedding.faces for x in f.isolated]
    iso_expected = sorted(v for v, ns in rot.items() if not ns)
    if sorted(iso_listed) != iso_expected or len(iso_listed) != len(set(iso_listed)):
        return "isolated vertices are not partitioned among the faces"
    for f in embedding.faces:
        if not f.walks and not f.isolated:
            return "empty face record"
        owners = [comp_of[w[0][0]] for w in f.walks]
        if len(owners) != len(set(owners)):
            return "two walks of one component share a face"
    if not 0 <= embedding.outer < len(embedding.faces):
        return "outer face index out of range"
    if len(embedding.faces) != sum(len(orbits_by_comp[c[0]]) - 1 for c in comps) + 1:
        return "face count does not match the containment structure"

    # Reconstruct the nesting: walking inward from the outer face must place
    # every component exactly once and visit every face.
    face_of_walk = {w: i for i, f in enumerate(embedding.faces) for w in f.walks}
    placed: set[int] = set()
    visited = {embedding.outer}
    queue = [(embedding.outer, None)]
    while queue:
        fi, owner = queue.pop()
        for w in embedding.faces[fi].walks:
            cid = comp_of[w[0][0]]
            if cid == owner:
                continue
            if cid in placed:
                return f"component {cid} occurs outside its own region twice"
            placed.add(cid)
            for o in orbits_by_comp[cid]:
                if o == w:
                    continue
                gi = face_of_walk[o]
                if gi in visited:
                    return "containment relation has a cycle"
                visited.add(gi)
                queue.append((gi, cid))
    if len(visited) != len(embedding.faces):
        return "some faces are unreachable from the outer face"
    if len(placed) != len(comps):
        return "some components are never placed in a region"
    return None


def embedding_to_obj(embedding: CombinatorialEmbedding) -> dict:
    return {
        "rotations": {str(v): list(ns) for v, ns in embedding.rotations},
        "faces": [
            {"walks": [[list(d) for d in w] for w in f.walks],
             "isolated": list(f.isolated)}
            for f in embedding.faces
        ],
        "outer": embedding.outer,
    }


def embedding_from_obj(obj: Mapping) -> CombinatorialEmbedding:
    try:
        rotations = {int(v): [int(x) for x in ns] for v, ns in obj["rotations"].items()}
        faces = [
            Face(
                walks=tuple(
                    tuple((int(a), int(b)) for a, b in w) for w in f["walks"]
                ),
                isolated=tuple(int(x) for x in f["isolated"]),
            )
            for f in obj["faces"]
        ]
        outer = int(obj["outer"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed embedding record: {exc}") from exc
    if not 0 <= outer < len(faces):
        raise ValueError("malformed embedding record: outer index out of range")
    return make_embedding(rotations, faces, faces[outer])
