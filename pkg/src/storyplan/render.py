"""Turns certificates into concrete polyline drawings and SVG frames.

The plan for every frame change is the same: delete what leaves, then insert
the new vertex inside the face that the certificate dictates, drawing its
edges one by one through a triangulated scaffold of the target region.
Temporary "tie" paths pin every movable item (free point, isolated vertex,
hole component) to the boundary arc of the sub-face it must end up in, so
the new edges cannot strand anything on the wrong side.  Ties are discarded
once the edges are in place.

Coordinates are Fractions throughout; floats appear only in SVG output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import embedding as emb_mod
from . import weights as w_mod
from .embedding import CombinatorialEmbedding, Face
from .geometry import (
    Point,
    Scaffold,
    angular_order,
    bounding_box,
    between,
    midpoint,
    mix,
    on_segment,
    orient,
    polyline_segments,
    segments_conflict,
)
from .story import Edge, GraphStory, window_graph
from .weights import WeightedEmbedding


class RoutingFailed(RuntimeError):
    """An insertion could not be completed; this always indicates a bug."""


@dataclass(frozen=True)
class Drawing:
    """One frame: vertex positions, edge polylines, and spare points.

    ``free_points`` pairs each currently unused point with the index of the
    face hosting it, relative to the embedding that this frame realizes.
    """

    index: int
    positions: tuple[tuple[int, Point], ...]
    polylines: tuple[tuple[Edge, tuple[Point, ...]], ...]
    free_points: tuple[tuple[Point, int], ...]

    def position(self, v: int) -> Point:
        return dict(self.positions)[v]

    def polyline(self, e: Edge) -> tuple[Point, ...]:
        u, v = e
        return dict(self.polylines)[(min(u, v), max(u, v))]

    def vertices(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.positions)

    def edges(self) -> frozenset[Edge]:
        return frozenset(e for e, _ in self.polylines)

    def all_points(self) -> frozenset[Point]:
        used = frozenset(p for _, p in self.positions)
        return used | frozenset(p for p, _ in self.free_points)


def _norm(e) -> Edge:
    u, v = e
    return (min(u, v), max(u, v))


# --------------------------------------------------------------------------
# mutable frame state used while building


class _State:
    def __init__(self):
        self.positions: dict[int, Point] = {}
        self.polylines: dict[Edge, tuple[Point, ...]] = {}
        self.items: list[tuple[Point, int]] = []
        self.extras: list[Point] = []

    def snapshot(self, index: int, outer: int) -> Drawing:
        free = sorted(self.items) + [(p, outer) for p in sorted(self.extras)]
        return Drawing(
            index=index,
            positions=tuple(sorted(self.positions.items())),
            polylines=tuple(sorted(self.polylines.items())),
            free_points=tuple(free),
        )

    def oriented(self, a: int, b: int) -> tuple[Point, ...]:
        path = self.polylines[_norm((a, b))]
        if path[0] != self.positions[a]:
            path = tuple(reversed(path))
        return path


def _segment_ids(sc: Scaffold, path: tuple[Point, ...]) -> set[tuple[int, int]]:
    """Scaffold edge ids covered by a polyline (already split at vertices)."""
    out = set()
    for a, b in polyline_segments(path):
        ia, ib = sc.loc[a], sc.loc[b]
        chain = [t for t in range(len(sc.pts))
                 if t in (ia, ib) or on_segment(sc.pts[ia], sc.pts[ib], sc.pts[t])]
        chain.sort(key=sc.pts.__getitem__)
        out.update((min(i, j), max(i, j)) for i, j in zip(chain, chain[1:]))
    return out


def _identify_region(sc: Scaffold, state: _State, region: Face,
                     is_outer: bool, box: tuple[Point, ...],
                     interior_hint: Point | None) -> set[int]:
    """Triangles forming the geometric region of the given face record.

    The right component is the one whose adjacent fixed segments are exactly
    the record's boundary (plus box sides for the outer face), that contains
    all the record's isolated vertices, and that contains the hint point.
    """
    comp: dict[int, int] = {}
    cid = 0
    for t in range(len(sc.tris)):
        if t in comp:
            continue
        stack = [t]
        comp[t] = cid
        while stack:
            x = stack.pop()
            for e in sc.tri_edges[x]:
                if e in sc.constraints:
                    continue
                for y in sc.by_edge.get(e, ()):
                    if y not in comp:
                        comp[y] = cid
                        stack.append(y)
        cid += 1

    boundary_edges: set[tuple[int, int]] = set()
    for walk in region.walks:
        for d in {_norm(d) for d in walk}:
            boundary_edges |= _segment_ids(sc, state.oriented(*d))
    box_edges: set[tuple[int, int]] = set()
    for i in range(4):
        if box:
            box_edges |= _segment_ids(sc, (box[i], box[(i + 1) % 4]))
    corner_ids = {sc.loc[p] for p in box}

    hint_idx = sc.loc.get(interior_hint) if interior_hint is not None else None
    best = None
    for c in range(cid):
        tris = {t for t, k in comp.items() if k == c}
        vert_ids = {i for t in tris for i in sc.tris[t]}
        adj = {e for t in tris for e in sc.tri_edges[t] if e in sc.constraints}
        if is_outer:
            if not (corner_ids and corner_ids <= vert_ids):
                continue
            if adj - box_edges != boundary_edges:
                continue
        else:
            if corner_ids and corner_ids & vert_ids:
                continue
            if adj != boundary_edges:
                continue
        if any(sc.loc[state.positions[v]] not in vert_ids for v in region.isolated):
            continue
        if hint_idx is not None and hint_idx not in vert_ids:
            continue
        if best is not None:
            raise RoutingFailed("ambiguous region identification")
        best = tris
    if best is None:
        raise RoutingFailed("region not found in scaffold")
    return best


# --------------------------------------------------------------------------
# orientation bookkeeping

def _orient0(a, b) -> int:
    v = a[0] * b[1] - a[1] * b[0]
    return (v > 0) - (v < 0)


def _cyclic_variant(seq: list, ref: list) -> int | None:
    """+1 if seq is a rotation of ref, -1 if of reversed ref, else None."""
    n = len(ref)
    if len(seq) != n:
        return None
    if n <= 2:
        return 1
    for cand, sign in ((seq, 1), (list(reversed(seq)), -1)):
        if ref[0] in cand:
            s = cand.index(ref[0])
            if [cand[(s + t) % n] for t in range(n)] == ref:
                return sign
    return None


def _vertex_sigma(state: _State, emb: CombinatorialEmbedding, x: int,
                  drawn: list[int], walk_sigma: int) -> int:
    """Handedness of the drawn rotation at x: how geometry reads the record.

    With three or more drawn edges the comparison of angular order against
    the recorded rotation decides; below that the drawn order carries no
    information and the handedness of the surrounding walk is used.
    """
    if len(drawn) < 3:
        return walk_sigma
    origin = state.positions[x]

    def direction_point(u):
        return state.oriented(x, u)[1]

    geo = angular_order(origin, drawn, direction_point)
    ref = [u for u in emb.neighbors(x) if u in set(drawn)]
    sign = _cyclic_variant(geo, ref)
    if sign is None:
        raise RoutingFailed(f"drawn rotation at {x} matches no orientation")
    return sign


def _walk_sigmas(sc: Scaffold, state: _State, region: Face,
                 region_tris: set[int]) -> dict[int, int]:
    """Handedness of each walk of the region record, empirically.

    A dart whose segment has the region on exactly one side fixes the walk's
    handedness; walks made only of two-sided bridges are free and default
    to +1, which is consistent because nothing drawn distinguishes them.
    """
    sigmas: dict[int, int] = {}
    for w_idx, walk in enumerate(region.walks):
        sigma = 0
        for (a, b) in walk:
            path = state.oriented(a, b)
            p, q = path[0], path[1]
            seg = tuple(sorted((sc.loc[p], sc.loc[q])))
            here = [t for t in sc.by_edge.get(seg, ()) if t in region_tris]
            if len(here) == 1:
                t = here[0]
                xa, xb, xc = (sc.pts[i] for i in sc.tris[t])
                c3 = (xa[0] + xb[0] + xc[0], xa[1] + xb[1] + xc[1])
                d = (q[0] - p[0], q[1] - p[1])
                r = (c3[0] - 3 * p[0], c3[1] - 3 * p[1])
                sigma = _orient0(d, r)
                break
        sigmas[w_idx] = sigma if sigma else 1
    return sigmas


def _walk_of(region: Face, x: int) -> int | None:
    for w_idx, walk in enumerate(region.walks):
        if any(x in d for d in walk):
            return w_idx
    return None


def _wedge_ok(state: _State, x: int, prev_n: int, next_n: int, sigma: int):
    """Predicate on centroid*3 coordinates: inside the angular gap at x
    that runs from the edge towards prev_n to the edge towards next_n,
    counter-clockwise when sigma is +1."""
    origin = state.positions[x]
    dp = state.oriented(x, prev_n)[1]
    dn = state.oriented(x, next_n)[1]
    if sigma < 0:
        dp, dn = dn, dp
    u = (dp[0] - origin[0], dp[1] - origin[1])
    w = (dn[0] - origin[0], dn[1] - origin[1])

    def ok(c3):
        c = (c3[0] - 3 * origin[0], c3[1] - 3 * origin[1])
        s_uw = _orient0(u, w)
        if s_uw > 0:
            return _orient0(u, c) > 0 and _orient0(c, w) > 0
        if s_uw < 0:
            return not (_orient0(w, c) > 0 and _orient0(c, u) > 0)
        # collinear boundary directions: opposite rays leave a half-plane
        if u[0] * w[0] + u[1] * w[1] < 0:
            return _orient0(u, c) > 0
        raise RoutingFailed("degenerate wedge at a drawn vertex")
    return ok


# --------------------------------------------------------------------------
# the insertion engine


class _Inserter:
    """Routes new polylines inside one face region of the current frame.

    Keeps a scaffold that is rebuilt as ties and edges accumulate, so every
    route respects everything drawn before it within the step.
    """

    def __init__(self, state: _State, region: Face, is_outer: bool,
                 hint: Point | None, extra_contents=()):
        self.state = state
        self.region = region
        self.is_outer = is_outer
        pool = set(state.positions.values())
        for path in state.polylines.values():
            pool.update(path)
        pool.update(p for p, _ in state.items)
        pool.update(state.extras)
        self.all_points = sorted(pool)
        self.box = bounding_box(self.all_points, margin=Fraction(2)) if is_outer else ()
        self.extra_pts: list[Point] = list(extra_contents)
        self.extra_segs: list[tuple[Point, Point]] = []
        self._anchors: dict[int, tuple[Point, tuple[Point, Point, int]]] = {}
        self._rebuild()
        self.region_tris = _identify_region(
            self.sc, state, region, is_outer, self.box, hint
        )
        self.wsig = _walk_sigmas(self.sc, state, region, self.region_tris)

    def _rebuild(self) -> None:
        pts = list(self.extra_pts)
        segs = list(self.extra_segs)
        if self.box:
            pts.extend(self.box)
            segs.extend([(self.box[i], self.box[(i + 1) % 4]) for i in range(4)])
        seen = set()
        for walk in self.region.walks:
            for d in walk:
                e = _norm(d)
                if e not in seen:
                    seen.add(e)
                    segs.extend(polyline_segments(self.state.oriented(*e)))
        for v in self.region.isolated:
            pts.append(self.state.positions[v])
        self.sc = Scaffold(pts, segs)

    def _sigma_of_dart(self, dart) -> int:
        for w_idx, walk in enumerate(self.region.walks):
            if dart in walk:
                return self.wsig[w_idx]
        raise RoutingFailed("anchor dart is not on the region boundary")

    def anchor_for(self, sector_idx: int, f: Face, banned) -> tuple[Point, tuple[Point, Point, int]]:
        """A fresh point on the sector's boundary arc, with its approach side."""
        if sector_idx in self._anchors:
            return self._anchors[sector_idx]
        dart = None
        for walk in f.walks:
            for d in walk:
                if d not in banned:
                    dart = d
                    break
            if dart:
                break
        if dart is None:
            raise RoutingFailed("sector has no boundary arc to pin items to")
        sigma = self._sigma_of_dart(dart)
        path = self.state.oriented(*dart)
        segs = polyline_segments(path)
        seg = segs[len(segs) // 2]
        taken = set(self.sc.pts) | set(self.extra_pts)
        for num, den in ((1, 2), (1, 4), (3, 4), (1, 8), (3, 8), (5, 8), (7, 8),
                         (1, 16), (15, 16)):
            cand = mix(seg[0], seg[1], Fraction(num, den))
            if cand not in taken:
                anchor = (cand, (seg[0], seg[1], sigma))
                self._anchors[sector_idx] = anchor
                self.extra_pts.append(cand)
                self._rebuild()
                return anchor
        raise RoutingFailed("could not find a fresh anchor point")

    def tie(self, src: Point, sector_idx: int, f: Face, banned) -> None:
        anchor, side = self.anchor_for(sector_idx, f, banned)
        try:
            path = self.sc.route(src, anchor, dst_side=side)
        except ValueError as exc:
            raise RoutingFailed(f"tie routing failed: {exc}") from None
        self.extra_pts.extend(path[1:-1])
        self.extra_segs.extend(polyline_segments(path))
        self._rebuild()

    def draw_edge(self, src: Point, dst: Point, *, src_ok=None, dst_ok=None) -> tuple[Point, ...]:
        try:
            path = self.sc.route(src, dst, src_ok=src_ok, dst_ok=dst_ok)
        except ValueError as exc:
            raise RoutingFailed(f"edge routing failed: {exc}") from None
        self.extra_pts.extend(path[1:-1])
        self.extra_segs.extend(polyline_segments(path))
        self._rebuild()
        return path

    def draw_edge_border(self, src: Point, hug: Point, dst: Point, *,
                         dst_ok=None, sigma: int = 1,
                         avoid: frozenset = frozenset()) -> tuple[Point, ...]:
        # the hugged chain is walked on one side; the realized drawing may be
        # either mirror image of the records, so probe both sides
        last = None
        for sg in (sigma, -sigma):
            try:
                path = self.sc.border_route(src, hug, dst, dst_ok=dst_ok,
                                            sigma=sg, avoid=avoid)
            except ValueError as exc:
                last = exc
                continue
            self.extra_pts.extend(path[1:-1])
            self.extra_segs.extend(polyline_segments(path))
            self._rebuild()
            return path
        raise RoutingFailed(f"edge routing failed: {last}") from None


def _wedge_for(state: _State, emb: CombinatorialEmbedding, x: int, v: int,
               region: Face, wsig: dict[int, int]):
    """Arrival predicate at x for the new edge towards v, or None if free."""
    rot = emb.neighbors(x)
    drawn = [u for u in rot if u != v]
    if len(drawn) < 2:
        return None
    w_idx = _walk_of(region, x)
    walk_sigma = wsig.get(w_idx, 1) if w_idx is not None else 1
    sigma = _vertex_sigma(state, emb, x, drawn, walk_sigma)
    i = rot.index(v)
    d = len(rot)
    prev_n = rot[(i - 1) % d]
    next_n = rot[(i + 1) % d]
    wedge = _wedge_ok(state, x, prev_n, next_n, sigma)

    def ok(tri_pts):
        c3 = (tri_pts[0][0] + tri_pts[1][0] + tri_pts[2][0],
              tri_pts[0][1] + tri_pts[1][1] + tri_pts[2][1])
        return wedge(c3)
    return ok


def _fan_wedge(origin: Point, d_prev: Point, d_first: Point, s: int):
    """Departure predicate keeping a growing edge fan in rotation order.

    The next edge must leave origin in the angular gap that runs from the
    previous edge around to the first one without passing the rest of the
    fan; s picks which way round the fan was laid out.
    """
    u = (d_prev[0] - origin[0], d_prev[1] - origin[1])
    w = (d_first[0] - origin[0], d_first[1] - origin[1])
    if s < 0:
        u, w = w, u

    def ok(tri_pts):
        c3 = (tri_pts[0][0] + tri_pts[1][0] + tri_pts[2][0],
              tri_pts[0][1] + tri_pts[1][1] + tri_pts[2][1])
        c = (c3[0] - 3 * origin[0], c3[1] - 3 * origin[1])
        s_uw = _orient0(u, w)
        if s_uw > 0:
            return _orient0(u, c) > 0 and _orient0(c, w) > 0
        if s_uw < 0:
            return not (_orient0(w, c) > 0 and _orient0(c, u) > 0)
        if u[0] * w[0] + u[1] * w[1] < 0:
            return _orient0(u, c) > 0
        return True
    return ok


def _contents_plan(region: Face, sectors: dict[int, Face],
                   exclude_iso=frozenset()) -> list[tuple[str, object, int]]:
    """Movable isolated vertices of the region with their target sectors.

    Isolated vertices that the new edges attach to are not movable.
    """
    plan: list[tuple[str, object, int]] = []
    for v_iso in region.isolated:
        if v_iso in exclude_iso:
            continue
        targets = [s for s, f in sectors.items() if v_iso in f.isolated]
        if len(targets) != 1:
            raise RoutingFailed(f"isolated vertex {v_iso} has no unique sector")
        plan.append(("iso", v_iso, targets[0]))
    return plan


def _ground_walks(ins: _Inserter, state: _State, region: Face,
                  sectors: dict[int, Face], banned, seed: int) -> None:
    """Tie every floating boundary walk into already reachable structure.

    The walk carrying the first routed attachment is reachable from the
    start.  Every other walk of the region, holes and islands alike, is
    tied in rounds to a sector arc whose darts are grounded already, so
    the chain the edge routes hug connects everything they must reach.
    """
    seed_w = _walk_of(region, seed)
    if seed_w is None:
        raise RoutingFailed("first attachment is not on the region boundary")
    grounded: set = set(region.walks[seed_w])
    todo = [w for i, w in enumerate(region.walks) if i != seed_w]
    ungrounded: set = set()
    for w in todo:
        ungrounded |= set(w)
    while todo:
        progress = False
        for walk in list(todo):
            wset = set(walk)
            cand = None
            for c in sorted(sectors):
                darts = [d for w2 in sectors[c].walks for d in w2]
                if any(d in wset for d in darts) and \
                        any(d in grounded for d in darts):
                    cand = c
                    break
            if cand is None:
                continue
            src = state.positions[min(x for d in walk for x in d)]
            ins.tie(src, cand, sectors[cand], banned | ungrounded)
            grounded |= wset
            ungrounded -= wset
            todo.remove(walk)
            progress = True
        if not progress:
            raise RoutingFailed("boundary piece cannot be grounded")


def _star_insert(state: _State, v_in: int, cur_w: WeightedEmbedding,
                 res: emb_mod.RemovalResult) -> None:
    """Place v_in on a free point of its face and draw its edges.

    ``res`` is the removal of v_in from the target embedding; its embedding
    is what ``state`` currently realizes and its merged face is the region
    that receives the new vertex.
    """
    red_emb = res.embedding
    region_idx = res.new_face
    region = red_emb.faces[region_idx]
    is_outer = region_idx == red_emb.outer
    cur_emb = cur_w.embedding

    touched = [c for c, m in enumerate(res.face_map) if m == region_idx]
    if sorted(touched) != sorted(cur_emb.faces_with(v_in)):
        raise RoutingFailed("sector faces disagree with the face map")
    inv = {m: c for c, m in enumerate(res.face_map) if c not in touched}

    items_in = [(p, h) for p, h in state.items if h == region_idx]
    items_out = [(p, h) for p, h in state.items if h != region_idx]
    if not items_in:
        raise RoutingFailed("no free point available in the insertion face")
    landing = min(p for p, _ in items_in)
    pending = sorted(p for p, _ in items_in if p != landing)

    weights = dict(zip(range(len(cur_emb.faces)), cur_w.weights))
    want = {c: weights[c] for c in touched}
    if sum(want.values()) != len(pending):
        raise RoutingFailed("free points do not match the target weights")
    assignment: list[tuple[Point, int]] = []
    cursor = 0
    for c in sorted(want):
        for _ in range(want[c]):
            assignment.append((pending[cursor], c))
            cursor += 1

    extras_sector = None
    if is_outer and state.extras:
        extras_sector = cur_emb.outer
        if extras_sector not in touched:
            raise RoutingFailed("spare points lost track of the outer face")

    rotation = cur_emb.neighbors(v_in)
    state.positions[v_in] = landing

    if rotation or len(touched) > 1:
        contents = [landing] + [p for p, _ in assignment]
        if extras_sector is not None:
            contents += list(state.extras)
        ins = _Inserter(state, region, is_outer, landing, contents)

        if len(touched) > 1:
            banned = {(v_in, u) for u in rotation} | {(u, v_in) for u in rotation}
            sectors = {c: cur_emb.faces[c] for c in touched}
            seed = next((u for u in rotation if u not in region.isolated),
                        None)
            if seed is None:
                raise RoutingFailed("splitting insert without a drawn anchor")
            _ground_walks(ins, state, region, sectors, banned, seed)
            if is_outer:
                # the unbounded side, marked by the scratch box, must become
                # the face the records designate as outer
                out_c = cur_emb.outer
                if out_c not in sectors:
                    raise RoutingFailed("outer split lost the outer face")
                ins.tie(ins.box[0], out_c, sectors[out_c], banned)
            for kind, key, c in _contents_plan(region, sectors, set(rotation)):
                ins.tie(state.positions[key], c, sectors[c], banned)
            for u in rotation:
                # a lone attachment becomes a pendant; its fixed point must
                # stay on the side that flanks the pendant slit
                if u not in region.isolated:
                    continue
                flanks = [c for c in touched
                          if any((u, v_in) in w
                                 for w in cur_emb.faces[c].walks)]
                if len(flanks) != 1:
                    raise RoutingFailed("pendant attachment without a sector")
                ins.tie(state.positions[u], flanks[0],
                        sectors[flanks[0]], banned)
            for p, c in assignment:
                ins.tie(p, c, sectors[c], banned)
            if extras_sector is not None:
                for p in state.extras:
                    ins.tie(p, extras_sector, sectors[extras_sector], banned)

        dirs: list[Point] = []
        prev_u = 0
        chir = 0
        for u in rotation:
            dst_ok = _wedge_for(state, cur_emb, u, v_in, region, ins.wsig)
            if not dirs:
                path = ins.draw_edge(landing, state.positions[u],
                                     dst_ok=dst_ok)
            elif len(touched) == 1:
                # every new edge is a bridge here, so the region never
                # splits and plain routing cannot wall anything off; only
                # the departure slot has to keep the rotation faithful
                if len(dirs) == 1:
                    path = ins.draw_edge(landing, state.positions[u],
                                         dst_ok=dst_ok)
                else:
                    last_exc = None
                    for s in (chir,) if chir else (1, -1):
                        src_ok = _fan_wedge(landing, dirs[-1], dirs[0], s)
                        try:
                            path = ins.draw_edge(landing,
                                                 state.positions[u],
                                                 src_ok=src_ok,
                                                 dst_ok=dst_ok)
                        except RoutingFailed as exc:
                            last_exc = exc
                            continue
                        chir = s
                        break
                    else:
                        raise last_exc
            else:
                # hug the previous edge so the new one closes off exactly
                # that edge plus the sector boundary between them; anything
                # destined for another sector is off limits to the walk
                c_close = next(c for c in touched
                               if any((v_in, prev_u) in w
                                      for w in cur_emb.faces[c].walks))
                keep = {x for w in cur_emb.faces[c_close].walks
                        for dd in w for x in dd}
                keep |= set(cur_emb.faces[c_close].isolated)
                avoid = {state.positions[x] for x in state.positions
                         if x not in keep}
                avoid |= {p for p, c in assignment if c != c_close}
                if extras_sector is not None and extras_sector != c_close:
                    avoid |= set(state.extras)
                if is_outer and cur_emb.outer != c_close:
                    avoid |= set(ins.box)
                path = ins.draw_edge_border(landing, dirs[-1],
                                            state.positions[u],
                                            dst_ok=dst_ok,
                                            avoid=frozenset(avoid))
            e = _norm((v_in, u))
            state.polylines[e] = path if v_in < u else tuple(reversed(path))
            dirs.append(path[1])
            prev_u = u

    state.items = [(p, inv[h]) for p, h in items_out] + assignment


def _edge_insert(state: _State, e: Edge, cur_w: WeightedEmbedding,
                 res: emb_mod.RemovalResult) -> None:
    """Draw one extra edge between two already placed vertices.

    ``res`` is the removal of e from the target embedding; state realizes
    its embedding.  Splits the merged region back into e's two faces, or
    reconnects two boundary pieces when e is a bridge.
    """
    a, b = e
    red_emb = res.embedding
    region_idx = res.new_face
    region = red_emb.faces[region_idx]
    is_outer = region_idx == red_emb.outer
    cur_emb = cur_w.embedding

    touched = [c for c, m in enumerate(res.face_map) if m == region_idx]
    inv = {m: c for c, m in enumerate(res.face_map) if c not in touched}

    items_in = [(p, h) for p, h in state.items if h == region_idx]
    items_out = [(p, h) for p, h in state.items if h != region_idx]

    assignment: list[tuple[Point, int]] = []
    if len(touched) == 1:
        assignment = [(p, touched[0]) for p, _ in items_in]
    else:
        weights = dict(zip(range(len(cur_emb.faces)), cur_w.weights))
        want = {c: weights[c] for c in touched}
        pending = sorted(p for p, _ in items_in)
        if sum(want.values()) != len(pending):
            raise RoutingFailed("free points do not match the target weights")
        cursor = 0
        for c in sorted(want):
            for _ in range(want[c]):
                assignment.append((pending[cursor], c))
                cursor += 1

    contents = [p for p, _ in assignment]
    hint = contents[0] if contents else None
    ins = _Inserter(state, region, is_outer, hint, contents)

    if len(touched) > 1:
        banned = {(a, b), (b, a)}
        sectors = {c: cur_emb.faces[c] for c in touched}
        seed = a if _walk_of(region, a) is not None else b
        _ground_walks(ins, state, region, sectors, banned, seed)
        if is_outer:
            out_c = cur_emb.outer
            if out_c not in sectors:
                raise RoutingFailed("outer split lost the outer face")
            ins.tie(ins.box[0], out_c, sectors[out_c], banned)
        for kind, key, c in _contents_plan(region, sectors):
            ins.tie(state.positions[key], c, sectors[c], banned)
        for p, c in assignment:
            ins.tie(p, c, sectors[c], banned)

    if len(touched) > 1:
        # close one of the two faces by hugging its boundary chain from the
        # slit onward; the other face keeps the remaining free space
        c_hug = min(touched)
        if is_outer and cur_emb.outer in touched:
            c_hug = min(c for c in touched if c != cur_emb.outer)
        dart = None
        src_v = dst_v = 0
        for walk in cur_emb.faces[c_hug].walks:
            for d_src, d_dst in ((a, b), (b, a)):
                if (d_src, d_dst) in walk:
                    i_d = walk.index((d_src, d_dst))
                    dart = walk[i_d - 1]
                    src_v, dst_v = d_src, d_dst
                    break
            if dart is not None:
                break
        if dart is None or dart[1] != src_v:
            raise RoutingFailed("edge slit is missing from its face walk")
        hug_path = state.oriented(src_v, dart[0])
        dst_ok = _wedge_for(state, cur_emb, dst_v, src_v, region, ins.wsig)
        keep = {x for w in cur_emb.faces[c_hug].walks for dd in w for x in dd}
        keep |= set(cur_emb.faces[c_hug].isolated)
        avoid = {state.positions[x] for x in state.positions if x not in keep}
        avoid |= {p for p, c in assignment if c != c_hug}
        if is_outer and cur_emb.outer != c_hug:
            avoid |= set(ins.box)
            avoid |= set(state.extras)
        path = ins.draw_edge_border(state.positions[src_v], hug_path[1],
                                    state.positions[dst_v], dst_ok=dst_ok,
                                    sigma=-ins._sigma_of_dart(dart),
                                    avoid=frozenset(avoid))
        if src_v != a:
            path = tuple(reversed(path))
    else:
        src_ok = _wedge_for(state, cur_emb, a, b, region, ins.wsig)
        dst_ok = _wedge_for(state, cur_emb, b, a, region, ins.wsig)
        path = ins.draw_edge(state.positions[a], state.positions[b],
                             src_ok=src_ok, dst_ok=dst_ok)
    state.polylines[_norm(e)] = path if a < b else tuple(reversed(path))

    state.items = [(p, inv[h]) for p, h in items_out] + assignment


def _delete_vertex(state: _State, prev_w: WeightedEmbedding, v_out: int):
    """Erase v_out and its edges; returns the reduced weighted embedding."""
    res = emb_mod.remove_vertex(prev_w.embedding, v_out)
    w_red = w_mod.remove_vertex(prev_w, v_out)
    if w_red.embedding != res.embedding:
        raise RoutingFailed("weighted and plain removals disagree")
    for u in prev_w.embedding.neighbors(v_out):
        del state.polylines[_norm((v_out, u))]
    freed = state.positions.pop(v_out)
    state.items = [(p, res.face_map[h]) for p, h in state.items]
    state.items.append((freed, res.new_face))
    return w_red


def _delete_edge(state: _State, w_cur: WeightedEmbedding, e: Edge):
    """Erase one edge; returns the reduced weighted embedding."""
    res = emb_mod.remove_edge(w_cur.embedding, _norm(e))
    w_red = w_mod.remove_edge(w_cur, _norm(e))
    if w_red.embedding != res.embedding:
        raise RoutingFailed("weighted and plain edge removals disagree")
    del state.polylines[_norm(e)]
    state.items = [(p, res.face_map[h]) for p, h in state.items]
    return w_red


def _advance(state: _State, prev_w: WeightedEmbedding, cur_w: WeightedEmbedding,
             v_in: int, v_out: int, reroute_edge: Edge | None = None) -> None:
    w_red = _delete_vertex(state, prev_w, v_out)

    if reroute_edge is None:
        res_in = emb_mod.remove_vertex(cur_w.embedding, v_in)
        if res_in.embedding != w_red.embedding:
            raise RoutingFailed("certificate steps are not compatible")
        _star_insert(state, v_in, cur_w, res_in)
    else:
        e = _norm(reroute_edge)
        _delete_edge(state, w_red, e)
        cur_minus_e = w_mod.remove_edge(cur_w, e)
        res_in = emb_mod.remove_vertex(cur_minus_e.embedding, v_in)
        _star_insert(state, v_in, cur_minus_e, res_in)
        res_e = emb_mod.remove_edge(cur_w.embedding, e)
        if res_e.embedding != cur_minus_e.embedding:
            raise RoutingFailed("edge removal mismatch during a reroute")
        _edge_insert(state, e, cur_w, res_e)

    counts: dict[int, int] = {}
    for _, h in state.items:
        counts[h] = counts.get(h, 0) + 1
    for idx, w in enumerate(cur_w.weights):
        if counts.get(idx, 0) != w:
            raise RoutingFailed("free points ended in the wrong faces")


# --------------------------------------------------------------------------
# building a first frame by replaying the arrival order

def _descend(first: WeightedEmbedding):
    """Single-vertex base plus the per-arrival reinsertion plan for it."""
    chain = []
    w_cur = first
    for v in sorted(first.embedding.vertices, reverse=True)[:-1]:
        res = emb_mod.remove_vertex(w_cur.embedding, v)
        w_next = w_mod.remove_vertex(w_cur, v)
        if w_next.embedding != res.embedding:
            raise RoutingFailed("weighted and plain removals disagree")
        chain.append((v, w_cur, res))
        w_cur = w_next
    chain.reverse()
    return w_cur, chain


def _initial(first: WeightedEmbedding, points,
             spares: int) -> tuple[list[Drawing], _State]:
    pts = sorted(points)
    base, chain = _descend(first)
    m = len(first.embedding.vertices)
    if len(pts) != len(set(pts)):
        raise ValueError("points must be distinct")
    if len(pts) != m + sum(first.weights) + spares:
        raise ValueError("wrong number of points for this first window")

    state = _State()
    usable = pts[:len(pts) - spares] if spares else pts
    state.extras = list(pts[len(pts) - spares:])
    v0 = min(first.embedding.vertices)
    state.positions[v0] = usable[0]
    if len(base.embedding.faces) != 1:
        raise RoutingFailed("single-vertex base should have one face")
    state.items = [(p, 0) for p in usable[1:]]

    frames = [state.snapshot(1, base.embedding.outer)]
    for step, (v, w_target, res) in enumerate(chain, start=2):
        _star_insert(state, v, w_target, res)
        frames.append(state.snapshot(step, w_target.embedding.outer))
    return frames, state


def initial_layout(first: WeightedEmbedding, points, *,
                   spares: int = 0) -> list[Drawing]:
    """Frames 1..m realizing the first window, one arrival at a time.

    ``points`` supplies every fixed point; the last ``spares`` of them (in
    sorted order) stay free forever and are kept in the outer face.  Frame
    j's free point hosts refer to the embedding induced on the first j
    vertices.
    """
    frames, _ = _initial(first, points, spares)
    return frames


def _state_from(frame: Drawing) -> _State:
    state = _State()
    state.positions = dict(frame.positions)
    state.polylines = dict(frame.polylines)
    state.items = list(frame.free_points)
    return state


def insert_step(prev: Drawing, prev_w: WeightedEmbedding,
                cur_w: WeightedEmbedding, v_in: int, v_out: int,
                reroute_edge: Edge | None = None) -> Drawing:
    """Next frame from the previous one and the two certificate entries."""
    state = _state_from(prev)
    _advance(state, prev_w, cur_w, v_in, v_out, reroute_edge)
    return state.snapshot(prev.index + 1, cur_w.embedding.outer)


# --------------------------------------------------------------------------
# whole-story drivers

def generate_points(count: int, seed: int = 0) -> tuple[Point, ...]:
    """Distinct points with no three collinear, deterministic per seed."""
    rng = random.Random(seed)
    span = max(4 * count * count, 64)
    chosen: list[Point] = []
    check_collinear = count <= 48
    while len(chosen) < count:
        cand = (Fraction(rng.randrange(span)), Fraction(rng.randrange(span)))
        if cand in chosen:
            continue
        if check_collinear and any(
            orient(a, b, cand) == 0
            for i, a in enumerate(chosen) for b in chosen[i + 1:]
        ):
            continue
        chosen.append(cand)
    return tuple(chosen)


def _as_points(raw) -> tuple[Point, ...]:
    return tuple((Fraction(x), Fraction(y)) for x, y in raw)


def _render(story: GraphStory, entries, reroutes: dict[int, Edge],
            points, seed: int) -> list[Drawing]:
    total = story.omega + story.k
    if points is None:
        pts = generate_points(total, seed)
    else:
        pts = _as_points(points)
        if len(pts) != total:
            raise ValueError(f"need exactly {total} points")
    start = min(story.omega, story.n)
    spares = story.omega - start
    frames, state = _initial(entries[start], pts, spares)
    for i in range(start + 1, story.n + 1):
        _advance(state, entries[i - 1], entries[i], i, i - story.omega,
                 reroutes.get(i))
        frames.append(state.snapshot(i, entries[i].embedding.outer))
    return frames


def render_story(story: GraphStory, cert, *, points=None, seed: int = 0,
                 out_dir=None) -> list[Drawing]:
    """Drawings for every step of a story from its certificate."""
    start = cert.start
    entries = {i: cert.entry(i) for i in range(start, story.n + 1)}
    frames = _render(story, entries, {}, points, seed)
    if out_dir is not None:
        write_svg(frames, out_dir)
    return frames


def render_reroutes(realization, *, points=None, seed: int = 0,
                    out_dir=None) -> list[Drawing]:
    """Drawings for a window-5 realization that redraws one edge per step."""
    story = realization.story
    entries = {
        i: w_mod.WeightedEmbedding(
            realization.steps[i - 1],
            (0,) * len(realization.steps[i - 1].faces),
        )
        for i in range(1, story.n + 1)
    }
    reroutes = {r.step: r.edge for r in realization.reroutes}
    frames = _render(story, entries, reroutes, points, seed)
    if out_dir is not None:
        write_svg(frames, out_dir)
    return frames


# --------------------------------------------------------------------------
# checking finished drawings

def _int_scaled(frame: Drawing):
    """Frame coordinates rescaled to plain ints for fast exact predicates."""
    from math import lcm
    dens = {c.denominator for _, p in frame.positions for c in p}
    for _, path in frame.polylines:
        dens.update(c.denominator for p in path for c in p)
    dens.update(c.denominator for p, _ in frame.free_points for c in p)
    scale = lcm(*dens) if dens else 1

    def conv(p):
        return (int(p[0] * scale), int(p[1] * scale))

    pos = {v: conv(p) for v, p in frame.positions}
    paths = {e: tuple(conv(p) for p in path) for e, path in frame.polylines}
    free = [conv(p) for p, _ in frame.free_points]
    return pos, paths, free


def _frame_problem(story: GraphStory, frame: Drawing, i: int) -> str | None:
    win = window_graph(story, i)
    if frame.vertices() != frozenset(win.vertices):
        return f"frame {i}: wrong vertex set"
    if frame.edges() != frozenset(win.edges):
        return f"frame {i}: wrong edge set"
    pos, paths, free = _int_scaled(frame)
    pts = list(pos.values()) + free
    if len(set(pts)) != len(pts):
        return f"frame {i}: coincident points"
    for (a, b), path in paths.items():
        if path[0] != pos[a] or path[-1] != pos[b]:
            return f"frame {i}: polyline of {(a, b)} misses its endpoints"
        if len(set(path)) != len(path):
            return f"frame {i}: polyline of {(a, b)} revisits a point"

    segs = [(e, s) for e, path in sorted(paths.items())
            for s in polyline_segments(path)]
    for (e, (p, q)) in segs:
        for t in pts:
            if t != p and t != q and on_segment(p, q, t):
                return f"frame {i}: edge {e} passes through a point"
    for x in range(len(segs)):
        e1, s1 = segs[x]
        for y in range(x + 1, len(segs)):
            e2, s2 = segs[y]
            if segments_conflict(s1[0], s1[1], s2[0], s2[1]):
                return f"frame {i}: edges {e1} and {e2} intersect"
    return None


def drawing_problem(story: GraphStory, frames, *,
                    reroutes=()) -> str | None:
    """First defect of a drawing sequence, or None if it is a realization.

    Checks every frame for planarity on distinct points, the fixed point
    budget, and consecutive frames for agreement on their shared subgraph.
    A reroute log exempts one named edge per logged step.
    """
    if len(frames) != story.n:
        return f"expected {story.n} frames, got {len(frames)}"
    budget = story.omega + story.k
    all_pts = frames[0].all_points()
    if len(all_pts) > budget:
        return f"frame 1: uses {len(all_pts)} points, budget is {budget}"
    exempt = {(r.step, _norm(r.edge)) for r in reroutes}

    for i, frame in enumerate(frames, start=1):
        if frame.all_points() != all_pts:
            return f"frame {i}: the fixed point set changed"
        problem = _frame_problem(story, frame, i)
        if problem:
            return problem

    for i in range(2, story.n + 1):
        prev, cur = frames[i - 2], frames[i - 1]
        shared_v = prev.vertices() & cur.vertices()
        for v in sorted(shared_v):
            if prev.position(v) != cur.position(v):
                return f"frame {i}: vertex {v} moved"
        shared_e = prev.edges() & cur.edges()
        for e in sorted(shared_e):
            if (i, e) in exempt:
                continue
            if prev.polyline(e) != cur.polyline(e):
                return f"frame {i}: edge {e} was redrawn"
    return None


def verify_drawings(story: GraphStory, frames, *, reroutes=()) -> bool:
    return drawing_problem(story, frames, reroutes=reroutes) is None


# --------------------------------------------------------------------------
# SVG output

def _svg_frame(frame: Drawing, lo, hi) -> str:
    width = float(hi[0] - lo[0]) or 1.0
    height = float(hi[1] - lo[1]) or 1.0
    r = max(width, height) / 90
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        f'viewBox="{float(lo[0]):.3f} {float(lo[1]):.3f} '
        f'{width:.3f} {height:.3f}">',
        f'<rect x="{float(lo[0]):.3f}" y="{float(lo[1]):.3f}" '
        f'width="{width:.3f}" height="{height:.3f}" fill="white"/>',
    ]

    def fy(p) -> tuple[float, float]:
        # svg's y axis points down; mirror inside the viewBox
        return float(p[0]), float(lo[1] + hi[1] - p[1])

    for e, path in frame.polylines:
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(fy, path))
        lines.append(
            f'<polyline points="{coords}" fill="none" stroke="black" '
            f'stroke-width="{r / 3:.3f}"/>'
        )
    for p, _ in frame.free_points:
        x, y = fy(p)
        lines.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:.3f}" fill="white" '
            f'stroke="gray" stroke-width="{r / 4:.3f}"/>'
        )
    for v, p in frame.positions:
        x, y = fy(p)
        lines.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:.3f}" fill="#1f77b4"/>'
        )
        lines.append(
            f'<text x="{x + 1.2 * r:.3f}" y="{y - 1.2 * r:.3f}" '
            f'font-size="{2.2 * r:.3f}" font-family="sans-serif">{v}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(frames, out_dir) -> list[Path]:
    """One SVG per frame plus an index page; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pts = {p for f in frames for p in f.all_points()}
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = max(max(xs) - min(xs), max(ys) - min(ys), 1) / Fraction(12)
    lo = (min(xs) - pad, min(ys) - pad)
    hi = (max(xs) + pad, max(ys) + pad)
    written = []
    for frame in frames:
        path = out / f"frame_{frame.index:03d}.svg"
        path.write_text(_svg_frame(frame, lo, hi))
        written.append(path)
    rows = "\n".join(
        f'<div><h3>step {f.index}</h3>'
        f'<img src="frame_{f.index:03d}.svg" width="320"/></div>'
        for f in frames
    )
    index = out / "index.html"
    index.write_text(
        "<html><body style=\"display:flex;flex-wrap:wrap\">\n"
        f"{rows}\n</body></html>\n"
    )
    written.append(index)
    return written
