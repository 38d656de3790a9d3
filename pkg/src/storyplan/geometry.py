"""Exact rational plane geometry: predicates and a routing scaffold.

Everything here works on points with Fraction coordinates; there is no
floating arithmetic anywhere, so predicates never misclassify.  The Scaffold
triangulates a working region once per routing operation and finds polyline
paths through triangle midpoints, which keeps every produced segment away
from all other points and segments by construction.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a->b->c: 1 left, -1 right, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def between(a: Point, b: Point, p: Point) -> bool:
    """Whether p lies strictly inside the segment ab (p collinear assumed)."""
    if p == a or p == b:
        return False
    lo0, hi0 = min(a[0], b[0]), max(a[0], b[0])
    lo1, hi1 = min(a[1], b[1]), max(a[1], b[1])
    return lo0 <= p[0] <= hi0 and lo1 <= p[1] <= hi1


def on_segment(a: Point, b: Point, p: Point) -> bool:
    return orient(a, b, p) == 0 and (p == a or p == b or between(a, b, p))


def segments_conflict(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Whether segments ab and cd share any point besides a common endpoint."""
    shared = {a, b} & {c, d}
    if len(shared) == 2:
        return True
    if shared:
        (s,) = shared
        o = a if b in shared else b
        p = c if d in shared else d
        # touching at s only, unless the free ends fold back over each other
        return orient(s, o, p) == 0 and (
            between(s, o, p) or between(s, p, o) or o == p
        )
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return any(
        on_segment(*s)
        for s in ((a, b, c), (a, b, d), (c, d, a), (c, d, b))
    )


def mix(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a: Point, b: Point) -> Point:
    return mix(a, b, Fraction(1, 2))


def polyline_segments(path: tuple[Point, ...]) -> list[tuple[Point, Point]]:
    return list(zip(path, path[1:]))


def angular_order(origin: Point, items, point_of) -> list:
    """Sort items counter-clockwise around origin, starting east of north.

    ``point_of`` maps an item to its Point; ties on identical directions are
    broken by the item itself so the order is always deterministic.
    """
    import functools

    def half(it):
        dx = point_of(it)[0] - origin[0]
        dy = point_of(it)[1] - origin[1]
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        s = orient(origin, point_of(u), point_of(v))
        if s:
            return -s
        return -1 if u < v else (1 if u > v else 0)

    return sorted(items, key=functools.cmp_to_key(cmp))


def bounding_box(points, margin: Fraction = Fraction(1)) -> tuple[Point, Point, Point, Point]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    lo_x, hi_x = min(xs) - margin, max(xs) + margin
    lo_y, hi_y = min(ys) - margin, max(ys) + margin
    return ((lo_x, lo_y), (hi_x, lo_y), (hi_x, hi_y), (lo_x, hi_y))


class Scaffold:
    """Greedy maximal triangulation of a point set with fixed segments.

    Diagonals are added in deterministic order until no further segment fits;
    with every face then a triangle, routes run through triangle interiors
    and bend only at midpoints of non-fixed diagonals, so they cannot touch
    any vertex or fixed segment except at their own endpoints.
    """

    def __init__(self, points, segments):
        seen: dict[Point, int] = {}
        self.pts: list[Point] = []
        for p in points:
            if p not in seen:
                seen[p] = len(self.pts)
                self.pts.append(p)
        for a, b in segments:
            for p in (a, b):
                if p not in seen:
                    seen[p] = len(self.pts)
                    self.pts.append(p)
        self.loc = seen

        # scale once to integer coordinates so the fill loop runs on ints
        import math

        scale = 1
        for x, y in self.pts:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
            scale = scale * y.denominator // math.gcd(scale, y.denominator)
        self._ipts = [(int(x * scale), int(y * scale)) for x, y in self.pts]

        # fixed segments, split at every vertex lying inside them
        self.constraints: set[tuple[int, int]] = set()
        for a, b in segments:
            if a == b:
                raise ValueError("zero-length segment")
            ia, ib = seen[a], seen[b]
            sa, sb = self._ipts[ia], self._ipts[ib]
            chain = [t for t, p in enumerate(self._ipts)
                     if t in (ia, ib) or on_segment(sa, sb, p)]
            chain.sort(key=self._ipts.__getitem__)
            for i, j in zip(chain, chain[1:]):
                self.constraints.add((min(i, j), max(i, j)))
        for (i, j) in self.constraints:
            for (x, y) in self.constraints:
                if (i, j) < (x, y) and segments_conflict(
                    self._ipts[i], self._ipts[j], self._ipts[x], self._ipts[y]
                ):
                    raise ValueError("fixed segments cross")

        self.edges: set[tuple[int, int]] = set(self.constraints)
        self._fill()
        self._collect_triangles()

    def _fill(self) -> None:
        # One greedy pass is already maximal: edges are only ever added, so
        # any pair rejected against the current set stays invalid forever.
        m = len(self.pts)
        ipts = self._ipts
        boxes = []
        for (x, y) in sorted(self.edges):
            (px, py), (qx, qy) = ipts[x], ipts[y]
            boxes.append((min(px, qx), max(px, qx), min(py, qy), max(py, qy),
                          (px, py), (qx, qy)))
        for i in range(m):
            ax, ay = ipts[i]
            for j in range(i + 1, m):
                if (i, j) in self.edges:
                    continue
                bx, by = ipts[j]
                lox, hix = (ax, bx) if ax <= bx else (bx, ax)
                loy, hiy = (ay, by) if ay <= by else (by, ay)
                ok = True
                for t in range(m):
                    px, py = ipts[t]
                    if (lox <= px <= hix and loy <= py <= hiy
                            and t != i and t != j
                            and on_segment((ax, ay), (bx, by), (px, py))):
                        ok = False
                        break
                if ok:
                    for (elo, ehi, flo, fhi, p, q) in boxes:
                        if elo > hix or ehi < lox or flo > hiy or fhi < loy:
                            continue
                        if segments_conflict((ax, ay), (bx, by), p, q):
                            ok = False
                            break
                if ok:
                    self.edges.add((i, j))
                    boxes.append((lox, hix, loy, hiy, (ax, ay), (bx, by)))

    def _collect_triangles(self) -> None:
        rot: dict[int, list[int]] = {i: [] for i in range(len(self.pts))}
        for (i, j) in self.edges:
            rot[i].append(j)
            rot[j].append(i)
        for o in rot:
            rot[o] = angular_order(self._ipts[o], rot[o], self._ipts.__getitem__)

        prev_in_rot: dict[tuple[int, int], int] = {}
        for v, ns in rot.items():
            for idx, u in enumerate(ns):
                prev_in_rot[(v, u)] = ns[idx - 1]
        unused = set(prev_in_rot)
        self.tris: list[tuple[int, int, int]] = []
        self.tri_edges: list[tuple[tuple[int, int], ...]] = []
        while unused:
            start = min(unused)
            walk = []
            d = start
            while True:
                walk.append(d)
                unused.discard(d)
                u, v = d
                d = (v, prev_in_rot[(v, u)])
                if d == start:
                    break
            if len(walk) == 3:
                tri = tuple(sorted({x for e in walk for x in e}))
                a, b, c = (self._ipts[t] for t in tri)
                if orient(a, b, c) != 0:
                    self.tris.append(tri)
                    self.tri_edges.append(
                        tuple(
                            (min(x, y), max(x, y))
                            for x, y in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2]))
                        )
                    )
        self.by_edge: dict[tuple[int, int], list[int]] = {}
        for t_id, es in enumerate(self.tri_edges):
            for e in es:
                self.by_edge.setdefault(e, []).append(t_id)

    def _tris_at(self, v: int) -> list[int]:
        return sorted(t for t, tri in enumerate(self.tris) if v in tri)

    def _side_filter(self, cands, anchor: tuple[Point, Point, int]) -> list[int]:
        p, q, sign = anchor
        if p in self.loc and q in self.loc:
            pts = self._ipts
            p, q = pts[self.loc[p]], pts[self.loc[q]]
        else:
            pts = self.pts
        out = []
        for t in cands:
            a, b, c = (pts[x] for x in self.tris[t])
            s3 = (a[0] + b[0] + c[0], a[1] + b[1] + c[1])
            v = (q[0] - p[0]) * (s3[1] - 3 * p[1]) - (q[1] - p[1]) * (s3[0] - 3 * p[0])
            if ((v > 0) - (v < 0)) == sign:
                out.append(t)
        return out

    def route(
        self,
        src: Point,
        dst: Point,
        dst_side: tuple[Point, Point, int] | None = None,
        src_ok=None,
        dst_ok=None,
    ) -> tuple[Point, ...]:
        """Polyline from src to dst crossing only non-fixed diagonals.

        ``dst_side``, when given, is (p, q, sign): the walk must arrive in a
        triangle whose interior lies on that side of the directed segment pq,
        which pins the approach side when dst sits on a fixed segment.
        ``src_ok`` and ``dst_ok`` are optional predicates on the tuple of a
        triangle's corner points, restricting departure and arrival triangles.
        """
        s, d = self.loc[src], self.loc[dst]
        starts = self._tris_at(s)
        ends = set(self._tris_at(d))
        if dst_side is not None:
            ends = set(self._side_filter(ends, dst_side))
        if src_ok is not None:
            starts = [t for t in starts
                      if src_ok(tuple(self.pts[i] for i in self.tris[t]))]
        if dst_ok is not None:
            ends = {t for t in ends
                    if dst_ok(tuple(self.pts[i] for i in self.tris[t]))}
        if not starts or not ends:
            raise ValueError("endpoint is not part of the routing region")
        hit = sorted(set(starts) & ends)
        if hit:
            return (src, dst)
        parent: dict[int, tuple[int, tuple[int, int]]] = {}
        seen = set(starts)
        queue = deque(starts)
        goal = None
        while queue:
            t = queue.popleft()
            if t in ends:
                goal = t
                break
            for e in self.tri_edges[t]:
                if e in self.constraints:
                    continue
                for t2 in self.by_edge.get(e, ()):
                    if t2 not in seen:
                        seen.add(t2)
                        parent[t2] = (t, e)
                        queue.append(t2)
        if goal is None:
            raise ValueError("no route between the end points")
        crossings: list[tuple[int, int]] = []
        t = goal
        while t not in starts:
            t, e = parent[t]
            crossings.append(e)
        crossings.reverse()
        bends = [midpoint(self.pts[a], self.pts[b]) for a, b in crossings]
        return (src, *bends, dst)

    def border_route(
        self,
        src: Point,
        hug: Point,
        dst: Point,
        dst_ok=None,
        sigma: int = 1,
        avoid: frozenset = frozenset(),
    ) -> tuple[Point, ...]:
        """Polyline from src to dst that hugs the fixed chain starting at src.

        (src, hug) must be a fixed segment.  The walk follows the boundary of
        the free face on the ``sigma`` side of that segment, pivoting around
        fixed vertices, until it reaches dst; it therefore separates exactly
        the hugged chain from the rest of the face.  ``dst_ok`` works as in
        :meth:`route`; an arrival corner that fails it is walked past.  A
        pivot on a point in ``avoid`` aborts: it means the walk runs along
        the wrong side of the chain.
        """
        s, h, d = self.loc[src], self.loc[hug], self.loc[dst]
        avoid_idx = {self.loc[p] for p in avoid if p in self.loc} - {d}
        e0 = (min(s, h), max(s, h))
        if e0 not in self.constraints:
            raise ValueError("hug segment is not a fixed segment")
        t0 = None
        for t in self.by_edge.get(e0, ()):
            c = next(x for x in self.tris[t] if x != s and x != h)
            o = orient(self._ipts[s], self._ipts[h], self._ipts[c])
            if (1 if o > 0 else -1) == sigma:
                t0 = t
                break
        if t0 is None:
            raise ValueError("no triangle on the hugged side")
        seq: list[tuple[int, tuple[int, int] | None]] = [(t0, None)]
        t, p, e_in = t0, h, e0
        goal = False
        for _ in range(8 * (len(self.tris) + len(self.constraints)) + 64):
            if p in avoid_idx:
                raise ValueError("hugging route strays off its chain")
            if p == d and (
                dst_ok is None
                or dst_ok(tuple(self.pts[i] for i in self.tris[t]))
            ):
                goal = True
                break
            e_out = next(e for e in self.tri_edges[t] if p in e and e != e_in)
            if e_out in self.constraints:
                p = e_out[0] if e_out[1] == p else e_out[1]
                e_in = e_out
            else:
                nxt = [x for x in self.by_edge[e_out] if x != t]
                if len(nxt) != 1:
                    raise ValueError("free diagonal without a second triangle")
                t = nxt[0]
                e_in = e_out
                seq.append((t, e_out))
        if not goal:
            raise ValueError("no hugging route reaches the target")
        # pockets walked around belong to the hugged chain; cutting the walk
        # back to the first visit encloses them with the chain
        changed = True
        while changed:
            changed = False
            first: dict[int, int] = {}
            for idx, (tt, _) in enumerate(seq):
                if tt in first:
                    del seq[first[tt] + 1: idx + 1]
                    changed = True
                    break
                first[tt] = idx
        bends = [
            midpoint(self.pts[eb[0]], self.pts[eb[1]])
            for _, eb in seq[1:]
        ]
        return (src, *bends, dst)
