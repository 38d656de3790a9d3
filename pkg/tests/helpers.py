"""Brute-force oracles and instance samplers shared across test modules.

Everything here recomputes from first principles and touches only the public
package surface, so it can disagree with the implementation when one of the
two is wrong.
"""

from collections import defaultdict
from itertools import permutations, product
import random

from storyplan import GraphStory, is_planar, make_story
from storyplan.generators import SunflowerInstance, make_sunflower

OUTER = "outer"


def min_rotation(seq):
    """Lexicographically smallest rotation of a cyclic tuple."""
    t = tuple(seq)
    if not t:
        return t
    return min(t[i:] + t[:i] for i in range(len(t)))


def cyclic_orders(neighbors):
    """Every distinct cyclic order of a neighbor list, first element pinned."""
    ns = sorted(neighbors)
    if len(ns) <= 2:
        yield tuple(ns)
        return
    first = ns[0]
    for rest in permutations(ns[1:]):
        yield (first, *rest)


def trace_walks(rot):
    # successor of dart (a, v) is (v, u) with u the neighbor before a at v
    walks = []
    seen = set()
    darts = sorted((v, u) for v, ns in rot.items() for u in ns)
    for start in darts:
        if start in seen:
            continue
        walk = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            walk.append(cur)
            a, v = cur
            ns = rot[v]
            cur = (v, ns[ns.index(a) - 1])
        walks.append(tuple(walk))
    return walks


def _components(vertices, adj):
    comp_of = {}
    comps = []
    for v in vertices:
        if v in comp_of or not adj[v]:
            continue
        comp = []
        stack = [v]
        comp_of[v] = len(comps)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = len(comps)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps, comp_of


def _face_record(walks, isolated):
    return (tuple(sorted(min_rotation(w) for w in walks)),
            tuple(sorted(isolated)))


def plane_census(vertices, edges):
    """Signatures of every plane embedding, by raw rotation-system search.

    A signature is (rotations, sorted face records, outer face record); two
    embeddings are equal exactly when their signatures are.  Components are
    nested by choosing, per component, an outward walk and a host face, and
    isolated vertices are dropped into any face.
    """
    verts = sorted(set(vertices))
    es = sorted({(min(u, v), max(u, v)) for u, v in edges})
    adj = {v: sorted({b for a, b in es if a == v} | {a for a, b in es if b == v})
           for v in verts}
    noniso = [v for v in verts if adj[v]]
    iso = [v for v in verts if not adj[v]]
    comps, comp_of = _components(verts, adj)
    found = set()

    for combo in product(*(list(cyclic_orders(adj[v])) for v in noniso)):
        rot = dict(zip(noniso, combo))
        walks = trace_walks(rot)
        by_comp = defaultdict(list)
        for w in walks:
            by_comp[comp_of[w[0][0]]].append(w)
        if any(
            len(comp) - sum(1 for a, b in es if a in comp) + len(by_comp[ci]) != 2
            for ci, comp in enumerate(comps)
        ):
            continue
        rot_sig = tuple((v, min_rotation(rot[v])) for v in noniso)
        for outward in product(*(range(len(by_comp[ci]))
                                 for ci in range(len(comps)))):
            slots = [OUTER] + [
                (ci, wi)
                for ci in range(len(comps))
                for wi in range(len(by_comp[ci]))
                if wi != outward[ci]
            ]
            host_options = [
                [s for s in slots if s == OUTER or s[0] != ci]
                for ci in range(len(comps))
            ]
            for hosting in product(*host_options):
                parent = {ci: s[0] for ci, s in enumerate(hosting) if s != OUTER}
                bad = False
                for ci in range(len(comps)):
                    trail, x = set(), ci
                    while x in parent:
                        if x in trail:
                            bad = True
                            break
                        trail.add(x)
                        x = parent[x]
                    if bad:
                        break
                if bad:
                    continue
                for iso_assign in product(slots, repeat=len(iso)):
                    content = defaultdict(lambda: ([], []))
                    for ci, s in enumerate(hosting):
                        content[s][0].append(by_comp[ci][outward[ci]])
                    for v, s in zip(iso, iso_assign):
                        content[s][1].append(v)
                    faces = []
                    for s in slots:
                        ws, ivs = content[s]
                        if s != OUTER:
                            ws = ws + [by_comp[s[0]][s[1]]]
                        faces.append(_face_record(ws, ivs))
                    outer_rec = faces[0]
                    found.add((rot_sig, tuple(sorted(faces)), outer_rec))
    if not noniso and iso:
        # the loop above never runs for edgeless graphs
        found.add(((), ((tuple(), tuple(iso)),), (tuple(), tuple(iso))))
    return found


def signature_of(embedding):
    """The census signature of a package embedding, from public fields only."""
    rot_sig = tuple(
        (v, min_rotation(ns)) for v, ns in sorted(embedding.rotations) if ns
    )
    faces = [
        _face_record(f.walks, f.isolated) for f in embedding.faces
    ]
    outer_rec = faces[embedding.outer]
    return (rot_sig, tuple(sorted(faces)), outer_rec)


def planar_by_rotations(vertices, edges):
    """Planarity by exhaustive rotation-system search with the Euler filter."""
    verts = sorted(set(vertices))
    es = sorted({(min(u, v), max(u, v)) for u, v in edges})
    adj = {v: sorted({b for a, b in es if a == v} | {a for a, b in es if b == v})
           for v in verts}
    noniso = [v for v in verts if adj[v]]
    if not noniso:
        return True
    comps, comp_of = _components(verts, adj)
    for combo in product(*(list(cyclic_orders(adj[v])) for v in noniso)):
        rot = dict(zip(noniso, combo))
        by_comp = defaultdict(int)
        for w in trace_walks(rot):
            by_comp[comp_of[w[0][0]]] += 1
        if all(
            len(comp) - sum(1 for a, b in es if a in comp) + by_comp[ci] == 2
            for ci, comp in enumerate(comps)
        ):
            return True
    return False


def random_outerplanar_story(n, omega, seed, k=0):
    """Path spine plus random visible chords kept only while outerplanar."""
    rng = random.Random(seed)
    edges = [(i, i + 1) for i in range(1, n)]
    apex = n + 1

    def still_outerplanar(es):
        aug = list(es) + [(apex, v) for v in range(1, n + 1)]
        return is_planar(range(1, n + 2), aug)

    chords = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 2, min(i + omega, n + 1))
    ]
    rng.shuffle(chords)
    for e in chords:
        if rng.random() < 0.6 and still_outerplanar(edges + [e]):
            edges.append(e)
    return make_story(n, omega, k, edges)


def random_sunflower(seed) -> SunflowerInstance:
    """Small random three-graph instance over a shared vertex set."""
    rng = random.Random(seed)
    base = list(range(1, rng.randint(4, 7) + 1))
    pairs = [(u, v) for i, u in enumerate(base) for v in base[i + 1:]]
    rng.shuffle(pairs)
    n_common = rng.randint(1, max(1, len(base) // 2))
    common, rest = pairs[:n_common], pairs[n_common:]
    sizes = sorted((rng.randint(1, 3) for _ in range(3)), reverse=True)
    privates, at = [], 0
    for size in sizes:
        privates.append(rest[at:at + size])
        at += size
    return make_sunflower(base, common, *privates)


def random_story(rng: random.Random, n, omega, density, k=0) -> GraphStory:
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, min(i + omega, n + 1))
        if rng.random() < density
    ]
    return make_story(n, omega, k, edges)
