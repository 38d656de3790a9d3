"""Face-weighted embeddings.

A weight on a face counts the fixed points that lie in that face without
carrying a vertex.  A story drawing on ``omega + k`` points induces, at every
step, an embedding of the current window graph whose free points give a
face-k-weighting; deleting a vertex frees its point, which is why removal
raises the total weight by exactly one.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .embedding import (
    CombinatorialEmbedding,
    RemovalResult,
    embedding_from_obj,
    embedding_to_obj,
    make_face,
)
from .embedding import remove_edge as remove_edge_plain
from .embedding import remove_vertex as remove_vertex_plain


@dataclass(frozen=True)
class WeightedEmbedding:
    """An embedding plus one non-negative integer per face, aligned by index."""

    embedding: CombinatorialEmbedding
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.embedding.faces):
            raise ValueError(
                f"{len(self.weights)} weights for {len(self.embedding.faces)} faces"
            )
        if any(w < 0 for w in self.weights):
            raise ValueError("face weights must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.weights)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


def distribute_weights(
    embedding: CombinatorialEmbedding, k: int
) -> tuple[WeightedEmbedding, ...]:
    """All ways to spread total weight ``k`` over the faces, in a fixed order.

    The order is lexicographic in the weight vector, so repeated calls agree.
    """
    if k < 0:
        raise ValueError("total weight must be non-negative")
    return tuple(
        WeightedEmbedding(embedding, w)
        for w in _compositions(k, len(embedding.faces))
    )


def remove_vertex(weighted: WeightedEmbedding, v: int) -> WeightedEmbedding:
    """Delete ``v``; its faces merge and the merged face absorbs their weight plus one.

    Faces untouched by ``v`` keep their weights.  The total therefore always
    grows by exactly one, the point freed by the deletion.
    """
    result: RemovalResult = remove_vertex_plain(weighted.embedding, v)
    new_weights = [0] * len(result.embedding.faces)
    for old_index, w in enumerate(weighted.weights):
        new_weights[result.face_map[old_index]] += w
    new_weights[result.new_face] += 1
    return WeightedEmbedding(result.embedding, tuple(new_weights))


def remove_edge(weighted: WeightedEmbedding, edge: tuple[int, int]) -> WeightedEmbedding:
    """Delete one edge; the merged face absorbs the weights of the faces along it.

    No point is freed, so the total weight is unchanged.
    """
    result: RemovalResult = remove_edge_plain(weighted.embedding, edge)
    new_weights = [0] * len(result.embedding.faces)
    for old_index, w in enumerate(weighted.weights):
        new_weights[result.face_map[old_index]] += w
    return WeightedEmbedding(result.embedding, tuple(new_weights))


def compatible(
    prev: WeightedEmbedding,
    nxt: WeightedEmbedding,
    v_out: int,
    v_in: int,
) -> bool:
    """Whether two consecutive window embeddings admit a common drawing.

    Deleting the departing vertex from the earlier embedding and the arriving
    vertex from the later one must give the same weighted embedding of the
    shared subgraph.  With single-vertex windows the shared subgraph is empty
    and any pair is compatible.
    """
    if len(prev.embedding.rotations) == 1 and len(nxt.embedding.rotations) == 1:
        return prev.total == nxt.total
    return remove_vertex(prev, v_out) == remove_vertex(nxt, v_in)


def weighted_key(weighted: WeightedEmbedding) -> bytes:
    """Canonical byte string of a weighted embedding; equal iff equal."""
    emb = weighted.embedding
    payload = (
        emb.rotations,
        tuple(f.key() for f in emb.faces),
        emb.outer,
        weighted.weights,
    )
    return repr(payload).encode("ascii")


def weighted_to_obj(weighted: WeightedEmbedding) -> dict:
    obj = embedding_to_obj(weighted.embedding)
    obj["weights"] = list(weighted.weights)
    return obj


def weighted_from_obj(obj: Mapping) -> WeightedEmbedding:
    emb = embedding_from_obj(obj)
    try:
        raw = [int(w) for w in obj["weights"]]
        recorded = [
            make_face(
                (tuple((int(a), int(b)) for a, b in w) for w in f["walks"]),
                (int(x) for x in f["isolated"]),
            )
            for f in obj["faces"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed weighted embedding record: {exc}") from exc
    if len(raw) != len(recorded):
        raise ValueError("weight list does not match the face list")
    # The record may list faces in any order; the canonical embedding sorts
    # them, so realign the weights by face identity.
    position = {f.key(): i for i, f in enumerate(emb.faces)}
    weights = [0] * len(recorded)
    for f, w in zip(recorded, raw):
        weights[position[f.key()]] = w
    return WeightedEmbedding(emb, tuple(weights))
