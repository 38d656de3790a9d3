"""Sliding-window planar drawings of graph stories on fixed point sets."""

from .story import (
    GraphStory,
    WindowGraph,
    all_windows_planar,
    is_planar,
    k5_window,
    make_story,
    parse_story,
    story_from_obj,
    story_to_document,
    story_to_obj,
    visible_filter,
    window_graph,
)
from .embedding import (
    CombinatorialEmbedding,
    Face,
    RemovalResult,
    canonical_form,
    embedding_from_obj,
    embedding_problem,
    embedding_to_obj,
    enumerate_plane_embeddings,
    make_embedding,
    restrict,
    trace_faces,
)
from .weights import (
    WeightedEmbedding,
    compatible,
    distribute_weights,
    weighted_from_obj,
    weighted_key,
    weighted_to_obj,
)
from .solver import (
    BoundExceededError,
    Certificate,
    LayerBoundExceededError,
    WindowNotPlanarError,
    brute_force_realize,
    certificate_from_obj,
    certificate_problem,
    certificate_to_document,
    certificate_to_obj,
    find_supporting_embedding,
    min_k,
    parse_certificate,
    realize,
    supporting_certificate,
    verify_certificate,
)
from .special import (
    ContainsK5Error,
    CriticalCycle,
    Reroute,
    RerouteRealization,
    coeval,
    critical_cycles,
    edges_coeval,
    is_good_embedding,
    one_reroute_realize,
    outerplanar_certificate,
    search_good_embedding,
)
from .generators import (
    SunflowerInstance,
    gen_cycle_story,
    gen_flags,
    gen_nested_triangles,
    gen_no_supporting,
    gen_path_story,
    gen_random_story,
    gen_sp_unrealizable,
    gen_sunflower_reduction,
    make_sunflower,
)
from .render import (
    Drawing,
    RoutingFailed,
    drawing_problem,
    generate_points,
    initial_layout,
    insert_step,
    render_reroutes,
    render_story,
    verify_drawings,
    write_svg,
)

__version__ = "0.1.0"

__all__ = [
    "GraphStory",
    "WindowGraph",
    "all_windows_planar",
    "is_planar",
    "k5_window",
    "make_story",
    "parse_story",
    "story_from_obj",
    "story_to_document",
    "story_to_obj",
    "visible_filter",
    "window_graph",
    "CombinatorialEmbedding",
    "Face",
    "RemovalResult",
    "canonical_form",
    "embedding_from_obj",
    "embedding_problem",
    "embedding_to_obj",
    "enumerate_plane_embeddings",
    "make_embedding",
    "restrict",
    "trace_faces",
    "WeightedEmbedding",
    "compatible",
    "distribute_weights",
    "weighted_from_obj",
    "weighted_key",
    "weighted_to_obj",
    "BoundExceededError",
    "Certificate",
    "LayerBoundExceededError",
    "WindowNotPlanarError",
    "brute_force_realize",
    "certificate_from_obj",
    "certificate_problem",
    "certificate_to_document",
    "certificate_to_obj",
    "find_supporting_embedding",
    "min_k",
    "parse_certificate",
    "realize",
    "supporting_certificate",
    "verify_certificate",
    "ContainsK5Error",
    "CriticalCycle",
    "Reroute",
    "RerouteRealization",
    "coeval",
    "critical_cycles",
    "edges_coeval",
    "is_good_embedding",
    "one_reroute_realize",
    "outerplanar_certificate",
    "search_good_embedding",
    "SunflowerInstance",
    "gen_cycle_story",
    "gen_flags",
    "gen_nested_triangles",
    "gen_no_supporting",
    "gen_path_story",
    "gen_random_story",
    "gen_sp_unrealizable",
    "gen_sunflower_reduction",
    "make_sunflower",
    "Drawing",
    "RoutingFailed",
    "drawing_problem",
    "generate_points",
    "initial_layout",
    "insert_step",
    "render_reroutes",
    "render_story",
    "verify_drawings",
    "write_svg",
]
