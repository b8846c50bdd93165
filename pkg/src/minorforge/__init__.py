"""Desk-scale toolkit for graph minors, rooted linkages, dense pairs and
the extremal constructions around Hadwiger-amenable graphs."""
from .graph import (
    Graph,
    GraphStats,
    build_graph,
    contract_edge,
    delete_vertices,
    density,
    stats,
    subgraph_induced,
)
from .models import (
    MinorModel,
    find_rooted_model,
    find_subgraph_iso,
    make_model,
    test_minor,
    test_minor_oracle2,
    verify_model,
)
from .separations import (
    Separation,
    balanced_separator,
    connectivity,
    extract_dense_pair,
    is_dense_pair,
    menger_paths,
)
from .embedding import greedy_forest_embed, hall_embed, min_B_bipartition, pack_components
from .decomposition import bounded_decomposition, expand_for_component_size
from .density import dense_step, extract_pieces, mader_subgraph, prune_high_degree
from .assembly import assemble_minor_from_pieces, enumerate_k_extensions, is_H_linked, pieces_pipeline
from .constructions import (
    bipartite_expand,
    construct_kst_blocker,
    construct_sk7_blocker,
    construct_sktt_blocker,
    ha_falsify,
)

__version__ = "0.1.0"
