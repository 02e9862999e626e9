"""Link prediction from zero-dimensional persistence of neighborhood subgraphs."""

from .distances import bottleneck, wasserstein_q
from .features import FeatureExtractor, LinkFeatureVector, feature_distance_pairs, link_feature_vector
from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    apsp,
    combined_neighborhood,
    complete_graph,
    from_edges,
    induce,
    khop_neighborhood,
    load_edge_list,
    toggle_edge,
)
from .persistence import (
    PdConfig,
    PersistenceDiagram,
    get_pd,
    pd_oracle_sweep,
    persistence_diagram_0,
    symmetrize,
)
from .ranking import (
    EvalReport,
    RankedList,
    SplitSpec,
    adamic_adar,
    hits_at_n,
    holdout_split,
    milne_witten,
    rank_product,
    rank_targets,
)

__version__ = "0.1.0"
