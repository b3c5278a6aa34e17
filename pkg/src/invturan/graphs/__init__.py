"""Graph data model, canonical forms, containment and text I/O."""

from .canon import CanonicalForm, canonical_form, canonical_graph, canonical_labeling, is_isomorphic
from .core import (
    MAX_VERTICES,
    SIMPLIFY_KINDS,
    EdgeKey,
    GraphError,
    MultiHypergraph,
    VertexSet,
    contract,
    edge_key,
    is_sunflower,
    simplify,
)
from .match import HostView, Matcher, contains, find_copy
from .textio import (
    GraphFormatError,
    clique,
    complete_bipartite,
    cycle,
    dumbbell,
    format_graph,
    load_graph,
    multistar,
    parse_graph_literal,
    parse_graph_text,
    path,
)
