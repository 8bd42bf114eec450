"""Graph layout by stochastic gradient descent on stress."""

from ._backend import BACKEND, available_backends
from .extensions import apply_focus, embed_rgb, jaccard_distances
from .graph import DisconnectedGraphError, DistanceTable, Graph, GraphError, all_pairs, largest_component
from .majorization import MajorizeParams, layout_majorization, run_majorization
from .mtx import MatrixMarketError, load_matrix_market, parse_matrix_market
from .schedule import Schedule, schedule_convergent, schedule_fixed
from .sgd import LayoutResult, SgdParams, ShuffleMode, layout_sgd, run_sgd
from .sparse import build_pivot_model, layout_sparse_sgd, select_pivots_maxmin_random
from .stress import Term, TermList, build_terms, stress
from .svg import emit_svg

__version__ = "0.1.0"
