"""Cross intersecting set pair systems."""
from .bounds import BoundResult, bollobas_bound, known_values, upper_bound
from .constructions import (
    CATALOG_NAMES,
    ConstructionError,
    ConstructionRecord,
    ExtensionMode,
    c_family,
    catalog,
    double_star,
    final_construction,
    product,
    standard_example,
    star_extremal_2n,
    w22_power,
)
from .core import (
    INT,
    LIN,
    ONE,
    ConstraintProfile,
    Hypergraph,
    SetPairSystem,
    VerificationReport,
    cross_degree_identity,
    degree_profile,
    incidence_rank,
    pad_to_uniform,
    transversal_number,
    verify,
)
from .duality import BICLIQUE, CLIQUE, EdgePartition, dualize, undualize, verify_partition
from .geometry import AffinePlane, FiniteField, affine_plane, field_make
from .search import SearchLimits, SearchOutcome, decide_size, maximize

__version__ = "0.1.0"
