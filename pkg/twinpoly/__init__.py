from . import config, errors, io, oracle, parallel, synthetics, twinned
from .core import linalg, polytope, poset
from .core.polytope import (
    Facet,
    HRep,
    VRep,
    canonicalize,
    facets,
    hull_facets,
    hull_volume,
    in_orthant,
    interior_lattice_points,
    is_centrally_symmetric,
    is_reflexive,
    polar_dual,
    restrict_to_orthant,
    vertex_enumeration,
)
from .core.poset import (
    Poset,
    SignedPoset,
    SubsetList,
    antichains,
    common_linear_extension,
    count_linear_extensions,
    count_linear_extensions_signed,
    delta,
    enumerate_posets,
    has_common_linear_extension,
    ideals,
    induced_subposet,
    maximal_chains,
)
from .errors import CapacityError, DimensionError, PosetFileError, UnboundedError
from .io import format_poset, parse_poset, read_poset, write_poset
from .twinned import (
    FacetNormalSet,
    GammaKind,
    TwinnedPolytope,
    check_region_decomposition,
    dual_vertices,
    facet_normals,
    gamma_vertices,
    no_poset_with_k_antichains,
    volume_formula,
    volume_terms,
)
