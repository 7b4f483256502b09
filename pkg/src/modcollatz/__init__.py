"""Exact determinants and structure of modular Collatz, pn+q and Conway graphs."""
from .detvalue import DetValue
from .errors import (
    DivisionByZeroPoly,
    EvenModulus,
    ModCollatzError,
    NotCoprime,
    NotCoprime3,
    NotCoprime6,
    NotInvertible,
    SizeMismatch,
)
from .exactla import IntPolynomial, charpoly, det_exact, parse_poly, pm1_class, poly_divides, rank_exact
from .formulas import (
    K_collatz,
    conway_sign,
    conway_X_charpoly,
    conway_X_matrix,
    det_collatz_formula,
    det_collatz_via_IplusX,
    det_conway_formula,
    det_pnq_formula,
)
from .graphs import (
    adjacency_matrix,
    build_collatz,
    build_conway,
    build_pnq,
    degree_profile,
    is_strongly_connected,
    observed_edges,
    predicted_edges,
    special_edges,
    strongly_connected_components,
)
from .numtheory import factorize, is_prime, jacobi, multiplicative_order
from .permgraph import (
    Permutation,
    census_pi0,
    census_pi2,
    census_pi3,
    collatz_permutations,
    cycles,
    det_from_pair,
    format_cycles,
    sign,
    zolotarev_sign,
)
from .scan import RecordTracker, find_records, scan, scan_blocks

__version__ = "0.1.0"
