"""Hypergraph Lagrangians, product constructions and the arithmetic of Turán densities."""
from .algebra import Density, UNIT, circ_op, h_inv, h_map, j_map, jump_image, oplus, otimes2, star_op
from .canon import canonical_form, is_isomorphic
from .conjectures import (
    dittert_search,
    hajek_counterexample_search,
    hajek_hypergraph,
    hajek_uniform_value,
    korner_marton_check,
    permanent,
    psi,
    tetracode,
)
from .constructions import (
    circ_product,
    cross_product,
    j_augment,
    oplus_join,
    product_point,
    star_product,
    strong_power,
    strong_product,
)
from .errors import GuardExceeded, NonFiniteError
from .extremal import ForbiddenFamily, ex_brute, pi_sequence
from .hypergraph import (
    RMultigraph,
    blow_up,
    complement,
    complete_graph,
    contains,
    disjoint_union,
    find_embedding,
    make_graph,
    parse_graph,
    read_graph,
    single_edge,
    write_graph,
)
from .lagrangian import LagrangianReport, duality_check, evaluate_p, gradient_p, lambda_estimate

__version__ = "0.1.0"
