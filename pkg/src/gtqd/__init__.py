"""Generalized twisted quantum doubles D^omega(G, N) and orbifold McKay graphs."""

from .cyclotomic import Cyclotomic, root_of_unity
from .groups import FiniteGroup, Subgroup, QuotientMap, quotient, center, centralizer
from .polyhedral import build, parse_group_spec, recognize
from .characters import character_table, twisted_table
from .cocycles import Cocycle3, InflatedCocycle, cyclic_cocycle, trivial, verify_3cocycle, theta_conjugation_check
from .qdouble import GTQD, verify_quasihopf, check_normal_image, phi_map, psi_map
from .fusion import Representations, simple_modules, inner_product, fusion_coefficient, fusion_with_G_module
from .mckay import build_graph, classify_ADE, classical_mckay, expected_correspondent, verify_theorem

__version__ = "0.1.0"
