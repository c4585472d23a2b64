"""Finite presheaves on free categories and the interface machinery built on them."""

from .builtins import (builtin_names, builtin_representation, builtin_representations,
                       m0_representation, m1prime_representation, mu_representation,
                       path_representation)
from .category import (DualStructure, FreeCategory, Morphism, fixed_dual, parallel_arrows,
                       single_arrow, swap_dual)
from .constructions import (Interface, StabilityReport, Tensor, check_gluing, check_naturality,
                            check_stability, fibers, gluing_comparison, interface,
                            interface_transformation, refines, same_partition, stability,
                            stability_conditions_m0, standard_representation, tensor,
                            tensor_of_representations, tensor_power)
from .core import (FinitePresheaf, PresheafMorphism, Representation, graph_presheaf,
                   morphism_from_labels, network_to_presheaf, presheaf_to_network, yoneda,
                   yoneda_representation)
from .search import (count_homs, find_isomorphism, presheaf_homs, presheaves_isomorphic,
                     representations_isomorphic)

__all__ = [
    "builtin_names",
    "builtin_representation",
    "builtin_representations",
    "m0_representation",
    "m1prime_representation",
    "mu_representation",
    "path_representation",
    "DualStructure",
    "FreeCategory",
    "Morphism",
    "fixed_dual",
    "parallel_arrows",
    "single_arrow",
    "swap_dual",
    "Interface",
    "StabilityReport",
    "Tensor",
    "check_gluing",
    "check_naturality",
    "check_stability",
    "fibers",
    "gluing_comparison",
    "interface",
    "interface_transformation",
    "refines",
    "same_partition",
    "stability",
    "stability_conditions_m0",
    "standard_representation",
    "tensor",
    "tensor_of_representations",
    "tensor_power",
    "FinitePresheaf",
    "PresheafMorphism",
    "Representation",
    "graph_presheaf",
    "morphism_from_labels",
    "network_to_presheaf",
    "presheaf_to_network",
    "yoneda",
    "yoneda_representation",
    "count_homs",
    "find_isomorphism",
    "presheaf_homs",
    "presheaves_isomorphic",
    "representations_isomorphic",
]
