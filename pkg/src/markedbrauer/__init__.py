"""Exact arithmetic for marked Brauer-type diagrams and their tensor action.

The package has three layers: diagrams and their algebra over Q[x]
(`diagrams`, `algebra`), the representation on tensor powers of a
realified hermitian space together with commutant/invariant machinery
(`tensorrep`), and the irreducible-summand bookkeeping with two worked
side-216 decompositions (`decomposition`).  `exact` supplies polynomials
and sparse rational linear algebra; `cli` exposes everything as
subcommands.
"""

from .exact import (Polynomial, ExactMatrix, SizeBoundError, parse_poly,
                    format_poly, poly_eval, matrix_rank, nullspace_dim,
                    nullspace_basis, rank_mod_p, modular_rank_two_primes)
from .diagrams import (MarkedDiagram, DiagramParseError, parse_diagram,
                       format_diagram, identity_diagram, generator_sigma,
                       generator_J, generator_c, permutation_diagram,
                       count_diagrams, enumerate_diagrams)
from .algebra import (AlgebraElement, TraceComponent, trace_components,
                      gamma_path, gamma_loop, multiply_diagrams,
                      multiply_elements, format_element, element_to_json,
                      j_pair_diagram, idempotent_eP, check_relations,
                      span_closure, z_element, verify_idempotent_family)
from .tensorrep import (TensorSpaceConfig, TensorOperator, rho_diagram,
                        rho_element, verify_homomorphism, rho_kernel_dim,
                        diagram_span_rank, z_element_check, commutant_dim,
                        centralizer_equals_diagram_span, invariant_form_eval,
                        invariant_space_dim, pairing_form_vector,
                        pairing_forms_rank, forms_annihilated, eP_image_rank,
                        operator_to_json, operator_from_json)
from .decomposition import (IrrepLabel, standard_tableaux, enumerate_labels,
                            highest_weight, weyl_dim, reality_type,
                            decompose_tensor, gray_hervella, abbena_garbiero)

__version__ = "0.1.0"
