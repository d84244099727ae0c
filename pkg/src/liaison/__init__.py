"""Exact linkage (liaison) computations for homogeneous ideals in graded
polynomial rings over QQ or GF(p): Groebner bases, colon ideals, Hilbert
functions, minimal free resolutions and Betti tables, direct links and
link chains, monomial double-link reduction, and the point-set families
that are licci but not minimally so.
"""

from .rings import (Field, GF, QQ, DEFAULT_PRIME, MonomialOrder, ParseError,
                    Polynomial, PolynomialRing, grevlex, lex,
                    elimination_block, monomials_of_degree, random_form)
from .groebner import (GroebnerBasis, groebner_basis, normal_form,
                       reduce_to_minimal_generators, module_groebner,
                       module_minimal_generators, spair_check)
from .ideals import (HilbertData, Ideal, free_module_piece_dim,
                     graded_piece_dim, height, hilbert, ideal_intersection,
                     ideal_product, ideal_quotient, ideal_sum, krull_dim,
                     saturate, truncate)
from .resolutions import (BettiTable, FreeResolution, betti_table,
                          free_resolution, is_cohen_macaulay, proj_dim,
                          regularity, syzygies)
from .linkage import (Chain, LinkError, LinkStep, RegularSequenceCert,
                      RegularSequenceError, ScanResult, SocleCheck,
                      StandardForm, chain_verify, find_reg_seq,
                      is_complete_intersection, is_regular_sequence, link,
                      min_reg_seq_degrees, monomial_double_link,
                      monomial_licci_scan, socle_degree_bound_check,
                      standard_form)
from .constructions import (FamilyParams, HypersurfaceLift, PointsFamily,
                            StarCheck, build_linked_points,
                            cancellation_reachable, family_witness,
                            hypersurface_section, koszul_hilbert_function,
                            stable_shape_check, template_table)
from .scripts import (ChainScript, ChainScriptError, StepSpec,
                      load_chain_script, parse_chain_script)
from .reports import Report, emit_report, validate_report

__version__ = "0.1.0"
