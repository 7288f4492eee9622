"""Quasivariety algebra on finite structures.

Syntax and finite models for a fragment of many-sorted first-order logic,
atomic-type closure and quotients, prime and radical types relative to a
finite generator class, affine varieties with Nullstellensatz and
geometric-closedness checks, atomic star expansions, and an ideal calculus
for group-based algebras.
"""

from .errors import (ParseError, QuasivarError, ScopeError, SortError,
                     TheoremViolation, ValidationError)
from .syntax import (App, Const, Eq, Rel, Sentence, Signature, Theory, Var,
                     classify_sentence, parse_atom, parse_sentence,
                     parse_signature, parse_term, parse_theory, print_atom,
                     print_sentence, print_signature, print_theory)
from .structures import (FinStructure, Hom, enumerate_homs, find_isomorphism,
                         in_quasivariety, in_universal_class, make_hom,
                         product, trivial_embeds, trivial_structure)
from .atypes import (AType, AtomUniverse, ClosedAType, atype_of, close,
                     element_universe, enumerate_closed_atypes,
                     enumerate_congruences, full_closed, intersect_closed,
                     make_atype, quotient, term_universe)
from .radical import (Context, Decision, PrimeWitness, RadicalResult,
                      enumerate_prime_witnesses, is_prime, is_radical,
                      is_strongly_prime, present, radical, represent,
                      strong_radical)
from .geometry import (Scope, Variety, VarietyMorphism, check_duality_instance,
                       check_gcim, check_nullstellensatz, coordinate_algebra,
                       is_geometrically_closed_hom, is_immersion,
                       make_morphism, morphism_witness_terms, rational_points)
from .morley import (StarSignature, StarTheory, check_star_transfer,
                     is_regular, is_strict, morleyize_signature,
                     morleyize_theory, search_pec_gc_gap, star_expand,
                     star_prime_bijection, star_reduct)
from .gba import (GBAlgebra, as_gba, enumerate_ideals, enumerate_subgroups,
                  gba_nullstellensatz, gba_view, ideal_atype_bijection,
                  ideal_closure, ideal_radical, is_ideal, kernel_of_hom,
                  validate_gba)
from .files import (load_atype, load_morphism, load_signature, load_structure,
                    load_theory, load_variety, save_atype, save_signature,
                    save_structure, save_theory)
from .reports import make_report, render_report
