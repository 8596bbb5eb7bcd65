"""Finite-group algorithms and exact certificates around Sylow 2-subgroup conjugacy."""

__version__ = "0.1.0"

from .errors import SylowKitError
from .groups import (
    FiniteGroup, Subgroup, QuotientGroup, generate_subgroup, centralizer, normalizer,
    element_order, involutions, find_subgroup_conjugator, quotient,
    centralizer_dimension, check_normalizer_condition,
)
from .corpus import group_by_name, corpus, corpus_names
from .sylow import extend_to_maximal_p_subgroup, all_sylow_p, verify_sylow_theorems
from .escalation import escalation_step, find_conjugator, check_involution_dichotomy
from .folang import parse_formula, evaluate, builtin_sentences
from .exactmat import RationalMat2, matrix_order, involution_classify
from .padic import vp, INFINITY, GaussianInt, is_gaussian_prime, check_valuation_parity
from .platonov import (
    platonov_generator, nonconjugacy_certificate, q8_embedding_refutation,
    order8_impossibility, sylow_certificate,
)
