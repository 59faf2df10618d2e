from .operads import (
    AssWordTuple, B_expand, E_embed, LieTupleMorphism, ass_basis, ass_identity, compose_ass, compose_lie,
    expand_tree, lie_identity, linear_compose_ass,
)
from .rewrite import reduce_mod_I, reduce_morphism, rewrite_step
from .syntax import format_lin, format_morphism, format_word, parse_lin, parse_morphism
from .words import (
    DELTA, EPSILON, ETA, GAMMA, NABLA, FreeWord, GropMorphism, LinMorphism, compose, compose_all,
    free_product, free_product_all, generators, identity, inner_conjugation, inverse_word, iterated_diagonal,
    linear_compose, linear_free_product, permutation_morphism, reduce_word, tau, theta, theta_insertion,
)
