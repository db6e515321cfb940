"""Canonical forms and orbit deciders for matrices under U, B and standard
parabolic subgroups, over exact finite fields and the quadratic tower on GF(p)."""
from .census import brute_orbits, census_brute, count_alt_orbits, count_sym_orbits, enumerate_canforms
from .congr import (b_congr_canonical, b_congr_canonical_alt, b_congr_canonical_sym,
                    b_congr_canonical_sym_char2, hat, u_congr_canonical, u_congr_canonical_alt,
                    u_congr_canonical_sym, u_congr_canonical_sym_char2)
from .equiv import b_equiv_canonical, b_equivalent, u_equiv_canonical, u_equivalent
from .errors import CanonError
from .field import BinaryField, FieldElem, PrimeField, TowerField, field_from_spec
from .matrix import Matrix, classify, couple, rank, read_matrix, top_left_rank, write_matrix
from .parabolic import (ParabolicDescriptor, block_rank_table, cross_counts, p_congruent,
                        p_equivalent, parabolic_from_composition, parse_composition)

__version__ = "0.1.0"
