"""Dyadic fields, Hilbert symbols and the local invariants at the dyadic place."""

from .field import (DYADIC_CATALOG, MU, Q2, Q2I, Q2SQRT2, Q2ZETA8, DyadicElt, DyadicField,
                    PrecisionError, default_precision, dy_embed, dy_nth_root, dy_nth_roots,
                    dy_square_class, dy_unit_part, dy_val, from_nf, is_square, square_equivalent)
from .hilbert import cores_invariant, cores_quad, hilbert_bruteforce, hilbert_q2, inv_restrict
from .obstruction import (build_point_P, build_point_Q, eval_B_at, lemma_l, obstruction_sum,
                          VerificationError)
