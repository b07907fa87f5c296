"""Exact engine for acyclic sign-skew-symmetric cluster algebras."""

from .errors import (BudgetExceeded, ClusterError, InhomogeneityBug,
                     InvalidMatrix, NonExactDivision, NonMonomialInverse,
                     NotMutable, NotSignSkewSymmetric, OrbitNotMutable,
                     RepresentativeDependent, UnsupportedCovering)
from .exchange import (ExchangeMatrix, is_acyclic, is_sign_skew_symmetric,
                       mutate, principal_extension, read_matrix,
                       square_extension, write_matrix)
from .laurent import (Inhomogeneous, LaurentPoly, add, degree_vector, div_exact,
                      exact_div, mono, mul, parse_poly, poly_pow, substitute,
                      x_id, x_poly, y_id, y_poly)
from .seed import (Seed, c_matrix, canonical_key, f_polynomial, g_matrix,
                   g_recurrence_step, g_vector, initial_seed, mutate_seed,
                   mutate_seed_sequence, read_seed, write_seed)
from .unfolding import (Covering, GroupAction, IceQuiver, covering_seed, fold,
                        fold_g_vector, has_orbit_loop, has_orbit_two_cycle,
                        orbit_mutate, orbit_mutate_seed, project, read_quiver,
                        standard_covering, verify_covering, verify_projection,
                        write_quiver)
from .verify import (check_basis, check_covering_suite, check_recurrence,
                     check_sign_coherence, default_corpus, det_bareiss,
                     explore, run_checks, verify_corpus)
