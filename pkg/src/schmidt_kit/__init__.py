"""Schmidt rank and Schmidt number tools for bipartite states.

Includes an exactly certified (m-2)(n-2)-dimensional subspace of
C^m (x) C^n that contains no vector of Schmidt rank <= 2.
"""

from schmidt_kit._backend import BACKEND
from schmidt_kit.exact import ExactMatrix, GaussianRational, det_C, det_exact, minor, rank_exact
from schmidt_kit.mixed import (
    DensityMatrix,
    SchmidtNumberWitness,
    make_uniform_state,
    schmidt_number_lower_bound,
    schmidt_number_upper_bound,
    support_basis,
    supported_on,
)
from schmidt_kit.oracle import SweepReport, exhaustive_sweep, min_nonzeros_on_antidiagonal, random_sweep
from schmidt_kit.states import (
    ExactState,
    PureState,
    SchmidtDecomposition,
    matricize,
    normalize,
    schmidt_decompose,
    schmidt_rank,
    schmidt_rank_exact,
)
from schmidt_kit.subspace import (
    RankCertificate,
    SubspaceBasis,
    antidiag_length,
    build_A,
    build_basis,
    certify,
    member_of_S,
)

__version__ = "0.1.0"
