"""Quasi-free representations of Cuntz-Krieger algebras, computed exactly where possible.

Modules: :mod:`spectral` (admissible matrices, Lambda(A)), :mod:`words`
(monomial calculus and the quasi-free state), :mod:`classify` (type labels),
:mod:`interval` (interval and sequence representations), :mod:`gns`
(free-group tensor representation), :mod:`certify` (overlap decay bounds) and
:mod:`cli`.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CKError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    MalformedInputError,
    NoSolutionError,
    NotInLambdaError,
    PreconditionError,
    ResourceError,
    ZeroMonomialError,
)
from .scalars import Surd  # noqa: E402
from .spectral import (  # noqa: E402
    LambdaPoint,
    MatrixDiagnostics,
    ZeroOneMatrix,
    check_lambda_membership,
    pf_eigen,
    solve_last_coordinate,
    validate_ck_matrix,
)
from .words import CKMonomial, FormalSum, parse_formal_sum, quasifree_eval  # noqa: E402
from .classify import TypeClassification, classify_type  # noqa: E402
from .interval import (  # noqa: E402
    EtaPrime,
    IntervalSystem,
    SequenceVector,
    StepFunction,
    build_interval_system,
    gp_fixed_point_check,
    verify_ck_relations,
)
from .gns import ReducedWord, TensorVector, compare_states, gns_moment, reduce_word  # noqa: E402
from .certify import Certificate, OverlapData, inequivalence_certificate, overlap_data  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
