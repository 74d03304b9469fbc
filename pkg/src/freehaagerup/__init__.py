"""
Exact combinatorics of free probability: non-crossing partitions, free
cumulants, hyperoctahedral Weingarten calculus, L^{2m} norms of polynomials
in R-diagonal families, and free-group trace oracles.
"""

from .errors import (
    GramSingularError,
    InconsistencyError,
    PreconditionError,
    SizeGuardError,
    TruncationError,
    UndecidedError,
)
from .scalars import GaussianRational, RationalInterval
from .partitions import Partition, PartitionClass, enumerate_partitions, moebius_nc
from .cumulants import (
    CIRCULAR,
    HAAR_UNITARY,
    SEMICIRCULAR,
    CumulantSpec,
    FreeFamily,
    Letter,
    custom_spec,
    moment,
    parse_word,
)
from .weingarten import gram, haar_moment, weingarten
from .haagerup import (
    ArrayPolynomial,
    GradedPolynomial,
    HomPolynomial,
    RadialMultiplier,
    lp_norm_2m_pow,
    shi_certify,
)
from .freegroup import GroupFunction, trace_norm_2m_pow

__version__ = "0.1.0"
