"""Matroids of rational subspaces, broken circuit complexes and the circuit ideal."""

from .exactla import RationalMatrix, kernel_basis, rank_of_columns, rref
from .groebner import (
    GroebnerBasis,
    Polynomial,
    TermOrder,
    buchberger,
    circuit_polynomial,
    hilbert_quotient,
    initial_ideal,
    normal_form,
    order_induced_by,
)
from .matroid import CircuitVector, Matroid, from_matrix, load_matroid, tutte, tutte_10
from .nbc import (
    GroundOrdering,
    HilbertSeries,
    HVector,
    MonomialIdeal,
    SimplicialComplexByFacets,
    broken_circuits,
    f_vector,
    h_vector,
    hilbert_monomial,
    nbc_complex,
    sr_ideal,
)
from .verify import RunConfig, VerificationReport, run_all

__version__ = "0.1.0"
