"""Quantum orthogonal Cayley-Klein groups in the Cartesian basis.

Exact symbolic construction of the quantum groups SO_v(N; j; sigma),
their Hopf structure (coproduct, counit, antipode), their defining RUU
and orthogonality relations, nilpotent contractions of all of these,
and the classification of contracted groups up to equivalence.
"""

from .scalars import CKValue, Coeff, ExpScalar
from .ckcore import GroupSpec, J_of, generating_matrix, r_tilde, spec_with_nil
from .contraction import ContractedGroup, contract_group, eliminate_generators
from .classify import enumerate_catalog, pattern_of

__all__ = [
    "CKValue", "Coeff", "ExpScalar", "GroupSpec", "J_of",
    "generating_matrix", "r_tilde", "spec_with_nil", "ContractedGroup",
    "contract_group", "eliminate_generators", "enumerate_catalog",
    "pattern_of",
]

__version__ = "0.1.0"
