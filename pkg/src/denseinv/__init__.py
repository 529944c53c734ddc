"""Invertibility and density of invertibles in commutative Banach algebras.

Concrete algebras (``C^m``, weighted Laurent algebras, quotient extensions
``A[x]/(alpha)``), a division-free resultant, and a randomized procedure that
nudges an element of an extension into its invertible group.
"""
from .algebra import (
    C,
    Algebra,
    AlgebraError,
    CertificationFailure,
    DescriptorMismatch,
    Element,
    FiniteSpace,
    InvertCertificate,
    NotInvertible,
    NotRepresentable,
    is_full_subalgebra_witness,
)
from .beurling import (
    AnnulusSpectrum,
    BeurlingAlgebra,
    DiscClosure,
    Obstruction,
    WeightSequence,
    disc_closure_membership,
    gelfand_roots,
    obstruction_verdict,
    radii,
    winding_pair,
)
from .extension import ArensHoffman, embed, make_extension, minimal_t, tower
from .linalg import adjugate_column, berkowitz_charpoly, det
from .perturb import (
    Exhausted,
    PerturbConfig,
    PerturbTrace,
    StageExhausted,
    matrix_perturb,
    nth_power_approximants,
    perturb_in_base,
    perturb_to_invertible,
)
from .poly import (
    AlgebraPoly,
    MonicPoly,
    formal_derivatives,
    multiplication_matrix,
    resultant,
    resultant_poly_in_c,
    sylvester_matrix,
)

__version__ = "0.1.0"
