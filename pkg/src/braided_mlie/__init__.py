"""Exact verification toolkit for braided m-Lie algebras over group gradings."""

from .algebra import (
    CHECKS,
    GradedAlgebra,
    GradedElement,
    bracket,
    check_associative,
    check_bas,
    check_bji,
    check_graded,
    check_mC_equals_mCinv,
    check_strict,
    jacobiator,
    matrix_units,
    multiply,
    truncated_polynomial,
)
from .classical import (
    QuantumTrace,
    Subalgebra,
    Superization,
    Transpose,
    block_trace,
    compute_osp,
    compute_sl,
    lemma24_defect,
    lemma25_defect,
    ordinary_transpose,
    qtrace,
    superize,
    verify_super_gl,
    verify_thm26,
)
from .documents import DocumentError, dump_document, parse_document
from .field import FieldElement, FieldSpec, parse_scalar
from .gm import GeneralLinear, GmAlgebra, GmElement, gm_block, gm_grade, gm_multiply
from .grading import (
    Bicharacter,
    GroupElement,
    GroupSpec,
    bichar_eval,
    bichar_validate,
    is_skew_symmetric,
    r_zero,
    super_split,
)
from .quiver import Arrow, Quiver, build_path_algebra, enumerate_paths
from .rep import Representation, check_module, check_rep, compose_faithful, left_regular, restrict_rep
from .report import CheckReport

__version__ = "0.1.0"
