"""Numerical laboratory for the Araki-Lieb-Thirring trace inequality and its relatives.

Layers, bottom up: :mod:`altlab.linalg` (Jacobi eigensolver, matrix
functions), :mod:`altlab.norms` (Schatten norms, trace powers),
:mod:`altlab.inequalities` (one checker per inequality, each returning an
:class:`IneqReport`), :mod:`altlab.sampling` and :mod:`altlab.campaign`
(seeded falsification runs), :mod:`altlab.probe` (tightness search) and
:mod:`altlab.cli`.
"""
from .errors import AltLabError, ConvergenceError, DomainError, MatrixFormatError, RangeError
from .inequalities import (
    REGISTRY,
    IneqParams,
    IneqReport,
    check_alt,
    check_bourin,
    check_general,
    check_general_A,
    check_hermitian_B,
    check_holder,
    check_lemma_sum_diff,
    check_proof_steps,
    check_t_family,
    check_trace_norm_special,
    check_water,
    check_waterwine,
    get_checker,
)
from .linalg import (
    HermitianMatrix,
    PsdMatrix,
    block_dilation,
    congruence,
    contraction_factor,
    eig_precision,
    hermitian_eig,
    jordan,
    loewner_leq,
    modulus,
    polar,
    psd_power,
    svd,
)
from .matrixio import dumps_matrix, load_matrix, loads_matrix, save_matrix
from .norms import INF, kyfan_constant, operator_norm, schatten, trace_power
from .probe import Witness, probe_tightness
from .sampling import SampleSpec, sample

__version__ = "0.1.0"
