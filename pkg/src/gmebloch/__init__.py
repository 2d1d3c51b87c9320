"""Trace-norm criteria for genuine tripartite entanglement built from the
Bloch correlation tensors of ``d x d x d`` states."""

__version__ = "0.1.0"

from .bloch import (  # noqa: E402
    BlochTensor, CorrelationSlices, DensityMatrix, GeneratorBasis, SliceConfig,
    Tolerances, extract, gellmann_basis, n_norms, reconstruct, slices, t_value,
)
from .criteria import (  # noqa: E402
    BoundTable, CriterionReport, evaluate, lemma_bounds, reference_lines, soundness_probe,
)
from .states import (  # noqa: E402
    NoiseFamily, PureState, SchmidtForm, canonical_case_state, critical_x, family, ghz,
    random_biseparable, schmidt, w3_qutrit, w_qubit, white_noise,
)
