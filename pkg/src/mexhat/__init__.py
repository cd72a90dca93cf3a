"""Generalized Mexican hat wavelets built from oscillator-state coefficients.

A real coefficient vector g (weights on a^dagger**n |0>) gives the mother
wavelet psi(x) = pi^(-1/4) exp(-x^2/2) sum_n g[n] H_n(x) / 2^(n/2), which is
admissible iff sum_n (2n-1)!! g[2n] = 0.
"""

from .errors import (
    AccuracyError,
    AdmissibilityError,
    CapacityError,
    ConfigError,
    CoverageWarning,
    DegenerateInputError,
    DivergenceError,
    MexhatError,
    ParameterError,
    TruncationError,
)
from .fock_space import (
    FockVector,
    GCoefficients,
    coherent_p0_overlap,
    fock_inner,
    g_to_fock,
    p0_overlap,
    position_wavefunction,
    weight_via_coherent_integral,
)
from .math_core import Polynomial, QuadratureRule, admissibility_weight, gauss_hermite_rule, hermite_poly
from .operator_lab import (
    OperatorMatrix,
    matrix_element_oracle,
    pure_squeeze_check,
    quantum_transform,
    squeeze_translate_matrix,
    two_route_equivalence,
)
from .transform_engine import (
    HermiteSignal,
    SampledSignal,
    Scalogram,
    daughter_eval,
    scalogram,
    transform_analytic,
    transform_sampled,
)
from .wavelet_builder import (
    MotherWavelet,
    admissibility_constant,
    build_wavelet,
    integral_check,
    l2_norm,
    project_admissible,
    solve_free_coefficient,
    zero_crossings,
)

__version__ = "0.1.0"
