"""Bicomplex algebra and multi-valued neuron perceptrons (real, complex, bicomplex)."""

from .activation import (
    SectorConfig,
    activation_BC,
    activation_P,
    perturbation_bound_bc,
    perturbation_bound_complex,
    sector_index,
    sector_index_bc,
    threshold_eval_bc,
    threshold_eval_complex,
)
from .algebra import E1, E2, Bicomplex, Hyperbolic, format_bicomplex, parse_bicomplex
from .datagen import audit, gen_ksep_bc, gen_ksep_complex, gen_real
from .datasets import BicomplexDataset, ComplexDataset, GenSpec, RealSeparableProblem
from .errors import (
    DimensionMismatch,
    GenerationStalledError,
    MissingHiddenError,
    NonPositiveRateError,
    NotConvergedError,
    ParseError,
    ZeroArgumentError,
    ZeroDivisorError,
)
from .linalg import BicomplexVector, d_norm_vec, inner_product_D, weighted_sum_bc, weighted_sum_complex
from .perceptron import (
    BicomplexWeights,
    ComplexWeights,
    TrainConfig,
    TrainingTrace,
    mvn_train_bc,
    mvn_train_complex,
    rate_condition_check,
    real_perceptron_train,
)

__version__ = "0.1.0"
