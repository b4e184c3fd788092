"""Approximant families, builders, parameter prediction and diagnostics."""

from __future__ import annotations

from .builders import (
    build_critical_isotherm,
    build_exp_series,
    build_fp,
    build_offset_reciprocal,
    build_soft_sphere,
    fp_z_polynomial,
    rho_c_polynomial,
)
from .families import (
    CriticalIsothermApproximant,
    ExpSeriesApproximant,
    OffsetReciprocalApproximant,
    PadeReciprocalApproximant,
    PowerLawApproximant,
    approximant_from_dict,
    eval_approximant,
)
from .prediction import (
    ParameterPrediction,
    PredictionRecord,
    approximant_at,
    predict_blasius,
    predict_fp_z,
    predict_rho_c,
    predict_sakiadis_exp,
    predict_sakiadis_simple,
    track_branches,
)
from .diagnostics import effective_constant, effective_plateau, singularity_radius
