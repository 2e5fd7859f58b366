"""Linear Gaussian simulator for (2,3) threshold quantum state sharing
with continuous variables: dealer encoding, reconstruction protocols,
adversary analysis, and classical benchmarks."""

from .modes import (
    MINUS,
    PLUS,
    ClassicalSignal,
    NoiseAxis,
    QuadratureMode,
    classical_axis,
    commutator_weight,
    covariance,
    db_to_linear,
    draw_axes,
    evaluate_quadrature,
    is_physical,
    linear_combine,
    monte_carlo_sample,
    new_coherent,
    new_squeezed,
    new_vacuum,
    quantum_pair,
    variance,
)
from .components import (
    BeamSplitterSpec,
    DetectorSpec,
    IDEAL_DETECTOR,
    beam_splitter,
    displace,
    epr_pair,
    homodyne,
    lo_displace,
    loss,
    phase_insensitive_amp,
    phase_sensitive_amp,
    phase_shift,
)
from .protocols import (
    DealerConfig,
    ReconstructionReport,
    ShareSet,
    UNITY_PIA_GAIN,
    UNITY_SINGLE_FF_GAIN,
    UNITY_TWO_OPA_GAIN,
    adversary_amplified,
    adversary_view,
    classical_avg_fidelity,
    classical_bounds,
    dealer_encode,
    make_report,
    orient_share3,
    parametric_correction,
    reconstruct_double_ff,
    reconstruct_mz,
    reconstruct_pia,
    reconstruct_single_ff,
    reconstruct_two_opa,
    secret_gains,
    single_ff_gain_map,
    solve_single_ff_unity_gain,
)
from .metrics import (
    MetricsReport,
    additional_noise_product,
    conditional_variance,
    duan_inseparability,
    fidelity,
    fidelity_modes,
    infer_homodyne,
    metrics_report,
    reid_epr,
    signal_transfer,
    unity_corrected_fidelity,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    OracleReport,
    PRESETS,
    RunResult,
    SweepAxis,
    build_pipeline,
    config_from_mapping,
    fit_symmetric_epr_loss,
    load_config_file,
    oracle_check,
    pareto_frontier,
    preset_config,
    region_boundary,
    rows_to_csv,
    result_to_json,
    run,
)

__version__ = "1.0.0"
