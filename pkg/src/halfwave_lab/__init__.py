"""Pseudospectral half-wave Schrodinger solver and estimate-certification toolkit.

Solves i u_t + u_xx - |D_y| u = mu |u|^{p-1} u (p = 2k+1 odd) on a periodic
box, both by Picard iteration of the Duhamel integral equation and by Strang
split-step integration, and numerically certifies the norm inequalities and
conservation laws underpinning the local well-posedness construction.
"""

__version__ = "0.1.0"

from .grid import (
    Constant,
    Field,
    Gaussian,
    GridSpec,
    NonFiniteError,
    PlaneWave,
    Spectrum,
    conjugate_spectrum,
    make_grid,
    pad_spectrum,
    parse_descriptor,
    sample_function,
    to_field,
    to_spectrum,
    truncate_spectrum,
)
from .norms import (
    NormReport,
    energy_norm,
    l2_norm,
    linf_norm,
    lq_norm,
    norm_report,
    sobolev_norm,
    wiener_norm,
    y_distance_spectra,
    y_norm,
    y_norm_spectra,
)
from .propagator import SimulationParams, apply_linear_flow, apply_multiplier, symbol
from .nonlinearity import nonlinear_flow, power_nonlinearity
from .picard import (
    ContractionReport,
    ConvergenceError,
    PicardState,
    duhamel_apply,
    duhamel_integral,
    measure_contraction,
    phi_map,
    picard_solve,
    select_local_time,
)
from .evolver import evolve, step_strang
from .diagnostics import (
    EstimateReport,
    calibrate_energy_constant,
    check_duhamel_estimates,
    check_linear_estimate,
    check_lipschitz_estimates,
    energy,
    mass,
)
from .ensembles import make_rng, random_band_limited_spectrum, random_trajectory
from .snapshots import SnapshotFormatError, read_snapshot, write_snapshot
