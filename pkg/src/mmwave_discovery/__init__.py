"""Monte-Carlo simulator for context-aided directional cell discovery in mm-wave networks."""

from .antenna import BeamConfig, Codebook, directions_for, gain_db, peak_gain_db
from .channel import (
    LinkBudget,
    PathlossModel,
    boresight_range_m,
    calibrate_tx_power_dbm,
    detects,
    pathloss,
    received_power_dbm,
)
from .config import ConfigError, ExperimentConfig, PolicySpec, config_from_dict, load_config
from .engine import (
    ExperimentResult,
    Radio,
    TrialResult,
    run_experiment,
    run_trial,
    sweep,
)
from .geometry import Point2D, angular_offset, azimuth_to, normalize_azimuth, sector_of
from .policy import (
    InitialConfig,
    ProbeSequence,
    edp_sequence,
    greedy_sequence,
    initial_config,
    oracle_reachable,
    random_sequence,
)
from .scenario import (
    Deployment,
    LocationErrorSpec,
    PopulationSpec,
    UserDrop,
    apply_location_error,
    drop_users,
    sample_population,
)
from .stats import EmpiricalCDF, empirical_cdf, mean_ci

__version__ = "0.1.0"
