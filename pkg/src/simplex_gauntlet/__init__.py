"""Correct-decoding probabilities of the L1, regular-simplex and coded-L1
signal sets on the time-discrete AWGN channel."""

from .closedform import PdValue, pd_l1, pd_lc, pd_si_lambda, pd_si_snr
from .mathkit import (
    BracketError,
    ConvergenceError,
    DomainError,
    QuadratureSpec,
    find_root,
    integrate,
    std_normal_cdf,
    std_normal_pdf,
)
from .montecarlo import PdEstimate, TrialConfig, decode_min_distance, simulate_pd
from .signals import (
    SignalSet,
    avg_energy,
    capacity_per_dimension,
    code_rate,
    ebn0_from_snr,
    make_coded_l1,
    make_l1,
    make_l1_eps,
    make_simplex,
)
from .analysis import (
    CrossingResult,
    SweepTable,
    dominance_interval,
    find_crossing_lambda,
    find_crossing_snr,
    sweep,
)
