"""Readout-error simulator and analytics for qubit-coupled GKP states."""

from .fock import HilbertSpec, LinearOp, make_quadratures, displacement, squeeze, rabi_gate
from .states import (
    GkpSpec,
    GkpStatePair,
    make_pure_gkp,
    make_state_pair,
    gaussian_displacement_channel,
    effective_squeezing,
    purity,
    helstrom_bound,
    delta_db,
    db_to_delta,
    auto_cutoff,
)
from .readout import CircuitParams, ReadoutOutcome, run_readout_once, simulated_p_err, homodyne_p_err_numeric
from .analytics import (
    p_err_homodyne_formula,
    p_err_simple_formula,
    p_err_improved_formula,
    p_err_leading_order,
    optimal_lambda,
    helstrom_formula,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
