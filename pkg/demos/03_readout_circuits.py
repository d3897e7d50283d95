"""Simulate qubit-mediated readout of a grid state: the plain
conditional-displacement circuit, the two-gate variant, and repeated
rounds with majority voting.

Run: python3 demos/03_readout_circuits.py
"""

import numpy as np

from gkp_readout import analytics
from gkp_readout.fock import HilbertSpec
from gkp_readout.readout import CircuitParams, simulated_p_err
from gkp_readout.states import make_state_pair

spec = HilbertSpec(150)
delta = np.sqrt(0.1)
pair = make_state_pair(spec, delta)

print(f"delta = {delta:.4f} (10 dB)\n")

# Single round, lambda = 0: the plain circuit.
simple = simulated_p_err(pair, CircuitParams(lam=0.0, rounds=1))
print(f"simple circuit:   p(1|0) = {simple.p_1_given_0:.5f}, "
      f"p(0|1) = {simple.p_0_given_1:.5f}, p_err = {simple.p_err:.5f}")
print(f"  closed form:    {analytics.p_err_simple_formula(delta):.5f}")

# The extra pre-rotation gate, at the optimized interaction strength.
lam = analytics.optimal_lambda(delta)
improved = simulated_p_err(pair, CircuitParams(lam=lam, rounds=1))
print(f"\nimproved circuit (lambda = {lam:.5f}):")
print(f"  p_err simulated = {improved.p_err:.3e}")
print(f"  closed form     = {analytics.p_err_improved_formula(delta, lam):.3e}")
print(f"  fidelity        = {100 * (1 - improved.p_err):.3f}%")

# Repetition with majority vote: pays off for the simple circuit, whose
# errors are dominated by misassignment; futile for the improved one,
# whose measurement back-action degrades later rounds.
print(f"\n{'rounds':>6} {'simple':>10} {'improved':>12}")
for rounds in (1, 3, 5):
    s = simulated_p_err(pair, CircuitParams(0.0, rounds)).p_err
    i = simulated_p_err(pair, CircuitParams(lam, rounds)).p_err
    print(f"{rounds:6d} {s:10.5f} {i:12.3e}")
