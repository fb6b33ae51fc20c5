"""Profits when a common energy budget caps both sectors.

Sweeps the budget E for the fig1 preset and prints a coarse table of capped
quantities and profits in each clamp mode.
"""

import numpy as np

from cournot_energy import ClampMode, constrained_equilibrium
from cournot_energy.config import load_config

cfg = load_config(preset="fig1")
p, e = cfg.market, cfg.energy

print("   E    mode               q_q^F   q_c^F   pi_q^F   pi_c^F")
for E in np.linspace(0.25, 3.0, 12):
    for mode in ClampMode:
        ce = constrained_equilibrium(p, e.model_q, e.model_c, E, mode)
        print(f"{E:5.2f}   {mode.value:17s} {ce.q_q_F:7.3f} {ce.q_c_F:7.3f} "
              f"{ce.pi_q_F:8.3f} {ce.pi_c_F:8.3f}")
    print()
