"""Per-firm equilibrium energy as quantum firms enter the market.

Quantum quantities fall as n_q grows; once a quantum firm's output drops to
1 or below, its log-power energy curve is no longer defined and the row is
flagged.
"""

from cournot_energy.config import load_config
from cournot_energy.sweeps import sweep_ratio

cfg = load_config(preset="fig2")
table = sweep_ratio(cfg.market, cfg.energy.model_q, cfg.energy.model_c, cfg.sweep.values())

print("n_q/n_c      E_q      E_c   E_c-E_q   flag")
for ratio, e_q, e_c, flag in table.rows:
    print(f"{ratio:7.0f} {e_q:8.4f} {e_c:8.4f} {e_c - e_q:9.4f}   {flag}")
