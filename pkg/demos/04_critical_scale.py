"""Demand scale beyond which quantum hardware uses less energy per firm.

Uses the fig3 market with Rydberg, trapped-ion and classical HPC energy
models and locates the crossing for each quantum platform.
"""

from cournot_energy.config import load_config
from cournot_energy.hardware import asymptotic_quantities, critical_scale, exact_quantities
from cournot_energy.sweeps import sweep_scale

cfg = load_config(preset="fig3")
p, hw = cfg.market, cfg.hardware

for kind in hw.quantum_kinds:
    a_star = critical_scale(p, kind, hw.classical_kind, 1e3, 1e4, constants=hw.constants, expand=True)
    print(f"{kind.value:9s} a* = {a_star:.4e}")

print("\n        a      E_ion    E_rydberg  E_classical")
for row in sweep_scale(p, [1e3, 1e8, 1e13, 1e18, 1e20], hw.constants).rows:
    a, _, _, e_ryd, e_ion, e_cls, _ = row
    print(f"{a:9.1e} {e_ion:10.3e} {e_ryd:12.3e} {e_cls:12.3e}")

print("\nlarge-group approximation of q_q* at a = 100 n:")
for n in (10, 30, 100, 300):
    q = p.with_(n_q=n, n_c=n)
    approx, exact = asymptotic_quantities(q, 100.0 * n)[0], exact_quantities(q, 100.0 * n)[0]
    print(f"  n = {n:3d}: approx {approx:.4f}, exact {exact:.4f}")
