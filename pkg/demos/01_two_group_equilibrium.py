"""Two-group Cournot equilibrium: closed form against a dense solve.

One quantum firm competes with one classical firm. The closed-form
quantities are compared with Gaussian elimination on the expanded model,
and the five distinct entries of the inverse FOC matrix are shown.
"""

import numpy as np

from cournot_energy import (
    TwoGroupParams,
    assemble_inverse,
    block_inverse,
    build_gamma,
    expand_two_group,
    profitability_margin,
    solve_equilibrium,
    two_group_equilibrium,
)

p = TwoGroupParams(n_q=1, n_c=1, a_q=10, a_c=10, theta_q=3, theta_c=2,
                   gamma_qq=2, gamma_cc=2, gamma_qc=1)

eq = two_group_equilibrium(p)
print(f"closed form: q_q = {eq.q_q:.6f}, q_c = {eq.q_c:.6f}, D = {eq.denominator:g}")
print(f"profits:     pi_q = {eq.pi_q:.6f}, pi_c = {eq.pi_c:.6f}")

ref = solve_equilibrium(expand_two_group(p))
print(f"dense solve: q = {ref.quantities}, max FOC residual {ref.foc_residual_max:.1e}")
print(f"profitability margin for the quantum firm: {profitability_margin(p):.3f}")

# a larger market: 4 quantum and 6 classical firms
big = p.with_(n_q=4, n_c=6)
bi = block_inverse(big)
W = assemble_inverse(bi, big.n_q, big.n_c)
err = np.abs(W @ build_gamma(expand_two_group(big)) - np.eye(10)).max()
print(f"\n4 + 6 firms: omega_qq={bi.omega_qq:.5f} varpi_qq={bi.varpi_qq:.5f} "
      f"omega_cc={bi.omega_cc:.5f} varpi_cc={bi.varpi_cc:.5f} omega_qc={bi.omega_qc:.5f}")
print(f"max |W Gamma - I| = {err:.1e}")
