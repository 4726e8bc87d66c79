"""Static domain walls: the two exact wall families the library is built on.

A thin ferromagnetic wire with easy axis x supports 180-degree walls
connecting the domains m = -x (left) and m = +x (right).  Two parameter
regimes admit explicit static walls:

* hard-axis anisotropy K2 > 0, zero applied field: the Bloch wall
  m = (tanh xi, 0, sech xi), whose azimuth is beta = 2 atan(exp(-xi));
* a transverse field H3 in (0, 1), no hard-axis anisotropy: the wall
  azimuth solves beta' = H3 - sin(beta) and relaxes to asin(H3) on the
  right and pi - asin(H3) on the left.

This script samples both, checks their defining identities, and plots the
magnetization components.
"""

import numpy as np

from llgtw import Grid, to_cartesian
from llgtw.walls import bloch_beta, bloch_wall, transverse_wall

grid = Grid(half_width=20.0, n_nodes=801)

# --- Bloch wall ---------------------------------------------------------------
wall = bloch_wall(grid)
m = to_cartesian(wall).m
print("Bloch wall:")
print(f"  centre magnetization m(0)        = {m[(grid.n_nodes - 1) // 2]}")
print(f"  max |m1 - tanh(xi)|              = {np.abs(m[:, 0] - np.tanh(grid.xi)).max():.2e}")
print(f"  max |m3 - sech(xi)|              = {np.abs(m[:, 2] - 1 / np.cosh(grid.xi)).max():.2e}")

# --- transverse-field walls -----------------------------------------------------
print("\nTransverse-field walls (beta' = H3 - sin beta):")
for H3 in (0.25, 0.5, 0.75):
    tw = transverse_wall(H3, grid)
    b_plus = np.arcsin(H3)
    print(f"  H3 = {H3}: {tw.n_nodes} nodes, "
          f"beta(+L) - asin(H3) = {tw.beta[-1] - b_plus:+.2e}, "
          f"min(sin beta - H3) = {(np.sin(tw.beta) - H3).min():+.2e}")

# the H3 -> 0 limit recovers the Bloch azimuth
for H3 in (1e-2, 1e-3):
    tw = transverse_wall(H3, grid, extend=False)
    gap = np.abs(tw.beta - bloch_beta(grid.xi)).max()
    print(f"  H3 = {H3:g}: max |beta - beta_Bloch| = {gap:.3e}")

# --- plot -----------------------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping the figure")
else:
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.6), sharex=True)
    for j, comp in ((0, "m1"), (2, "m3")):
        axes[0].plot(grid.xi, m[:, j], label=comp)
    axes[0].set_title("Bloch wall (K2 > 0)")
    axes[0].set_xlabel("xi")
    axes[0].legend()

    for H3 in (0.25, 0.5, 0.75):
        tw = transverse_wall(H3, grid, extend=False)
        mc = to_cartesian(tw).m
        axes[1].plot(grid.xi, mc[:, 0], label=f"H3 = {H3}")
    axes[1].set_title("transverse-field walls: m1")
    axes[1].set_xlabel("xi")
    axes[1].legend()
    fig.tight_layout()
    fig.savefig("demos_static_walls.png", dpi=130)
    print("\nwrote demos_static_walls.png")
