"""Energy landscape: on-site potential, boundary equilibria, wall energy.

The on-site potential U(m) = (1 - (m.x)^2 + K2 (m.y)^2 - 2 Ha.m)/2 selects
two minima with opposite x-projection (tail-to-tail boundary states).  The
wall energy is the renormalized integral of exchange plus potential; for
the Bloch wall it equals 2 exactly (one unit from exchange, one from
anisotropy), independent of K2.
"""

import numpy as np

from llgtw import (
    Grid,
    Params,
    equilibria,
    micromagnetic_energy,
    potential,
    torques,
)
from llgtw.walls import bloch_wall

grid = Grid(20.0, 801)

print("Boundary equilibria (psi, beta) and torque residuals:")
for label, params in (
    ("anisotropy only,  K2 = 1       ", Params(0, 0, 0, 1.0, 0.1)),
    ("transverse field, H3 = 0.5     ", Params(0, 0, 0.5, 0.0, 0.1)),
    ("tilted field, H = (0, .05, .05)", Params(0, 0.05, 0.05, 1.0, 0.1)),
    ("driven, H1 = 0.01              ", Params(0.01, 0, 0, 1.0, 0.1)),
):
    eq = equilibria(params)
    F = torques(*eq.plus, params)
    print(f"  {label}: plus = ({eq.plus[0]:.6f}, {eq.plus[1]:.6f}), "
          f"minus beta = {eq.minus[1]:.6f}, |torque| = {max(abs(F[0]), abs(F[1])):.1e}")

print("\nPotential difference across the wall drives the motion:")
for H1 in (0.0, 0.01, 0.02):
    params = Params(H1, 0, 0, 1.0, 0.1)
    eq = equilibria(params)
    du = potential(eq.m_minus(), params) - potential(eq.m_plus(), params)
    print(f"  H1 = {H1}: U(minus) - U(plus) = {du:+.6f}   (= 2 H1)")

print("\nBloch wall energy (expect 2, independent of K2):")
wall = bloch_wall(grid)
for K2 in (0.5, 1.0, 5.0):
    E = micromagnetic_energy(wall, Params(0, 0, 0, K2, 0.1), grid)
    print(f"  K2 = {K2}: E = {E:.6f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping the figure")
else:
    # potential on the equator psi = pi/2 for a few parameter sets
    beta = np.linspace(-np.pi, 1.5 * np.pi, 400)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for params, label in (
        (Params(0, 0, 0, 1.0, 0.1), "K2 = 1, H = 0"),
        (Params(0, 0, 0.5, 0.0, 0.1), "H3 = 0.5"),
        (Params(0.05, 0, 0, 1.0, 0.1), "K2 = 1, H1 = 0.05"),
    ):
        m = np.stack([np.cos(beta), np.zeros_like(beta), np.sin(beta)], axis=1)
        ax.plot(beta, potential(m, params), label=label)
    ax.set_xlabel("azimuth beta on the equator")
    ax.set_ylabel("U")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demos_potential.png", dpi=130)
    print("\nwrote demos_potential.png")
