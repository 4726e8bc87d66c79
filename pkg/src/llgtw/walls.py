"""Explicit static domain-wall profiles used as continuation base points.

Two walls are constructed:

* the Bloch wall m = (tanh xi, 0, sech xi), static for any K2 > 0 at zero
  applied field, with polar form psi = pi/2, beta = 2*atan(exp(-xi));
* the transverse-field wall psi = pi/2, beta' = H3 - sin(beta), static for
  K2 = H1 = 0 and 0 < H3 < 1, normalized by beta(0) = pi/2.

Both have beta strictly decreasing; the azimuth derivative of the base wall
(-sech xi, resp. H3 - sin beta) doubles as the translation mode used by the
solver's phase condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidField
from .model import TRANSVERSE, WALKER, Grid, PolarProfile, Regime

# Required closeness of the azimuth to its limits at the grid ends.
TAIL_TOL = 1e-8
# One-step integration of the azimuth ODE uses at least this many substeps
# per grid cell.
MIN_SUBSTEPS = 10


def bloch_beta(xi) -> np.ndarray:
    return 2.0 * np.arctan(np.exp(-np.asarray(xi, dtype=float)))


def bloch_beta_prime(xi) -> np.ndarray:
    return -1.0 / np.cosh(xi)


def bloch_wall(grid: Grid) -> PolarProfile:
    """The Bloch wall on `grid`: psi = pi/2, beta = 2*atan(exp(-xi)).

    Boundary values are (pi/2, pi) on the left and (pi/2, 0) on the right
    (tail-to-tail: m -> -x as xi -> -inf, m -> +x as xi -> +inf).
    """
    beta = bloch_beta(grid.xi)
    psi = np.full(grid.n_nodes, np.pi / 2)
    return PolarProfile(psi, beta, bc_minus=(np.pi / 2, np.pi), bc_plus=(np.pi / 2, 0.0))


def _integrate_azimuth(H3: float, grid: Grid) -> np.ndarray:
    """Integrate beta' = H3 - sin(beta) from beta(0) = pi/2 over the grid.

    Classical 4th-order one-step method, MIN_SUBSTEPS substeps per cell,
    marching right from the centre node and left with negated step.
    """
    xi = grid.xi
    c = (grid.n_nodes - 1) // 2
    beta = np.empty(grid.n_nodes)
    beta[c] = np.pi / 2

    def rhs(b):
        return H3 - np.sin(b)

    def march(i0, i1, step):
        hs = step / MIN_SUBSTEPS
        b = beta[i0]
        for i in range(i0, i1, 1 if step > 0 else -1):
            for _ in range(MIN_SUBSTEPS):
                k1 = rhs(b)
                k2 = rhs(b + 0.5 * hs * k1)
                k3 = rhs(b + 0.5 * hs * k2)
                k4 = rhs(b + hs * k3)
                b = b + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            beta[i + (1 if step > 0 else -1)] = b

    march(c, grid.n_nodes - 1, grid.h)
    march(c, 0, -grid.h)
    assert xi[c] == 0.0
    return beta


def transverse_wall(H3: float, grid: Grid, extend: bool = True) -> PolarProfile:
    """Static wall for a transverse field H3 along z (0 < H3 < 1).

    The azimuth limits are pi - asin(H3) on the left and asin(H3) on the
    right.  The tail decays like exp(-sqrt(1 - H3^2) xi); when the endpoint
    mismatch exceeds TAIL_TOL and `extend` is set, the wall is rebuilt on a
    wider grid with the same spacing (the returned profile then has more
    nodes than `grid`).
    """
    if not 0.0 < H3 < 1.0:
        raise InvalidField(f"transverse-field invariant 0 < H3 < 1 violated: H3 = {H3}")
    b_plus = float(np.arcsin(H3))
    b_minus = float(np.pi - b_plus)

    work = grid
    for _ in range(3):
        beta = _integrate_azimuth(H3, work)
        mismatch = max(abs(beta[-1] - b_plus), abs(beta[0] - b_minus))
        if mismatch <= TAIL_TOL or not extend:
            break
        # widen by the missing e-foldings of the linearized tail rate
        rate = np.sqrt(1.0 - H3 * H3)
        extra = np.log(mismatch / TAIL_TOL) / rate + 2.0
        n_extra = int(np.ceil(extra / work.h))
        work = Grid(work.half_width + n_extra * work.h, work.n_nodes + 2 * n_extra)

    psi = np.full(work.n_nodes, np.pi / 2)
    return PolarProfile(psi, beta, bc_minus=(np.pi / 2, b_minus), bc_plus=(np.pi / 2, b_plus))


@dataclass(frozen=True)
class BaseProfile:
    """A static base wall with analytic derivatives, as the solver needs it.

    psi/beta are the angles on the grid; d-prefixed fields are first and
    second xi-derivatives evaluated analytically (no finite differences),
    and beta_prime is the translation-mode azimuth derivative used by the
    phase condition. bc_minus/bc_plus are the exact boundary angles.
    """

    grid: Grid
    psi: np.ndarray
    beta: np.ndarray
    dpsi: np.ndarray
    dbeta: np.ndarray
    d2psi: np.ndarray
    d2beta: np.ndarray
    bc_minus: tuple[float, float]
    bc_plus: tuple[float, float]

    @property
    def beta_prime(self) -> np.ndarray:
        return self.dbeta


def base_profile(regime: Regime, grid: Grid) -> BaseProfile:
    """Construct the regime's static wall with analytic derivatives.

    For a transverse base with H2 != 0 the scalar wall is solved for the
    field magnitude and then rotated about the x axis so the transverse
    field points along (0, H2, H3); the rotation is applied analytically to
    the angles and their derivatives.
    """
    xi = grid.xi
    zeros = np.zeros(grid.n_nodes)
    if regime.kind == WALKER:
        dbeta = bloch_beta_prime(xi)
        return BaseProfile(
            grid=grid,
            psi=np.full(grid.n_nodes, np.pi / 2),
            beta=bloch_beta(xi),
            dpsi=zeros,
            dbeta=dbeta,
            d2psi=zeros,
            d2beta=-dbeta * np.tanh(xi),
            bc_minus=(np.pi / 2, np.pi),
            bc_plus=(np.pi / 2, 0.0),
        )

    assert regime.kind == TRANSVERSE
    rho = float(np.hypot(regime.H2, regime.H3))
    wall = transverse_wall(rho, grid, extend=False)
    b = wall.beta
    db = rho - np.sin(b)
    d2b = -np.cos(b) * db
    if regime.H2 == 0.0:
        return BaseProfile(
            grid=grid,
            psi=wall.psi,
            beta=b,
            dpsi=zeros,
            dbeta=db,
            d2psi=zeros,
            d2beta=d2b,
            bc_minus=wall.bc_minus,
            bc_plus=wall.bc_plus,
        )

    # Rotation about x by theta with R z = (0, H2, H3)/rho.
    theta = float(np.arctan2(-regime.H2, regime.H3))
    st, ct = np.sin(theta), np.cos(theta)

    # m = (cos b, -st sin b, ct sin b); polar angles of the rotated wall:
    u = -st * np.sin(b)                      # = cos(psi)
    du = -st * np.cos(b) * db
    d2u = st * np.sin(b) * db * db - st * np.cos(b) * d2b
    root = np.sqrt(1.0 - u * u)
    psi = np.arccos(u)
    dpsi = -du / root
    d2psi = -(d2u * (1.0 - u * u) + u * du * du) / root**3

    raw = np.arctan2(ct * np.sin(b), np.cos(b))
    beta = np.unwrap(raw)
    beta -= 2.0 * np.pi * np.round((beta[-1] - raw[-1]) / (2.0 * np.pi))
    denom = 1.0 - (st * np.sin(b)) ** 2
    dbeta = ct * db / denom
    ddenom = -(st * st) * np.sin(2.0 * b) * db
    d2beta = ct * (d2b * denom - db * ddenom) / denom**2

    def rotated_bc(b_end, beta_end_sample):
        p = float(np.arccos(-st * np.sin(b_end)))
        raw_lim = float(np.arctan2(ct * np.sin(b_end), np.cos(b_end)))
        lim = raw_lim + 2.0 * np.pi * np.round((beta_end_sample - raw_lim) / (2.0 * np.pi))
        return (p, lim)

    return BaseProfile(
        grid=grid,
        psi=psi,
        beta=beta,
        dpsi=dpsi,
        dbeta=dbeta,
        d2psi=d2psi,
        d2beta=d2beta,
        bc_minus=rotated_bc(wall.bc_minus[1], beta[0]),
        bc_plus=rotated_bc(wall.bc_plus[1], beta[-1]),
    )


def as_profile(base: BaseProfile) -> PolarProfile:
    return PolarProfile(base.psi, base.beta, base.bc_minus, base.bc_plus)
