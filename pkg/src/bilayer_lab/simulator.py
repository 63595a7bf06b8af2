"""Fully implicit finite-difference integrator for the two-layer film
system with Neumann boundaries.

Discretization: uniform nodes on [-L, 0] with half cells at the ends,
centered second differences with ghost reflection, fluxes at mid-faces with
arithmetic-mean mobilities, backward Euler in time with a Newton iteration
on an analytic block-banded Jacobian.  The scheme conserves the trapezoid
masses of both layers to solver precision and is the gradient flow of the
discrete energy, so energy decay doubles as a step-acceptance test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .potential import PotentialParams, phi_eps, pi_eps, pi_eps_deriv
from .composites.types import Profile

__all__ = [
    "SimParams",
    "SimState",
    "Diagnostics",
    "StepRejected",
    "SolverAbort",
    "RunResult",
    "mobility",
    "pressures",
    "residual",
    "jacobian_banded",
    "step",
    "run",
    "energy",
    "masses",
    "stationary_residual",
    "detect_contact_lines",
    "symmetry_metric",
]


@dataclass
class SimParams:
    sigma: float
    potential: PotentialParams
    L: float
    N: int
    mu: float = 1.0
    dt_init: float = 1e-7
    dt_min: float = 1e-14
    dt_max: float = 1e-3
    newton_tol: float = 1e-8
    newton_max_iter: int = 12
    t_end: float = 1.0
    output_every: int = 100

    def __post_init__(self):
        if self.N < 4:
            raise ValueError("need at least 4 grid nodes")
        if not (0 < self.dt_min <= self.dt_init <= self.dt_max):
            raise ValueError("time steps must satisfy 0 < dt_min <= dt_init <= dt_max")
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")

    @property
    def dx(self) -> float:
        return self.L / (self.N - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.L, 0.0, self.N)

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.N, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        return w


@dataclass
class SimState:
    t: float
    h1: np.ndarray
    h: np.ndarray

    def copy(self) -> "SimState":
        return SimState(t=self.t, h1=self.h1.copy(), h=self.h.copy())


class StepRejected(Exception):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class SolverAbort(Exception):
    def __init__(self, reason: str, result: "RunResult"):
        self.reason = reason
        self.result = result
        super().__init__(reason)


@dataclass
class Diagnostics:
    t: float
    dt: float
    energy: float
    mass1: float
    mass: float
    min_h1: float
    min_h: float
    newton_iters: int
    symmetry_metric: float
    cl_h1: list[float] = field(default_factory=list)
    cl_h: list[float] = field(default_factory=list)


@dataclass
class RunResult:
    params: SimParams
    trajectory: list[Diagnostics]
    final: SimState
    snapshots: list[SimState]
    accepted_steps: int
    classification: str | None = None
    aborted: bool = False
    abort_reason: str | None = None


# ---------------------------------------------------------------------------
# spatial operators


def mobility(mu: float, h1_val: float, h_val: float) -> np.ndarray:
    """Mobility matrix of one node; symmetric positive definite for
    positive heights."""
    if h1_val <= 0 or h_val <= 0:
        raise ValueError("mobility requires positive heights")
    q11 = h1_val**3 / (3.0 * mu)
    q12 = h1_val**2 * h_val / (2.0 * mu)
    q22 = h_val**3 / 3.0 + h1_val * h_val**2 / mu
    return np.array([[q11, q12], [q12, q22]])


def _d2(u: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(u)
    out[1:-1] = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / dx**2
    out[0] = 2.0 * (u[1] - u[0]) / dx**2
    out[-1] = 2.0 * (u[-2] - u[-1]) / dx**2
    return out


def pressures(state: SimState, params: SimParams) -> tuple[np.ndarray, np.ndarray]:
    """Bracket terms of the evolution system at every node.

    p1 belongs to the h1 equation, p2 to the h equation; at a stationary
    state p2 is the constant multiplier of the h-mass constraint and p1 the
    one of the h1-mass constraint.
    """
    dx = params.dx
    p = params.potential
    d2h1 = _d2(state.h1, dx)
    d2h = _d2(state.h, dx)
    p1 = -(params.sigma + 1.0) * d2h1 - d2h + pi_eps(p, state.h1)
    p2 = -d2h1 - d2h + pi_eps(p, state.h)
    return p1, p2


def _fluxes(state: SimState, params: SimParams):
    p1, p2 = pressures(state, params)
    dx = params.dx
    mu = params.mu
    h1, h = state.h1, state.h
    q11 = h1**3 / (3.0 * mu)
    q12 = h1**2 * h / (2.0 * mu)
    q22 = h**3 / 3.0 + h1 * h**2 / mu
    q11f = 0.5 * (q11[:-1] + q11[1:])
    q12f = 0.5 * (q12[:-1] + q12[1:])
    q22f = 0.5 * (q22[:-1] + q22[1:])
    g1 = np.diff(p1) / dx
    g2 = np.diff(p2) / dx
    f1 = q11f * g1 + q12f * g2
    f2 = q12f * g1 + q22f * g2
    return f1, f2


def residual(new_state: SimState, old_state: SimState, dt: float, params: SimParams) -> np.ndarray:
    """Implicit-Euler residual, shape (2, N); zero fluxes at both ends."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    w = params.weights
    f1, f2 = _fluxes(new_state, params)
    div1 = np.diff(np.concatenate(([0.0], f1, [0.0]))) / w
    div2 = np.diff(np.concatenate(([0.0], f2, [0.0]))) / w
    r1 = (new_state.h1 - old_state.h1) / dt - div1
    r2 = (new_state.h - old_state.h) / dt - div2
    return np.vstack([r1, r2])


def _pressure_bands(N: int, dx: float, coef: float, pi_prime: np.ndarray | None) -> np.ndarray:
    """d p_i / d u_{i+o} for p = -coef * D2 u (+ Pi(u)), columns o = -1, 0, 1."""
    b = np.zeros((N, 3))
    inv = 1.0 / dx**2
    b[1:-1, 0] = -coef * inv
    b[:, 1] = 2.0 * coef * inv
    b[1:-1, 2] = -coef * inv
    b[0, 2] = -2.0 * coef * inv
    b[-1, 0] = -2.0 * coef * inv
    if pi_prime is not None:
        b[:, 1] += pi_prime
    return b


def _grad_bands(bands: np.ndarray, dx: float) -> np.ndarray:
    """d G_k / d u_{k+o}, columns o = -1..2, from nodal pressure bands."""
    n_face = bands.shape[0] - 1
    out = np.zeros((n_face, 4))
    out[:, 0] = -bands[:-1, 0]
    out[:, 1] = bands[1:, 0] - bands[:-1, 1]
    out[:, 2] = bands[1:, 1] - bands[:-1, 2]
    out[:, 3] = bands[1:, 2]
    return out / dx


def jacobian_banded(new_state: SimState, dt: float, params: SimParams) -> np.ndarray:
    """Analytic Jacobian of ``residual`` in LAPACK banded form.

    Unknowns interleave as (h1_0, h_0, h1_1, h_1, ...); the structure is
    block-banded with five node diagonals, i.e. band width 5 on each side.
    """
    N, dx, mu, sg = params.N, params.dx, params.mu, params.sigma
    p = params.potential
    h1, h = new_state.h1, new_state.h
    w = params.weights

    p1, p2 = pressures(new_state, params)
    g1 = np.diff(p1) / dx
    g2 = np.diff(p2) / dx
    q11 = h1**3 / (3.0 * mu)
    q12 = h1**2 * h / (2.0 * mu)
    q22 = h**3 / 3.0 + h1 * h**2 / mu
    q11f = 0.5 * (q11[:-1] + q11[1:])
    q12f = 0.5 * (q12[:-1] + q12[1:])
    q22f = 0.5 * (q22[:-1] + q22[1:])
    dq11_dh1 = h1**2 / mu
    dq12_dh1 = h1 * h / mu
    dq12_dh = h1**2 / (2.0 * mu)
    dq22_dh1 = h**2 / mu
    dq22_dh = h**2 + 2.0 * h1 * h / mu

    a1 = _pressure_bands(N, dx, sg + 1.0, pi_eps_deriv(p, h1))  # dp1/dh1
    b1 = _pressure_bands(N, dx, 1.0, None)                      # dp1/dh
    a2 = _pressure_bands(N, dx, 1.0, None)                      # dp2/dh1
    b2 = _pressure_bands(N, dx, 1.0, pi_eps_deriv(p, h))        # dp2/dh

    dg1_dh1 = _grad_bands(a1, dx)
    dg1_dh = _grad_bands(b1, dx)
    dg2_dh1 = _grad_bands(a2, dx)
    dg2_dh = _grad_bands(b2, dx)

    # face flux derivatives, columns o = -1..2 (variable node = face + o)
    df = {}
    df[(1, "h1")] = q11f[:, None] * dg1_dh1 + q12f[:, None] * dg2_dh1
    df[(1, "h")] = q11f[:, None] * dg1_dh + q12f[:, None] * dg2_dh
    df[(2, "h1")] = q12f[:, None] * dg1_dh1 + q22f[:, None] * dg2_dh1
    df[(2, "h")] = q12f[:, None] * dg1_dh + q22f[:, None] * dg2_dh
    for side, col in ((0, 1), (1, 2)):  # mobility average touches face+0, face+1
        sl = slice(None, -1) if side == 0 else slice(1, None)
        df[(1, "h1")][:, col] += 0.5 * (dq11_dh1[sl] * g1 + dq12_dh1[sl] * g2)
        df[(1, "h")][:, col] += 0.5 * (dq12_dh[sl] * g2)
        df[(2, "h1")][:, col] += 0.5 * (dq12_dh1[sl] * g1 + dq22_dh1[sl] * g2)
        df[(2, "h")][:, col] += 0.5 * (dq12_dh[sl] * g1 + dq22_dh[sl] * g2)

    # node-diagonal blocks: band[m][(eq, var)][i] = dR^eq_i / d var_{i+m}
    bands: dict[tuple[int, int, int], np.ndarray] = {}
    layer_idx = {"h1": 0, "h": 1}
    for (eq, var), D in df.items():
        alpha = eq - 1
        beta = layer_idx[var]
        for m in range(-2, 3):
            vals = np.zeros(N)
            if -1 <= m <= 2:
                vals[: N - 1] -= D[:, m + 1]
            if -2 <= m <= 1:
                vals[1:] += D[:, m + 2]
            vals /= w
            key = (m, alpha, beta)
            bands[key] = bands.get(key, 0.0) + vals
    bands[(0, 0, 0)] = bands[(0, 0, 0)] + 1.0 / dt
    bands[(0, 1, 1)] = bands[(0, 1, 1)] + 1.0 / dt

    # scatter into LAPACK banded storage ab[ub + r - c, c], band width 5
    ab = np.zeros((11, 2 * N))
    for (m, alpha, beta), vals in bands.items():
        i0 = max(0, -m)
        i1 = min(N, N - m)
        if i0 >= i1:
            continue
        rows = -2 * m + alpha - beta
        cols = 2 * (np.arange(i0, i1) + m) + beta
        ab[5 + rows, cols] = vals[i0:i1]
    return ab


def step(state: SimState, dt: float, params: SimParams) -> tuple[SimState, int]:
    """One backward-Euler step via damped Newton; raises StepRejected when
    the iteration fails or positivity would break."""
    p = params.potential
    pos_floor = 2e-3 * p.eps
    u = np.vstack([state.h1, state.h])
    new = SimState(t=state.t + dt, h1=u[0].copy(), h=u[1].copy())
    r = residual(new, state, dt, params)
    for it in range(1, params.newton_max_iter + 1):
        rn = np.max(np.abs(r))
        if rn <= params.newton_tol:
            return new, it - 1
        ab = jacobian_banded(new, dt, params)
        rhs = np.empty(2 * params.N)
        rhs[0::2] = -r[0]
        rhs[1::2] = -r[1]
        try:
            delta = solve_banded((5, 5), ab, rhs)
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise StepRejected(f"banded solve failed: {exc}") from exc
        d1, d2 = delta[0::2], delta[1::2]
        lam = 1.0
        for _ in range(40):
            h1_try = new.h1 + lam * d1
            h_try = new.h + lam * d2
            if np.min(h1_try) > pos_floor and np.min(h_try) > pos_floor:
                break
            lam *= 0.5
        else:
            raise StepRejected("positivity could not be maintained")
        new = SimState(t=state.t + dt, h1=h1_try, h=h_try)
        r = residual(new, state, dt, params)
        if lam * max(np.max(np.abs(d1)), np.max(np.abs(d2))) <= 1e-12 * (
            1.0 + max(np.max(new.h1), np.max(new.h))
        ):
            return new, it
    raise StepRejected(
        f"Newton did not reach tol {params.newton_tol:g} in {params.newton_max_iter} iterations"
    )


# ---------------------------------------------------------------------------
# diagnostics


def energy(state: SimState, params: SimParams) -> float:
    """Discrete free energy whose gradient is the pressure vector
    (midpoint-difference gradient terms, trapezoid potential term)."""
    dx = params.dx
    sg = params.sigma
    d_h1 = np.diff(state.h1) / dx
    d_tot = np.diff(state.h1 + state.h) / dx
    grad = dx * np.sum(0.5 * sg * d_h1**2 + 0.5 * d_tot**2)
    pot = float(np.sum(params.weights * phi_eps(params.potential, state.h1, state.h)))
    return float(grad + pot)


def masses(state: SimState, params: SimParams) -> tuple[float, float]:
    """Trapezoid integrals of the two layer heights (exactly conserved)."""
    x = params.x
    return float(np.trapezoid(state.h1, x)), float(np.trapezoid(state.h, x))


def symmetry_metric(state: SimState, params: SimParams) -> float:
    """L2 distance between the profile pair and its reflection about the
    domain center."""
    dx = params.dx
    d1 = state.h1 - state.h1[::-1]
    d2 = state.h - state.h[::-1]
    return float(np.sqrt(dx * np.sum(d1**2 + d2**2)))


def detect_contact_lines(values: np.ndarray, x: np.ndarray, eps: float) -> list[float]:
    """x-locations where the layer crosses height 2*eps (linear interpolation)."""
    thr = 2.0 * eps
    f = values - thr
    out = []
    sign_change = np.where(f[:-1] * f[1:] < 0)[0]
    for i in sign_change:
        t = f[i] / (f[i] - f[i + 1])
        out.append(float(x[i] + t * (x[i + 1] - x[i])))
    return out


def diagnostics(state: SimState, params: SimParams, dt: float, iters: int) -> Diagnostics:
    e = energy(state, params)
    m1, m = masses(state, params)
    eps = params.potential.eps
    x = params.x
    return Diagnostics(
        t=state.t,
        dt=dt,
        energy=e,
        mass1=m1,
        mass=m,
        min_h1=float(np.min(state.h1)),
        min_h=float(np.min(state.h)),
        newton_iters=iters,
        symmetry_metric=symmetry_metric(state, params),
        cl_h1=detect_contact_lines(state.h1, x, eps),
        cl_h=detect_contact_lines(state.h, x, eps),
    )


def lambda_profiles(state: SimState, params: SimParams) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise pressure diagnostics (lambda1 from the h equation, lambda2
    from the h1 equation)."""
    p1, p2 = pressures(state, params)
    return p2, p1


def state_from_profile(profile: Profile, params: SimParams) -> SimState:
    x = params.x
    if abs(profile.x[0] + params.L) > 1e-9 * params.L or abs(profile.x[-1]) > 1e-9 * params.L:
        raise ValueError("initial profile must span [-L, 0]")
    h1 = np.interp(x, profile.x, profile.h1)
    h = np.interp(x, profile.x, profile.h)
    if np.min(h1) <= 0 or np.min(h) <= 0:
        raise ValueError("initial profile must be strictly positive")
    return SimState(t=0.0, h1=h1, h=h)


def classify(result_final: SimState, initial: SimState, params: SimParams) -> str:
    """Label the run outcome from profile drift: stationary, translating
    (shape preserved up to a shift) or coarsening."""
    eps = params.potential.eps
    tol = 5.0 * eps
    drift = max(
        float(np.max(np.abs(result_final.h1 - initial.h1))),
        float(np.max(np.abs(result_final.h - initial.h))),
    )
    if drift <= tol:
        return "stationary"
    best = np.inf
    n = params.N
    for shift in range(-n // 2, n // 2 + 1):
        if shift == 0:
            continue
        sl_a = slice(max(0, shift), min(n, n + shift))
        sl_b = slice(max(0, -shift), min(n, n - shift))
        d = max(
            float(np.max(np.abs(result_final.h1[sl_a] - initial.h1[sl_b]))),
            float(np.max(np.abs(result_final.h[sl_a] - initial.h[sl_b]))),
        )
        best = min(best, d)
        if best <= tol:
            return "translating"
    return "coarsening"


def run(
    params: SimParams,
    initial: Profile | SimState,
    callbacks=None,
    snapshot_every: int | None = None,
    raise_on_abort: bool = True,
) -> RunResult:
    """Integrate to t_end with the adaptive step rule: grow dt by 1.2x after
    fast Newton convergence, halve on rejection, abort below dt_min.

    Acceptance additionally requires the discrete energy not to increase
    (beyond 1e-12 relative), preserving the gradient-flow structure.
    """
    state = initial if isinstance(initial, SimState) else state_from_profile(initial, params)
    state = state.copy()
    initial_state = state.copy()
    dt = params.dt_init
    e_old = energy(state, params)
    traj = [diagnostics(state, params, 0.0, 0)]
    snapshots = [state.copy()] if snapshot_every else []
    accepted = 0
    result = RunResult(params=params, trajectory=traj, final=state, snapshots=snapshots,
                       accepted_steps=0)
    while state.t < params.t_end - 1e-14 * params.t_end:
        dt_try = min(dt, params.t_end - state.t)
        try:
            new_state, iters = step(state, dt_try, params)
            e_new = energy(new_state, params)
            if e_new > e_old + 1e-12 * abs(e_old):
                raise StepRejected(f"energy increased by {e_new - e_old:.3e}")
        except StepRejected as exc:
            dt = dt_try / 2.0
            if dt < params.dt_min:
                result.final = state
                result.accepted_steps = accepted
                result.aborted = True
                result.abort_reason = f"dt underflow below dt_min ({exc.reason})"
                result.classification = classify(state, initial_state, params)
                if raise_on_abort:
                    raise SolverAbort(result.abort_reason, result) from exc
                return result
            continue
        state = new_state
        e_old = e_new
        accepted += 1
        dt = min(1.2 * dt_try, params.dt_max) if iters <= 5 else dt_try
        if accepted % params.output_every == 0:
            traj.append(diagnostics(state, params, dt_try, iters))
        if snapshot_every and accepted % snapshot_every == 0:
            snapshots.append(state.copy())
        if callbacks:
            for cb in callbacks:
                cb(state, accepted)
    if not traj or traj[-1].t != state.t:
        traj.append(diagnostics(state, params, dt, 0))
    result.final = state
    result.accepted_steps = accepted
    result.classification = classify(state, initial_state, params)
    if snapshot_every:
        snapshots.append(state.copy())
    return result


def stationary_residual(
    profile: Profile,
    lambda1: float,
    lambda2: float,
    params: SimParams,
    exclude_cl_width: float | None = None,
) -> float:
    """Sup-norm residual of the stationary system away from contact lines."""
    p = params.potential
    sg = params.sigma
    x = profile.x
    dx = x[1] - x[0]
    h1, h = profile.h1, profile.h
    r1 = sg * _d2(h1, dx) - pi_eps(p, h1) + pi_eps(p, h) + lambda2 - lambda1
    r2 = sg * _d2(h, dx) + pi_eps(p, h1) - (sg + 1.0) * pi_eps(p, h) - lambda2 + (sg + 1.0) * lambda1
    width = 10.0 * p.eps if exclude_cl_width is None else exclude_cl_width
    cls = detect_contact_lines(h1, x, p.eps) + detect_contact_lines(h, x, p.eps)
    mask = np.ones_like(x, dtype=bool)
    for pos in cls:
        mask &= np.abs(x - pos) > width
    if not np.any(mask):
        return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))
    return float(max(np.max(np.abs(r1[mask])), np.max(np.abs(r2[mask]))))
