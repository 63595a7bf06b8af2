"""Matching systems of the composite solutions and a numeric root-solving
oracle.

Each system collects, verbatim, the value/slope matching conditions at the
contact lines of one composite kind.  The closed-form constructors must
zero these residuals; conversely a damped Newton iteration started near the
closed form must come back to it.  This module is the independent check of
``build.py`` and is never used by the constructors themselves.
"""

from __future__ import annotations

import math

import numpy as np

from .build import _two_side_footprint, build, existence_report, zigzag_length_window
from .types import CompositeSpec, LeadingOrderSolution

__all__ = [
    "unknown_names",
    "matching_residual",
    "closed_form_vector",
    "solution_from_vector_names",
    "newton_solve",
    "sample_ed_interior",
]

_NAMES = {
    "lens": ["lam1", "lam2", "s", "C1", "C4", "C5"],
    "internal_drop": ["lam1", "lam2", "s", "C", "C2", "C3"],
    "h1_drop": ["lam2", "s"],
    "h_drop": ["lam1", "s"],
    "zigzag": ["lam1", "lam2", "s", "s1", "x_c", "x_c1", "C", "C1", "C2", "C3", "C4", "C5"],
    "sessile_lens": ["lam1", "lam2", "s", "s1", "xt_c1", "C4", "C5", "Ct1"],
    "sessile_internal_drop": ["lam1", "lam2", "s", "s1", "xt_c", "C2", "C3", "Ct0"],
    "two_drops": ["lam1", "lam2", "s", "s1"],
    "two_side_sessile_zigzag": [
        "lam1", "lam2", "s", "s1", "s2", "s3", "x_c", "x_c1", "xt_c1",
        "C", "C1", "C2", "C3", "C4", "C5",
    ],
    "h1_sessile_zigzag": [
        "lam1", "lam2", "s", "s1", "s2", "x_c", "x_c1", "xt_c",
        "C", "C1", "C2", "C3", "C4", "C5",
    ],
    "h_sessile_zigzag": [
        "lam1", "lam2", "s", "s1", "s2", "x_c", "x_c1", "xt_c1",
        "C", "C1", "C2", "C3", "C4", "C5",
    ],
    "lens_on_zigzag": [
        "lam1", "lam2", "s", "s1", "s2", "x_c", "x_c1", "u",
        "C", "C1", "C2", "C3", "C4", "C5", "C4p", "C5p", "Cp", "C1p",
    ],
}


def unknown_names(kind: str) -> list[str]:
    return list(_NAMES[kind])


def matching_residual(kind: str, unknowns, spec: CompositeSpec) -> np.ndarray:
    """Residuals of the kind's matching system at the given unknown vector.

    For the four-CL solution the shift parameter is taken from the spec and
    held fixed, leaving 16 consistent equations for 15 unknowns.
    """
    v = np.asarray(unknowns, dtype=float)
    names = _NAMES[kind]
    if v.shape != (len(names),):
        raise ValueError(f"{kind} expects {len(names)} unknowns {names}, got shape {v.shape}")
    u = dict(zip(names, v))
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    sp1 = sg + 1.0
    r_i = math.sqrt(2.0 * wd / sg)                # type I CL angle
    r_ii = math.sqrt(2.0 * sp1 * wd / sg)         # type II CL angle
    r_ii_c = math.sqrt(2.0 * wd / (sg * sp1))     # type II companion slope scale
    r_iii = math.sqrt(2.0 * wd / sp1)             # type III CL angle
    r_iv = math.sqrt(2.0 * wd)                    # type IV CL angle

    if kind == "lens":
        lam1, lam2, s = u["lam1"], u["lam2"], u["s"]
        return np.array([
            -lam2 / (2 * sp1) * (L - s) ** 2 + h1m - u["C4"],
            -lam2 / sp1 * (L - s) - u["C5"],
            (lam1 - lam2) / (2 * sg) * s**2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * s**2 + hm,
            (lam1 - lam2) / sg * (-s) - (-r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s) - r_ii,
        ])
    if kind == "internal_drop":
        lam1, lam2, s = u["lam1"], u["lam2"], u["s"]
        return np.array([
            -lam1 / 2 * (L - s) ** 2 + hm - u["C2"],
            -lam1 * (L - s) - u["C3"],
            (lam1 - lam2) / (2 * sg) * s**2 + h1m,
            (lam2 - sp1 * lam1) / (2 * sg) * s**2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s) - r_i,
            (lam2 - sp1 * lam1) / sg * (-s) - (-r_i + u["C3"]),
        ])
    if kind == "h1_drop":
        lam2, s = u["lam2"], u["s"]
        return np.array([
            -lam2 / (2 * sp1) * (L - s) ** 2 + h1m,
            -lam2 / sp1 * (L - s) + r_iii,
        ])
    if kind == "h_drop":
        lam1, s = u["lam1"], u["s"]
        return np.array([
            -lam1 / 2 * (L - s) ** 2 + hm,
            -lam1 * (L - s) + r_iv,
        ])
    if kind == "two_drops":
        lam1, lam2, s, s1 = u["lam1"], u["lam2"], u["s"], u["s1"]
        return np.array([
            -lam1 / 2 * (L - s1) ** 2 + hm,
            -lam1 * (L - s1) + r_iv,
            -lam2 / (2 * sp1) * s**2 + h1m,
            lam2 * s / sp1 - r_iii,
        ])
    if kind == "zigzag":
        lam1, lam2 = u["lam1"], u["lam2"]
        s, s1, x_c, x_c1 = u["s"], u["s1"], u["x_c"], u["x_c1"]
        return np.array([
            -lam1 / 2 * (L - s1) ** 2 + hm - u["C2"],
            -lam1 * (L - s1) - u["C3"],
            (lam1 - lam2) / (2 * sg) * (s1 + x_c1) ** 2 + u["C1"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s1 + x_c) ** 2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s1 - x_c1) - r_i,
            (lam2 - sp1 * lam1) / sg * (-s1 - x_c) - (-r_i + u["C3"]),
            (lam1 - lam2) / (2 * sg) * (s + x_c1) ** 2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s + x_c) ** 2 + u["C"],
            (lam1 - lam2) / sg * (-s - x_c1) - (r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s - x_c) + r_ii,
            -lam2 / (2 * sp1) * s**2 + h1m - u["C4"],
            lam2 * s / sp1 - u["C5"],
        ])
    if kind == "sessile_lens":
        lam1, lam2, s, s1, xt_c1 = u["lam1"], u["lam2"], u["s"], u["s1"], u["xt_c1"]
        return np.array([
            (lam1 - lam2) / (2 * sg) * (L - s1) ** 2 + h1m - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (L - s1) ** 2 + hm,
            (lam1 - lam2) / sg * (L - s1) - (r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (L - s1) + r_ii,
            -lam2 / (2 * sp1) * (s1 + xt_c1) ** 2 + u["Ct1"] - u["C4"],
            -lam2 / sp1 * (-s1 - xt_c1) - u["C5"],
            -lam2 / (2 * sp1) * (s + xt_c1) ** 2 + u["Ct1"],
            -lam2 / sp1 * (-s - xt_c1) + r_iii,
        ])
    if kind == "sessile_internal_drop":
        lam1, lam2, s, s1, xt_c = u["lam1"], u["lam2"], u["s"], u["s1"], u["xt_c"]
        return np.array([
            (lam1 - lam2) / (2 * sg) * (L - s1) ** 2 + h1m,
            (lam2 - sp1 * lam1) / (2 * sg) * (L - s1) ** 2 + hm - u["C2"],
            (lam1 - lam2) / sg * (L - s1) + r_i,
            (lam2 - sp1 * lam1) / sg * (L - s1) - (r_i + u["C3"]),
            -lam1 / 2 * (s1 + xt_c) ** 2 + u["Ct0"] - u["C2"],
            -lam1 * (-s1 - xt_c) - u["C3"],
            -lam1 / 2 * (s + xt_c) ** 2 + u["Ct0"],
            -lam1 * (-s - xt_c) + r_iv,
        ])
    if kind == "two_side_sessile_zigzag":
        lam1, lam2 = u["lam1"], u["lam2"]
        s, s1, s2, s3 = u["s"], u["s1"], u["s2"], u["s3"]
        x_c, x_c1, xt_c1 = u["x_c"], u["x_c1"], u["xt_c1"]
        xt_c = spec.shift
        return np.array([
            -lam2 / (2 * sp1) * (s3 + xt_c1) ** 2 + h1m,
            -lam2 / sp1 * (-s3 - xt_c1) - r_iii,
            -lam2 / (2 * sp1) * (s2 + xt_c1) ** 2 + h1m - u["C4"],
            -lam2 / sp1 * (-s2 - xt_c1) - u["C5"],
            (lam1 - lam2) / (2 * sg) * (s2 + x_c1) ** 2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s2 + x_c) ** 2 + u["C"],
            (lam1 - lam2) / sg * (-s2 - x_c1) - (-r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s2 - x_c) - r_ii,
            (lam1 - lam2) / (2 * sg) * (s1 + x_c1) ** 2 + u["C1"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s1 + x_c) ** 2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s1 - x_c1) + r_i,
            (lam2 - sp1 * lam1) / sg * (-s1 - x_c) - (r_i + u["C3"]),
            -lam1 / 2 * (s1 + xt_c) ** 2 + hm - u["C2"],
            -lam1 * (-s1 - xt_c) - u["C3"],
            -lam1 / 2 * (s + xt_c) ** 2 + hm,
            -lam1 * (-s - xt_c) + r_iv,
        ])
    if kind == "h1_sessile_zigzag":
        lam1, lam2 = u["lam1"], u["lam2"]
        s, s1, s2 = u["s"], u["s1"], u["s2"]
        x_c, x_c1, xt_c = u["x_c"], u["x_c1"], u["xt_c"]
        return np.array([
            -lam2 / (2 * sp1) * (L - s2) ** 2 + h1m - u["C4"],
            -lam2 / sp1 * (L - s2) - u["C5"],
            (lam1 - lam2) / (2 * sg) * (s2 + x_c1) ** 2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s2 + x_c) ** 2 + u["C"],
            (lam1 - lam2) / sg * (-s2 - x_c1) - (-r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s2 - x_c) - r_ii,
            (lam1 - lam2) / (2 * sg) * (s1 + x_c1) ** 2 + u["C1"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s1 + x_c) ** 2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s1 - x_c1) + r_i,
            (lam2 - sp1 * lam1) / sg * (-s1 - x_c) - (r_i + u["C3"]),
            -lam1 / 2 * (s1 + xt_c) ** 2 + hm - u["C2"],
            -lam1 * (-s1 - xt_c) - u["C3"],
            -lam1 / 2 * (s + xt_c) ** 2 + hm,
            -lam1 * (-s - xt_c) + r_iv,
        ])
    if kind == "h_sessile_zigzag":
        lam1, lam2 = u["lam1"], u["lam2"]
        s, s1, s2 = u["s"], u["s1"], u["s2"]
        x_c, x_c1, xt_c1 = u["x_c"], u["x_c1"], u["xt_c1"]
        return np.array([
            -lam1 / 2 * (L - s2) ** 2 + hm - u["C2"],
            -lam1 * (L - s2) - u["C3"],
            (lam1 - lam2) / (2 * sg) * (s2 + x_c1) ** 2 + u["C1"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s2 + x_c) ** 2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s2 - x_c1) - r_i,
            (lam2 - sp1 * lam1) / sg * (-s2 - x_c) - (-r_i + u["C3"]),
            (lam1 - lam2) / (2 * sg) * (s1 + x_c1) ** 2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s1 + x_c) ** 2 + u["C"],
            (lam1 - lam2) / sg * (-s1 - x_c1) - (r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s1 - x_c) + r_ii,
            -lam2 / (2 * sp1) * (s1 + xt_c1) ** 2 + h1m - u["C4"],
            -lam2 / sp1 * (-s1 - xt_c1) - u["C5"],
            -lam2 / (2 * sp1) * (s + xt_c1) ** 2 + h1m,
            -lam2 / sp1 * (-s - xt_c1) + r_iii,
        ])
    if kind == "lens_on_zigzag":
        lam1, lam2 = u["lam1"], u["lam2"]
        s, s1, s2 = u["s"], u["s1"], u["s2"]
        x_c, x_c1, uu = u["x_c"], u["x_c1"], u["u"]
        return np.array([
            -lam1 / 2 * (L - s2) ** 2 + hm - u["C2"],
            -lam1 * (L - s2) - u["C3"],
            (lam1 - lam2) / (2 * sg) * (s2 + x_c1) ** 2 + u["C1"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s2 + x_c) ** 2 + u["C"] - u["C2"],
            (lam1 - lam2) / sg * (-s2 - x_c1) - r_i,
            (lam2 - sp1 * lam1) / sg * (-s2 - x_c) - (-r_i + u["C3"]),
            (lam1 - lam2) / (2 * sg) * (s1 + x_c1) ** 2 + u["C1"] - u["C4"],
            (lam2 - sp1 * lam1) / (2 * sg) * (s1 + x_c) ** 2 + u["C"],
            (lam1 - lam2) / sg * (-s1 - x_c1) - (r_ii_c + u["C5"]),
            (lam2 - sp1 * lam1) / sg * (-s1 - x_c) + r_ii,
            -lam2 / (2 * sp1) * (s1 + uu) ** 2 + h1m - u["C4"],
            -lam2 / sp1 * (-s1 - uu) - u["C5"],
            -lam2 / (2 * sp1) * (s + uu) ** 2 + h1m - u["C4p"],
            -lam2 / sp1 * (-s - uu) - u["C5p"],
            (lam1 - lam2) / (2 * sg) * s**2 + u["C1p"] - u["C4p"],
            (lam2 - sp1 * lam1) / (2 * sg) * s**2 + u["Cp"],
            (lam1 - lam2) / sg * (-s) - (-r_ii_c + u["C5p"]),
            (lam2 - sp1 * lam1) / sg * (-s) - r_ii,
        ])
    raise ValueError(f"unknown kind {kind!r}")


def closed_form_vector(sol: LeadingOrderSolution) -> np.ndarray:
    """Pack a constructed solution into its matching-system unknown vector."""
    k = sol.spec.kind
    c = sol.constants
    lam1 = 0.0 if sol.lambda1_0 is None else sol.lambda1_0
    lam2 = 0.0 if sol.lambda2_0 is None else sol.lambda2_0
    if k == "lens":
        return np.array([lam1, lam2, c["s"], c["C1"], c["C4"], c["C5"]])
    if k == "internal_drop":
        return np.array([lam1, lam2, c["s"], c["C"], c["C2"], c["C3"]])
    if k == "h1_drop":
        return np.array([lam2, c["s"]])
    if k == "h_drop":
        return np.array([lam1, c["s"]])
    if k == "two_drops":
        return np.array([lam1, lam2, c["s"], c["s1"]])
    if k == "zigzag":
        mid_h1, mid_h = sol.pieces_h1[1], sol.pieces_h[1]
        if mid_h1.shape != "parabola" or mid_h.shape != "parabola":
            raise ValueError("degenerate zig-zag (linear segment) has no finite unknown vector")
        return np.array([
            lam1, lam2, c["s"], c["s1"], c["x_c"], c["x_c1"],
            mid_h.offset, mid_h1.offset, c["C2"], c["C3"], c["C4"], c["C5"],
        ])
    if k == "sessile_lens":
        return np.array([lam1, lam2, c["s"], c["s1"], c["x_t_c1"], c["C4"], c["C5"], c["Ct1"]])
    if k == "sessile_internal_drop":
        return np.array([lam1, lam2, c["s"], c["s1"], c["x_t_c"], c["C2"], c["C3"], c["Ct0"]])
    if k == "two_side_sessile_zigzag":
        mid_h1, mid_h = sol.pieces_h1[2], sol.pieces_h[2]
        if mid_h1.shape != "parabola" or mid_h.shape != "parabola":
            raise ValueError("degenerate four-CL layout has no finite unknown vector")
        return np.array([
            lam1, lam2, c["s"], c["s1"], c["s2"], c["s3"], c["x_c"], c["x_c1"], c["xt_c1"],
            mid_h.offset, mid_h1.offset, c["C2p"], c["C3"], c["C4p"], c["C5"],
        ])
    if k == "h1_sessile_zigzag":
        mid_h1, mid_h = sol.pieces_h1[1], sol.pieces_h[1]
        if mid_h1.shape != "parabola":
            raise ValueError("degenerate layout has no finite unknown vector")
        return np.array([
            lam1, lam2, c["s"], c["s1"], c["s2"], c["x_c"], c["x_c1"], c["xt_c"],
            mid_h.offset, mid_h1.offset, c["C2p"], c["C3"], c["C4p"], c["C5"],
        ])
    if k == "h_sessile_zigzag":
        mid_h1, mid_h = sol.pieces_h1[1], sol.pieces_h[1]
        if mid_h.shape != "parabola":
            raise ValueError("degenerate layout has no finite unknown vector")
        return np.array([
            lam1, lam2, c["s"], c["s1"], c["s2"], c["x_c"], c["x_c1"], c["xt_c1"],
            mid_h.offset, mid_h1.offset, c["C2p"], c["C3"], c["C4p"], c["C5"],
        ])
    if k == "lens_on_zigzag":
        mid_h1, mid_h = sol.pieces_h1[1], sol.pieces_h[1]
        if mid_h1.shape != "parabola" or mid_h.shape != "parabola":
            raise ValueError("degenerate layout has no finite unknown vector")
        sp1 = sol.spec.sigma + 1.0
        c5p = lam2 * c["s"] / sp1
        return np.array([
            lam1, lam2, c["s"], c["s1"], c["s2"], c["x_c"], c["x_c1"], 0.0,
            mid_h.offset, mid_h1.offset, c["C2"], c["C3"], c["C4"], c["C5"],
            c["C4_lens"], c5p, c["h_at_0"], c["h1_at_0"],
        ])
    raise ValueError(f"unknown kind {k!r}")


def newton_solve(kind: str, x0, spec: CompositeSpec, tol: float = 1e-12, max_iter: int = 100):
    """Damped Newton (finite-difference Jacobian, least-squares step).

    Works for the square systems and for the overdetermined four-CL one,
    whose 16 equations are consistent once the shift is held fixed.
    """
    x = np.asarray(x0, dtype=float).copy()
    r = matching_residual(kind, x, spec)
    for _ in range(max_iter):
        rn = np.max(np.abs(r))
        if rn <= tol:
            return x, rn
        jac = _fd_jacobian(kind, x, spec)
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        lam = 1.0
        for _ in range(60):
            x_new = x + lam * step
            r_new = matching_residual(kind, x_new, spec)
            if np.max(np.abs(r_new)) < rn:
                break
            lam *= 0.5
        else:
            raise ArithmeticError(f"Newton stalled for {kind} at residual {rn:.3e}")
        x, r = x_new, r_new
    rn = np.max(np.abs(r))
    if rn > tol:
        raise ArithmeticError(f"Newton did not converge for {kind}: residual {rn:.3e}")
    return x, rn


def _fd_jacobian(kind, x, spec):
    r0 = matching_residual(kind, x, spec)
    jac = np.empty((r0.size, x.size))
    for j in range(x.size):
        h = 1e-7 * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        jac[:, j] = (matching_residual(kind, xp, spec) - r0) / h
    return jac


def solution_from_vector_names(kind: str, vector) -> dict[str, float]:
    return dict(zip(_NAMES[kind], np.asarray(vector, dtype=float)))


# ---------------------------------------------------------------------------
# random interior sampling of existence domains (oracle sweeps)


def sample_ed_interior(kind: str, rng: np.random.Generator, min_margin: float = 1e-3,
                       max_tries: int = 400) -> CompositeSpec:
    """Draw a spec strictly inside the kind's existence domain.

    Degenerate h_bar values (1 and sigma+1) are avoided so the matching
    system stays regular.
    """
    for _ in range(max_tries):
        sigma = float(np.exp(rng.uniform(np.log(0.15), np.log(3.0))))
        wd = float(rng.uniform(0.08, 0.4))
        sp1 = sigma + 1.0
        h1m = float(rng.uniform(0.12, 0.5))
        hm = float(rng.uniform(0.12, 0.5))
        shift = None
        if kind == "lens":
            hm = float(rng.uniform(0.1, 0.6))
            h1m = hm / sp1 + float(rng.uniform(0.05, 0.5))
            L = math.sqrt(2 * sigma / (sp1 * wd)) * hm + float(rng.uniform(0.3, 1.5))
        elif kind == "internal_drop":
            hm = h1m + float(rng.uniform(0.05, 0.5))
            L = math.sqrt(2 * sigma / wd) * h1m + float(rng.uniform(0.3, 1.5))
        elif kind == "h1_drop":
            hm = 0.0
            L = math.sqrt(2 * sp1 / wd) * h1m + float(rng.uniform(0.3, 1.5))
        elif kind == "h_drop":
            h1m = 0.0
            L = math.sqrt(2 / wd) * hm + float(rng.uniform(0.3, 1.5))
        elif kind in ("zigzag", "lens_on_zigzag"):
            top = sp1 - 0.05 if kind == "lens_on_zigzag" else 2.0 * sp1
            hb = _draw_hbar(rng, sigma, 0.3, top)
            hm = h1m * hb
            lo1, lo2, hi = zigzag_length_window(sigma, wd, h1m, hb)
            lo = max(lo1, lo2)
            L = lo + float(rng.uniform(0.25, 0.75)) * (hi - lo)
        elif kind == "sessile_lens":
            if sigma > 1.0:
                hb = float(rng.uniform(0.3, 0.9 * sp1 / (math.sqrt(sigma) - 1.0)))
                hm = h1m * hb
            L = (sp1 * h1m + hm) * math.sqrt(2 / (sp1 * wd)) + float(rng.uniform(0.3, 1.5))
        elif kind == "sessile_internal_drop":
            if sigma > 1.0:
                hm = h1m * (math.sqrt(sigma) - 1.0 + float(rng.uniform(0.1, 1.0)))
            L = (h1m + hm) * math.sqrt(2 / wd) + float(rng.uniform(0.3, 1.5))
        elif kind == "two_drops":
            L = math.sqrt(2 / wd) * (hm + math.sqrt(sp1) * h1m) + float(rng.uniform(0.3, 1.5))
        elif kind == "two_side_sessile_zigzag":
            hb = _draw_hbar(rng, sigma, 0.3, 2.0 * sp1)
            hm = h1m * hb
            probe = CompositeSpec(kind=kind, sigma=sigma, L=1.0, well_depth=wd,
                                  h1_m=h1m, h_m=hm, shift=-10.0)
            fp = _two_side_footprint(probe)
            L = fp + float(rng.uniform(0.6, 2.0))
            room = L - fp
            s_pick = float(rng.uniform(0.2, 0.8)) * room
            shift = -math.sqrt(2 * wd) * hm / wd - s_pick
        elif kind == "h1_sessile_zigzag":
            hb = _draw_hbar(rng, sigma, 0.3, sp1 - 0.05)
            hm = h1m * hb
            L = _min_length(kind, sigma, wd, h1m, hm) + float(rng.uniform(0.3, 2.0))
        elif kind == "h_sessile_zigzag":
            hb = _draw_hbar(rng, sigma, 1.05, 2.5 * sp1)
            hm = h1m * hb
            L = _min_length(kind, sigma, wd, h1m, hm) + float(rng.uniform(0.3, 2.0))
        else:
            raise ValueError(f"unknown kind {kind!r}")
        try:
            spec = CompositeSpec(kind=kind, sigma=sigma, L=L, well_depth=wd,
                                 h1_m=h1m, h_m=hm, shift=shift)
        except ValueError:
            continue
        rep = existence_report(spec)
        if all(c.margin > min_margin for c in rep.constraints):
            return spec
    raise RuntimeError(f"could not sample an interior spec for {kind}")


def _draw_hbar(rng, sigma, lo, hi, guard=2e-3):
    for _ in range(100):
        hb = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        if abs(hb - 1.0) > guard and abs(hb - (sigma + 1.0)) > guard * (sigma + 1.0):
            return hb
    raise RuntimeError("h_bar draw failed")


def _min_length(kind, sigma, wd, h1m, hm):
    probe = CompositeSpec(kind=kind, sigma=sigma, L=1.0, well_depth=wd, h1_m=h1m, h_m=hm)
    rep = existence_report(probe)
    for c in rep.constraints:
        if c.constraint_id.endswith("_length"):
            return 1.0 - c.margin
    raise RuntimeError("no length constraint found")


def verify_closed_forms(kinds=None, samples: int = 20, seed: int = 0, rel_tol: float = 1e-8):
    """Oracle sweep: closed form must zero the matching system and Newton
    started from 1.01x the closed form must return to it.

    Returns a list of (kind, max_residual, max_rel_gap) triples.
    """
    kinds = list(kinds or _NAMES)
    rng = np.random.default_rng(seed)
    out = []
    for kind in kinds:
        worst_res, worst_gap = 0.0, 0.0
        for _ in range(samples):
            spec = sample_ed_interior(kind, rng)
            sol = build(spec)
            x = closed_form_vector(sol)
            res = float(np.max(np.abs(matching_residual(kind, x, spec))))
            x_pert = x * (1.0 + 0.01 * rng.uniform(-1.0, 1.0, size=x.shape)) + 1e-4
            x_back, _ = newton_solve(kind, x_pert, spec)
            gap = float(np.max(np.abs(x_back - x) / np.maximum(1e-2, np.abs(x))))
            worst_res, worst_gap = max(worst_res, res), max(worst_gap, gap)
        out.append((kind, worst_res, worst_gap))
        if worst_gap > rel_tol:
            raise AssertionError(f"oracle mismatch for {kind}: rel gap {worst_gap:.3e}")
    return out
