"""Domain types shared by the composite-solution constructors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "KINDS",
    "ONE_CL_KINDS",
    "CompositeSpec",
    "ConstraintViolation",
    "Constraint",
    "ConstraintReport",
    "Piece",
    "ContactLine",
    "LeadingOrderSolution",
    "Profile",
]

KINDS = (
    "lens",
    "internal_drop",
    "h1_drop",
    "h_drop",
    "zigzag",
    "sessile_lens",
    "sessile_internal_drop",
    "two_drops",
    "two_side_sessile_zigzag",
    "h1_sessile_zigzag",
    "h_sessile_zigzag",
    "lens_on_zigzag",
)

ONE_CL_KINDS = ("lens", "internal_drop", "h1_drop", "h_drop")

# Height parameters each kind actually consumes.
KIND_USES_H1M = {k: k not in ("h_drop",) for k in KINDS}
KIND_USES_HM = {k: k not in ("h1_drop",) for k in KINDS}


class ConstraintViolation(ValueError):
    """A model-parameter combination outside the solution's existence domain."""

    def __init__(self, kind: str, report: "ConstraintReport"):
        self.kind = kind
        self.report = report
        worst = report.worst_violated()
        msg = f"{kind}: constraint {worst.constraint_id} violated (margin {worst.margin:.6g})"
        super().__init__(msg)


@dataclass(frozen=True)
class CompositeSpec:
    """Model parameters of one composite stationary solution.

    ``h1_m`` and ``h_m`` are the height parameters of the construction, not
    necessarily the realized profile maxima; ``shift`` is the free placement
    parameter of the four-CL solution.
    """

    kind: str
    sigma: float
    L: float
    well_depth: float
    h1_m: float = 0.0
    h_m: float = 0.0
    shift: float | None = None
    inverted: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.sigma <= 0 or self.L <= 0 or self.well_depth <= 0:
            raise ValueError("sigma, L and well_depth must be positive")
        if KIND_USES_H1M[self.kind] and self.h1_m <= 0:
            raise ValueError(f"{self.kind} requires h1_m > 0")
        if KIND_USES_HM[self.kind] and self.h_m <= 0:
            raise ValueError(f"{self.kind} requires h_m > 0")
        if self.shift is not None and self.kind != "two_side_sessile_zigzag":
            raise ValueError("shift is only meaningful for two_side_sessile_zigzag")

    @property
    def h_bar(self) -> float:
        return self.h_m / self.h1_m


@dataclass(frozen=True)
class Constraint:
    constraint_id: str
    satisfied: bool
    margin: float


@dataclass
class ConstraintReport:
    kind: str
    constraints: list[Constraint] = field(default_factory=list)

    def add(self, constraint_id: str, margin: float):
        self.constraints.append(Constraint(constraint_id, bool(margin > 0.0), float(margin)))

    @property
    def ok(self) -> bool:
        return all(c.satisfied for c in self.constraints)

    def margin(self, constraint_id: str) -> float:
        for c in self.constraints:
            if c.constraint_id == constraint_id:
                return c.margin
        raise KeyError(constraint_id)

    def worst_violated(self) -> Constraint:
        bad = [c for c in self.constraints if not c.satisfied]
        return min(bad or self.constraints, key=lambda c: c.margin)

    def to_text(self) -> str:
        return "".join(f"{c.constraint_id}={c.margin:.17g}\n" for c in self.constraints)


@dataclass(frozen=True)
class Piece:
    """One leading-order segment of one layer on [start, end].

    kinds: 'parabola' evaluates coeff*(x-center)^2 + offset, 'line'
    slope*(x-anchor) + value, 'floor' the O(eps) film eps + eps^2*floor_corr/(l-n)
    (floor_corr folds the pressure combination of the hosting region).
    """

    start: float
    end: float
    shape: str
    coeff: float = 0.0
    center: float = 0.0
    offset: float = 0.0
    slope: float = 0.0
    anchor: float = 0.0
    value: float = 0.0
    floor_corr: float = 0.0

    def eval_leading(self, x):
        """Leading-order height (floors evaluate to 0 here)."""
        x = np.asarray(x, dtype=float)
        if self.shape == "parabola":
            return self.coeff * (x - self.center) ** 2 + self.offset
        if self.shape == "line":
            return self.slope * (x - self.anchor) + self.value
        return np.zeros_like(x)

    def eval(self, x, eps: float, l_minus_n: int):
        """Height including the O(eps) floor of thin regions."""
        x = np.asarray(x, dtype=float)
        if self.shape == "floor":
            return np.full_like(x, eps + eps**2 * self.floor_corr / l_minus_n)
        return self.eval_leading(x)


@dataclass(frozen=True)
class ContactLine:
    """Descriptor of one contact line for mollification and reporting."""

    cl_type: str
    position: float  # x-location in (-L, 0)
    # +1 if the transitioning layer rises with x across the CL, -1 otherwise
    direction: int


@dataclass
class LeadingOrderSolution:
    """Fully resolved leading-order composite profile."""

    spec: CompositeSpec
    lambda1_0: float | None
    lambda2_0: float | None
    cl_positions: list[float]  # s-values, ascending (CL locations are x = -s)
    contact_lines: list[ContactLine]
    pieces_h1: list[Piece]
    pieces_h: list[Piece]
    constants: dict[str, float]
    maxima: tuple[float, float]  # (max h1^0, max h^0) over (-L, 0)
    report: ConstraintReport
    flat_layer: str | None = None  # layer whose bulk piece degenerated to a segment

    def eval_h1(self, x, eps: float = 0.0, l_minus_n: int = 1):
        return _eval_pieces(self.pieces_h1, x, eps, l_minus_n)

    def eval_h(self, x, eps: float = 0.0, l_minus_n: int = 1):
        return _eval_pieces(self.pieces_h, x, eps, l_minus_n)


def _eval_pieces(pieces: list[Piece], x, eps: float, l_minus_n: int):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    out.fill(np.nan)
    for k, piece in enumerate(pieces):
        lo = piece.start if k > 0 else -np.inf
        hi = piece.end if k < len(pieces) - 1 else np.inf
        mask = (x >= lo) & (x <= hi) & np.isnan(out)
        if np.any(mask):
            out[mask] = piece.eval(x[mask], eps, l_minus_n) if eps > 0 else piece.eval_leading(x[mask])
    return out


@dataclass
class Profile:
    """Sampled layer heights on a grid; simulator initial data and CLI output."""

    x: np.ndarray
    h1: np.ndarray
    h: np.ndarray
    warning: str | None = None

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.h1 = np.asarray(self.h1, dtype=float)
        self.h = np.asarray(self.h, dtype=float)
        if not (self.x.shape == self.h1.shape == self.h.shape):
            raise ValueError("x, h1, h must have identical shapes")

    @property
    def L(self) -> float:
        return float(self.x[-1] - self.x[0])

    def mirrored(self) -> "Profile":
        """Profile mapped through x -> -L - x (same grid, reversed data)."""
        a, b = self.x[0], self.x[-1]
        return Profile(x=self.x.copy(), h1=self.h1[::-1].copy(), h=self.h[::-1].copy())

    def to_csv(self, path):
        write_profile_csv(path, self)

    @staticmethod
    def from_csv(path) -> "Profile":
        return read_profile_csv(path)


def write_profile_csv(path, profile: Profile, extra: dict[str, np.ndarray] | None = None):
    cols = {"x": profile.x, "h1": profile.h1, "h": profile.h}
    if extra:
        cols.update(extra)
    names = list(cols)
    with open(path, "w", newline="") as f:
        f.write(",".join(names) + "\n")
        for row in zip(*cols.values()):
            f.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_profile_csv(path) -> Profile:
    with open(path) as f:
        header = f.readline().strip().split(",")
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    idx = {name: i for i, name in enumerate(header)}
    for req in ("x", "h1", "h"):
        if req not in idx:
            raise ValueError(f"profile CSV missing column {req!r}")
    return Profile(x=data[:, idx["x"]], h1=data[:, idx["h1"]], h=data[:, idx["h"]])
