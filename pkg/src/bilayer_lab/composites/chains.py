"""Chain notation for composite profiles.

Digits name the four one-CL building blocks (0 lens, 1 internal drop,
2 h1-drop, 3 h-drop).  A bare digit anchors the block's O(1) structure at
the left edge of its sub-interval; a '-' superscript mirrors it ('+' is an
explicit bare orientation).  Multi-CL composites and their reflection-
symmetric doubles have well-known chain strings, e.g. the zig-zag is
"(1-0)" and the symmetric sessile-lens initial state of the coarsening
experiments is "(2-0-02)".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..potential import PotentialParams
from .build import build, mirror_solution
from .sampling import evaluate_profile, sample_profile
from .types import CompositeSpec, Profile

__all__ = [
    "ChainExpr",
    "ChainParseError",
    "ChainLayoutError",
    "parse_chain",
    "format_chain",
    "reflect_chain",
    "chain_for_kind",
    "recognize_chain",
    "assemble_chain",
    "symmetric_double_profile",
    "BLOCK_KINDS",
]

BLOCK_KINDS = {0: "lens", 1: "internal_drop", 2: "h1_drop", 3: "h_drop"}

# one-CL solutions built by build_one_cl carry their O(1) structure on the
# right for digits 0-1 (lens, internal drop) and on the left for 2-3
_NATIVE_LEFT = {0: False, 1: False, 2: True, 3: True}


class ChainParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.pos = pos
        super().__init__(f"chain {text!r}: {msg} at position {pos}")


class ChainLayoutError(ValueError):
    pass


@dataclass(frozen=True)
class ChainExpr:
    blocks: tuple[tuple[int, bool], ...]  # (digit, inverted)

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("chain must contain at least one block")

    def __len__(self):
        return len(self.blocks)


def parse_chain(text: str) -> ChainExpr:
    """Parse '(d[-+]d[-+]...)' with digits in 0..3; '-' mirrors a block."""
    if not text or text[0] != "(":
        raise ChainParseError(text, 0, "expected '('")
    if text[-1] != ")":
        raise ChainParseError(text, len(text) - 1, "expected ')'")
    body = text[1:-1]
    blocks: list[tuple[int, bool]] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if not ch.isdigit():
            raise ChainParseError(text, i + 1, f"expected digit, got {ch!r}")
        if ch not in "0123":
            raise ChainParseError(text, i + 1, f"digit out of range: {ch}")
        inverted = False
        if i + 1 < len(body) and body[i + 1] in "-+":
            inverted = body[i + 1] == "-"
            i += 1
        blocks.append((int(ch), inverted))
        i += 1
    if not blocks:
        raise ChainParseError(text, 1, "empty chain")
    return ChainExpr(blocks=tuple(blocks))


def format_chain(expr: ChainExpr) -> str:
    return "(" + "".join(f"{d}{'-' if inv else ''}" for d, inv in expr.blocks) + ")"


def reflect_chain(expr: ChainExpr) -> ChainExpr:
    return ChainExpr(blocks=tuple((d, not inv) for d, inv in reversed(expr.blocks)))


_KIND_CHAINS = {
    "lens": "(0-)",
    "internal_drop": "(1-)",
    "h1_drop": "(2)",
    "h_drop": "(3)",
    "zigzag": "(1-0)",
    "sessile_lens": "(02)",
    "sessile_internal_drop": "(13)",
    "two_drops": "(32-)",
    "two_side_sessile_zigzag": "(2-0-13)",
    "h1_sessile_zigzag": "(0-13)",
    "h_sessile_zigzag": "(1-02)",
    "lens_on_zigzag": "(1-0+0-)",
}


def chain_for_kind(kind: str) -> ChainExpr:
    return parse_chain(_KIND_CHAINS[kind])


def recognize_chain(expr: ChainExpr):
    """Identify the chain as a known composite, a mirrored one, or the
    reflection-symmetric double of one.  Returns (tag, kind) with tag in
    {'kind', 'kind_inverted', 'symmetric_double'} or None."""
    for kind, text in _KIND_CHAINS.items():
        known = parse_chain(text)
        if expr == known:
            return ("kind", kind)
        if expr == reflect_chain(known):
            return ("kind_inverted", kind)
        if len(expr) == 2 * len(known) and expr.blocks == (
            reflect_chain(known).blocks + known.blocks
        ):
            return ("symmetric_double", kind)
    return None


def _block_footprint(digit: int, sigma: float, wd: float, h1_m: float, h_m: float) -> float:
    if digit == 0:
        return np.sqrt(2.0 * sigma / ((sigma + 1.0) * wd)) * h_m
    if digit == 1:
        return np.sqrt(2.0 * sigma / wd) * h1_m
    if digit == 2:
        return np.sqrt(2.0 * (sigma + 1.0) / wd) * h1_m
    return np.sqrt(2.0 / wd) * h_m


def assemble_chain(
    expr: ChainExpr,
    p: PotentialParams,
    sigma: float,
    L: float,
    heights,
    grid_points: int,
    well_depth: float | None = None,
    mollify: bool = True,
) -> Profile:
    """Concatenate one-CL building blocks into a composite profile.

    ``heights`` is one (h1_m, h_m) pair, or one per block.  Sub-interval
    lengths scale the blocks' minimal footprints up to fill L; mirror-
    symmetric chains with matching heights produce profiles symmetric about
    the chain center.
    """
    wd = well_depth if well_depth is not None else p.well_depth
    blocks = expr.blocks
    if len(heights) == 2 and np.isscalar(heights[0]):
        heights = [tuple(heights)] * len(blocks)
    if len(heights) != len(blocks):
        raise ChainLayoutError(f"need {len(blocks)} height pairs, got {len(heights)}")

    footprints = [
        _block_footprint(d, sigma, wd, h1m, hm) for (d, _), (h1m, hm) in zip(blocks, heights)
    ]
    total = sum(footprints)
    if total >= L:
        detail = ", ".join(
            f"block {i} ({BLOCK_KINDS[d]}): {w:.6g}"
            for i, ((d, _), w) in enumerate(zip(blocks, footprints))
        )
        raise ChainLayoutError(f"block footprints sum to {total:.6g} > L = {L:.6g} ({detail})")
    scale = L / total

    x = np.linspace(-L, 0.0, grid_points)
    h1 = np.empty_like(x)
    h = np.empty_like(x)
    left = -L
    for (digit, inverted), (h1m, hm), width in zip(blocks, heights, footprints):
        sub_l = width * scale
        right = left + sub_l
        spec = CompositeSpec(
            kind=BLOCK_KINDS[digit],
            sigma=sigma,
            L=sub_l,
            well_depth=wd,
            h1_m=h1m if digit != 3 else 0.0,
            h_m=hm if digit != 2 else 0.0,
        )
        sol = build(spec)
        # orient so bare digits anchor their structure at the left edge
        mirror = inverted if _NATIVE_LEFT[digit] else not inverted
        if mirror:
            sol = mirror_solution(sol)
        mask = (x >= left - 1e-12) & (x <= right + 1e-12)
        h1[mask], h[mask] = evaluate_profile(sol, p, x[mask] - right, mollify=mollify)
        left = right
    return Profile(x=x, h1=h1, h=h)


def symmetric_double_profile(
    kind: str,
    p: PotentialParams,
    sigma: float,
    L: float,
    h1_m: float,
    h_m: float,
    grid_points: int,
    well_depth: float | None = None,
    mollify: bool = True,
    shift: float | None = None,
) -> Profile:
    """Composite solution on (-L/2, 0) extended by its mirror image to
    (-L, 0); the reflection-symmetric initial states of the coarsening
    experiments."""
    wd = well_depth if well_depth is not None else p.well_depth
    spec = CompositeSpec(
        kind=kind, sigma=sigma, L=L / 2.0, well_depth=wd, h1_m=h1_m, h_m=h_m, shift=shift
    )
    sol = build(spec)
    n_half = grid_points // 2 + 1
    right = sample_profile(sol, p, n_half, mollify=mollify)
    x = np.linspace(-L, 0.0, 2 * n_half - 1)
    h1 = np.concatenate([right.h1[::-1], right.h1[1:]])
    h = np.concatenate([right.h[::-1], right.h[1:]])
    return Profile(x=x, h1=h1, h=h)
