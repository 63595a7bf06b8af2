"""Closed-form leading-order constructors for the composite stationary
solutions, their existence-domain reports, and the transformations between
construction height parameters and realized profile maxima.

Conventions: the domain is (-L, 0); contact lines sit at x = -s_k with
0 < s < s1 < s2 < s3 < L as applicable.  ``h_bar = h_m / h1_m`` controls two
degenerate cases, h_bar = 1 and h_bar = sigma + 1, where one mid-domain
parabola flattens into a linear segment; a relative guard band of 1e-9
routes those to explicit limit branches (the generic quotients are 0/0).
"""

from __future__ import annotations

import math

import numpy as np

from .types import (
    CompositeSpec,
    ConstraintReport,
    ConstraintViolation,
    ContactLine,
    LeadingOrderSolution,
    Piece,
)

__all__ = [
    "build",
    "build_one_cl",
    "build_zigzag",
    "build_sessile_lens",
    "build_sessile_internal_drop",
    "build_two_drops",
    "build_two_side_sessile_zigzag",
    "build_h1_sessile_zigzag",
    "build_h_sessile_zigzag",
    "build_lens_on_zigzag",
    "existence_report",
    "max_transform",
    "max_transform_inv",
    "zigzag_length_window",
    "plateau_c2",
    "plateau_c4",
    "mirror_solution",
]

HBAR_GUARD = 1e-9


def _hbar_branch(sigma: float, h_bar: float) -> str | None:
    if abs(h_bar - 1.0) <= HBAR_GUARD * max(1.0, h_bar):
        return "one"
    if abs(h_bar - (sigma + 1.0)) <= HBAR_GUARD * (sigma + 1.0):
        return "sigma_plus_one"
    return None


def plateau_c2(sigma: float, h_bar: float, h_m: float) -> float:
    """Height of the h-layer where it meets the mid-domain type I region.

    Written with the conjugate of the quadratic root so the h_bar -> 1
    limit (value h_m) is reached without cancellation.
    """
    return 2.0 * sigma * h_m / (sigma + math.sqrt(sigma**2 + sigma * (h_bar - 1.0) ** 2))


def plateau_c4(sigma: float, h_bar: float, h_m: float) -> float:
    """Height of the h1-layer where it meets the mid-domain type I region."""
    return (
        2.0
        * sigma
        * h_m
        / (sigma * h_bar + math.sqrt(sigma**2 * h_bar**2 + sigma * (h_bar - sigma - 1.0) ** 2))
    )


def zigzag_lambda2(sigma: float, L: float, wd: float, h1_m: float, h_bar: float) -> float:
    """Positive root of L^2 y^2 - 2 h1_m (hb-1)(hb-sigma-1) y - 2 sigma wd hb = 0."""
    p = h1_m * (h_bar - 1.0) * (h_bar - sigma - 1.0) / L**2
    return p + math.sqrt(p * p + 2.0 * sigma * wd * h_bar / L**2)


def zigzag_length_window(sigma: float, wd: float, h1_m: float, h_bar: float):
    """(lower_s1_to_L, lower_s_to_0, upper_s1_to_s) bounds on L.

    The admissible window is (max of the two lower bounds, upper); each
    bound corresponds to the named contact-line merge at equality.
    """
    pref = math.sqrt(2.0) * h1_m / math.sqrt(sigma * wd)
    r = math.sqrt(sigma + 1.0)
    return (
        pref * (sigma + 1.0 - h_bar),
        pref * r * (h_bar - 1.0),
        pref * (r + 1.0) * (h_bar + r),
    )


# ---------------------------------------------------------------------------
# floors: eps^2 coefficients of thin regions (divided by (l - n) at sampling)

def _utf_h1(lam2):
    return 0.0 if lam2 is None else lam2


def _utf_h(lam1):
    return 0.0 if lam1 is None else lam1


def _type2_h_floor(sigma, lam1, lam2):
    # h = eps(1 + eps ((sigma+1) lam1 - lam2)/((sigma+1)(l-n))) under an h1 bulk
    l1 = 0.0 if lam1 is None else lam1
    l2 = 0.0 if lam2 is None else lam2
    return ((sigma + 1.0) * l1 - l2) / (sigma + 1.0)


def _type3_h1_floor(lam1, lam2):
    # h1 = eps(1 + eps (lam2 - lam1)/(l-n)) under an h bulk
    l1 = 0.0 if lam1 is None else lam1
    l2 = 0.0 if lam2 is None else lam2
    return l2 - l1


def _parabola(start, end, coeff, center, offset) -> Piece:
    return Piece(start=start, end=end, shape="parabola", coeff=coeff, center=center, offset=offset)


def _line(start, end, slope, anchor, value) -> Piece:
    return Piece(start=start, end=end, shape="line", slope=slope, anchor=anchor, value=value)


def _floor(start, end, corr) -> Piece:
    return Piece(start=start, end=end, shape="floor", floor_corr=corr)


def _piece_extrema(pieces):
    """Exact sup of the leading-order piecewise profile over its span."""
    best = 0.0
    for p in pieces:
        if p.shape == "floor":
            continue
        xs = [p.start, p.end]
        if p.shape == "parabola" and p.start <= p.center <= p.end:
            xs.append(p.center)
        best = max(best, max(float(p.eval_leading(np.array([x]))[0]) for x in xs))
    return best


# ---------------------------------------------------------------------------
# existence reports


def existence_report(spec: CompositeSpec) -> ConstraintReport:
    """Signed existence margins for the spec; buildable iff all positive."""
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    rep = ConstraintReport(kind=spec.kind)
    k = spec.kind
    if k == "lens":
        rep.add("lens_length", L - math.sqrt(2.0 * sg / ((sg + 1.0) * wd)) * hm)
        rep.add("lens_h1_level", h1m - hm / (sg + 1.0))
    elif k == "internal_drop":
        rep.add("intdr_length", L - math.sqrt(2.0 * sg / wd) * h1m)
        rep.add("intdr_h_level", hm - h1m)
    elif k == "h1_drop":
        rep.add("h1dr_length", L - math.sqrt(2.0 * (sg + 1.0) / wd) * h1m)
    elif k == "h_drop":
        rep.add("hdr_length", L - math.sqrt(2.0 / wd) * hm)
    elif k == "zigzag" or k == "lens_on_zigzag":
        lo1, lo2, hi = zigzag_length_window(sg, wd, h1m, spec.h_bar)
        rep.add("zz_lower_s1_to_L", L - lo1)
        rep.add("zz_lower_s_to_0", L - lo2)
        rep.add("zz_upper_s1_to_s", hi - L)
        if k == "lens_on_zigzag":
            lam2 = zigzag_lambda2(sg, L, wd, h1m, spec.h_bar)
            lam1 = lam2 / spec.h_bar
            b = lam2 - (sg + 1.0) * lam1
            rep.add("loz_lens_radius", (sg + 1.0) * lam1 - lam2)
            if b < 0.0:
                # lens must clear the zigzag's right contact line: s1 > s
                rep.add("loz_s1_gt_s", lam1 * L - 2.0 * math.sqrt(2.0 * sg * wd / (sg + 1.0)))
                rep.add("loz_h1_center_level", h1m + wd / b)
            else:
                rep.add("loz_s1_gt_s", -1.0)
                rep.add("loz_h1_center_level", -1.0)
    elif k == "sessile_lens":
        d = (sg + 1.0) * h1m + hm
        rep.add("gl_length", L - d * math.sqrt(2.0 / ((sg + 1.0) * wd)))
        if sg > 1.0:
            rep.add("gl_cl_merge", (sg + 1.0) / (math.sqrt(sg) - 1.0) - spec.h_bar)
    elif k == "sessile_internal_drop":
        rep.add("gdr_length", L - (h1m + hm) * math.sqrt(2.0 / wd))
        if sg > 1.0:
            rep.add("gdr_cl_merge", spec.h_bar - (math.sqrt(sg) - 1.0))
    elif k == "two_drops":
        rep.add("2dr_length", L - math.sqrt(2.0 / wd) * (hm + math.sqrt(sg + 1.0) * h1m))
    elif k == "two_side_sessile_zigzag":
        lam1 = wd / hm
        footprint = _two_side_footprint(spec)
        if spec.shift is None:
            rep.add("2sd_footprint", L - footprint)
        else:
            rep.add("2sd_shift_bound", -math.sqrt(2.0 * wd) / lam1 - spec.shift)
            s = -math.sqrt(2.0 * wd) / lam1 - spec.shift
            rep.add("2sd_length", L - (footprint + s))
    elif k == "h1_sessile_zigzag":
        rep.add("h1zz_cl_merge", (sg + 1.0) - spec.h_bar)
        lam1, lam2 = wd / hm, wd / h1m
        c2 = plateau_c2(sg, spec.h_bar, hm)
        min_l = (2.0 * wd * (sg * lam1 + math.sqrt(sg) * lam2) + c2 * (lam1 - lam2) ** 2) / (
            math.sqrt(2.0 * sg * wd) * lam1 * lam2
        )
        rep.add("h1zz_length", L - min_l)
    elif k == "h_sessile_zigzag":
        rep.add("hzz_cl_merge", spec.h_bar - 1.0)
        lam1, lam2 = wd / hm, wd / h1m
        c4 = plateau_c4(sg, spec.h_bar, hm)
        min_l = (
            2.0 * wd * math.sqrt(sg) * ((sg + 1.0) * lam1 + math.sqrt(sg) * lam2)
            + c4 * (lam2 - (sg + 1.0) * lam1) ** 2
        ) / (math.sqrt(2.0 * sg * (sg + 1.0) * wd) * lam1 * lam2)
        rep.add("hzz_length", L - min_l)
    else:  # pragma: no cover
        raise ValueError(f"unknown kind {k!r}")
    return rep


def _two_side_footprint(spec: CompositeSpec) -> float:
    """Shift-independent extent s3 - s of the four-CL solution."""
    probe = CompositeSpec(
        kind=spec.kind,
        sigma=spec.sigma,
        L=spec.L,
        well_depth=spec.well_depth,
        h1_m=spec.h1_m,
        h_m=spec.h_m,
        shift=-math.sqrt(2.0 * spec.well_depth) * spec.h_m / spec.well_depth - 1.0,
    )
    pos = _two_side_positions(probe)
    return pos["s3"] - pos["s"]


# ---------------------------------------------------------------------------
# builders


def build(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    """Construct the leading-order solution for any composite kind."""
    builders = {
        "lens": build_one_cl,
        "internal_drop": build_one_cl,
        "h1_drop": build_one_cl,
        "h_drop": build_one_cl,
        "zigzag": build_zigzag,
        "sessile_lens": build_sessile_lens,
        "sessile_internal_drop": build_sessile_internal_drop,
        "two_drops": build_two_drops,
        "two_side_sessile_zigzag": build_two_side_sessile_zigzag,
        "h1_sessile_zigzag": build_h1_sessile_zigzag,
        "h_sessile_zigzag": build_h_sessile_zigzag,
        "lens_on_zigzag": build_lens_on_zigzag,
    }
    sol = builders[spec.kind](spec, check=check)
    if spec.inverted:
        sol = mirror_solution(sol)
    return sol


def _checked_report(spec: CompositeSpec, check: bool) -> ConstraintReport:
    rep = existence_report(spec)
    if check and not rep.ok:
        raise ConstraintViolation(spec.kind, rep)
    return rep


def build_one_cl(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    """Lens, internal drop, h1-drop and h-drop solutions."""
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    rep = _checked_report(spec, check)
    k = spec.kind

    if k == "lens":
        lam1, lam2 = wd / hm, 0.0
        s = math.sqrt(2.0 * sg / ((sg + 1.0) * wd)) * hm
        c1 = h1m - hm / (sg + 1.0)
        h1_pieces = [
            _parabola(-L, -s, -lam2 / (2.0 * (sg + 1.0)), -L, h1m),
            _parabola(-s, 0.0, (lam1 - lam2) / (2.0 * sg), 0.0, c1),
        ]
        h_pieces = [
            _floor(-L, -s, _type2_h_floor(sg, lam1, lam2)),
            _parabola(-s, 0.0, (lam2 - (sg + 1.0) * lam1) / (2.0 * sg), 0.0, hm),
        ]
        cls = [ContactLine("II", -s, +1)]
        consts = {"s": s, "C1": c1, "C4": h1m, "C5": 0.0}
    elif k == "internal_drop":
        lam1, lam2 = 0.0, wd / h1m
        s = math.sqrt(2.0 * sg / wd) * h1m
        c = hm - h1m
        h1_pieces = [
            _floor(-L, -s, _type3_h1_floor(lam1, lam2)),
            _parabola(-s, 0.0, (lam1 - lam2) / (2.0 * sg), 0.0, h1m),
        ]
        h_pieces = [
            _parabola(-L, -s, -lam1 / 2.0, -L, hm),
            _parabola(-s, 0.0, (lam2 - (sg + 1.0) * lam1) / (2.0 * sg), 0.0, c),
        ]
        cls = [ContactLine("I", -s, +1)]
        consts = {"s": s, "C": c, "C2": hm, "C3": 0.0}
    elif k == "h1_drop":
        lam1, lam2 = None, wd / h1m
        s = L - math.sqrt(2.0 * (sg + 1.0) / wd) * h1m
        h1_pieces = [
            _parabola(-L, -s, -lam2 / (2.0 * (sg + 1.0)), -L, h1m),
            _floor(-s, 0.0, _utf_h1(lam2)),
        ]
        h_pieces = [
            _floor(-L, -s, _type2_h_floor(sg, lam1, lam2)),
            _floor(-s, 0.0, _utf_h(lam1)),
        ]
        cls = [ContactLine("III", -s, -1)]
        consts = {"s": s}
    else:  # h_drop
        lam1, lam2 = wd / hm, None
        s = L - math.sqrt(2.0 / wd) * hm
        h1_pieces = [
            _floor(-L, -s, _type3_h1_floor(lam1, lam2)),
            _floor(-s, 0.0, _utf_h1(lam2)),
        ]
        h_pieces = [
            _parabola(-L, -s, -lam1 / 2.0, -L, hm),
            _floor(-s, 0.0, _utf_h(lam1)),
        ]
        cls = [ContactLine("IV", -s, -1)]
        consts = {"s": s}

    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s],
        contact_lines=cls,
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=(_piece_extrema(h1_pieces), _piece_extrema(h_pieces)),
        report=rep,
    )


def build_zigzag(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    rep = _checked_report(spec, check)
    branch = _hbar_branch(sg, hb)
    w1 = math.sqrt(2.0 * sg * wd)
    rt = math.sqrt(sg + 1.0)
    flat = None

    if branch == "one":
        lam1 = lam2 = w1 / L
        x_c = -L * (sg + 1.0) / sg
        s = L * rt * (rt - 1.0) / sg
        s1 = L / 2.0 + sg * h1m / w1
        mid_h1 = _line(-s1, -s, math.sqrt(2.0 * wd / sg), -s1, 0.0)
        coeff_h = -lam1 / 2.0
        mid_h = _parabola(-s1, -s, coeff_h, x_c, -coeff_h * (-s - x_c) ** 2)
        consts = {"x_c": x_c}
        flat = "h1"
    elif branch == "sigma_plus_one":
        lam2 = math.sqrt(2.0 * sg * (sg + 1.0) * wd) / L
        lam1 = lam2 / (sg + 1.0)
        x_c1 = L / sg
        s1 = L * (rt - 1.0) / sg
        c2 = hm - lam1 * (L - s1) ** 2 / 2.0
        slope = -math.sqrt(2.0 * (sg + 1.0) * wd / sg)
        s = s1 - c2 * math.sqrt(sg / (2.0 * (sg + 1.0) * wd))
        mid_h = _line(-s1, -s, slope, -s1, c2)
        coeff_h1 = (lam1 - lam2) / (2.0 * sg)
        mid_h1 = _parabola(-s1, -s, coeff_h1, x_c1, -coeff_h1 * (-s1 - x_c1) ** 2)
        consts = {"x_c1": x_c1}
        flat = "h"
    else:
        lam2 = zigzag_lambda2(sg, L, wd, h1m, hb)
        lam1 = lam2 / hb
        a, b = lam2 - lam1, lam2 - (sg + 1.0) * lam1
        x_c = lam1 * L * (sg + 1.0) / b
        x_c1 = lam1 * L / a
        s = math.sqrt(2.0 * sg * (sg + 1.0) * wd) / b - x_c
        s1 = w1 / a - x_c1
        coeff_h1 = (lam1 - lam2) / (2.0 * sg)
        coeff_h = b / (2.0 * sg)
        mid_h1 = _parabola(-s1, -s, coeff_h1, x_c1, -coeff_h1 * (-s1 - x_c1) ** 2)
        mid_h = _parabola(-s1, -s, coeff_h, x_c, -coeff_h * (-s - x_c) ** 2)
        consts = {"x_c": x_c, "x_c1": x_c1}

    c3 = -lam1 * (L - s1)
    c2v = hm - lam1 * (L - s1) ** 2 / 2.0
    c4 = h1m - lam2 * s**2 / (2.0 * (sg + 1.0))
    c5 = lam2 * s / (sg + 1.0)
    consts.update({"s": s, "s1": s1, "C2": c2v, "C3": c3, "C4": c4, "C5": c5})
    h1_pieces = [
        _floor(-L, -s1, _type3_h1_floor(lam1, lam2)),
        mid_h1,
        _parabola(-s, 0.0, -lam2 / (2.0 * (sg + 1.0)), 0.0, h1m),
    ]
    h_pieces = [
        _parabola(-L, -s1, -lam1 / 2.0, -L, hm),
        mid_h,
        _floor(-s, 0.0, _type2_h_floor(sg, lam1, lam2)),
    ]
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1],
        contact_lines=[ContactLine("I", -s1, +1), ContactLine("II", -s, -1)],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=(_piece_extrema(h1_pieces), _piece_extrema(h_pieces)),
        report=rep,
        flat_layer=flat,
    )


def build_sessile_lens(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    rep = _checked_report(spec, check)
    d = (sg + 1.0) * h1m + hm
    lam2 = (sg + 1.0) * wd / d
    lam1 = ((sg + 1.0) * h1m + 2.0 * hm) / d * wd / hm
    s1 = L - hm * math.sqrt(2.0 * sg / ((sg + 1.0) * wd))
    s = L - d * math.sqrt(2.0 / ((sg + 1.0) * wd))
    ct1 = wd / lam2  # apex of the h1 parabola, centered at -L
    c4 = hm / (sg + 1.0) * ((1.0 - sg) * hm + (sg + 1.0) * h1m) / d + h1m
    c5 = -lam2 * (L - s1) / (sg + 1.0)
    flat = "h1" if sg > 1.0 and abs(spec.h_bar - (sg + 1.0) / (sg - 1.0)) <= 1e-9 * spec.h_bar else None

    h1_pieces = [
        _parabola(-L, -s1, (lam1 - lam2) / (2.0 * sg), -L, h1m),
        _parabola(-s1, -s, -lam2 / (2.0 * (sg + 1.0)), -L, ct1),
        _floor(-s, 0.0, _utf_h1(lam2)),
    ]
    h_pieces = [
        _parabola(-L, -s1, (lam2 - (sg + 1.0) * lam1) / (2.0 * sg), -L, hm),
        _floor(-s1, -s, _type2_h_floor(sg, lam1, lam2)),
        _floor(-s, 0.0, _utf_h(lam1)),
    ]
    max_h1 = h1m if (sg > 1.0 and spec.h_bar >= (sg + 1.0) / (sg - 1.0)) else c4
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1],
        contact_lines=[ContactLine("II", -s1, -1), ContactLine("III", -s, -1)],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants={"s": s, "s1": s1, "Ct1": ct1, "C4": c4, "C5": c5, "x_t_c1": -L},
        maxima=(max_h1, hm),
        report=rep,
        flat_layer=flat,
    )


def build_sessile_internal_drop(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    rep = _checked_report(spec, check)
    tot = h1m + hm
    lam1 = wd / tot
    lam2 = (hm + 2.0 * h1m) / tot * wd / h1m
    s1 = L - h1m * math.sqrt(2.0 * sg / wd)
    s = L - tot * math.sqrt(2.0 / wd)
    ct0 = wd / lam1  # apex of the h parabola in the drop region, == h1m + hm
    coeff_h_left = (lam2 - (sg + 1.0) * lam1) / (2.0 * sg)
    c2 = hm + coeff_h_left * (L - s1) ** 2
    c3 = (lam2 - (sg + 1.0) * lam1) * (L - s1) / sg - math.sqrt(2.0 * wd / sg)
    flat = "h" if sg > 1.0 and abs(spec.h_bar - (sg - 1.0)) <= 1e-9 * max(1.0, spec.h_bar) else None

    h1_pieces = [
        _parabola(-L, -s1, (lam1 - lam2) / (2.0 * sg), -L, h1m),
        _floor(-s1, -s, _type3_h1_floor(lam1, lam2)),
        _floor(-s, 0.0, _utf_h1(lam2)),
    ]
    h_pieces = [
        _parabola(-L, -s1, coeff_h_left, -L, hm),
        _parabola(-s1, -s, -lam1 / 2.0, -L, ct0),
        _floor(-s, 0.0, _utf_h(lam1)),
    ]
    max_h = c2 if spec.h_bar >= sg - 1.0 else hm
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1],
        contact_lines=[ContactLine("I", -s1, -1), ContactLine("IV", -s, -1)],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants={"s": s, "s1": s1, "Ct0": ct0, "C2": c2, "C3": c3, "x_t_c": -L},
        maxima=(h1m, max_h),
        report=rep,
        flat_layer=flat,
    )


def build_two_drops(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm = spec.h1_m, spec.h_m
    rep = _checked_report(spec, check)
    lam1, lam2 = wd / hm, wd / h1m
    s1 = L - math.sqrt(2.0 / wd) * hm
    s = math.sqrt(2.0 * (sg + 1.0) / wd) * h1m
    h1_pieces = [
        _floor(-L, -s1, _type3_h1_floor(lam1, lam2)),
        _floor(-s1, -s, _utf_h1(lam2)),
        _parabola(-s, 0.0, -lam2 / (2.0 * (sg + 1.0)), 0.0, h1m),
    ]
    h_pieces = [
        _parabola(-L, -s1, -lam1 / 2.0, -L, hm),
        _floor(-s1, -s, _utf_h(lam1)),
        _floor(-s, 0.0, _type2_h_floor(sg, lam1, lam2)),
    ]
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1],
        contact_lines=[ContactLine("IV", -s1, -1), ContactLine("III", -s, +1)],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants={"s": s, "s1": s1},
        maxima=(h1m, hm),
        report=rep,
    )


def _two_side_positions(spec: CompositeSpec) -> dict[str, float]:
    """Inductive position chain of the four-CL solution for a given shift."""
    sg, wd = spec.sigma, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    lam1, lam2 = wd / hm, wd / h1m
    a, b = lam2 - lam1, lam2 - (sg + 1.0) * lam1
    w1 = math.sqrt(2.0 * sg * wd)
    w2 = math.sqrt(2.0 * sg * (sg + 1.0) * wd)
    c4p = plateau_c4(sg, hb, hm)
    c2p = plateau_c2(sg, hb, hm)
    c5 = c4p * b / w2
    c3 = c2p * a / w1
    branch = _hbar_branch(sg, hb)
    xt_c = spec.shift
    s = -math.sqrt(2.0 * wd) / lam1 - xt_c
    s1 = c3 / lam1 - xt_c
    pos = {
        "lam1": lam1,
        "lam2": lam2,
        "C3": c3,
        "C5": c5,
        "C4p": c4p,
        "C2p": c2p,
        "s": s,
        "s1": s1,
        "xt_c": xt_c,
        "branch": branch,
    }
    if branch != "sigma_plus_one":
        pos["x_c"] = -(w1 + sg * c3) / b - s1
        pos["s2"] = -w2 / b - pos["x_c"]
    if branch != "one":
        pos["x_c1"] = w1 / (lam1 - lam2) - s1
        if "s2" not in pos:
            pos["s2"] = (math.sqrt(2.0 * sg * wd / (sg + 1.0)) - sg * c5) / (lam1 - lam2) - pos["x_c1"]
    pos["xt_c1"] = (sg + 1.0) * c5 / lam2 - pos["s2"]
    pos["s3"] = math.sqrt(2.0 * (sg + 1.0) * wd) / lam2 - pos["xt_c1"]
    return pos


def build_two_side_sessile_zigzag(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    if spec.shift is None:
        raise ValueError("two_side_sessile_zigzag requires the free shift parameter")
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    rep = _checked_report(spec, check)
    pos = _two_side_positions(spec)
    lam1, lam2 = pos["lam1"], pos["lam2"]
    s, s1, s2, s3 = pos["s"], pos["s1"], pos["s2"], pos["s3"]
    branch = pos["branch"]

    if branch == "one":
        mid_h1 = _line(-s2, -s1, -math.sqrt(2.0 * wd / sg), -s1, 0.0)
    else:
        coeff = (lam1 - lam2) / (2.0 * sg)
        mid_h1 = _parabola(-s2, -s1, coeff, pos["x_c1"], -coeff * (-s1 - pos["x_c1"]) ** 2)
    if branch == "sigma_plus_one":
        mid_h = _line(-s2, -s1, math.sqrt(2.0 * (sg + 1.0) * wd / sg), -s2, 0.0)
    else:
        coeff = (lam2 - (sg + 1.0) * lam1) / (2.0 * sg)
        mid_h = _parabola(-s2, -s1, coeff, pos["x_c"], -coeff * (-s2 - pos["x_c"]) ** 2)

    h1_pieces = [
        _floor(-L, -s3, _utf_h1(lam2)),
        _parabola(-s3, -s2, -lam2 / (2.0 * (sg + 1.0)), pos["xt_c1"], h1m),
        mid_h1,
        _floor(-s1, -s, _type3_h1_floor(lam1, lam2)),
        _floor(-s, 0.0, _utf_h1(lam2)),
    ]
    h_pieces = [
        _floor(-L, -s3, _utf_h(lam1)),
        _floor(-s3, -s2, _type2_h_floor(sg, lam1, lam2)),
        mid_h,
        _parabola(-s1, -s, -lam1 / 2.0, pos["xt_c"], hm),
        _floor(-s, 0.0, _utf_h(lam1)),
    ]
    consts = {k: v for k, v in pos.items() if k != "branch"}
    if hb <= 1.0:
        maxima = (h1m, pos["C2p"])
    elif hb <= sg + 1.0:
        maxima = (h1m, hm)
    else:
        maxima = (pos["C4p"], hm)
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1, s2, s3],
        contact_lines=[
            ContactLine("III", -s3, +1),
            ContactLine("II", -s2, +1),
            ContactLine("I", -s1, -1),
            ContactLine("IV", -s, -1),
        ],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=maxima,
        report=rep,
        flat_layer={"one": "h1", "sigma_plus_one": "h"}.get(branch),
    )


def build_h1_sessile_zigzag(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    rep = _checked_report(spec, check)
    lam1, lam2 = wd / hm, wd / h1m
    a, b = lam2 - lam1, lam2 - (sg + 1.0) * lam1
    w1 = math.sqrt(2.0 * sg * wd)
    c4p = plateau_c4(sg, hb, hm)
    c2p = plateau_c2(sg, hb, hm)
    c5 = c4p * b / math.sqrt(2.0 * sg * (sg + 1.0) * wd)
    c3 = c2p * a / w1
    branch = _hbar_branch(sg, hb)

    s2 = (sg + 1.0) * c5 / lam2 + L
    x_c = -math.sqrt(2.0 * (sg + 1.0) * sg * wd) / b - s2
    consts = {"C3": c3, "C5": c5, "C4p": c4p, "C2p": c2p, "s2": s2, "x_c": x_c}
    if branch == "one":
        s1 = -sg * (math.sqrt(2.0 * wd / sg) + c3) / b - x_c
        mid_h1 = _line(-s2, -s1, -math.sqrt(2.0 * wd / sg), -s1, 0.0)
    else:
        x_c1 = sg / (lam1 - lam2) * (math.sqrt(2.0 * wd / (sg * (sg + 1.0))) - c5) - s2
        s1 = w1 / (lam1 - lam2) - x_c1
        coeff = (lam1 - lam2) / (2.0 * sg)
        mid_h1 = _parabola(-s2, -s1, coeff, x_c1, -coeff * (-s1 - x_c1) ** 2)
        consts["x_c1"] = x_c1
    xt_c = c3 / lam1 - s1
    s = -math.sqrt(2.0 * wd) / lam1 - xt_c
    consts.update({"s": s, "s1": s1, "xt_c": xt_c})

    coeff_h = b / (2.0 * sg)
    h1_pieces = [
        _parabola(-L, -s2, -lam2 / (2.0 * (sg + 1.0)), -L, h1m),
        mid_h1,
        _floor(-s1, -s, _type3_h1_floor(lam1, lam2)),
        _floor(-s, 0.0, _utf_h1(lam2)),
    ]
    h_pieces = [
        _floor(-L, -s2, _type2_h_floor(sg, lam1, lam2)),
        _parabola(-s2, -s1, coeff_h, x_c, -coeff_h * (-s2 - x_c) ** 2),
        _parabola(-s1, -s, -lam1 / 2.0, xt_c, hm),
        _floor(-s, 0.0, _utf_h(lam1)),
    ]
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1, s2],
        contact_lines=[
            ContactLine("II", -s2, +1),
            ContactLine("I", -s1, -1),
            ContactLine("IV", -s, -1),
        ],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=(h1m, c2p if hb <= 1.0 else hm),
        report=rep,
        flat_layer="h1" if branch == "one" else None,
    )


def build_h_sessile_zigzag(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    rep = _checked_report(spec, check)
    lam1, lam2 = wd / hm, wd / h1m
    a, b = lam2 - lam1, lam2 - (sg + 1.0) * lam1
    w1 = math.sqrt(2.0 * sg * wd)
    w2 = math.sqrt(2.0 * (sg + 1.0) * sg * wd)
    c4p = plateau_c4(sg, hb, hm)
    c2p = plateau_c2(sg, hb, hm)
    # signs of the CL slope constants are reversed relative to the h1-sessile case
    c5 = -c4p * b / w2
    c3 = -c2p * a / w1
    branch = _hbar_branch(sg, hb)

    s2 = c3 / lam1 + L
    x_c1 = -w1 / (lam1 - lam2) - s2
    consts = {"C3": c3, "C5": c5, "C4p": c4p, "C2p": c2p, "s2": s2, "x_c1": x_c1}
    if branch == "sigma_plus_one":
        s1 = -(math.sqrt(2.0 * sg * wd / (sg + 1.0)) + sg * c5) / (lam1 - lam2) - x_c1
        mid_h = _line(-s2, -s1, -math.sqrt(2.0 * (sg + 1.0) * wd / sg), -s1, 0.0)
    else:
        x_c = (w1 - sg * c3) / b - s2
        s1 = w2 / b - x_c
        coeff = b / (2.0 * sg)
        mid_h = _parabola(-s2, -s1, coeff, x_c, -coeff * (-s1 - x_c) ** 2)
        consts["x_c"] = x_c
    xt_c1 = (sg + 1.0) * c5 / lam2 - s1
    s = -math.sqrt(2.0 * (sg + 1.0) * wd) / lam2 - xt_c1
    consts.update({"s": s, "s1": s1, "xt_c1": xt_c1})

    coeff_h1 = (lam1 - lam2) / (2.0 * sg)
    h1_pieces = [
        _floor(-L, -s2, _type3_h1_floor(lam1, lam2)),
        _parabola(-s2, -s1, coeff_h1, x_c1, -coeff_h1 * (-s2 - x_c1) ** 2),
        _parabola(-s1, -s, -lam2 / (2.0 * (sg + 1.0)), xt_c1, h1m),
        _floor(-s, 0.0, _utf_h1(lam2)),
    ]
    h_pieces = [
        _parabola(-L, -s2, -lam1 / 2.0, -L, hm),
        mid_h,
        _floor(-s1, -s, _type2_h_floor(sg, lam1, lam2)),
        _floor(-s, 0.0, _utf_h(lam1)),
    ]
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1, s2],
        contact_lines=[
            ContactLine("I", -s2, +1),
            ContactLine("II", -s1, -1),
            ContactLine("III", -s, -1),
        ],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=(h1m if hb <= sg + 1.0 else c4p, hm),
        report=rep,
        flat_layer="h" if branch == "sigma_plus_one" else None,
    )


def build_lens_on_zigzag(spec: CompositeSpec, check: bool = True) -> LeadingOrderSolution:
    """Zig-zag with a lens attached at x = 0 (three contact lines).

    The matching system decouples: the left part is the plain zig-zag with
    positions relabeled (s1, s) -> (s2, s1), and the h1 parabola shared with
    the lens keeps its apex h1_m at x = 0.
    """
    sg, L, wd = spec.sigma, spec.L, spec.well_depth
    h1m, hm, hb = spec.h1_m, spec.h_m, spec.h_bar
    rep = _checked_report(spec, check)
    zz = build_zigzag(spec_with(spec, kind="zigzag", shift=None), check=False)
    lam1, lam2 = zz.lambda1_0, zz.lambda2_0
    b = lam2 - (sg + 1.0) * lam1
    s1, s2 = zz.constants["s"], zz.constants["s1"]
    s = -math.sqrt(2.0 * sg * (sg + 1.0) * wd) / b
    c_lens = -(sg + 1.0) * wd / b  # h at x = 0
    c1_lens = h1m + wd / b  # h1 at x = 0
    c4p = h1m - lam2 * s**2 / (2.0 * (sg + 1.0))

    mid_h1 = zz.pieces_h1[1]
    mid_h = zz.pieces_h[1]
    h1_pieces = [
        _floor(-L, -s2, _type3_h1_floor(lam1, lam2)),
        Piece(**{**mid_h1.__dict__, "start": -s2, "end": -s1}),
        _parabola(-s1, -s, -lam2 / (2.0 * (sg + 1.0)), 0.0, h1m),
        _parabola(-s, 0.0, (lam1 - lam2) / (2.0 * sg), 0.0, c1_lens),
    ]
    h_pieces = [
        _parabola(-L, -s2, -lam1 / 2.0, -L, hm),
        Piece(**{**mid_h.__dict__, "start": -s2, "end": -s1}),
        _floor(-s1, -s, _type2_h_floor(sg, lam1, lam2)),
        _parabola(-s, 0.0, b / (2.0 * sg), 0.0, c_lens),
    ]
    consts = dict(zz.constants)
    consts.update({"s": s, "s1": s1, "s2": s2, "h_at_0": c_lens, "h1_at_0": c1_lens, "C4_lens": c4p})
    return LeadingOrderSolution(
        spec=spec,
        lambda1_0=lam1,
        lambda2_0=lam2,
        cl_positions=[s, s1, s2],
        contact_lines=[
            ContactLine("I", -s2, +1),
            ContactLine("II", -s1, -1),
            ContactLine("II", -s, +1),
        ],
        pieces_h1=h1_pieces,
        pieces_h=h_pieces,
        constants=consts,
        maxima=(_piece_extrema(h1_pieces), _piece_extrema(h_pieces)),
        report=rep,
        flat_layer=zz.flat_layer,
    )


def spec_with(spec: CompositeSpec, **overrides) -> CompositeSpec:
    kw = dict(
        kind=spec.kind,
        sigma=spec.sigma,
        L=spec.L,
        well_depth=spec.well_depth,
        h1_m=spec.h1_m,
        h_m=spec.h_m,
        shift=spec.shift,
        inverted=spec.inverted,
    )
    kw.update(overrides)
    return CompositeSpec(**kw)


def mirror_solution(sol: LeadingOrderSolution) -> LeadingOrderSolution:
    """Map the resolved layout through x -> -L - x."""
    L = sol.spec.L

    def flip_piece(p: Piece) -> Piece:
        if p.shape == "parabola":
            return _parabola(-L - p.end, -L - p.start, p.coeff, -L - p.center, p.offset)
        if p.shape == "line":
            return _line(-L - p.end, -L - p.start, -p.slope, -L - p.anchor, p.value)
        return _floor(-L - p.end, -L - p.start, p.floor_corr)

    return LeadingOrderSolution(
        spec=sol.spec,
        lambda1_0=sol.lambda1_0,
        lambda2_0=sol.lambda2_0,
        cl_positions=sorted(L - s for s in sol.cl_positions),
        contact_lines=[
            ContactLine(c.cl_type, -L - c.position, -c.direction)
            for c in reversed(sol.contact_lines)
        ],
        pieces_h1=[flip_piece(p) for p in reversed(sol.pieces_h1)],
        pieces_h=[flip_piece(p) for p in reversed(sol.pieces_h)],
        constants=dict(sol.constants),
        maxima=sol.maxima,
        report=sol.report,
        flat_layer=sol.flat_layer,
    )


# ---------------------------------------------------------------------------
# realized-maxima transformations


def _sessile_lens_c4(sigma, h1m, hm):
    d = (sigma + 1.0) * h1m + hm
    return h1m + hm * ((sigma + 1.0) * h1m + (1.0 - sigma) * hm) / ((sigma + 1.0) * d)


def _sessile_internal_c2(sigma, h1m, hm):
    return hm + h1m * ((1.0 - sigma) * h1m + hm) / (h1m + hm)


def max_transform(kind: str, sigma: float, h1_m: float, h_m: float) -> tuple[float, float]:
    """(max h1^0, max h^0) realized by the construction parameters."""
    hb = h_m / h1_m
    if kind == "sessile_lens":
        if sigma > 1.0 and hb >= (sigma + 1.0) / (sigma - 1.0):
            return h1_m, h_m
        return _sessile_lens_c4(sigma, h1_m, h_m), h_m
    if kind == "sessile_internal_drop":
        if sigma > 1.0 and hb < sigma - 1.0:
            return h1_m, h_m
        return h1_m, _sessile_internal_c2(sigma, h1_m, h_m)
    if kind == "two_side_sessile_zigzag":
        if hb <= 1.0:
            return h1_m, plateau_c2(sigma, hb, h_m)
        if hb <= sigma + 1.0:
            return h1_m, h_m
        return plateau_c4(sigma, hb, h_m), h_m
    if kind == "h1_sessile_zigzag":
        return h1_m, (plateau_c2(sigma, hb, h_m) if hb <= 1.0 else h_m)
    if kind == "h_sessile_zigzag":
        return (h1_m if hb <= sigma + 1.0 else plateau_c4(sigma, hb, h_m)), h_m
    return h1_m, h_m


def _largest_root(a, b, c):
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return math.nan
    return (-b + math.sqrt(disc)) / (2.0 * a)


def max_transform_inv(kind: str, sigma: float, h_max: float, h1_max: float) -> tuple[float, float]:
    """Inverse of ``max_transform``: construction (h1_m, h_m) from maxima.

    Returns NaN components when no positive preimage exists (the point then
    lies outside the kind's existence domain).
    """
    ht = h_max / h1_max
    sp1 = sigma + 1.0
    if kind == "sessile_lens":
        if sigma > 1.0 and ht >= sp1 / (sigma - 1.0):
            return h1_max, h_max
        hm = h_max
        h1m = _largest_root(
            sp1**2, sp1 * (2.0 * hm - sp1 * h1_max), (1.0 - sigma) * hm**2 - h1_max * sp1 * hm
        )
        return h1m, hm
    if kind == "sessile_internal_drop":
        if sigma > 1.0 and ht < sigma - 1.0:
            return h1_max, h_max
        h1m = h1_max
        hm = _largest_root(1.0, 2.0 * h1m - h_max, (1.0 - sigma) * h1m**2 - h_max * h1m)
        return h1m, hm
    if kind == "two_side_sessile_zigzag":
        if ht <= 1.0:
            return h1_max, h_max / (ht - 2.0 * sigma + math.sqrt(4.0 * sigma * (sp1 - ht)))
        if ht <= sp1:
            return h1_max, h_max
        return h_max / (sp1 - 2.0 * sigma * ht + math.sqrt(4.0 * sigma * sp1 * ht * (ht - 1.0))), h_max
    if kind == "h1_sessile_zigzag":
        if ht <= 1.0:
            return h1_max, h_max / (ht - 2.0 * sigma + math.sqrt(4.0 * sigma * (sp1 - ht)))
        return h1_max, h_max
    if kind == "h_sessile_zigzag":
        if ht >= sp1:
            return h_max / (sp1 - 2.0 * sigma * ht + math.sqrt(4.0 * sigma * sp1 * ht * (ht - 1.0))), h_max
        return h1_max, h_max
    return h1_max, h_max
