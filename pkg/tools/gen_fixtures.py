#!/usr/bin/env python3
"""Generate the arbitrary-precision test fixtures under tests/fixtures/.

Run once before the build and commit the outputs; the test suite only reads
the frozen files.  Oracles used here are independent of the library code:

  * faddeeva / voigt: w(z) = exp(-z^2) erfc(-iz) via mpmath's complex erfc
    at 40 significant digits; axis points go through real-arithmetic paths
    so exactly-zero components stay exactly zero.
  * dawson: F(z) = (sqrt(pi)/2) exp(-z^2) erfi(z).
  * standardized alpha=1/2 stable pdf/cdf: the defining inversion integral
    f(x) = (1/pi) Re int_0^inf e^{-itx} phi(t) dt rotated onto the negative
    imaginary t-axis (t = -is), where the integrand is smooth and
    exponentially damped; the cdf uses the same rotation applied to
    int_0^x f.  Both are checked for consistency against the Levy closed
    form at beta = 1.

Fixture floats are the correctly-rounded doubles of the true values.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

MAGS = [1e-6, 1e-4, 3e-3, 3e-2, 0.15, 0.5, 1.0, 2.0, 3.5, 5.0, 7.2, 9.0,
        12.0, 18.0, 24.0, 30.0]


def w_upper(x: float, y: float) -> mp.mpc:
    z = mp.mpc(x, y)
    return mp.exp(-z * z) * mp.erfc(-1j * z)


def w_any(x: float, y: float):
    """w with axis-aware evaluation so zero components are exact."""
    if y == 0.0:
        re = mp.exp(-mp.mpf(x) ** 2)
        im = 2 / mp.sqrt(mp.pi) * dawson_real(x)
        return re, im
    if x == 0.0 and y >= 0.0:
        return mp.erfc(mp.mpf(y)) * mp.exp(mp.mpf(y) ** 2), mp.mpf(0)
    w = w_upper(x, y)
    return w.real, w.imag


def dawson_real(x: float) -> mp.mpf:
    x = mp.mpf(x)
    return mp.sqrt(mp.pi) / 2 * mp.exp(-x * x) * mp.erfi(x)


def dawson_any(x: float, y: float):
    if y == 0.0:
        return dawson_real(x), mp.mpf(0)
    z = mp.mpc(x, y)
    f = mp.sqrt(mp.pi) / 2 * mp.exp(-z * z) * mp.erfi(z)
    if x == 0.0:
        return mp.mpf(0), f.imag
    return f.real, f.imag


def write_csv(name: str, header: list[str], rows) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    (OUT / name).write_text("\n".join(lines) + "\n")
    print(f"wrote {name}: {len(rows)} rows")


def gen_faddeeva() -> None:
    rows = []
    for x in [0.0] + [m for m in MAGS] + [-m for m in MAGS]:
        for y in [0.0] + MAGS:
            re, im = w_any(x, y)
            rows.append((x, y, re, im))
    # lower half-plane where 2 exp(-z^2) is representable and w is not close
    # to one of its zeros (relative targets are meaningless at the zeros)
    for x in [m for m in MAGS] + [-m for m in MAGS]:
        for y in MAGS:
            y = -y
            if y * y - x * x > 600.0:
                continue
            w = w_upper(x, y)
            scale = mp.exp(y * y - x * x)
            if abs(w) < 1e-3 * scale:
                continue
            rows.append((x, y, w.real, w.imag))
    write_csv("faddeeva.csv", ["x", "y", "w_re", "w_im"], rows)


def gen_dawson() -> None:
    rows = []
    for x in [0.0] + [m for m in MAGS] + [-m for m in MAGS]:
        for y in [0.0] + MAGS + [-m for m in MAGS[:8]]:
            if y * y - x * x > 600.0:
                continue
            re, im = dawson_any(x, y)
            rows.append((x, y, re, im))
    write_csv("dawson.csv", ["x", "y", "f_re", "f_im"], rows)


def gen_voigt() -> None:
    rows = []
    for a in [0.0] + MAGS + [-m for m in MAGS]:
        for b in MAGS:
            re, im = w_any(a, b)
            rows.append((a, b, re, im))
    write_csv("voigt.csv", ["a", "b", "K", "L"], rows)


# ---------------------------------------------------------------------------
# standardized alpha=1/2 stable law, paper CF convention:
# phi(t) = exp(-sqrt(|t|) (1 - i beta sgn t)) for t > 0
# ---------------------------------------------------------------------------

def _phi_rotated(s: mp.mpf, beta: mp.mpf) -> mp.mpc:
    # phi(-i s) = exp(-sqrt(s) e^{-i pi/4} (1 - i beta))
    root = mp.sqrt(s) * mp.expjpi(-0.25)
    return mp.exp(-root * (1 - 1j * beta))


def std_half_pdf_ref(x: float, beta: float) -> mp.mpf:
    """f(x; 1/2, beta) by rotating the inversion integral onto t = -is."""
    x = mp.mpf(x)
    beta = mp.mpf(beta)
    if x < 0:
        return std_half_pdf_ref(float(-x), float(-beta))
    if x == 0:
        return 2 * (1 - beta ** 2) / (mp.pi * (1 + beta ** 2) ** 2)

    def g(s):
        return (-1j * _phi_rotated(s, beta) * mp.exp(-s * x)).real

    val = mp.quad(g, [0, 1, 10, 100, mp.inf]) / mp.pi
    return val


def std_half_cdf_ref(x: float, beta: float) -> mp.mpf:
    x = mp.mpf(x)
    beta = mp.mpf(beta)
    f0 = mp.mpf(0.5) - 2 * mp.atan(beta) / mp.pi
    if x == 0:
        return f0
    if x < 0:
        return 1 - std_half_cdf_ref(float(-x), float(-beta))

    def g(s):
        if s == 0:
            return (-1j * x).real  # limit of (1-e^{-sx})/s is x; -i*phi(0)=-i
        return (-1j * _phi_rotated(s, beta) * (1 - mp.exp(-s * x)) / s).real

    val = f0 + mp.quad(g, [0, 1, 10, 100, mp.inf]) / mp.pi
    return val


def levy_pdf_ref(x: float) -> mp.mpf:
    x = mp.mpf(x)
    if x <= 0:
        return mp.mpf(0)
    return mp.sqrt(1 / (2 * mp.pi * x ** 3)) * mp.exp(-1 / (2 * x))


def levy_cdf_ref(x: float) -> mp.mpf:
    x = mp.mpf(x)
    if x <= 0:
        return mp.mpf(0)
    return mp.erfc(mp.sqrt(1 / (2 * x)))


def gen_stable() -> None:
    betas = [-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75]
    xs = [0.0, 1e-9, -1e-9, 0.1, -0.1, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0,
          2.0, -2.0, 5.0, -5.0, 10.0, -10.0, 20.0, -20.0, 50.0]
    rows = []
    for b in betas:
        for x in xs:
            rows.append((b, x, std_half_pdf_ref(x, b)))
    for x in xs:  # Levy member, closed form
        rows.append((1.0, x, levy_pdf_ref(x)))
        rows.append((-1.0, x, levy_pdf_ref(-x)))
    write_csv("stable_half_pdf.csv", ["beta", "x", "f"], rows)

    xs_cdf = [-100.0, -20.0, -5.0, -1.0, -0.5, 0.0, 0.5, 1.0, 5.0, 20.0, 100.0]
    rows = []
    for b in betas:
        for x in xs_cdf:
            rows.append((b, x, std_half_cdf_ref(x, b)))
    for x in xs_cdf:
        rows.append((1.0, x, levy_cdf_ref(x)))
        rows.append((-1.0, x, 1 - levy_cdf_ref(-x)))
    write_csv("stable_half_cdf.csv", ["beta", "x", "F"], rows)

    # rotated-contour oracle must reproduce the Levy closed form
    for x in (0.5, 1.0, 4.0):
        a = std_half_pdf_ref(x, 1.0 - 1e-12)
        b = levy_pdf_ref(x)
        assert abs(a - b) < 1e-10 * b, (x, a, b)
    print("levy-member consistency check passed")


def gen_anchors() -> None:
    w11 = w_upper(1.0, 1.0)
    anchors = {
        "w_1_1j_re": float(w11.real),
        "w_1_1j_im": float(w11.imag),
        "w_i_re": float(mp.e * mp.erfc(1)),
        "dawson_half": float(dawson_real(0.5)),
        "erfcx_1": float(mp.e * mp.erfc(1)),
        "levy_pdf_1": float(levy_pdf_ref(1.0)),
        "levy_cdf_1": float(levy_cdf_ref(1.0)),
        "levy_cdf_1e6": float(levy_cdf_ref(1e6)),
        "levy_median": float(1 / (2 * mp.erfinv(mp.mpf("0.5")) ** 2)),
        "std_half_pdf_1_0": float(std_half_pdf_ref(1.0, 0.0)),
        "std_half_cdf_0_third": float(mp.mpf(0.5) - 2 * mp.atan(mp.mpf(1) / 3) / mp.pi),
        "gauss_cf_inv_pdf_1": float(mp.exp(mp.mpf(-0.25)) / (2 * mp.sqrt(mp.pi))),
        "tail_stable_100_b0": float(1 / mp.sqrt(200 * mp.pi)),
        "tail_stable_100_b1": float(2 / mp.sqrt(200 * mp.pi)),
        "tail_gauss_5": float(mp.exp(mp.mpf(-12.5)) / (5 * mp.sqrt(2 * mp.pi))),
        "std_half_pdf_0_b_quarter": float(std_half_pdf_ref(0.0, 0.25)),
        "std_half_pdf_0_b_half": float(std_half_pdf_ref(0.0, 0.5)),
        "std_half_pdf_0_b_3quarter": float(std_half_pdf_ref(0.0, 0.75)),
    }
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "anchors.json").write_text(json.dumps(anchors, indent=2, sort_keys=True) + "\n")
    print(f"wrote anchors.json: {len(anchors)} values")


if __name__ == "__main__":
    gen_faddeeva()
    gen_dawson()
    gen_voigt()
    gen_stable()
    gen_anchors()
