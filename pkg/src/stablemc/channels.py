"""Maps physical timing-channel descriptions to stable noise laws.

Channel kinds:
  A - release-time modulation; propagation noise is the Brownian first
      hitting time, Levy(0, d^2/(2D)).
  B - time between two releases of the same particle type; the noise is the
      difference of two i.i.d. hitting times, S(0, 2 d^2/D, 1/2, 0).
  C - time between releases of two particle types with diffusion
      coefficients D_a (released first) and D_b,
      S(0, d^2 (sqrt(D_a)+sqrt(D_b))^2 / (2 D_a D_b), 1/2,
        (sqrt(D_a)-sqrt(D_b)) / (sqrt(D_a)+sqrt(D_b))).

The composition proofs are executable: verify_cf_composition multiplies the
component hitting-time characteristic functions and compares against the
derived law on a t-grid.

The 1D hitting-time law extends to a 3D spherical absorbing receiver up to
a scaling constant that is not derived here; `scale3d` multiplies the
component Levy scale and is entirely the caller's responsibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stable import StableParams, cf_stable

__all__ = [
    "ChannelConfig",
    "ChannelNoiseModel",
    "noise_model_a",
    "noise_model_b",
    "noise_model_c",
    "noise_model",
    "component_scales",
    "verify_cf_composition",
]


@dataclass(frozen=True)
class ChannelConfig:
    """Physical channel description.

    kind: "A", "B" or "C"; d: transmitter-receiver distance (m);
    D: diffusion coefficient (m^2/s, kinds A and B); D_a, D_b: diffusion
    coefficients of the two particle types (kind C; a released first);
    scale3d: optional user-supplied multiplier on the component Levy scale
    for the 3D spherical-receiver case.
    """

    kind: str
    d: float
    D: float | None = None
    D_a: float | None = None
    D_b: float | None = None
    scale3d: float | None = None

    def __post_init__(self):
        if self.kind not in ("A", "B", "C"):
            raise ValueError(f"ChannelConfig.kind must be A, B or C, got {self.kind!r}")
        if not (isinstance(self.d, (int, float)) and self.d > 0 and math.isfinite(self.d)):
            raise ValueError(f"ChannelConfig.d must be > 0, got {self.d!r}")
        if self.kind in ("A", "B"):
            if self.D is None or not (self.D > 0 and math.isfinite(self.D)):
                raise ValueError(f"ChannelConfig: kind {self.kind} requires D > 0, got {self.D!r}")
        else:
            for name, v in (("D_a", self.D_a), ("D_b", self.D_b)):
                if v is None or not (v > 0 and math.isfinite(v)):
                    raise ValueError(f"ChannelConfig: kind C requires {name} > 0, got {v!r}")
        if self.scale3d is not None and not (self.scale3d > 0 and math.isfinite(self.scale3d)):
            raise ValueError(f"ChannelConfig.scale3d must be > 0, got {self.scale3d!r}")

    @property
    def scale_factor(self) -> float:
        return 1.0 if self.scale3d is None else float(self.scale3d)


@dataclass(frozen=True)
class ChannelNoiseModel:
    """Noise law of a channel: stable parameters plus shape flags."""

    params: StableParams
    symmetric: bool
    support: str  # "nonnegative" | "full_line"

    def __post_init__(self):
        if self.support not in ("nonnegative", "full_line"):
            raise ValueError(f"unknown support {self.support!r}")
        if self.symmetric != (self.params.beta == 0.0):
            raise ValueError("symmetric flag must match beta == 0")
        nonneg = (self.params.alpha == 0.5 and self.params.beta == 1.0
                  and self.params.mu == 0.0)
        if (self.support == "nonnegative") != nonneg:
            raise ValueError("nonnegative support requires (alpha, beta, mu) = (1/2, 1, 0)")


def component_scales(cfg: ChannelConfig) -> tuple[float, ...]:
    """Levy scales of the underlying hitting-time components,
    c_i = d^2/(2 D_i), times any 3D scale factor."""
    s = cfg.scale_factor
    if cfg.kind in ("A", "B"):
        c = s * cfg.d ** 2 / (2.0 * cfg.D)
        return (c,) if cfg.kind == "A" else (c, c)
    c_a = s * cfg.d ** 2 / (2.0 * cfg.D_a)
    c_b = s * cfg.d ** 2 / (2.0 * cfg.D_b)
    return (c_a, c_b)


def noise_model_a(cfg: ChannelConfig) -> ChannelNoiseModel:
    """T_n ~ Levy(0, d^2/(2D)) = S(0, d^2/(2D), 1/2, 1)."""
    if cfg.kind != "A":
        raise ValueError(f"noise_model_a: expected kind A, got {cfg.kind}")
    (c,) = component_scales(cfg)
    return ChannelNoiseModel(params=StableParams(0.0, c, 0.5, 1.0),
                             symmetric=False, support="nonnegative")


def noise_model_b(cfg: ChannelConfig) -> ChannelNoiseModel:
    """L_n = T_2 - T_1 ~ S(0, 2 d^2/D, 1/2, 0); the alpha=1/2 stability rule
    c^(1/2) = c1^(1/2) + c2^(1/2) makes the composed scale 4 d^2/(2D)."""
    if cfg.kind != "B":
        raise ValueError(f"noise_model_b: expected kind B, got {cfg.kind}")
    c1, _ = component_scales(cfg)
    return ChannelNoiseModel(params=StableParams(0.0, 4.0 * c1, 0.5, 0.0),
                             symmetric=True, support="full_line")


def noise_model_c(cfg: ChannelConfig) -> ChannelNoiseModel:
    """Z_n = T_b - T_a with particle a released first.

    beta = (sqrt(D_a) - sqrt(D_b)) / (sqrt(D_a) + sqrt(D_b)): positive when
    a diffuses faster (its hitting time concentrates near zero, skewing the
    difference positive); |beta| < 1 strictly for finite coefficients.
    """
    if cfg.kind != "C":
        raise ValueError(f"noise_model_c: expected kind C, got {cfg.kind}")
    c_a, c_b = component_scales(cfg)
    root = math.sqrt(c_a) + math.sqrt(c_b)
    c = root * root
    beta = (math.sqrt(c_b) - math.sqrt(c_a)) / root
    # in diffusion coefficients: sqrt(c_i) ~ 1/sqrt(D_i), so the sign flips
    # to (sqrt(D_a) - sqrt(D_b)) / (sqrt(D_a) + sqrt(D_b))
    symmetric = beta == 0.0
    return ChannelNoiseModel(params=StableParams(0.0, c, 0.5, beta),
                             symmetric=symmetric, support="full_line")


def noise_model(cfg: ChannelConfig) -> ChannelNoiseModel:
    """Dispatch on the channel kind."""
    return {"A": noise_model_a, "B": noise_model_b, "C": noise_model_c}[cfg.kind](cfg)


def verify_cf_composition(cfg: ChannelConfig, t_grid) -> float:
    """Executable form of the composition proofs for kinds B and C.

    Returns max over the grid of |phi_second(t) phi_first(-t) - phi_law(t)|
    where the components are the Levy hitting-time laws and phi_law is the
    derived stable law.  Algebraically zero; numerically machine epsilon.
    """
    if cfg.kind not in ("B", "C"):
        raise ValueError(f"verify_cf_composition: kind must be B or C, got {cfg.kind}")
    first_c, second_c = component_scales(cfg)
    first = StableParams(0.0, first_c, 0.5, 1.0)
    second = StableParams(0.0, second_c, 0.5, 1.0)
    law = noise_model(cfg).params
    worst = 0.0
    for t in np.asarray(t_grid, dtype=float):
        composed = cf_stable(float(t), second) * cf_stable(-float(t), first)
        direct = cf_stable(float(t), law)
        worst = max(worst, abs(composed - direct))
    return worst
