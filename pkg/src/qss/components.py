"""Gaussian optical elements and measurement / feed-forward primitives.

Sign convention for every beam splitter:

    c = sqrt(R) a + sqrt(1-R) b
    d = sqrt(1-R) a - sqrt(R) b

All interference phase choices are expressed through explicit
:func:`phase_shift` calls on the inputs, so noise-cancellation sign
errors stay testable.  An "x:y" splitter has reflectivity x/(x+y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modes import (
    MINUS,
    PLUS,
    ClassicalSignal,
    QuadratureMode,
    classical_axis,
    linear_combine,
    new_vacuum,
)


@dataclass(frozen=True)
class BeamSplitterSpec:
    reflectivity: float

    def __post_init__(self):
        if not 0.0 <= self.reflectivity <= 1.0:
            raise ValueError(f"reflectivity must be in [0, 1], got {self.reflectivity}")

    @classmethod
    def from_ratio(cls, x: float, y: float) -> "BeamSplitterSpec":
        return cls(x / (x + y))


@dataclass(frozen=True)
class DetectorSpec:
    efficiency: float = 1.0
    dark_noise_variance: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"detector efficiency must be in (0, 1], got {self.efficiency}")
        if self.dark_noise_variance < 0.0:
            raise ValueError("dark noise variance must be >= 0")


IDEAL_DETECTOR = DetectorSpec()


def beam_splitter(a: QuadratureMode, b: QuadratureMode, reflectivity: float):
    if not 0.0 <= reflectivity <= 1.0:
        raise ValueError(f"reflectivity must be in [0, 1], got {reflectivity}")
    r = math.sqrt(reflectivity)
    t = math.sqrt(1.0 - reflectivity)
    c = linear_combine([(r, r, a), (t, t, b)])
    d = linear_combine([(t, t, a), (-r, -r, b)])
    return c, d


def phase_shift(mode: QuadratureMode, phi: float) -> QuadratureMode:
    """Rotate the quadratures: X+' = cos(phi) X+ - sin(phi) X-."""
    mode.require_live()
    c, s = math.cos(phi), math.sin(phi)
    coeff_p: dict[int, float] = {}
    coeff_m: dict[int, float] = {}
    for aid, v in mode.coeff_plus.items():
        coeff_p[aid] = coeff_p.get(aid, 0.0) + c * v
        coeff_m[aid] = coeff_m.get(aid, 0.0) + s * v
    for aid, v in mode.coeff_minus.items():
        coeff_p[aid] = coeff_p.get(aid, 0.0) - s * v
        coeff_m[aid] = coeff_m.get(aid, 0.0) + c * v
    coeff_p = {a: v for a, v in coeff_p.items() if v != 0.0}
    coeff_m = {a: v for a, v in coeff_m.items() if v != 0.0}
    return QuadratureMode(
        c * mode.mean_plus - s * mode.mean_minus,
        s * mode.mean_plus + c * mode.mean_minus,
        coeff_p,
        coeff_m,
        dict(mode.axes),
    )


def epr_pair(sqz1: QuadratureMode, sqz2: QuadratureMode):
    """Entangled pair from two squeezed beams on a 1:1 beam splitter.

    Canonical orientation: sqz1 squeezed on X-, sqz2 squeezed on X+.
    Other orientations are reachable by phase-shifting the inputs.
    """
    return beam_splitter(sqz1, sqz2, 0.5)


def phase_insensitive_amp(mode: QuadratureMode, idler: QuadratureMode, gain: float) -> QuadratureMode:
    """X+ -> sqrt(G) X+ - sqrt(G-1) X+_idler, X- -> sqrt(G) X- + sqrt(G-1) X-_idler."""
    if gain < 1.0:
        raise ValueError(f"phase-insensitive gain must be >= 1, got {gain}")
    g = math.sqrt(gain)
    h = math.sqrt(gain - 1.0)
    return linear_combine([(g, g, mode), (-h, h, idler)])


def phase_sensitive_amp(mode: QuadratureMode, gain: float) -> QuadratureMode:
    """Noiseless amplification: X+ -> sqrt(G) X+, X- -> X-/sqrt(G)."""
    if gain <= 0.0:
        raise ValueError(f"phase-sensitive gain must be > 0, got {gain}")
    g = math.sqrt(gain)
    return linear_combine([(g, 1.0 / g, mode)])


def loss(mode: QuadratureMode, eta: float, label: str = "loss") -> QuadratureMode:
    """Beam-splitter model of loss: sqrt(eta) mode + sqrt(1-eta) vacuum."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency must be in [0, 1], got {eta}")
    if eta == 1.0:
        mode.require_live()
        return mode
    out, _ = beam_splitter(mode, new_vacuum(label), eta)
    return out


def homodyne(mode: QuadratureMode, quadrature: str, det: DetectorSpec = IDEAL_DETECTOR) -> ClassicalSignal:
    """Measure one quadrature; the mode is destroyed and may not be reused.

    Detector inefficiency admixes vacuum; dark noise enters as a
    classical axis on the photocurrent, not on any optical mode.
    """
    mode.require_live()
    mode.consumed = True
    eta = det.efficiency
    sig = ClassicalSignal(
        math.sqrt(eta) * mode.mean(quadrature),
        {aid: math.sqrt(eta) * c for aid, c in mode.coeffs(quadrature).items()},
        dict(mode.axes),
    )
    if eta < 1.0:
        vac = new_vacuum("hd_vac")
        sig.axes.update(vac.axes)
        for aid, c in vac.coeffs(quadrature).items():
            sig.coeffs[aid] = sig.coeffs.get(aid, 0.0) + math.sqrt(1.0 - eta) * c
    if det.dark_noise_variance > 0.0:
        dark = classical_axis(det.dark_noise_variance, "dark")
        sig.axes[dark.id] = dark
        sig.coeffs[dark.id] = 1.0
    return sig


def displace(target: QuadratureMode, quadrature: str, signal: ClassicalSignal, gain: float) -> QuadratureMode:
    """Add ``gain * signal`` (mean and fluctuations) to one quadrature."""
    target.require_live()
    coeff_p = dict(target.coeff_plus)
    coeff_m = dict(target.coeff_minus)
    mean_p, mean_m = target.mean_plus, target.mean_minus
    coeffs = coeff_p if quadrature == PLUS else coeff_m
    for aid, c in signal.coeffs.items():
        v = coeffs.get(aid, 0.0) + gain * c
        if v == 0.0:
            coeffs.pop(aid, None)
        else:
            coeffs[aid] = v
    if quadrature == PLUS:
        mean_p += gain * signal.mean
    else:
        mean_m += gain * signal.mean
    axes = dict(target.axes)
    axes.update(signal.axes)
    return QuadratureMode(mean_p, mean_m, coeff_p, coeff_m, axes)


def lo_displace(
    target: QuadratureMode,
    quadrature: str,
    signal: ClassicalSignal,
    gain: float,
    mirror_reflectivity: float,
    aux_eta: float = 1.0,
) -> QuadratureMode:
    """Displacement via a modulated local oscillator on a highly
    reflective mirror.

    The target passes a beam splitter of reflectivity ``mirror_reflectivity``
    against an auxiliary vacuum carrying ``gain * signal`` on the chosen
    quadrature, so the carried state keeps amplitude sqrt(R) and picks up
    a 1-R vacuum admixture.  ``aux_eta`` models mode mismatch between the
    local oscillator and the target beam.
    """
    if not 0.0 < mirror_reflectivity < 1.0:
        raise ValueError(f"mirror reflectivity must be in (0, 1), got {mirror_reflectivity}")
    aux = displace(new_vacuum("lo"), quadrature, signal, gain)
    if aux_eta < 1.0:
        aux = loss(aux, aux_eta, "lo_mm")
    out, _ = beam_splitter(target, aux, mirror_reflectivity)
    return out
