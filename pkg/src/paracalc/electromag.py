"""Electromagnetic embedding: potentials -> field paravector -> sources.

With the c-scaled operators (time derivative divided by c):

    (0; E + icB)        = [d/c dt; -grad] (phi; -cA)
    (1/eps0)(rho; -j/c) = [d/c dt;  grad] (0; E + icB)

and chaining the two gives the c-scaled wave system for the potential.

The c-scaling reuses the generic operators on a time-rescaled pullback: with
tau = c t, a field g(tau, r) = f(tau/c, r) satisfies d g/d tau = (1/c) df/dt,
so evaluating div4/grad4/box4 of g at (c t, r) applies the c-scaled operator
to f at (t, r).  Potential fields are functions of the physical event (t, r);
electromagnetic-field and source *fields* returned by this module live on the
rescaled (tau, r) domain and are evaluated through the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Event, Paravector
from .diffops import DiffMode, EXACT, box4, div4, div4_field, grad4, grad4_field
from .fields import (
    Field,
    LinearMap,
    PlaneWaveField,
    PolynomialField,
    PullbackField,
    ScalarField,
    as_rng,
    random_scalar_field,
)

__all__ = [
    "PhysConstants",
    "NonTransverse",
    "ZeroWaveVector",
    "PotentialField",
    "EMValue",
    "SourceValue",
    "em_from_potential",
    "em_field_from_potential",
    "sources_from_em",
    "source_field_from_em",
    "wave_residual",
    "plane_wave_potential",
    "lorenz_gauge_potential",
]


@dataclass(frozen=True)
class PhysConstants:
    """Speed of light and vacuum permittivity; both default to 1."""

    c: float = 1.0
    eps0: float = 1.0

    def __post_init__(self):
        if self.c <= 0 or self.eps0 <= 0:
            raise ValueError("physical constants must be positive")


class NonTransverse(ValueError):
    """Plane-wave polarization is not orthogonal to the wave vector."""


class ZeroWaveVector(ValueError):
    """Plane waves need a nonzero wave vector."""


@dataclass(frozen=True)
class PotentialField:
    """A field over physical (t, r) whose value reads as (phi; -cA)."""

    f: Field


@dataclass(frozen=True)
class EMValue:
    """Gauge diagnostic (should be ~0 in Lorenz gauge) and F = E + icB."""

    scalar: complex
    F: np.ndarray


@dataclass(frozen=True)
class SourceValue:
    """rho/eps0 and -j/(c eps0), as produced by the c-scaled 4-divergence."""

    rho_over_eps: complex
    j_term: np.ndarray

    def rho(self, k: PhysConstants) -> complex:
        return self.rho_over_eps * k.eps0

    def current(self, k: PhysConstants) -> np.ndarray:
        return -self.j_term * (k.c * k.eps0)


def _tau_event(X: Event, c: float) -> Event:
    if c == 1.0:
        return X
    data = X.data.copy()
    data[0] *= c
    return Event.from_data(data)


def _time_scaled(f: Field, c: float) -> Field:
    if c == 1.0:
        return f
    return PullbackField(LinearMap.diagonal((1.0 / c, 1.0, 1.0, 1.0)), f)


def em_from_potential(
    pot: PotentialField, X: Event, k: PhysConstants = PhysConstants(), mode: DiffMode = EXACT
) -> EMValue:
    """c-scaled 4-gradient of the potential value at X.

    The scalar part is the Lorenz-gauge diagnostic (reported, never raised);
    the vector part is E + icB.
    """
    g = grad4(_time_scaled(pot.f, k.c), _tau_event(X, k.c), mode)
    return EMValue(scalar=g.s, F=g.v)


def em_field_from_potential(pot: PotentialField, k: PhysConstants = PhysConstants()) -> Field:
    """The electromagnetic field as a field on the rescaled (tau, r) domain."""
    return grad4_field(_time_scaled(pot.f, k.c))


def sources_from_em(
    emf: Field, X: Event, k: PhysConstants = PhysConstants(), mode: DiffMode = EXACT
) -> SourceValue:
    """c-scaled 4-divergence of a (0; E+icB)-valued field at the physical X."""
    d = div4(emf, _tau_event(X, k.c), mode)
    return SourceValue(rho_over_eps=d.s, j_term=d.v)


def source_field_from_em(emf: Field) -> Field:
    """Source paravector (rho/eps0; -j/(c eps0)) as a (tau, r)-domain field."""
    return div4_field(emf)


def wave_residual(
    pot: PotentialField,
    src: Field,
    X: Event,
    k: PhysConstants = PhysConstants(),
    mode: DiffMode = EXACT,
) -> Paravector:
    """(d^2/c^2 dt^2 - laplacian)(phi; -cA) minus the source value at X.

    ``src`` is a (tau, r)-domain field, e.g. the output of
    source_field_from_em, or the zero field for vacuum configurations.
    """
    tau = _tau_event(X, k.c)
    b = box4(_time_scaled(pot.f, k.c), tau, mode)
    return Paravector.from_data(b.data - src._value(tau.data))


def plane_wave_potential(
    kvec, pol, amp=1.0, k: PhysConstants = PhysConstants()
) -> PotentialField:
    """Vacuum plane-wave potential: phi = 0, A = amp * pol * exp(i(w t - kvec.r)).

    w = c sqrt(kvec.kvec) (principal branch), so the rescaled phase is null and
    the Lorenz gauge holds by transversality.  Raises NonTransverse when
    pol . kvec != 0 (bilinear dot, checked to 1e-12) and ZeroWaveVector when
    kvec vanishes.
    """
    kv = np.asarray(kvec, dtype=np.complex128)
    pv = np.asarray(pol, dtype=np.complex128)
    if kv.shape != (3,) or pv.shape != (3,):
        raise ValueError("kvec and pol must have 3 components")
    if np.all(kv == 0):
        raise ZeroWaveVector("wave vector must be nonzero")
    if abs(kv @ pv) > 1e-12:
        raise NonTransverse(f"pol . kvec = {kv @ pv!r} is not zero")
    omega = k.c * np.sqrt(np.complex128(kv @ kv))
    amplitude = Paravector(0.0, -k.c * np.complex128(amp) * pv)
    field = PlaneWaveField(1j * omega, -1j * kv, amplitude)
    return PotentialField(field)


def lorenz_gauge_potential(
    seed, degree: int = 3, scale: float = 1.0, k: PhysConstants = PhysConstants()
) -> PotentialField:
    """Random polynomial potential constructed to satisfy the Lorenz gauge.

    The vector part W = -cA is drawn at random and the scalar part is the
    t-antiderivative phi = c * int (div W) dt, which zeroes the gauge scalar
    of the c-scaled 4-gradient identically.
    """
    rng = as_rng(seed)
    w = [random_scalar_field(rng, degree=degree, scale=scale) for _ in range(3)]
    div_w = w[0].partial(1) + w[1].partial(2) + w[2].partial(3)
    phi = ScalarField(div_w.exps, k.c * div_w.coeffs).antiderivative(0)
    comps = [phi, *w]
    exps = np.concatenate([c.exps for c in comps])
    coeffs = np.zeros((exps.shape[0], 4), np.complex128)
    row = 0
    for col, comp in enumerate(comps):
        n = comp.exps.shape[0]
        coeffs[row : row + n, col] = comp.coeffs
        row += n
    return PotentialField(PolynomialField(exps, coeffs))
