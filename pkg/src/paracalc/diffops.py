"""The space-time operators: 4-divergence, 4-gradient, and the wave operator.

Acting on a field A = [phi; Phi]:

    div4  A = [ dphi/dt + div Phi ; dPhi/dt + grad phi + i curl Phi ]
    grad4 A = [ dphi/dt - div Phi ; dPhi/dt - grad phi - i curl Phi ]
    box4  A = (d^2/dt^2 - laplacian) A   componentwise

Each operator runs in exact mode (closed-form partials of the field tree) or
numeric mode (central differences with a caller-chosen step).  The module also
provides the additivity and scalar-product-rule residuals and the two
documented failure witnesses of the product rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels
from .algebra import BASIS, Event, Paravector
from .fields import (
    Field,
    LeftMulField,
    ScalarField,
    ScalarScaledField,
    central_difference,
    sum_fields,
)

__all__ = [
    "Exact",
    "Numeric",
    "DiffMode",
    "EXACT",
    "bundle",
    "assemble_div",
    "assemble_grad",
    "div4",
    "grad4",
    "box4",
    "div4_field",
    "grad4_field",
    "additivity_residual",
    "grad_paravector",
    "leibniz_residual",
    "product_rule_failure_witness",
    "scalar_order_gap",
]


@dataclass(frozen=True)
class Exact:
    """Differentiate through the closed-form field derivatives."""


@dataclass(frozen=True)
class Numeric:
    """Differentiate by central differences with step h > 0."""

    h: float

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("step h must be positive")


DiffMode = Union[Exact, Numeric]

EXACT = Exact()


def bundle(f: Field, X: Event, mode: DiffMode) -> np.ndarray:
    """All 16 first partials at X: d[component, coordinate], complex128.

    Rows are (phi, Phi_x, Phi_y, Phi_z); columns are (t, x, y, z).
    """
    d = np.empty((4, 4), np.complex128)
    x = X.data
    if isinstance(mode, Exact):
        for c in range(4):
            d[:, c] = f.partial(c)._value(x)
    else:
        for c in range(4):
            d[:, c] = central_difference(f._value, x, c, mode.h)
    return d


def assemble_div(d: np.ndarray) -> np.ndarray:
    """Combine a bundle into the 4-divergence value: [dt phi + div ; ...]."""
    out = np.empty(4, np.complex128)
    out[0] = d[0, 0] + d[1, 1] + d[2, 2] + d[3, 3]
    out[1] = d[1, 0] + d[0, 1] + 1j * (d[3, 2] - d[2, 3])
    out[2] = d[2, 0] + d[0, 2] + 1j * (d[1, 3] - d[3, 1])
    out[3] = d[3, 0] + d[0, 3] + 1j * (d[2, 1] - d[1, 2])
    return out


def assemble_grad(d: np.ndarray) -> np.ndarray:
    """Combine a bundle into the 4-gradient value (nabla terms negated)."""
    out = np.empty(4, np.complex128)
    out[0] = d[0, 0] - (d[1, 1] + d[2, 2] + d[3, 3])
    out[1] = d[1, 0] - d[0, 1] - 1j * (d[3, 2] - d[2, 3])
    out[2] = d[2, 0] - d[0, 2] - 1j * (d[1, 3] - d[3, 1])
    out[3] = d[3, 0] - d[0, 3] - 1j * (d[2, 1] - d[1, 2])
    return out


def div4(f: Field, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """4-divergence of the field at X."""
    return Paravector.from_data(assemble_div(bundle(f, X, mode)))


def grad4(f: Field, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """4-gradient (the reversed operator: every nabla term enters negated)."""
    return Paravector.from_data(assemble_grad(bundle(f, X, mode)))


def _second_partials(f: Field, X: Event, mode: DiffMode) -> np.ndarray:
    """d2[component, coordinate]: repeated partial along each coordinate."""
    d2 = np.empty((4, 4), np.complex128)
    x = X.data
    if isinstance(mode, Exact):
        for c in range(4):
            d2[:, c] = f.partial(c).partial(c)._value(x)
    else:
        h = mode.h
        for c in range(4):
            def once(xd, _c=c):
                return central_difference(f._value, xd, _c, h)

            d2[:, c] = central_difference(once, x, c, h)
    return d2


def box4(f: Field, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """Componentwise wave operator; numeric mode nests the same-step differences."""
    d2 = _second_partials(f, X, mode)
    return Paravector.from_data(d2[:, 0] - d2[:, 1] - d2[:, 2] - d2[:, 3])


# -- operators as field constructions ----------------------------------------
#
# Summing E_k * (d_k A) over the unit paravectors E_k reproduces the operator
# value at every point, which keeps the result inside the exact families.

_NEG_SPATIAL = (
    Paravector(0.0, (-1.0, 0.0, 0.0)),
    Paravector(0.0, (0.0, -1.0, 0.0)),
    Paravector(0.0, (0.0, 0.0, -1.0)),
)


def div4_field(f: Field) -> Field:
    return sum_fields(*(LeftMulField(BASIS[c], f.partial(c)) for c in range(4)))


def grad4_field(f: Field) -> Field:
    parts = [LeftMulField(BASIS[0], f.partial(0))]
    parts += [LeftMulField(_NEG_SPATIAL[c - 1], f.partial(c)) for c in range(1, 4)]
    return sum_fields(*parts)


# -- residuals ----------------------------------------------------------------

def additivity_residual(f: Field, g: Field, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """div4(f + g) - div4(f) - div4(g); zero for analytic additive fields."""
    both = div4(sum_fields(f, g), X, mode)
    return Paravector.from_data(both.data - div4(f, X, mode).data - div4(g, X, mode).data)


def grad_paravector(rho: ScalarField, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """Materialize (d rho) = [drho/dt ; grad rho] as a paravector value."""
    x = X.data
    out = np.empty(4, np.complex128)
    if isinstance(mode, Exact):
        for c in range(4):
            out[c] = rho.partial(c).value_raw(x)
    else:
        for c in range(4):
            out[c] = central_difference(rho.value_raw, x, c, mode.h)
    return Paravector.from_data(out)


def leibniz_residual(rho: ScalarField, f: Field, X: Event, mode: DiffMode = EXACT) -> Paravector:
    """div4[rho f] - (d rho) f - rho div4(f); the scalar product rule holds, so ~0.

    The (d rho) factor multiplies on the left, which is the only order for
    which the rule is valid; see scalar_order_gap.
    """
    lhs = div4(ScalarScaledField(rho, f), X, mode)
    drho = grad_paravector(rho, X, mode)
    fv = f._value(X.data)
    rv = rho.value_raw(X.data)
    rhs = kernels.pv_mul(drho.data, fv) + rv * div4(f, X, mode).data
    return Paravector.from_data(lhs.data - rhs)


def product_rule_failure_witness(f: Field, g: Field, X: Event) -> Paravector:
    """div4[f g] - (div4 f) g - f (div4 g) with pointwise paravector products.

    Unlike the scalar case this residual is generically nonzero; the suites pin
    a floor under a stored witness pair rather than a tolerance above it.
    div4[f g] is computed from the componentwise (complex-bilinear) product
    rule, which does hold per coordinate partial.
    """
    x = X.data
    fv = f._value(x)
    gv = g._value(x)
    d = np.empty((4, 4), np.complex128)
    for c in range(4):
        dfc = f.partial(c)._value(x)
        dgc = g.partial(c)._value(x)
        d[:, c] = kernels.pv_mul(dfc, gv) + kernels.pv_mul(fv, dgc)
    lhs = assemble_div(d)
    rhs = kernels.pv_mul(div4(f, X).data, gv) + kernels.pv_mul(fv, div4(g, X).data)
    return Paravector.from_data(lhs - rhs)


def scalar_order_gap(rho: ScalarField, a: Paravector, X: Event) -> Paravector:
    """(d rho) A - A (d rho): the cost of reordering the scalar product rule."""
    drho = grad_paravector(rho, X)
    return Paravector.from_data(
        kernels.pv_mul(drho.data, a.data) - kernels.pv_mul(a.data, drho.data)
    )
