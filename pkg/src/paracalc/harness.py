"""Seeded verification suites with deterministic JSON reports.

Every case gets its own random substream derived from
``SeedSequence([seed, crc32(suite), case_index])``, so adding cases never
perturbs existing ones and ``check all`` reproduces the per-suite residuals
bit for bit.  Residuals are max-abs over the value components; cases that pin
a *floor* under a witness instead report the deficit ``max(0, floor - value)``
against a zero threshold so that ``pass == residual <= threshold`` holds
uniformly.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Optional

import numpy as np

from . import kernels
from .algebra import (
    Event,
    IDENTITY,
    Paravector,
    act_left,
    act_right,
    conjugate_rotate,
    det,
    inverse,
    mul,
    norm_inf,
    reverse,
)
from .diffops import (
    EXACT,
    Numeric,
    assemble_div,
    assemble_grad,
    additivity_residual,
    box4,
    div4,
    div4_field,
    grad4,
    grad4_field,
    leibniz_residual,
    product_rule_failure_witness,
    scalar_order_gap,
)
from .electromag import (
    PhysConstants,
    PotentialField,
    em_field_from_potential,
    em_from_potential,
    lorenz_gauge_potential,
    plane_wave_potential,
    source_field_from_em,
    sources_from_em,
    wave_residual,
)
from .fields import (
    LeftMulField,
    LinearMap,
    PolynomialField,
    PullbackField,
    ScalarField,
    central_difference,
    null_plane_wave,
    random_event,
    random_field,
    random_orthogonal,
    random_paravector,
    random_plane_wave,
    random_scalar_field,
)
from .transforms import (
    InvarianceForm,
    TransformCase,
    div_left_transport_residual,
    div_right_transport_residual,
    grad_left_transport_residual,
    grad_right_transport_residual,
    observer_rotation_residual,
    right_factor_residuals,
    transformed_field_values,
    transformed_wave_field,
    wave_invariance_residual,
)

__all__ = [
    "ConfigError",
    "SUITE_NAMES",
    "SuiteConfig",
    "CaseReport",
    "SuiteReport",
    "ConvergenceRow",
    "case_rng",
    "run_suite",
    "run_convergence",
    "convergence_ok",
    "report_to_json",
    "PRODUCT_RULE_WITNESS_FLOOR",
    "ORDER_GAP_WITNESS_FLOOR",
]

SUITE_NAMES = ("algebra", "diffop", "transforms", "wave", "maxwell")

# Regression pins from the first verified run of the stored witness inputs;
# the measured values are exactly 2.0.
PRODUCT_RULE_WITNESS_FLOOR = 1.9
ORDER_GAP_WITNESS_FLOOR = 1.9
NONCOMMUTATIVITY_FLOOR = 1.0
VALUE_SPLIT_FLOOR = 1e-3


class ConfigError(ValueError):
    """Invalid suite configuration or command-line arguments."""


@dataclass
class SuiteConfig:
    suite: str
    seed: int = 42
    samples: int = 50
    tol_exact: float = 1e-10
    tol_numeric: float = 1e-5
    h: float = 1e-5
    json: bool = False
    verbose: bool = False

    def __post_init__(self):
        if self.suite not in SUITE_NAMES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.tol_exact <= 0 or self.tol_numeric <= 0 or self.h <= 0:
            raise ConfigError("tolerances and step must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be a natural number")


@dataclass
class CaseReport:
    name: str
    residual: float
    threshold: float
    passed: bool
    components: Optional[np.ndarray] = None


@dataclass
class SuiteReport:
    suite: str
    seed: int
    samples: int
    tol_exact: float
    tol_numeric: float
    h: float
    cases: List[CaseReport] = dc_field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.passed)


def case_rng(seed: int, suite: str, index: int) -> np.random.Generator:
    """Per-case substream: PCG64 seeded from (seed, crc32(suite), case index)."""
    ss = np.random.SeedSequence([seed, zlib.crc32(suite.encode("utf-8")), index])
    return np.random.default_rng(ss)


class Worst:
    """Track the largest residual seen and the components attaining it."""

    def __init__(self):
        self.value = 0.0
        self.components = np.zeros(4, np.complex128)

    def offer(self, diff) -> None:
        diff = np.atleast_1d(np.asarray(diff, dtype=np.complex128))
        m = float(np.max(np.abs(diff)))
        if m >= self.value:
            self.value = m
            self.components = diff

    def offer_rel(self, lhs, rhs) -> None:
        """Scale-guarded relative difference: |lhs-rhs| / max(1, |lhs|, |rhs|)."""
        lhs = np.atleast_1d(np.asarray(lhs, dtype=np.complex128))
        rhs = np.atleast_1d(np.asarray(rhs, dtype=np.complex128))
        denom = max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
        self.offer((lhs - rhs) / denom)

    def floor_deficit(self, value: float, floor: float, components=None) -> None:
        self.offer(np.array([max(0.0, floor - value)], np.complex128))
        if components is not None:
            self.components = np.asarray(components, dtype=np.complex128)


@dataclass(frozen=True)
class Case:
    name: str
    kind: str  # "exact" | "numeric" | "fixed": which tolerance flag scales it
    base_threshold: float
    run: Callable[[np.random.Generator, SuiteConfig], Worst]
    # substream index to share; numeric reruns of an exact case set this so
    # both modes see identical draws
    substream: Optional[int] = None

    def threshold(self, cfg: SuiteConfig) -> float:
        if self.kind == "exact":
            return self.base_threshold * (cfg.tol_exact / 1e-10)
        if self.kind == "numeric":
            return self.base_threshold * (cfg.tol_numeric / 1e-5)
        return self.base_threshold


# ---------------------------------------------------------------------------
# algebra suite
# ---------------------------------------------------------------------------

def _algebra_cases() -> List[Case]:
    def associativity(rng, cfg):
        w = Worst()
        for _ in range(20 * cfg.samples):
            a, b, c = (random_paravector(rng) for _ in range(3))
            w.offer_rel(mul(mul(a, b), c).data, mul(a, mul(b, c)).data)
        return w

    def reversion(rng, cfg):
        w = Worst()
        for _ in range(20 * cfg.samples):
            a, b = random_paravector(rng), random_paravector(rng)
            w.offer_rel(reverse(mul(a, b)).data, mul(reverse(b), reverse(a)).data)
        return w

    def det_mult(rng, cfg):
        w = Worst()
        for _ in range(20 * cfg.samples):
            a, b = random_paravector(rng), random_paravector(rng)
            w.offer_rel([det(mul(a, b))], [det(a) * det(b)])
        return w

    def inverse_identity(rng, cfg):
        w = Worst()
        for _ in range(20 * cfg.samples):
            a = random_paravector(rng)
            w.offer(mul(a, inverse(a)).data - IDENTITY.data)
            w.offer(mul(inverse(a), a).data - IDENTITY.data)
        return w

    def orthogonal_unit(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            lam = random_orthogonal(rng)
            w.offer(mul(lam, reverse(lam)).data - IDENTITY.data)
        return w

    def action_consistency(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            g, x = random_paravector(rng), random_event(rng)
            w.offer(act_left(g, x).data - kernels.pv_mul(g.data, x.data))
            w.offer(act_right(x, g).data - kernels.pv_mul(x.data, g.data))
        return w

    def left_action_expansion(rng, cfg):
        w = Worst()
        got = act_left(Paravector(1.0, (0.0, 0.0, 1.0)), Event(0.0, (1.0, 1.0, 0.0)))
        w.offer(got.data - np.array([0.0, 1.0 - 1.0j, 1.0 + 1.0j, 0.0]))
        pure_time = act_left(Paravector(2.0 + 1.0j, (0.5j, 1.0, -2.0)), Event(1.0))
        w.offer(pure_time.data - np.array([2.0 + 1.0j, 0.5j, 1.0, -2.0]))
        return w

    def right_action_expansion(rng, cfg):
        w = Worst()
        got = act_right(Event(0.0, (1.0, 1.0, 0.0)), Paravector(1.0, (0.0, 0.0, 1.0)))
        w.offer(got.data - np.array([0.0, 1.0 + 1.0j, 1.0 - 1.0j, 0.0]))
        return w

    def noncommutativity(rng, cfg):
        w = Worst()
        a = Paravector(1.0, (1.0, 0.0, 0.0))
        b = Paravector(1.0, (0.0, 1.0, 0.0))
        gap = mul(a, b).data - mul(b, a).data
        w.floor_deficit(float(np.max(np.abs(gap))), NONCOMMUTATIVITY_FLOOR, gap)
        return w

    def rotation_round_trip(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            lam = random_orthogonal(rng)
            x = random_event(rng)
            back = conjugate_rotate(reverse(lam), conjugate_rotate(lam, x))
            w.offer(back.data - x.data)
        return w

    return [
        Case("associativity", "exact", 1e-12, associativity),
        Case("reversion-antiautomorphism", "exact", 1e-12, reversion),
        Case("det-multiplicativity", "exact", 1e-12, det_mult),
        Case("inverse-identity", "exact", 1e-10, inverse_identity),
        Case("orthogonal-unit", "exact", 1e-10, orthogonal_unit),
        Case("action-matches-product", "fixed", 0.0, action_consistency),
        Case("left-action-expansion", "fixed", 0.0, left_action_expansion),
        Case("right-action-expansion", "fixed", 0.0, right_action_expansion),
        Case("noncommutativity-floor-deficit", "fixed", 0.0, noncommutativity),
        Case("rotation-round-trip", "exact", 1e-10, rotation_round_trip),
    ]


# ---------------------------------------------------------------------------
# diffop suite
# ---------------------------------------------------------------------------

def _sample_field(rng, index: int, degree: int = 3, scale: float = 1.0):
    if index % 2 == 0:
        return random_field(rng, degree=degree, scale=scale)
    return random_plane_wave(rng, scale=scale)


def _oracle_div(f, x):
    # Independent assembly of the operator from per-coordinate partials.
    d = np.empty((4, 4), np.complex128)
    for c in range(4):
        d[:, c] = f.partial(c)._value(x)
    out = np.empty(4, np.complex128)
    out[0] = d[0, 0] + d[1, 1] + d[2, 2] + d[3, 3]
    out[1] = d[1, 0] + d[0, 1] + 1j * (d[3, 2] - d[2, 3])
    out[2] = d[2, 0] + d[0, 2] + 1j * (d[1, 3] - d[3, 1])
    out[3] = d[3, 0] + d[0, 3] + 1j * (d[2, 1] - d[1, 2])
    return out


def _oracle_grad(f, x):
    d = np.empty((4, 4), np.complex128)
    for c in range(4):
        d[:, c] = f.partial(c)._value(x)
    out = np.empty(4, np.complex128)
    out[0] = d[0, 0] - (d[1, 1] + d[2, 2] + d[3, 3])
    out[1] = d[1, 0] - d[0, 1] - 1j * (d[3, 2] - d[2, 3])
    out[2] = d[2, 0] - d[0, 2] - 1j * (d[1, 3] - d[3, 1])
    out[3] = d[3, 0] - d[0, 3] - 1j * (d[2, 1] - d[1, 2])
    return out


def _stencil_norm(f, x, h: float) -> float:
    """Max component magnitude of f over the +-h stencil points."""
    m = 0.0
    for c in range(4):
        for sgn in (1.0, -1.0):
            xs = x.copy()
            xs[c] += sgn * h
            m = max(m, float(np.max(np.abs(f._value(xs)))))
    return m


def _diffop_cases() -> List[Case]:
    def assembly_oracle(rng, cfg):
        w = Worst()
        for i in range(2 * cfg.samples):
            f = _sample_field(rng, i)
            x = random_event(rng).data
            w.offer(div4(f, Event.from_data(x)).data - _oracle_div(f, x))
            w.offer(grad4(f, Event.from_data(x)).data - _oracle_grad(f, x))
        return w

    def numeric_agreement(rng, cfg):
        w = Worst()
        for i in range(2 * cfg.samples):
            f = _sample_field(rng, i)
            X = random_event(rng)
            loc = _stencil_norm(f, X.data, cfg.h)
            for c in range(4):
                exact = f.partial(c)._value(X.data)
                num = central_difference(f._value, X.data, c, cfg.h)
                w.offer((num - exact) / (1.0 + loc))
        return w

    def factorization_exact(rng, cfg):
        w = Worst()
        for i in range(cfg.samples):
            f = _sample_field(rng, i)
            X = random_event(rng)
            b = box4(f, X).data
            w.offer_rel(grad4(div4_field(f), X).data, b)
            w.offer_rel(div4(grad4_field(f), X).data, b)
        return w

    def factorization_numeric(rng, cfg):
        w = Worst()
        h = 1e-4
        mode = Numeric(h)
        for i in range(max(1, cfg.samples // 5)):
            f = _sample_field(rng, i)
            X = random_event(rng)
            b = box4(f, X, mode).data

            def div_fn(xd, _f=f):
                dd = np.empty((4, 4), np.complex128)
                for c in range(4):
                    dd[:, c] = central_difference(_f._value, xd, c, h)
                return assemble_div(dd)

            dgrad = np.empty((4, 4), np.complex128)
            for c in range(4):
                dgrad[:, c] = central_difference(div_fn, X.data, c, h)
            w.offer_rel(assemble_grad(dgrad), b)
        return w

    def null_wave_box(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            f = null_plane_wave(rng)
            X = random_event(rng)
            w.offer(box4(f, X).data)
        return w

    def additivity(rng, cfg):
        w = Worst()
        for i in range(2 * cfg.samples):
            f = random_field(rng)
            g = _sample_field(rng, i)
            X = random_event(rng)
            w.offer(additivity_residual(f, g, X).data)
        return w

    def leibniz(rng, cfg):
        w = Worst()
        for i in range(2 * cfg.samples):
            rho = random_scalar_field(rng)
            f = _sample_field(rng, i)
            X = random_event(rng)
            w.offer(leibniz_residual(rho, f, X).data)
        return w

    def product_rule_floor(rng, cfg):
        w = Worst()
        f = PolynomialField.monomial((0, 1, 0, 0), Paravector(0.0, (1.0, 0.0, 0.0)))
        g = PolynomialField.monomial((0, 0, 1, 0), Paravector(0.0, (0.0, 1.0, 0.0)))
        res = product_rule_failure_witness(f, g, Event(0.0, (1.0, 1.0, 1.0)))
        w.floor_deficit(norm_inf(res), PRODUCT_RULE_WITNESS_FLOOR, res.data)
        return w

    def order_gap_floor(rng, cfg):
        w = Worst()
        rho = ScalarField.coordinate("x")
        a = Paravector(0.0, (0.0, 1.0, 0.0))
        res = scalar_order_gap(rho, a, Event(0.0, (1.0, 1.0, 1.0)))
        w.floor_deficit(norm_inf(res), ORDER_GAP_WITNESS_FLOOR, res.data)
        return w

    def convergence_band(rng, cfg):
        w = Worst()
        for i in range(6):
            f = _sample_field(rng, i)
            pts = [random_event(rng).data for _ in range(10)]
            errs = []
            for h in (1e-3, 5e-4):
                worst = 0.0
                for x in pts:
                    for c in range(4):
                        exact = f.partial(c)._value(x)
                        num = central_difference(f._value, x, c, h)
                        worst = max(worst, float(np.max(np.abs(num - exact))))
                errs.append(worst)
            if errs[1] < 1e-12:
                continue
            ratio = errs[0] / errs[1]
            w.offer([max(0.0, 3.2 - ratio, ratio - 4.8)])
        return w

    return [
        Case("assembly-matches-oracle", "fixed", 0.0, assembly_oracle),
        Case("numeric-agreement", "numeric", 1e-7, numeric_agreement),
        Case("factorization-exact", "exact", 1e-12, factorization_exact),
        Case("factorization-numeric", "numeric", 1e-4, factorization_numeric),
        Case("null-plane-wave-box", "exact", 1e-12, null_wave_box),
        Case("additivity", "exact", 1e-12, additivity),
        Case("scalar-product-rule", "exact", 1e-12, leibniz),
        Case("product-rule-failure-floor-deficit", "fixed", 0.0, product_rule_floor),
        Case("ordering-witness-floor-deficit", "fixed", 0.0, order_gap_floor),
        Case("convergence-band-deficit", "fixed", 0.0, convergence_band),
    ]


# ---------------------------------------------------------------------------
# transforms suite
# ---------------------------------------------------------------------------

def _singular_paravector(rng) -> Paravector:
    # [s; s*u] with u.u = 1 has det = 0 exactly.
    s = 1.0 + 0.5j
    return Paravector(s, (s, 0.0, 0.0))


def _transport_case(residual_fn, mode_of):
    def run(rng, cfg):
        w = Worst()
        for i in range(cfg.samples):
            g = random_paravector(rng)
            f = _sample_field(rng, i)
            X = random_event(rng)
            case = TransformCase(g, f, X, mode_of(cfg))
            w.offer(residual_fn(case).data)
        return w

    return run


def _right_factor_case(mode_of, singular: bool):
    def run(rng, cfg):
        w = Worst()
        n = cfg.samples if not singular else max(1, cfg.samples // 5)
        for i in range(n):
            g = _singular_paravector(rng) if singular else random_paravector(rng)
            f = _sample_field(rng, i)
            X = random_event(rng)
            d, gr = right_factor_residuals(f, g, X, mode_of(cfg))
            w.offer(d.data)
            w.offer(gr.data)
        return w

    return run


def _transforms_cases() -> List[Case]:
    exact = lambda cfg: EXACT
    numeric = lambda cfg: Numeric(cfg.h)

    def rotation(rng, cfg):
        w = Worst()
        for i in range(cfg.samples):
            lam = random_orthogonal(rng)
            f = _sample_field(rng, i)
            Xp = conjugate_rotate(lam, random_event(rng))
            w.offer(observer_rotation_residual(f, lam, Xp).data)
        return w

    def group_composition(rng, cfg):
        w = Worst()
        for i in range(cfg.samples):
            g1 = random_paravector(rng)
            g2 = random_paravector(rng)
            f = _sample_field(rng, i)
            inner = PullbackField(LinearMap.left_action(inverse(g1)), f)
            twice = PullbackField(LinearMap.left_action(inverse(g2)), inner)
            once = PullbackField(LinearMap.left_action(inverse(mul(g2, g1))), f)
            X = random_event(rng)
            w.offer_rel(twice._value(X.data), once._value(X.data))
        return w

    cases = [
        Case("div-left-transport-exact", "exact", 1e-10,
             _transport_case(div_left_transport_residual, exact)),
        Case("grad-left-transport-exact", "exact", 1e-10,
             _transport_case(grad_left_transport_residual, exact)),
        Case("div-right-transport-exact", "exact", 1e-10,
             _transport_case(div_right_transport_residual, exact)),
        Case("grad-right-transport-exact", "exact", 1e-10,
             _transport_case(grad_right_transport_residual, exact)),
        Case("right-factor-exact", "exact", 1e-10, _right_factor_case(exact, False)),
        Case("right-factor-singular-exact", "exact", 1e-10,
             _right_factor_case(exact, True)),
        Case("observer-rotation-exact", "exact", 1e-10, rotation),
        Case("pullback-group-composition", "exact", 1e-10, group_composition),
        Case("div-left-transport-numeric", "numeric", 1e-5,
             _transport_case(div_left_transport_residual, numeric), substream=0),
        Case("grad-left-transport-numeric", "numeric", 1e-5,
             _transport_case(grad_left_transport_residual, numeric), substream=1),
        Case("div-right-transport-numeric", "numeric", 1e-5,
             _transport_case(div_right_transport_residual, numeric), substream=2),
        Case("grad-right-transport-numeric", "numeric", 1e-5,
             _transport_case(grad_right_transport_residual, numeric), substream=3),
        Case("right-factor-numeric", "numeric", 1e-5,
             _right_factor_case(numeric, False), substream=4),
    ]
    return cases


# ---------------------------------------------------------------------------
# wave suite
# ---------------------------------------------------------------------------

def _wave_form_case(form: InvarianceForm):
    def run(rng, cfg):
        w = Worst()
        for i in range(cfg.samples):
            lam = random_orthogonal(rng)
            f = random_field(rng)
            X = random_event(rng)
            if form in (InvarianceForm.FORM1, InvarianceForm.FORM2):
                Xp = act_right(X, lam)
            else:
                Xp = act_left(lam, X)
            w.offer(wave_invariance_residual(form, f, lam, Xp).data)
        return w

    return run


def _wave_cases() -> List[Case]:
    def value_split(rng, cfg):
        w = Worst()
        best = 0.0
        best_gap = np.zeros(4, np.complex128)
        for i in range(10):
            lam = random_orthogonal(rng)
            if float(np.max(np.abs(lam.v))) < 0.1:
                continue  # scalar-like draws do not witness the split
            f = random_field(rng)
            Xp = random_event(rng)
            vals = transformed_field_values(f, lam, Xp)
            gap = vals.covariant.data - vals.contravariant.data
            m = float(np.max(np.abs(gap)))
            if m > best:
                best, best_gap = m, gap
        w.floor_deficit(best, VALUE_SPLIT_FLOOR, best_gap)
        return w

    def structure(rng, cfg):
        w = Worst()
        lam = random_orthogonal(rng)
        f = random_field(rng)
        ok = True
        for form, untouched in (
            (InvarianceForm.FORM1, True),
            (InvarianceForm.FORM2, False),
            (InvarianceForm.FORM3, False),
            (InvarianceForm.FORM4, True),
        ):
            moved = transformed_wave_field(form, f, lam)
            if untouched:
                ok &= isinstance(moved, PullbackField) and moved.inner is f
            else:
                ok &= (
                    isinstance(moved, LeftMulField)
                    and isinstance(moved.inner, PullbackField)
                    and moved.inner.inner is f
                )
        ok &= transformed_wave_field(InvarianceForm.FORM2, f, lam).factor == reverse(lam)
        ok &= transformed_wave_field(InvarianceForm.FORM3, f, lam).factor == lam
        w.offer([0.0 if ok else 1.0])
        return w

    return [
        Case("form1-right-invariant", "exact", 1e-9, _wave_form_case(InvarianceForm.FORM1)),
        Case("form2-right-contravariant", "exact", 1e-9, _wave_form_case(InvarianceForm.FORM2)),
        Case("form3-left-covariant", "exact", 1e-9, _wave_form_case(InvarianceForm.FORM3)),
        Case("form4-left-invariant", "exact", 1e-9, _wave_form_case(InvarianceForm.FORM4)),
        Case("covariant-contravariant-split-deficit", "fixed", 0.0, value_split),
        Case("form-value-structure", "fixed", 0.0, structure),
    ]


# ---------------------------------------------------------------------------
# maxwell suite
# ---------------------------------------------------------------------------

def _maxwell_event(rng) -> Event:
    r = rng.uniform(-2.0, 2.0, size=3)
    t = complex(rng.uniform(-2.0, 2.0), rng.uniform(-0.1, 0.1))
    return Event(t, r)


def _random_wave_potential(rng, k: PhysConstants):
    kvec = rng.uniform(-1.0, 1.0, size=3)
    while np.linalg.norm(kvec) < 0.3:
        kvec = rng.uniform(-1.0, 1.0, size=3)
    raw = rng.uniform(-1.0, 1.0, size=3)
    pol = raw - (raw @ kvec) / (kvec @ kvec) * kvec
    while np.linalg.norm(pol) < 0.2:
        raw = rng.uniform(-1.0, 1.0, size=3)
        pol = raw - (raw @ kvec) / (kvec @ kvec) * kvec
    amp = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
    return plane_wave_potential(kvec, pol, amp, k)


def _plane_wave_case(constants: PhysConstants, field: str):
    def run(rng, cfg):
        w = Worst()
        for _ in range(2 * cfg.samples):
            pot = _random_wave_potential(rng, constants)
            X = _maxwell_event(rng)
            if field == "gauge":
                w.offer([em_from_potential(pot, X, constants).scalar])
            else:
                emf = em_field_from_potential(pot, constants)
                src = sources_from_em(emf, X, constants)
                w.offer(np.concatenate([[src.rho_over_eps], src.j_term]))
        return w

    return run


def _maxwell_cases() -> List[Case]:
    k1 = PhysConstants()
    k2 = PhysConstants(c=2.0)

    def polynomial_gauge(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            pot = lorenz_gauge_potential(rng)
            X = _maxwell_event(rng)
            w.offer([em_from_potential(pot, X, k1).scalar])
        return w

    def factorization_chain(rng, cfg):
        w = Worst()
        for _ in range(cfg.samples):
            pot = lorenz_gauge_potential(rng)
            src = source_field_from_em(em_field_from_potential(pot, k1))
            X = _maxwell_event(rng)
            w.offer(wave_residual(pot, src, X, k1).data)
        return w

    def gauss_slice(rng, cfg):
        w = Worst()
        h = 1e-5
        for _ in range(cfg.samples):
            phi = random_scalar_field(rng, degree=3, scale=1.0)
            phi = ScalarField(phi.exps, phi.coeffs.real.astype(np.complex128))
            phi = ScalarField(  # spatial only: drop time dependence
                phi.exps[phi.exps[:, 0] == 0], phi.coeffs[phi.exps[:, 0] == 0]
            )
            pot = PotentialField(
                PolynomialField(
                    phi.exps,
                    np.concatenate(
                        [phi.coeffs[:, None], np.zeros((len(phi.coeffs), 3))], axis=1
                    ),
                )
            )
            X = Event(0.0, rng.uniform(-2.0, 2.0, size=3))
            src = sources_from_em(
                em_field_from_potential(pot, k1), X, k1, Numeric(h)
            )

            def e_component(xd, c):
                # exact E values routed through the point operator, so the
                # only numerics in the oracle are the three differences below
                val = em_from_potential(pot, Event.from_data(xd), k1)
                return val.F[c - 1].real

            div_e = 0.0
            for c in (1, 2, 3):
                xp = X.data.copy()
                xp[c] += h
                xm = X.data.copy()
                xm[c] -= h
                div_e += (e_component(xp, c) - e_component(xm, c)) / (2.0 * h)
            w.offer([src.rho_over_eps.real - div_e])
        return w

    def static_gradient(rng, cfg):
        w = Worst()
        pot = PotentialField(
            PolynomialField.monomial((0, 1, 0, 0), Paravector(1.0))
        )
        val = em_from_potential(pot, Event(0.3, (0.7, -1.1, 0.4)), k1)
        w.offer(np.concatenate([[val.scalar], val.F - np.array([-1.0, 0.0, 0.0])]))
        return w

    return [
        Case("plane-wave-gauge-scalar", "exact", 1e-12, _plane_wave_case(k1, "gauge")),
        Case("plane-wave-sources", "exact", 1e-10, _plane_wave_case(k1, "sources")),
        Case("polynomial-gauge-scalar", "exact", 1e-12, polynomial_gauge),
        Case("factorization-chain", "exact", 1e-9, factorization_chain),
        Case("gauss-law-slice", "numeric", 1e-6, gauss_slice),
        Case("c2-plane-wave-gauge-scalar", "exact", 1e-12, _plane_wave_case(k2, "gauge")),
        Case("c2-plane-wave-sources", "exact", 1e-10, _plane_wave_case(k2, "sources")),
        Case("static-gradient-value", "fixed", 0.0, static_gradient),
    ]


_SUITE_BUILDERS = {
    "algebra": _algebra_cases,
    "diffop": _diffop_cases,
    "transforms": _transforms_cases,
    "wave": _wave_cases,
    "maxwell": _maxwell_cases,
}


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run the selected suite (or all, in the fixed order) deterministically."""
    names = SUITE_NAMES if cfg.suite == "all" else (cfg.suite,)
    report = SuiteReport(
        suite=cfg.suite,
        seed=cfg.seed,
        samples=cfg.samples,
        tol_exact=cfg.tol_exact,
        tol_numeric=cfg.tol_numeric,
        h=cfg.h,
    )
    for sname in names:
        for idx, case in enumerate(_SUITE_BUILDERS[sname]()):
            sub = idx if case.substream is None else case.substream
            rng = case_rng(cfg.seed, sname, sub)
            worst = case.run(rng, cfg)
            thr = case.threshold(cfg)
            report.cases.append(
                CaseReport(
                    name=f"{sname}/{case.name}",
                    residual=worst.value,
                    threshold=thr,
                    passed=worst.value <= thr,
                    components=worst.components,
                )
            )
    return report


def report_to_json(rep: SuiteReport, verbose: bool = False) -> str:
    """Schema-fixed, newline-terminated JSON; byte-identical for equal inputs."""
    cases = []
    for c in rep.cases:
        entry = {
            "name": c.name,
            "residual": float(c.residual),
            "threshold": float(c.threshold),
            "pass": bool(c.passed),
        }
        if verbose and c.components is not None:
            entry["components"] = [
                [float(z.real), float(z.imag)] for z in np.atleast_1d(c.components)
            ]
        cases.append(entry)
    obj = {
        "suite": rep.suite,
        "seed": rep.seed,
        "samples": rep.samples,
        "tolerances": {
            "exact": float(rep.tol_exact),
            "numeric": float(rep.tol_numeric),
            "step": float(rep.h),
        },
        "cases": cases,
        "passed": rep.passed,
        "failed": rep.failed,
    }
    return json.dumps(obj) + "\n"


# ---------------------------------------------------------------------------
# convergence tables
# ---------------------------------------------------------------------------

@dataclass
class ConvergenceRow:
    h: float
    max_error: float
    ratio: Optional[float]  # error(h_i)/error(h_{i+1}); None below the noise floor


def run_convergence(field_kind: str, steps, seed: int = 42, fields=None) -> List[ConvergenceRow]:
    """Max numeric-vs-exact derivative error per step, with step-to-step ratios.

    ``fields`` overrides the default seeded draws (three fields of the chosen
    kind); ratios are reported as not-applicable below the 1e-12 noise floor.
    """
    if field_kind not in ("poly", "planewave"):
        raise ConfigError(f"unknown field kind {field_kind!r}")
    steps = [float(s) for s in steps]
    if len(steps) < 2:
        raise ConfigError("need at least two steps")
    if any(s <= 0 for s in steps) or any(
        a <= b for a, b in zip(steps, steps[1:])
    ):
        raise ConfigError("steps must be positive and strictly decreasing")
    rng = case_rng(seed, "convergence", 0)
    if fields is None:
        fields = []
        for i in range(3):
            if field_kind == "poly":
                fields.append(random_field(rng))
            else:
                fields.append(random_plane_wave(rng))
    points = [random_event(rng).data for _ in range(20)]
    errors = []
    for h in steps:
        worst = 0.0
        for f in fields:
            for x in points:
                for c in range(4):
                    exact = f.partial(c)._value(x)
                    num = central_difference(f._value, x, c, h)
                    worst = max(worst, float(np.max(np.abs(num - exact))))
        errors.append(worst)
    rows = []
    for i, h in enumerate(steps):
        ratio = None
        if i + 1 < len(steps) and errors[i] >= 1e-12 and errors[i + 1] >= 1e-12:
            ratio = errors[i] / errors[i + 1]
        rows.append(ConvergenceRow(h=h, max_error=errors[i], ratio=ratio))
    return rows


def convergence_ok(rows: List[ConvergenceRow]) -> bool:
    """Each defined ratio must sit within 20% of the second-order prediction."""
    for cur, nxt in zip(rows, rows[1:]):
        if cur.ratio is None:
            continue
        predicted = (cur.h / nxt.h) ** 2
        if not 0.8 * predicted <= cur.ratio <= 1.2 * predicted:
            return False
    return True
