"""Self-check suites run by ``kled verify``.

Each suite returns a :class:`SuiteResult` holding one :class:`Check` per
probed identity, so callers can print a summary or serialize it as JSON.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction as F

import numpy as np
from scipy import optimize
from scipy.special import gammaln

from . import tables
from .divergence import bregman
from .legendre import legendre_pair
from .logistic import LogisticParams, loss, loss_grad, loss_hess
from .model import KledModel

DUALITY_BETAS = (F(-1), F(0), F(1, 2), F(1), F(4, 3), F(3, 2), F(2))
GRADIENT_BETAS = (F(-1), F(0), F(1, 2), F(2, 3), F(1), F(4, 3), F(2), F(8, 3))


@dataclass
class Check:
    label: str
    passed: bool
    error: float = 0.0


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, error: float, tol: float):
        self.checks.append(Check(label, bool(error <= tol), float(error)))

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}


def _rel(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def interior_grid(dom, n: int = 24) -> np.ndarray:
    """Points well inside an interval, used by several suites."""
    if not dom.is_bounded_below and not dom.is_bounded_above:
        return np.linspace(-3.0, 3.0, n)
    sign = 1.0 if dom.is_bounded_below else -1.0
    anchor = dom.lower if dom.is_bounded_below else dom.upper
    return anchor + sign * np.linspace(0.2, 3.0, n)


def _dual_grid(pair, n):
    x = interior_grid(pair.dom_phi, n)
    if pair.beta > 1:
        x = x[np.abs(x) > 0.05]  # keep the Psi-side gradient away from its flat point
    return x


def suite_duality(betas=DUALITY_BETAS, tol: float = 1e-9, branch=None) -> SuiteResult:
    """``D_Phi(x|y) == D_Psi(grad Phi(y) | grad Phi(x))`` on interior grids."""
    res = SuiteResult("duality")
    for beta in betas:
        pair = legendre_pair(beta, branch, strict=False)
        x = _dual_grid(pair, 15)
        xx, yy = np.meshgrid(x, x)
        lhs = bregman(pair, xx, yy, "phi")
        rhs = bregman(pair, pair.grad_phi(yy), pair.grad_phi(xx), "psi")
        res.add(f"beta={beta}", _rel(lhs, rhs), tol)
    return res


def _central(f, x, h):
    return (np.asarray(f(x + h)) - np.asarray(f(x - h))) / (2 * h)


def suite_gradients(betas=GRADIENT_BETAS, tol: float = 1e-6) -> SuiteResult:
    """Analytic first and second derivatives against central differences."""
    res = SuiteResult("gradients")
    for beta in betas:
        pair = legendre_pair(beta)
        x = interior_grid(pair.dom_phi)
        t = interior_grid(pair.dom_psi)
        if beta > 1:
            t = t[np.abs(t) > 0.1]
        h = 1e-6
        res.add(f"grad_phi beta={beta}", _rel(_central(pair.phi, x, h * np.maximum(1, abs(x))),
                                              pair.grad_phi(x)), tol)
        res.add(f"grad_psi beta={beta}", _rel(_central(pair.psi, t, h * np.maximum(1, abs(t))),
                                              pair.grad_psi(t)), tol)
        res.add(f"hess_phi beta={beta}", _rel(_central(pair.grad_phi, x, h * np.maximum(1, abs(x))),
                                              pair.hess_phi(x)), tol)
    for a, b, c in ((1, 1, 1), (2, 1, 1), (F(11, 10), F(7, 10), 1), (F(19, 10), F(-1, 10), 2)):
        p = LogisticParams(a, b, c)
        theta = np.linspace(-3, min(2.0, p.threshold - 0.5), 21)
        res.add(f"loss_grad {a},{b},{c}", _rel(_central(lambda s: loss(s, p), theta, 1e-6),
                                               loss_grad(theta, p)), tol)
        res.add(f"loss_hess {a},{b},{c}", _rel(_central(lambda s: loss_grad(s, p), theta, 1e-6),
                                               loss_hess(theta, p)), tol)
    return res


def suite_tables() -> SuiteResult:
    """Computed domain tables against the literal references."""
    res = SuiteResult("tables")
    for table, key, ok, _, _ in tables.compare_all():
        res.checks.append(Check(f"{table} {key}", ok, 0.0 if ok else 1.0))
    return res


def suite_normalization(tol: float = 1e-6) -> SuiteResult:
    """Numeric partition functions against classic closed forms."""
    res = SuiteResult("normalization")
    for s2 in (0.5, 1.0, 2.0):
        z = KledModel(2, s2).normalize(0.0)
        res.add(f"normal sigma2={s2}", abs(z / math.sqrt(2 * math.pi * s2) - 1), tol)
        theta = 0.4
        z = KledModel(1, s2).normalize(theta, lambda k: -gammaln(k + 1))
        res.add(f"poisson sigma2={s2}", abs(z / math.exp(math.exp(theta / s2)) - 1), tol)
        theta = -1.5
        z = KledModel(0, s2).normalize(theta, lambda b, s=s2: (1 / s - 1) * np.log(b))
        exact = math.gamma(1 / s2) * (-theta / s2) ** (-1 / s2)
        res.add(f"gamma sigma2={s2}", abs(z / exact - 1), tol)

        def ig(b, s=s2):
            return -1 / (2 * b * s) - 0.5 * np.log(2 * math.pi * s * b**3)

        z = KledModel(-1, s2).normalize(theta, ig)
        res.add(f"inverse gaussian sigma2={s2}", abs(z / math.exp(-math.sqrt(-2 * theta) / s2) - 1), tol)
        z = KledModel(-1, s2).normalize(0.0)
        res.checks.append(Check(f"levy not normalizable sigma2={s2}", math.isinf(z), 0.0))
    return res


def suite_mle(tol: float = 1e-6, seed: int = 0) -> SuiteResult:
    """Closed-form estimate against direct minimization of the divergence sum."""
    res = SuiteResult("mle")
    rng = np.random.default_rng(seed)
    samples = {
        F(2): rng.normal(0.7, 1.0, 200),
        F(1): rng.poisson(2.5, 200).astype(float),
        F(0): rng.gamma(2.0, 1.5, 200),
        F(-1): rng.wald(1.3, 2.0, 200),
        F(1, 2): rng.gamma(1.0, 2.0, 200),
        F(4, 3): rng.normal(0.5, 1.0, 200),
    }
    for beta, data in samples.items():
        model = KledModel(beta)
        theta = model.mle_theta(data)
        dom = model.canonical_domain.interior
        lo = max(theta - 2.0, dom.lower + 1e-9) if math.isfinite(dom.lower) else theta - 2.0
        hi = min(theta + 2.0, dom.upper - 1e-9) if math.isfinite(dom.upper) else theta + 2.0
        opt = optimize.minimize_scalar(lambda t: float(model.empirical_divergence(data, t)),
                                       bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-12})
        res.add(f"interior beta={beta}", abs(opt.x - theta) / max(1.0, abs(theta)), tol)
    for beta, data, expected in ((F(1, 2), [0.0, 0.0], -math.inf), (F(1), [0, 0, 0], -math.inf)):
        got = KledModel(beta).mle_theta(data)
        res.checks.append(Check(f"boundary beta={beta}", got == expected, 0.0))
    return res


SUITES = {
    "duality": suite_duality,
    "gradients": suite_gradients,
    "tables": suite_tables,
    "normalization": suite_normalization,
    "mle": suite_mle,
}


def run(suite: str = "all", tol: float | None = None, beta=None, branch=None) -> list[SuiteResult]:
    """Run one suite (or ``"all"``), optionally overriding the tolerance and exponent."""
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
        kwargs = {}
        if tol is not None and name != "tables":
            kwargs["tol"] = tol
        if beta is not None and name == "duality":
            kwargs["betas"] = (beta,)
            kwargs["branch"] = branch
        elif beta is not None and name == "gradients":
            kwargs["betas"] = (beta,)
        out.append(SUITES[name](**kwargs))
    return out
