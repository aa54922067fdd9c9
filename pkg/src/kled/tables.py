"""Reference domain tables and renderers for the computed ones.

The ``*_REFERENCE`` constants are literal transcriptions, one row per
representative exponent, kept apart from the code that derives domains so
that the two can be compared.  Labels: ``R``, ``R+`` (closed at 0), ``R++``
(open), ``R-``, ``R--``; ``/`` separates the positive-region and
negative-region alternatives; ``-`` marks a missing entry.
"""

from __future__ import annotations

from fractions import Fraction as F

from .divergence import quasi_domain
from .exceptions import DomainError
from .extfun import domain_exp, domain_log
from .legendre import domain_phi, domain_psi
from .model import cumulant_domain, kled_classification

# (beta, branch, dom exp_{2-beta}, dom ln_{2-beta})
EXTFUN_REFERENCE = [
    (F(1), "pos", "R", "R++"),
    (F(2), "pos", "R", "R"),
    (F(4, 3), "pos", "R", "R"),
    (F(8, 3), "pos", "R", "R"),
    (F(3, 2), "pos", "R+", "R+"),
    (F(5, 3), "pos", "R+", "R+"),
    (F(3), "pos", "R+", "R+"),
    (F(2, 3), "pos", "R--", "R++"),
    (F(2, 3), "neg", "R++", "R--"),
    (F(0), "pos", "R--", "R++"),
    (F(-2, 3), "pos", "R--", "R++"),
    (F(-2), "neg", "R++", "R--"),
    (F(1, 2), "pos", "R--", "R++"),
    (F(1, 3), "pos", "R--", "R++"),
    (F(-1), "pos", "R--", "R++"),
]

# (beta, branch, dom Phi, dom Psi); None marks "no Legendre pair".
LEGENDRE_REFERENCE = [
    (F(2), "pos", "R", "R"),
    (F(4, 3), "pos", "R", "R"),
    (F(16, 9), "pos", "R", "R"),
    (F(8, 3), "pos", "R", "R"),
    (F(1), "pos", "R+", "R"),
    (F(1, 2), "pos", "R+", "R--"),
    (F(1, 3), "pos", "R+", "R--"),
    (F(2, 3), "pos", "R+", "R--"),
    (F(2, 3), "neg", "R-", "R++"),
    (F(0), "pos", "R++", "R--"),
    (F(-1), "pos", "R++", "R-"),
    (F(-1, 2), "pos", "R++", "R-"),
    (F(-2, 3), "pos", "R++", "R-"),
    (F(-2, 3), "neg", "R--", "R+"),
    (F(-2), "neg", "R--", "R+"),
    (F(3, 2), "pos", None, None),
]

# (beta, branch, Omega_L, Omega_R); None marks "no domain".
QUASI_REFERENCE = [
    (F(3, 2), "pos", "R+", "R+"),
    (F(5, 3), "pos", "R+", "R+"),
    (F(7, 5), "pos", "R+", "R+"),
    (F(2), "pos", "R", "R"),
    (F(4, 3), "pos", "R", "R"),
    (F(16, 9), "pos", "R", "R"),
    (F(1), "pos", "R+", "R++"),
    (F(1, 2), "pos", "R+", "R++"),
    (F(2, 3), "pos", "R+", "R++"),
    (F(2, 3), "neg", "R-", "R--"),
    (F(-1), "pos", "R++", "R++"),
    (F(-1, 2), "pos", "R++", "R++"),
    (F(-2, 3), "pos", "R++", "R++"),
    (F(0), "neg", "R--", "R--"),
    (F(-2, 3), "neg", "R--", "R--"),
    (F(-2), "neg", "R--", "R--"),
    (F(3), "pos", None, None),
    (F(8, 3), "pos", None, None),
]

# (beta, k, dom grad^k Psi) with alternatives as a set; "-" is the empty set.
CUMULANT_REFERENCE = [
    (F(8, 3), 1, {"R"}),
    (F(4, 3), 1, {"R"}),
    (F(8, 3), 2, {"R++", "R--"}),
    (F(2), 3, {"R++", "R--"}),
    (F(16, 9), 4, {"R++", "R--"}),
    (F(4, 3), 5, {"R++", "R--"}),
    (F(2), 2, {"R"}),
    (F(3, 2), 3, set()),
    (F(4, 3), 4, {"R"}),
    (F(5, 4), 5, set()),
    (F(16, 9), 2, {"R"}),
    (F(4, 3), 3, {"R"}),
    (F(6, 5), 4, {"R"}),
    (F(10, 9), 5, {"R"}),
] + [(F(1), k, {"R"}) for k in range(1, 6)] + [
    (b, k, {"R++", "R--"}) for b in (F(2, 3), F(-2, 3)) for k in range(1, 6)
] + [
    (b, k, {"R--"}) for b in (F(1, 2), F(-1)) for k in range(1, 6)
]

# (beta, order K, (name, B, dom Phi, dom Psi, dom grad, dom hess, dom grad^K, Tweedie dom Psi))
KLED_REFERENCE = [
    (F(8, 3), None, ("-", "R", "R", "R", "R", "-", "-", "-")),
    (F(2), None, ("Gaussian", "R", "R", "R", "R", "R", "-", "R")),
    (F(16, 9), 3, ("-", "R", "R", "R", "R", "R", "-", "-")),
    (F(4, 3), 4, ("-", "R", "R", "R", "R", "R", "R", "-")),
    (F(6, 5), 4, ("-", "R", "R", "R", "R", "R", "R", "-")),
    (F(1), None, ("Poisson", "Z+", "R+", "R", "R", "R", "R", "R")),
    (F(1, 2), None, ("Compound Poisson-Gamma", "R+", "R+", "R--", "R--", "R--", "R--", "R--")),
    (F(2, 3), None, ("Compound Poisson-Gamma", "R+", "R+/R-", "R--/R++", "R--/R++",
                     "R--/R++", "R--/R++", "R--/R++")),
    (F(0), None, ("Gamma", "R++", "R++", "R--", "R--", "R--", "R--", "R--")),
    (F(-1), None, ("Inverse Gaussian", "R++", "R++", "R-", "R--", "R--", "R--", "R-")),
    (F(-1, 2), None, ("Positive stable", "R++", "R++", "R-", "R--", "R--", "R--", "R-")),
    (F(-2, 3), None, ("Positive stable", "R++", "R++/R--", "R-/R+", "R--/R++", "R--/R++",
                      "R--/R++", "R-/R+")),
]

KLED_COLUMNS = ("name", "B", "dom Phi", "dom Psi", "dom grad Psi", "dom grad^2 Psi",
                "dom grad^K Psi", "Tweedie dom Psi")


# -- computed counterparts ---------------------------------------------------

def computed_extfun(beta, branch):
    return domain_exp(beta, branch).label, domain_log(beta, branch).label


def computed_legendre(beta, branch):
    try:
        return domain_phi(beta, branch).label, domain_psi(beta, branch).label
    except DomainError:
        return None, None


def computed_quasi(beta, branch):
    dom = quasi_domain(beta, branch)
    if dom is None:
        return None, None
    return dom.labels()


def computed_cumulant(beta, k):
    return {d.label for d in cumulant_domain(beta, k)}


def computed_kled(beta, order):
    return kled_classification(beta, order).as_tuple()


def compare_all() -> list[tuple[str, str, bool, object, object]]:
    """Compare every reference row with its computed value.

    Returns ``(table, row key, match, expected, computed)`` tuples.
    """
    out = []
    for beta, br, e, lg in EXTFUN_REFERENCE:
        got = computed_extfun(beta, br)
        out.append(("extfun", f"beta={beta} {br}", got == (e, lg), (e, lg), got))
    for beta, br, p, s in LEGENDRE_REFERENCE:
        got = computed_legendre(beta, br)
        out.append(("legendre", f"beta={beta} {br}", got == (p, s), (p, s), got))
    for beta, br, left, right in QUASI_REFERENCE:
        got = computed_quasi(beta, br)
        out.append(("quasi", f"beta={beta} {br}", got == (left, right), (left, right), got))
    for beta, k, labels in CUMULANT_REFERENCE:
        got = computed_cumulant(beta, k)
        out.append(("cumulant", f"beta={beta} k={k}", got == labels, labels, got))
    for beta, order, row in KLED_REFERENCE:
        got = computed_kled(beta, order)
        out.append(("kled", f"beta={beta} K={order}", got == row, row, got))
    return out


# -- renderers -----------------------------------------------------------------

def _fmt_set(labels) -> str:
    return "/".join(sorted(labels, reverse=True)) if labels else "-"


def render_domains(beta, branch=None) -> list[tuple[str, str]]:
    """All domain facts about one exponent as ``(quantity, label)`` rows."""
    rows = [("dom exp", domain_exp(beta, branch).label), ("dom ln", domain_log(beta, branch).label)]
    phi, psi = computed_legendre(beta, branch)
    rows += [("dom Phi", phi or "-"), ("dom Psi", psi or "-")]
    try:
        q = computed_quasi(beta, branch)
    except DomainError:
        q = (None, None)
    rows += [("Omega_L", q[0] or "-"), ("Omega_R", q[1] or "-")]
    for k in range(1, 6):
        rows.append((f"dom grad^{k} Psi", _fmt_set(computed_cumulant(beta, k))))
    return rows
