"""Power-variance exponential families built from extended exponential and logarithm functions."""

from .divergence import (beta_divergence, bregman, bregman_beta, bregman_tweedie, canonical,
                         extended_argmin, fisher_information, quasi_domain, quasi_likelihood,
                         variance_function)
from .domains import Branch, DomainInterval
from .estimator import ExtendedLogisticDensity, KledDensity
from .exceptions import DomainError, InvalidParams, QuadratureFailure
from .extfun import domain_exp, domain_log, exp_ext, exp_ext_raw, log_ext, log_ext_raw
from .legendre import (LegendrePair, conjugate_value, domain_phi, domain_psi, eta, legendre_pair,
                       verify_legendre)
from .logistic import (LogisticCase, LogisticParams, legendre_class, log_density_logistic, loss,
                       loss_grad, loss_hess, mean_to_theta, psi_K, transformed_loss)
from .model import (FitResult, KledModel, cumulant_domain, cumulant_order, curve_extended_normal,
                    density_levy, kled_classification)
from .rational import ExponentClass, classify_exponent, classify_float, parse_exponent

__all__ = [
    "Branch", "DomainError", "DomainInterval", "ExponentClass", "ExtendedLogisticDensity",
    "FitResult", "InvalidParams", "KledDensity", "KledModel", "LegendrePair", "LogisticCase",
    "LogisticParams", "QuadratureFailure", "beta_divergence", "bregman", "bregman_beta",
    "bregman_tweedie", "canonical", "classify_exponent", "classify_float", "conjugate_value",
    "cumulant_domain", "cumulant_order", "curve_extended_normal", "density_levy", "domain_exp",
    "domain_log", "domain_phi", "domain_psi", "eta", "exp_ext", "exp_ext_raw", "extended_argmin",
    "fisher_information", "kled_classification", "legendre_class", "legendre_pair",
    "log_density_logistic", "log_ext", "log_ext_raw", "loss", "loss_grad", "loss_hess",
    "mean_to_theta", "parse_exponent", "psi_K", "quasi_domain", "quasi_likelihood",
    "transformed_loss", "variance_function", "verify_legendre",
]
