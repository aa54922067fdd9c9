"""Command-line interface: ``kled <command> [options]``.

Commands
--------
classify   exponent class, cumulant order and characterization row
domains    domain tables for one exponent, or all reference rows
eval       evaluate a quantity on a grid and write CSV
curves     the extended-normal and extended-logistic curve sweeps as CSV
fit        closed-form maximum-likelihood fit of observations from a CSV file
cumulants  k-th cumulants at a canonical parameter
normalize  numeric partition function at a canonical parameter
verify     run the self-check suites

Options may also come from a flat ``key = value`` file given by ``--config``;
command-line flags take precedence over it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from . import tables, verify
from ._util import as_float_array
from .divergence import beta_divergence, canonical, fisher_information, quasi_likelihood
from .exceptions import DomainError, InvalidParams, QuadratureFailure
from .extfun import exp_ext, log_ext
from .legendre import legendre_pair
from .logistic import (FIG2_ALPHAS, FIG2_BETAS, LogisticParams, c_for_threshold, loss,
                       loss_grad, loss_hess)
from .model import KledModel, cumulant_order, curve_extended_normal, kled_classification
from .rational import as_exponent, classify_exponent, parse_exponent

DEFAULTS = {
    "beta": "2",
    "alpha": "1",
    "c": 1.0,
    "sigma2": 1.0,
    "branch": "pos",
    "grid": None,
    "input": None,
    "output": None,
    "tol": None,
    "suite": "all",
    "theta": 0.0,
    "mu": 1.0,
    "kmax": 4,
    "figure": "1",
    "quantity": "psi",
    "carrier": "trivial",
}

FIG1_LOW = tuple(Fraction(k, 9) for k in (16, 14, 12, 10))
FIG1_HIGH = tuple(Fraction(k, 9) for k in (30, 28, 26, 24, 22, 20))


class CliError(Exception):
    """A user-facing error; reported on stderr with a nonzero exit code."""


# -- formatting ------------------------------------------------------------------

def fmt(x) -> str:
    """17 significant digits; signed infinities as ``+inf``/``-inf``; ``None`` as empty."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (str, Fraction)):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _json_value(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return fmt(x)
    return x


def write_csv(header, rows, path=None, stream=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)


def parse_grid(spec: str) -> np.ndarray:
    """``MIN:MAX:N`` with ``N >= 2`` and ``MIN < MAX``."""
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise CliError(f"bad grid {spec!r}; expected MIN:MAX:N") from exc
    if n < 2 or not lo < hi:
        raise CliError("grid needs N >= 2 and MIN < MAX")
    return np.linspace(lo, hi, n)


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise CliError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def read_observations(path: str) -> np.ndarray:
    """Single numeric column, optional header ``b``."""
    values = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not row[0].strip():
                continue
            cell = row[0].strip()
            try:
                values.append(float(cell))
            except ValueError:
                if i == 0:
                    continue
                raise CliError(f"row {i}: not a number: {cell!r}") from None
    if not values:
        raise CliError(f"{path}: no observations")
    return np.array(values)


def _settings(args) -> dict:
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    for key in ("c", "sigma2", "theta", "mu"):
        merged[key] = float(merged[key])
    if merged["tol"] is not None:
        merged["tol"] = float(merged["tol"])
        if merged["tol"] <= 0:
            raise CliError("tolerance must be positive")
    merged["kmax"] = int(merged["kmax"])
    for key in ("beta", "alpha"):
        try:
            merged[key] = parse_exponent(str(merged[key]))
        except ValueError as exc:
            raise CliError(str(exc)) from None
    if merged["sigma2"] <= 0:
        raise CliError("sigma2 must be positive")
    return merged


# -- commands --------------------------------------------------------------------

def cmd_classify(s, args) -> int:
    beta = s["beta"]
    row = kled_classification(beta)
    info = {
        "beta": str(beta),
        "class": classify_exponent(beta).value,
        "exists": row.exists,
        "K": row.K,
        "name": row.name,
    }
    info.update(dict(zip(tables.KLED_COLUMNS[1:], row.as_tuple()[1:])))
    try:
        info.update(dict(tables.render_domains(beta, s["branch"])))
    except DomainError:
        pass
    if args.json:
        print(json.dumps({k: _json_value(v) for k, v in info.items()}, indent=2))
    else:
        for k, v in info.items():
            print(f"{k:>18}: {fmt(v) if v is not None else '-'}")
    return 0


def cmd_domains(s, args) -> int:
    if args.beta is not None or "beta" in (read_config(args.config) if args.config else {}):
        rows = tables.render_domains(s["beta"], s["branch"])
        write_csv(["quantity", "domain"], rows, s["output"])
        return 0
    rows = []
    for beta, br, _, _ in tables.EXTFUN_REFERENCE:
        rows.append(("extfun", beta, br, *tables.computed_extfun(beta, br)))
    for beta, br, _, _ in tables.LEGENDRE_REFERENCE:
        rows.append(("legendre", beta, br, *(x or "-" for x in tables.computed_legendre(beta, br))))
    for beta, br, _, _ in tables.QUASI_REFERENCE:
        rows.append(("quasi", beta, br, *(x or "-" for x in tables.computed_quasi(beta, br))))
    for beta, k, _ in tables.CUMULANT_REFERENCE:
        labels = tables.computed_cumulant(beta, k)
        rows.append(("cumulant", beta, f"k={k}", "/".join(sorted(labels, reverse=True)) or "-", ""))
    for beta, order, _ in tables.KLED_REFERENCE:
        row = tables.computed_kled(beta, order)
        rows.append(("kled", beta, f"K={order or '-'}", row[0], ";".join(row[1:])))
    write_csv(["table", "beta", "selector", "first", "second"], rows, s["output"])
    return 0


def _quantity(s):
    q = s["quantity"]
    beta, branch = s["beta"], s["branch"]
    if q in ("exp", "log"):
        fn = exp_ext if q == "exp" else log_ext
        return lambda x: fn(x, beta, branch)
    if q in ("phi", "psi", "grad_phi", "grad_psi", "hess_phi", "hess_psi"):
        pair = legendre_pair(beta, branch)
        return getattr(pair, q)
    if q == "beta_divergence":
        return lambda x: beta_divergence(x, s["mu"], beta, branch)
    if q == "quasi":
        return lambda x: quasi_likelihood(x, s["mu"], beta, s["sigma2"], branch)
    if q == "canonical":
        pair = legendre_pair(beta, branch)
        return lambda x: canonical(pair, x, s["theta"])
    if q == "fisher":
        return lambda x: fisher_information(beta, s["sigma2"], x)
    if q in ("mean", "variance", "log_density"):
        model = KledModel(beta, s["sigma2"], branch)
        if q == "log_density":
            return lambda x: model.log_density_unnormalized(x, s["theta"])
        return getattr(model, q)
    if q in ("loss", "loss_grad", "loss_hess"):
        params = LogisticParams(s["alpha"], beta, s["c"])
        fn = {"loss": loss, "loss_grad": loss_grad, "loss_hess": loss_hess}[q]
        return lambda x: fn(x, params)
    raise CliError(f"unknown quantity {q!r}")


QUANTITIES = ("exp", "log", "phi", "psi", "grad_phi", "grad_psi", "hess_phi", "hess_psi",
              "beta_divergence", "quasi", "canonical", "fisher", "mean", "variance",
              "log_density", "loss", "loss_grad", "loss_hess")


def _pointwise(fn, xs):
    out = []
    for x in xs:
        try:
            out.append(float(fn(float(x))))
        except (DomainError, InvalidParams):
            out.append(None)
    return out


def cmd_eval(s, args) -> int:
    grid = parse_grid(s["grid"] or "-3:3:13")
    fn = _quantity(s)
    values = _pointwise(fn, grid)
    write_csv(["x", s["quantity"]], zip(grid, values), s["output"])
    return 0


def curves_fig1(mu) -> tuple[list[str], list[list]]:
    """Extended normal curves exp(-D_Psi(b|mu)/3): two exponent sweeps times b in {0, 2}."""
    header, cols = ["x"], [list(mu)]
    for panel, b, betas in (("a", 0.0, FIG1_LOW), ("b", 2.0, FIG1_LOW),
                            ("c", 0.0, FIG1_HIGH), ("d", 2.0, FIG1_HIGH)):
        for beta in (Fraction(2),) + betas:
            header.append(f"fig1{panel}_b={b:g}_beta={beta}")
            cols.append(list(curve_extended_normal(b, beta, 3.0, mu)[:, 1]))
    return header, cols


def curves_fig2(theta) -> tuple[list[str], list[list]]:
    """Extended logistic losses over the alpha, beta and c sweeps, plus the logistic loss."""
    header, cols = ["x"], [list(theta)]
    logistic = LogisticParams(1, 1, 1.0)
    header.append("fig2_logistic_alpha=1_beta=1_c=1")
    cols.append(_pointwise(lambda t: loss(t, logistic), theta))
    beta0 = Fraction(7, 10)
    alpha0 = Fraction(11, 10)
    specs = []
    for alpha in FIG2_ALPHAS:
        specs.append(("a", alpha, beta0, 1.0))
    for beta in FIG2_BETAS:
        specs.append(("b", alpha0, beta, 1.0))
    for alpha in FIG2_ALPHAS:
        specs.append(("c", alpha, beta0, c_for_threshold(beta0, 4.0)))
    for beta in FIG2_BETAS:
        specs.append(("d", alpha0, beta, c_for_threshold(beta, 4.0)))
    for panel, alpha, beta, c in specs:
        p = LogisticParams(alpha, beta, c)
        header.append(f"fig2{panel}_alpha={alpha}_beta={beta}_c={fmt(c)}")
        cols.append(_pointwise(lambda t, p=p: loss(t, p), theta))
    return header, cols


def cmd_curves(s, args) -> int:
    fig = str(s["figure"])
    if fig == "1":
        header, cols = curves_fig1(parse_grid(s["grid"] or "-6:6:241"))
    elif fig == "2":
        header, cols = curves_fig2(parse_grid(s["grid"] or "-6:3:181"))
    else:
        raise CliError("--figure must be 1 or 2")
    write_csv(header, zip(*cols), s["output"])
    return 0


def cmd_fit(s, args) -> int:
    if not s["input"]:
        raise CliError("fit needs --input PATH")
    data = read_observations(s["input"])
    model = KledModel(s["beta"], s["sigma2"], s["branch"])
    for i, value in enumerate(data):
        try:
            model._check_support(value, integer=False)
        except DomainError as exc:
            raise CliError(f"observation {i} ({fmt(value)}): {exc}") from None
    res = model.fit(data)
    report = {"beta": str(model.beta), "sigma2": model.sigma2, "n": int(data.size),
              "theta": res.theta, "mean": res.mean, "variance": res.variance,
              "boundary": res.boundary}
    if args.json:
        print(json.dumps({k: _json_value(v) for k, v in report.items()}, indent=2))
    else:
        for k, v in report.items():
            print(f"{k}: {fmt(v)}")
    return 0


def cmd_cumulants(s, args) -> int:
    model = KledModel(s["beta"], s["sigma2"], s["branch"])
    rows = []
    for k in range(1, s["kmax"] + 1):
        try:
            val = float(model.kth_cumulant(s["theta"], k))
            scaled = float(model.scaled_cumulant(s["theta"], k))
        except DomainError:
            val = scaled = None
        rows.append((k, val, scaled))
    if not args.json:
        print(f"# beta={model.beta} K={fmt(cumulant_order(model.beta))} theta={fmt(s['theta'])}",
              file=sys.stderr)
    write_csv(["k", "grad_k_psi", "cumulant"], rows, s["output"])
    return 0


CARRIERS = {
    "trivial": None,
    "poisson": lambda s2: (lambda k: -gammaln(k + 1)),
    "gamma": lambda s2: (lambda b: (1 / s2 - 1) * np.log(b)),
    "inverse-gaussian": lambda s2: (lambda b: -1 / (2 * b * s2) - 0.5 * np.log(2 * math.pi * s2 * b**3)),
}


def cmd_normalize(s, args) -> int:
    model = KledModel(s["beta"], s["sigma2"], s["branch"])
    name = s["carrier"]
    if name not in CARRIERS:
        raise CliError(f"unknown carrier {name!r}; choose from {sorted(CARRIERS)}")
    factory = CARRIERS[name]
    carrier = factory(model.sigma2) if factory else None
    z = model.normalize(s["theta"], carrier)
    report = {"beta": str(model.beta), "theta": s["theta"], "carrier": name, "Z": z,
              "normalizable": math.isfinite(z)}
    if args.json:
        print(json.dumps({k: _json_value(v) for k, v in report.items()}))
    else:
        print(fmt(z))
    return 0


def cmd_verify(s, args) -> int:
    beta = s["beta"] if args.beta is not None else None
    results = verify.run(s["suite"], s["tol"], beta, s["branch"])
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"passed": ok, "suites": [r.as_dict() for r in results]}, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({len(r.checks)} checks)")
            for c in r.checks:
                if not c.passed:
                    print(f"    failed: {c.label} error={fmt(c.error)}")
    return 0 if ok else 1


COMMANDS = {
    "classify": cmd_classify,
    "domains": cmd_domains,
    "eval": cmd_eval,
    "curves": cmd_curves,
    "fit": cmd_fit,
    "cumulants": cmd_cumulants,
    "normalize": cmd_normalize,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", help="exponent, e.g. 2, 16/9 or 0.5")
    common.add_argument("--alpha", help="second exponent of the logistic loss")
    common.add_argument("--c", type=float, help="positive constant of the raw extended functions")
    common.add_argument("--sigma2", type=float, help="dispersion (> 0)")
    common.add_argument("--branch", choices=("pos", "neg"), help="sign region of the data")
    common.add_argument("--grid", help="MIN:MAX:N evaluation grid")
    common.add_argument("--input", help="CSV of observations (one column, optional header b)")
    common.add_argument("--output", help="write CSV here instead of stdout")
    common.add_argument("--tol", help="tolerance override for verify")
    common.add_argument("--suite", choices=tuple(verify.SUITES) + ("all",))
    common.add_argument("--theta", type=float, help="canonical parameter")
    common.add_argument("--mu", type=float, help="second (mean) argument of divergences")
    common.add_argument("--kmax", type=int, help="highest cumulant order to report")
    common.add_argument("--figure", choices=("1", "2"), help="which curve sweep to emit")
    common.add_argument("--quantity", choices=QUANTITIES, help="quantity for eval")
    common.add_argument("--carrier", choices=tuple(CARRIERS), help="base weight for normalize")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="flat key = value file with defaults")

    parser = argparse.ArgumentParser(prog="kled", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or name).strip().split("\n")[0])
    return parser


def _join_negative_values(argv):
    """Let ``--grid -2:1:5`` through: argparse would read ``-2:1:5`` as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--theta", "--mu"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        settings = _settings(args)
        return COMMANDS[args.command](settings, args)
    except (CliError, DomainError, InvalidParams, QuadratureFailure, OSError, ValueError) as exc:
        print(f"kled {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
