"""netmttf command line: exact polynomials, moments, expansions, simulation, classification.

Every subcommand writes either a human-readable text form, CSV (header row,
comma separated) or JSON (one object with "config" and "results"). Exact
rationals are written as "num/den" strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import architectures as arch_mod
from .architectures import Architecture, Family, eigen_data, graph, reliability_polynomial
from .asymptotics import (
    doublefan_mttf_expansion,
    mttf_expansion_parallel_like,
    signature_from_eigen,
    signature_from_polynomials,
    watson_moment_expansion,
    weibull_equivalent,
)
from .classify import classify, expected_label
from .errors import NetMTTFError, UnsupportedArchitecture
from .moments import (
    Exponential,
    cumulants_from_moments,
    exact_moments,
    fan_limit_moment,
    nonexp_moment,
    weibull,
)
from .oracle import mc_moments

OUTPUT_DIR_ENV = "NETMTTF_OUTPUT_DIR"


class UsageError(ValueError):
    pass


# -- parsing helpers -----------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """'a/b', an integer or a decimal literal, converted exactly."""
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(Decimal(s))
    except (ValueError, ZeroDivisionError, InvalidOperation, OverflowError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from None
    if not vals:
        raise UsageError("empty list")
    return vals


def parse_range(text: str) -> list[int]:
    """'7', '2:100', '2:100:2' or '8,16,32'."""
    s = str(text).strip()
    try:
        if ":" in s:
            parts = [int(x) for x in s.split(":")]
            if len(parts) == 2:
                parts.append(1)
            a, b, step = parts
            if step <= 0 or b < a:
                raise ValueError
            return list(range(a, b + 1, step))
        return parse_int_list(s)
    except ValueError:
        raise UsageError(f"bad size range {text!r} (use N, A:B, A:B:STEP or a comma list)") from None


def parse_grid(text: str) -> np.ndarray:
    """'A:B:COUNT' inclusive grid of floats."""
    try:
        a, b, count = str(text).split(":")
        count = int(count)
        if count < 2:
            raise ValueError
        return np.linspace(float(a), float(b), count)
    except ValueError:
        raise UsageError(f"bad grid {text!r} (use START:STOP:COUNT)") from None


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _arch(family: str, n: int, k: int | None) -> Architecture:
    fam = arch_mod._family(family)
    return Architecture(fam, n, k if fam is Family.KOFN else None)


def _model(args):
    lam = float(args.lam)
    if getattr(args, "kappa", None) is not None:
        return weibull(lam, float(args.kappa))
    return Exponential(lam)


# -- output ------------------------------------------------------------------------------


class Output:
    def __init__(self, args, config: dict):
        self.args = args
        self.config = config
        self.rows: list[dict] = []
        self.summary: dict = {}

    def add(self, **row):
        self.rows.append(row)

    def render(self, text_lines: Sequence[str] | None = None) -> str:
        fmt = self.args.format
        if fmt == "json":
            obj = {"config": self.config, "results": self.rows}
            if self.summary:
                obj["summary"] = self.summary
            return json.dumps(obj, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            cols: list[str] = []
            for r in self.rows:
                cols += [c for c in r if c not in cols]
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in self.rows:
                w.writerow({c: _csv_cell(r.get(c)) for c in cols})
            return buf.getvalue()
        if text_lines is None:
            text_lines = [", ".join(f"{k}={_csv_cell(v)}" for k, v in r.items()) for r in self.rows]
            text_lines += [f"{k}: {v}" for k, v in self.summary.items()]
        return "\n".join(text_lines) + "\n"


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return v


def _write(args, text: str):
    path = args.output
    if path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _config(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in ("func", "emit_given") or v is None:
            continue
        out[k] = fmt_rational(v) if isinstance(v, Fraction) else v
    return out


# -- commands --------------------------------------------------------------------------


def cmd_exact(args) -> str:
    out = Output(args, _config(args))
    sizes = parse_range(args.n)
    if args.p is not None and args.emit == "coeffs" and args.emit_given:
        raise UsageError("--p and --emit coeffs are exclusive")
    text = []
    for n in sizes:
        R = reliability_polynomial(_arch(args.family, n, args.k))
        if args.p is None:
            coeffs = [fmt_rational(c) for c in R.coeffs] or ["0"]
            out.add(n=n, coeffs=coeffs)
            text.append(", ".join(coeffs))
        else:
            for p in [parse_rational(x) for x in args.p.split(",")]:
                if not 0 <= p <= 1:
                    raise UsageError(f"p must lie in [0, 1], got {p}")
                v = R(p)
                out.add(n=n, p=fmt_rational(p), reliability=fmt_rational(v), reliability_float=float(v))
                text.append(fmt_rational(v))
    return out.render(text)


def cmd_moments(args) -> str:
    out = Output(args, _config(args))
    orders = parse_int_list(args.m)
    if min(orders) < 1:
        raise UsageError("moment orders must be >= 1")
    lam = args.lam
    text = []
    fam = arch_mod._family(args.family)
    if args.limit:
        if fam is not Family.FAN:
            raise UsageError("--limit is only available for the generalized fan")
        for m in orders:
            r = fan_limit_moment(m, float(lam), args.method)
            out.add(m=m, method=args.method, scaled=r.value_float, value=r.value)
            text.append(f"m={m}: {r.value_float!r}")
        return out.render(text)
    for n in parse_range(args.n):
        R = reliability_polynomial(_arch(args.family, n, args.k))
        if args.kappa is not None:
            model = _model(args)
            for m in orders:
                r = nonexp_moment(R, model, m)
                out.add(n=n, m=m, model=f"weibull(kappa={args.kappa})", value=r.value)
                text.append(f"n={n} m={m}: {r.value!r}")
            continue
        mu = exact_moments(R, max(orders), float(lam))
        vals = [x.value_exact for x in mu]
        if args.cumulants:
            vals = cumulants_from_moments(mu)
        for m in orders:
            scaled = vals[m - 1]
            value = scaled / lam**m
            key = "kappa" if args.cumulants else "moment"
            out.add(n=n, m=m, quantity=key, scaled=fmt_rational(scaled), value=fmt_rational(value), value_float=float(value))
            text.append(f"{fmt_rational(value)} ≈ {float(value):.6f}")
    return out.render(text)


def _series_like_expansion(family: str, m: int, terms: int, K: int = 12):
    sig = signature_from_eigen(eigen_data(family), "series_like", K)
    full = watson_moment_expansion(sig.log_zeta, sig.amplitude, m)
    return full, full.nonzero_terms()[:terms]


def _eval_terms(terms, n, log_coeff=0.0, const=0.0) -> float:
    return log_coeff * math.log(n) + const + sum(t.coeff * n ** (-float(t.exponent)) for t in terms)


def _parallel_like_expansion(fam: Family):
    if fam is Family.DOUBLEFAN:
        return doublefan_mttf_expansion()
    if fam is Family.KOFN:
        raise UnsupportedArchitecture("kofn has no transfer eigenvalue; use `moments`")
    return mttf_expansion_parallel_like(signature_from_eigen(eigen_data(fam), "parallel_like", 6))


def _regime(family: str) -> str:
    return expected_label(family)


def cmd_compare(args) -> str:
    out = Output(args, _config(args))
    fam = arch_mod._family(args.family)
    if args.weibull_order is not None:
        return _compare_weibull(args, out)
    regime = _regime(fam)
    sizes = parse_range(args.n)
    if regime == "SeriesLike":
        _, terms = _series_like_expansion(fam, 1, args.terms)
        head = (0.0, 0.0)
    elif regime == "ParallelLike":
        exp_ = _parallel_like_expansion(fam)
        terms = exp_.power_terms[: max(args.terms - 1, 0)]
        head = (exp_.log_coeff, exp_.const_coeff)
    else:
        raise UnsupportedArchitecture(f"{fam.value} saturates; use `moments --limit` instead of an expansion")
    for n in sizes:
        exact = float(exact_moments(reliability_polynomial(_arch(fam, n, args.k)), 1)[0].value_exact)
        approx = _eval_terms(terms, n, *head)
        out.add(n=n, exact=exact, asymptotic=approx, abs_err=abs(exact - approx), rel_err=abs(exact - approx) / exact)
    return out.render()


def _compare_weibull(args, out: Output) -> str:
    fam = arch_mod._family(args.family)
    sizes = parse_range(args.n)
    if len(sizes) != 1:
        raise UsageError("--weibull-order compares a single size; pass one --n")
    n = sizes[0]
    sig = signature_from_eigen(eigen_data(fam), "series_like", 8)
    W = weibull_equivalent(sig, args.weibull_order)
    R = reliability_polynomial(_arch(fam, n, args.k))
    lam = float(args.lam)
    ts = parse_grid(args.t_grid)
    approx = W.reliability(ts, n, lam)
    worst = 0.0
    for t, a in zip(ts, approx):
        e = R.evalf(math.exp(-lam * t))
        err = abs(e - float(a))
        worst = max(worst, err)
        out.add(t=float(t), exact=e, asymptotic=float(a), abs_err=err, rel_err=err / e if e else float("inf"))
    out.summary = {"max_abs_dev": worst, "a_i": fmt_rational(W.a_i)}
    if W.a_ip1 is not None:
        out.summary["a_ip1"] = fmt_rational(W.a_ip1)
    if args.format == "csv":
        print(f"max_abs_dev={worst!r}", file=sys.stderr)
    return out.render()


def cmd_signature(args) -> str:
    out = Output(args, _config(args))
    fam = arch_mod._family(args.family)
    regime = _regime(fam)
    if regime == "Saturating":
        raise UnsupportedArchitecture(f"{fam.value} saturates and has no cut signature")
    kind = "series_like" if regime == "SeriesLike" else "parallel_like"
    if args.method == "eigen":
        sig = signature_from_eigen(eigen_data(fam), kind, args.order)
    else:
        sizes = parse_range(args.sizes)
        polys = {n: reliability_polynomial(_arch(fam, n, None)) for n in sizes}
        sig = signature_from_polynomials(polys, kind, args.order)
    d = sig.to_dict()
    out.rows.append(d)
    if args.format == "text":
        return json.dumps(d) + "\n"
    return out.render()


def cmd_asympt(args) -> str:
    out = Output(args, _config(args))
    fam = arch_mod._family(args.family)
    regime = _regime(fam)
    text = []
    for n in parse_range(args.n):
        if regime == "SeriesLike":
            _, terms = _series_like_expansion(fam, args.m, args.terms)
            val = _eval_terms(terms, n) / float(args.lam) ** args.m
            pieces = [{"coeff": t.coeff, "exponent": fmt_rational(t.exponent)} for t in terms]
        elif regime == "ParallelLike":
            if args.m != 1:
                raise UsageError("parallel-like expansions are available for m = 1 only")
            exp_ = _parallel_like_expansion(fam)
            terms = exp_.power_terms[: max(args.terms - 1, 0)]
            val = _eval_terms(terms, n, exp_.log_coeff, exp_.const_coeff) / float(args.lam)
            pieces = [{"log_coeff": exp_.log_coeff, "const_coeff": exp_.const_coeff}] + [
                {"coeff": t.coeff, "exponent": fmt_rational(t.exponent)} for t in terms
            ]
        else:
            raise UnsupportedArchitecture(f"{fam.value} saturates; use `moments --limit`")
        out.add(n=n, m=args.m, estimate=val, terms=pieces)
        text.append(f"n={n} m={args.m}: {val!r}")
    return out.render(text)


def cmd_simulate(args) -> str:
    out = Output(args, _config(args))
    orders = parse_int_list(args.m)
    m_max = max(orders)
    text = []
    for n in parse_range(args.n):
        a = _arch(args.family, n, args.k)
        g = graph(a)
        model = _model(args)
        est = mc_moments(g, model, m_max, args.samples, args.seed, args.threads)
        exact = None
        if args.kappa is None:
            exact = exact_moments(reliability_polynomial(a), m_max, float(args.lam))
        for m in orders:
            row = est[m - 1].to_dict()
            row["n"] = n
            if exact is not None:
                row["exact"] = exact[m - 1].value
                row["z_score"] = (row["mean"] - row["exact"]) / row["std_error"] if row["std_error"] else 0.0
            out.add(**row)
            text.append(f"n={n} m={m}: {row['mean']!r} ± {row['std_error']!r}" + (f" (exact {row['exact']!r})" if exact else ""))
    return out.render(text)


def cmd_classify(args) -> str:
    out = Output(args, _config(args))
    fams = [args.family] if args.family else [f.value for f in Family]
    text = []
    for f in fams:
        lab = classify(f, args.k)
        d = {"family": arch_mod._family(f).value, **lab.to_dict()}
        out.add(**d)
        text.append(f"{d['family']}: {lab.kind}" + (f" (R_inf(1/2) = {d['r_infinity_at_p']})" if "r_infinity_at_p" in d else ""))
    return out.render(text)


# -- parser ------------------------------------------------------------------------------

FAMILIES = ", ".join(f.value for f in Family)


def _common(p: argparse.ArgumentParser, n_default: str | None = None, need_family: bool = True):
    p.add_argument("--family", required=need_family, help=f"architecture family ({FAMILIES})")
    p.add_argument("--n", default=n_default, required=n_default is None, help="size: N, A:B, A:B:STEP or comma list")
    p.add_argument("--k", type=int, help="k for the k-out-of-n family")
    _io(p)


def _io(p: argparse.ArgumentParser):
    p.add_argument("--lambda", dest="lam", type=parse_rational, default=Fraction(1), help="component failure rate")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--output", help=f"output file (relative paths go under ${OUTPUT_DIR_ENV} when set)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="netmttf",
        description="Reliability polynomials, moments and asymptotic MTTF of recursive two-terminal networks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "exact",
        help="exact reliability polynomial R_n(p)",
        description="Exact two-terminal reliability R_n(p) = sum_k c_k p^k of an architecture instance; "
        "either its coefficient list or its value at rational p.",
    )
    _common(p)
    p.add_argument("--emit", choices=("coeffs",), default="coeffs")
    p.add_argument("--p", help="comma list of rational p values (a/b or decimal)")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser(
        "moments",
        help="exact moments and cumulants",
        description="lambda^m <t^m> = m! sum_k c_k / k^m for exponential components; cumulants by "
        "kappa_m = mu_m - sum_j C(m-1, j-1) kappa_j mu_(m-j). With --kappa, <t^m> = "
        "m int_0^1 chi(p)^(m-1) R(p) (-chi'(p)) dp by quadrature for Weibull components. "
        "With --limit (fan only), <t^m>_inf = (m/lambda^m) int_0^1 (-ln p)^(m-1) p/(1-p(1-p))^2 dp.",
    )
    _common(p, n_default="1")
    p.add_argument("--m", default="1", help="comma list of moment orders")
    p.add_argument("--cumulants", action="store_true", help="report cumulants instead of raw moments")
    p.add_argument("--kappa", type=float, help="Weibull shape: components fail as exp(-(lambda t)^kappa)")
    p.add_argument("--limit", action="store_true", help="n -> infinity moments of the generalized fan")
    p.add_argument("--method", choices=("quadrature", "closed_form"), default="quadrature")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser(
        "compare",
        help="exact vs asymptotic MTTF (or Weibull-equivalent reliability)",
        description="Rows n, exact, asymptotic, abs_err, rel_err. Series-like families use the Laplace/Watson "
        "expansion of m int dq/(1-q) (-ln(1-q))^(m-1) alpha_+ zeta_+^n (e.g. K4 ladder: Gamma(5/4) n^(-1/4) + "
        "(17/32) Gamma(3/4) n^(-3/4) - 3/(4n)); parallel-like ones use (1/i)(ln(beta_i n) + C) + "
        "(beta_(i+1)/(i beta_i) - beta'_1) Gamma(1+1/i) (n beta_i)^(-1/i) (double fan: (ln n + C)/2 + "
        "sqrt(pi)/(2 sqrt n) - 11/(4n)). With --weibull-order, compares R(t) with "
        "exp[-n(alpha_i (lambda t)^i + alpha~_(i+1) (lambda t)^(i+1))], alpha~_(i+1) = alpha_(i+1) - (i/2) alpha_i.",
    )
    _common(p, n_default="2:100")
    p.add_argument("--terms", type=int, default=3, help="number of expansion terms (nonzero, log head counts as one)")
    p.add_argument("--weibull-order", type=int, choices=(0, 1), help="compare the Weibull-equivalent reliability")
    p.add_argument("--t-grid", default="0:2:201", help="START:STOP:COUNT grid of lambda t")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "signature",
        help="cut signature of a family",
        description="-ln zeta_+(1-q) = sum_j alpha_j q^j and alpha_+(1-q) = 1 + sum_j alpha'_j q^j (series-like), "
        "or the same in p with beta's (parallel-like), from the transfer eigenvalue or from exact polynomials "
        "via ln zeta_+ = (ln X_n2 - ln X_n1)/(n2 - n1).",
    )
    p.add_argument("--family", required=True, help=f"architecture family ({FAMILIES})")
    p.add_argument("--order", type=int, default=8, help="truncation order K")
    p.add_argument("--method", choices=("eigen", "polynomials"), default="eigen")
    p.add_argument("--sizes", default="20,21,22", help="sizes for --method polynomials")
    _io(p)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser(
        "asympt",
        help="asymptotic moment estimate at given n",
        description="Series-like: lambda^m <t^m> ~ sum_k c_k n^(-(k+1)/i), leading term Gamma(1+m/i) (n alpha_i)^(-m/i). "
        "Parallel-like (m = 1): (1/i)(ln(beta_i n) + C) + (beta_(i+1)/(i beta_i) - beta'_1) Gamma(1+1/i) (n beta_i)^(-1/i).",
    )
    p.add_argument("--family", required=True, help=f"architecture family ({FAMILIES})")
    p.add_argument("--n", required=True, help="size: N, A:B, A:B:STEP or comma list")
    p.add_argument("--m", type=int, default=1, help="moment order")
    p.add_argument("--terms", type=int, default=3)
    _io(p)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser(
        "simulate",
        help="Monte Carlo lifetime moments",
        description="Samples edge lifetimes, takes the system lifetime as the widest (maximin) s-t path and "
        "reports sample means of T^m with standard errors. Deterministic in --seed for any --threads.",
    )
    _common(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", default="1")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--kappa", type=float, help="Weibull shape for the component lifetimes")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "classify",
        help="large-n regime of a family",
        description="Evaluates R_n(1/2) exactly at n = 4, 8, 16: decreasing to 0 is series-like, increasing to 1 "
        "parallel-like, an interior limit saturating (generalized fan: R_inf = p^2/(1-p(1-p))^2).",
    )
    p.add_argument("--family", help="family to classify (default: all)")
    p.add_argument("--k", type=int)
    _io(p)
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.emit_given = "--emit" in argv
    try:
        if args.lam <= 0:
            raise UsageError("--lambda must be > 0")
        text = args.func(args)
    except (UsageError, UnsupportedArchitecture) as exc:
        print(f"netmttf {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NetMTTFError as exc:
        print(f"netmttf {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    _write(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
