"""Command-line front end.

Subcommands: stirling, poly, gram, spectrum, chel, verify.  Output goes to
stdout as json, csv, or pretty text; diagnostics go to stderr.  Exact
rationals are serialized as decimal p/q strings, never floats; floats appear
only in the numeric outputs (spectrum --galerkin, chel) with a configurable
number of significant digits.

Configuration keys (default_k, output_format, cache_path, float_digits) are
resolved with precedence: JSOB_* environment variables, then command-line
flags, then the --config file (line-oriented ``key = value``), then defaults.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 undefined request,
4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ONE_MINUS_X2,
    Polynomial,
    ScaledPolynomial,
    Surd,
    integrate_weighted,
)
from .jacobi import (
    JacobiParams,
    NONCLASSICAL,
    Normalization,
    UndefinedNormalization,
    PoleInGammaRatio,
    check_derivative_identity,
    factorization_check,
    jacobi_family,
    nonclassical_jacobi,
)
from .numeric import (
    ConvergenceFailure,
    MassNotPositiveDefinite,
    NonFiniteIntegral,
    chel_K,
    chel_preset,
    galerkin_spectrum,
    knorm_crosscheck,
)
from .operators import (
    Classical,
    LeftDefinite,
    OperatorTag,
    SobolevPhi,
    SpectrumSpec,
    apply_ell,
    apply_ell_power,
    decompose_w,
    derivative_orthogonality_value,
    gram_matrix,
    inner_product,
    operator_matrix,
    spectrum,
    verify_dirichlet_identity,
    verify_lagrange_identity,
)
from .stirling import (
    build_table,
    composite_coefficients,
    jacobi_stirling,
    verify_defining_identity,
)

ENV_PREFIX = "JSOB_"
FORMATS = ("json", "csv", "pretty")
CONFIG_KEYS = ("default_k", "output_format", "cache_path", "float_digits")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_NUMERIC = 4


class UsageError(ValueError):
    """Bad argument or configuration value."""


@dataclass(frozen=True)
class CliConfig:
    default_k: Fraction
    output_format: str
    cache_path: str
    float_digits: int


_DEFAULTS = {
    "default_k": "1",
    "output_format": "pretty",
    "cache_path": "",
    "float_digits": "17",
}


def _read_config_file(path: str) -> dict[str, str]:
    try:
        text = open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def build_config(args: argparse.Namespace) -> CliConfig:
    """Resolve the configuration: env > flags > config file > defaults."""
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}
    flag_values = {
        "default_k": getattr(args, "k", None),
        "output_format": getattr(args, "format", None),
        "cache_path": getattr(args, "cache_path", None),
        "float_digits": getattr(args, "float_digits", None),
    }

    def pick(key: str) -> str:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            return env
        if flag_values.get(key) is not None:
            return str(flag_values[key])
        if key in file_values:
            return file_values[key]
        return _DEFAULTS[key]

    try:
        default_k = Fraction(pick("default_k"))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"default_k is not a rational: {pick('default_k')!r}") from exc
    if default_k < 0:
        raise UsageError("default_k must be nonnegative")
    output_format = pick("output_format")
    if output_format not in FORMATS:
        raise UsageError(f"output format must be one of {FORMATS}, got {output_format!r}")
    try:
        float_digits = int(pick("float_digits"))
    except ValueError as exc:
        raise UsageError("float_digits must be an integer") from exc
    if not 6 <= float_digits <= 30:
        raise UsageError("float_digits must lie in [6, 30]")
    return CliConfig(
        default_k=default_k,
        output_format=output_format,
        cache_path=pick("cache_path"),
        float_digits=float_digits,
    )


def _fmt_float(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _emit_csv(header: list[str], rows: list[list[str]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# polynomial records and the cache


@dataclass(frozen=True)
class PolynomialRecord:
    """Serializable exact description of one family member."""

    alpha: str
    beta: str
    n: int
    normalization: str
    scale_squared: str
    coefficients: tuple[str, ...]

    @classmethod
    def build(cls, params: JacobiParams, n: int, norm: Normalization) -> "PolynomialRecord":
        fam = jacobi_family(n, params, norm)
        return cls(
            alpha=str(params.alpha),
            beta=str(params.beta),
            n=n,
            normalization=norm.value,
            scale_squared=str(fam.scale_sq),
            coefficients=tuple(str(c) for c in fam.poly.coeffs),
        )

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "n": self.n,
            "normalization": self.normalization,
            "scale_squared": self.scale_squared,
            "coefficients": list(self.coefficients),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PolynomialRecord":
        return cls(
            alpha=str(data["alpha"]),
            beta=str(data["beta"]),
            n=int(data["n"]),
            normalization=str(data["normalization"]),
            scale_squared=str(data["scale_squared"]),
            coefficients=tuple(str(c) for c in data["coefficients"]),
        )

    def to_scaled_polynomial(self) -> ScaledPolynomial:
        return ScaledPolynomial(
            Fraction(self.scale_squared),
            Polynomial(Fraction(c) for c in self.coefficients),
        )

    def cache_key(self) -> str:
        return f"({self.alpha},{self.beta},{self.n},{self.normalization})"


def _load_cache(path: str) -> dict:
    if not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("cache root is not an object")
        return data
    except (OSError, ValueError) as exc:
        print(f"warning: discarding corrupt cache {path!r} ({exc})", file=sys.stderr)
        return {}


def _store_cache(path: str, cache: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(cache, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"warning: could not write cache {path!r} ({exc})", file=sys.stderr)


def _record_for(params: JacobiParams, n: int, norm: Normalization, cfg: CliConfig) -> PolynomialRecord:
    key = f"({params.alpha},{params.beta},{n},{norm.value})"
    cache = _load_cache(cfg.cache_path) if cfg.cache_path else {}
    if key in cache:
        try:
            return PolynomialRecord.from_dict(cache[key])
        except (KeyError, TypeError, ValueError):
            print(f"warning: ignoring malformed cache entry {key}", file=sys.stderr)
    record = PolynomialRecord.build(params, n, norm)
    if cfg.cache_path:
        cache[key] = record.to_dict()
        _store_cache(cfg.cache_path, cache)
    return record


# ---------------------------------------------------------------------------
# subcommands


def cmd_stirling(args: argparse.Namespace, cfg: CliConfig) -> int:
    table = build_table(args.max_n)
    if cfg.output_format == "json":
        _emit_json(
            {
                "command": "stirling",
                "max_n": table.max_n,
                "entries": [
                    {"n": n, "j": j, "value": str(table.entry(n, j))}
                    for n in range(table.max_n + 1)
                    for j in range(table.max_n + 1)
                ],
            }
        )
    elif cfg.output_format == "csv":
        rows = [
            [str(n), str(j), str(table.entry(n, j))]
            for n in range(table.max_n + 1)
            for j in range(table.max_n + 1)
        ]
        _emit_csv(["n", "j", "value"], rows)
    else:
        widths = [
            max(len(str(table.entry(n, j))) for j in range(table.max_n + 1))
            for n in range(table.max_n + 1)
        ]
        for j in range(table.max_n + 1):
            print(
                " ".join(
                    str(table.entry(n, j)).rjust(widths[n])
                    for n in range(table.max_n + 1)
                )
            )
    return EXIT_OK


_NORM_NAMES = {
    "reference": Normalization.REFERENCE,
    "l2": Normalization.L2,
    "phi": Normalization.PHI,
}


def cmd_poly(args: argparse.Namespace, cfg: CliConfig) -> int:
    params = JacobiParams(_parse_rational(args.alpha), _parse_rational(args.beta))
    record = _record_for(params, args.n, _NORM_NAMES[args.normalization], cfg)
    if cfg.output_format == "json":
        _emit_json(record.to_dict())
    elif cfg.output_format == "csv":
        header = ["alpha", "beta", "n", "normalization", "scale_squared"] + [
            f"c{i}" for i in range(len(record.coefficients))
        ]
        row = [
            record.alpha,
            record.beta,
            str(record.n),
            record.normalization,
            record.scale_squared,
            *record.coefficients,
        ]
        _emit_csv(header, [row])
    else:
        print(
            f"degree {record.n}, alpha = {record.alpha}, beta = {record.beta}, "
            f"normalization = {record.normalization}"
        )
        print(f"scale_squared = {record.scale_squared}")
        print(f"value = {record.to_scaled_polynomial()}")
    return EXIT_OK


def _build_ip_spec(args: argparse.Namespace, cfg: CliConfig):
    k = _parse_rational(args.k) if args.k is not None else cfg.default_k
    if args.ip == "phi":
        return SobolevPhi()
    if args.ip == "classical":
        alpha = _parse_rational(args.alpha) if args.alpha is not None else Fraction(-1)
        beta = _parse_rational(args.beta) if args.beta is not None else Fraction(-1)
        return Classical(JacobiParams(alpha, beta))
    if args.ld_n is None:
        raise UsageError("--ip ld requires --ld-n")
    return LeftDefinite(args.ld_n, k)


def _ip_label(spec) -> str:
    if isinstance(spec, SobolevPhi):
        return "phi"
    if isinstance(spec, Classical):
        return f"classical({spec.params.alpha},{spec.params.beta})"
    return f"leftdefinite({spec.n},{spec.k})"


def cmd_gram(args: argparse.Namespace, cfg: CliConfig) -> int:
    spec = _build_ip_spec(args, cfg)
    if args.family is not None:
        family = _NORM_NAMES[args.family]
    else:
        family = Normalization.PHI if isinstance(spec, SobolevPhi) else Normalization.L2
    gm = gram_matrix(args.max_degree, spec, family)
    if cfg.output_format == "json":
        _emit_json(
            {
                "command": "gram",
                "ip": _ip_label(spec),
                "family": family.value,
                "size": gm.size,
                "degrees": list(gm.degrees),
                "entries": [
                    {
                        "row": i,
                        "col": j,
                        "coeff": str(gm.entry(i, j).coeff),
                        "radicand": str(gm.entry(i, j).radicand),
                    }
                    for i in range(gm.size)
                    for j in range(gm.size)
                ],
            }
        )
    elif cfg.output_format == "csv":
        rows = [
            [str(i), str(j), str(gm.entry(i, j).coeff), str(gm.entry(i, j).radicand)]
            for i in range(gm.size)
            for j in range(gm.size)
        ]
        _emit_csv(["row", "col", "coeff", "radicand"], rows)
    else:
        cells = [[str(gm.entry(i, j)) for j in range(gm.size)] for i in range(gm.size)]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            print(" ".join(c.rjust(width) for c in row))
        print(f"identity: {'yes' if gm.is_identity() else 'no'}")
    return EXIT_OK


_OPERATORS = {"a": OperatorTag.A, "t": OperatorTag.T, "bn": OperatorTag.BN}


def cmd_spectrum(args: argparse.Namespace, cfg: CliConfig) -> int:
    tag = _OPERATORS[args.operator.lower()]
    k = _parse_rational(args.k) if args.k is not None else cfg.default_k
    power = args.ld_n if tag is OperatorTag.BN else None
    if tag is OperatorTag.BN and power is None:
        power = 1
    spec = SpectrumSpec(tag, k, power)
    if args.galerkin is not None:
        if tag is OperatorTag.T:
            raise UsageError(
                "--galerkin discretizes the endpoint-vanishing form; use operator A or Bn"
            )
        numeric = galerkin_spectrum(args.galerkin, float(k))
        count = min(args.count, len(numeric))
        exact = spectrum(spec, count)
        rows = []
        for idx in range(count):
            err = abs(numeric[idx] - float(exact[idx]))
            rows.append(
                {
                    "index": idx + 2,
                    "exact": str(exact[idx]),
                    "numeric": _fmt_float(numeric[idx], cfg.float_digits),
                    "abs_error": _fmt_float(err, cfg.float_digits),
                }
            )
        if cfg.output_format == "json":
            _emit_json(
                {
                    "command": "spectrum",
                    "operator": tag.value,
                    "k": str(k),
                    "galerkin_size": args.galerkin,
                    "entries": rows,
                }
            )
        elif cfg.output_format == "csv":
            _emit_csv(
                ["index", "exact", "numeric", "abs_error"],
                [[str(r["index"]), r["exact"], r["numeric"], r["abs_error"]] for r in rows],
            )
        else:
            print(f"operator {tag.value}, k = {k}, galerkin size {args.galerkin}")
            for r in rows:
                print(
                    f"  index {r['index']}: exact {r['exact']}, numeric {r['numeric']}, "
                    f"abs error {r['abs_error']}"
                )
        return EXIT_OK
    values = spectrum(spec, args.count)
    start = 0 if tag is OperatorTag.T else 2
    rows = [
        {"index": start + i, "value": str(v)} for i, v in enumerate(values)
    ]
    if cfg.output_format == "json":
        _emit_json(
            {
                "command": "spectrum",
                "operator": tag.value,
                "k": str(k),
                "eigenvalues": rows,
            }
        )
    elif cfg.output_format == "csv":
        _emit_csv(["index", "value"], [[str(r["index"]), r["value"]] for r in rows])
    else:
        print(f"operator {tag.value}, k = {k}")
        print(", ".join(r["value"] for r in rows))
    return EXIT_OK


def cmd_chel(args: argparse.Namespace, cfg: CliConfig) -> int:
    instance = chel_preset(args.case)
    kmax, argmax = chel_K(instance, args.grid)
    payload = {
        "command": "chel",
        "case": instance.name,
        "grid": args.grid,
        "kmax": _fmt_float(kmax, cfg.float_digits),
        "kmax_squared": _fmt_float(kmax * kmax, cfg.float_digits),
        "argmax": _fmt_float(argmax, cfg.float_digits),
    }
    if cfg.output_format == "json":
        _emit_json(payload)
    elif cfg.output_format == "csv":
        _emit_csv(
            ["case", "grid", "kmax", "kmax_squared", "argmax"],
            [[payload["case"], str(payload["grid"]), payload["kmax"],
              payload["kmax_squared"], payload["argmax"]]],
        )
    else:
        print(
            f"case {payload['case']}: K = {payload['kmax']} at x = {payload['argmax']} "
            f"(K^2 = {payload['kmax_squared']})"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites

# The 9x9 Jacobi-Stirling triangle, columns n = 0..8, rows j = 0..8.
_STIRLING_REFERENCE = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 2, 4, 8, 16, 32, 64),
    (0, 0, 0, 1, 8, 52, 320, 1936, 11648),
    (0, 0, 0, 0, 1, 20, 292, 3824, 47824),
    (0, 0, 0, 0, 0, 1, 40, 1092, 25664),
    (0, 0, 0, 0, 0, 0, 1, 70, 3192),
    (0, 0, 0, 0, 0, 0, 0, 1, 112),
    (0, 0, 0, 0, 0, 0, 0, 0, 1),
)

Check = tuple[str, bool, str]


def _check(name: str, ok: bool, detail: str = "") -> Check:
    return (name, bool(ok), detail)


def _golden_max(fn, lo: float, hi: float) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > 1e-13:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = fn(x1)
    return fn(0.5 * (lo + hi))


def _random_poly(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1)])


def _suite_stirling() -> list[Check]:
    checks = []
    table = build_table(8)
    ok = all(
        table.entry(n, j) == _STIRLING_REFERENCE[j][n]
        for n in range(9)
        for j in range(9)
    )
    checks.append(_check("stirling.table-9x9", ok))
    l5 = composite_coefficients(5, 0).c
    checks.append(
        _check("stirling.fifth-power-coefficients", list(l5) == [0, 0, 8, 52, 20, 1], str(list(map(str, l5))))
    )
    ok = all(
        verify_defining_identity(n, m, k)
        for n in range(1, 7)
        for m in range(2, 13)
        for k in (Fraction(0), Fraction(1), Fraction(7, 3))
    )
    checks.append(_check("stirling.defining-identity", ok))
    ok = all(
        jacobi_stirling(n, j) == 0 for n in range(13) for j in range(n + 1, 13)
    ) and all(jacobi_stirling(n, n) == 1 for n in range(13))
    checks.append(_check("stirling.triangularity-and-diagonal", ok))
    ok = all(
        list(composite_coefficients(n, 0).c) == [jacobi_stirling(n, j) for j in range(n + 1)]
        for n in range(1, 9)
    )
    checks.append(_check("stirling.zero-shift-column", ok))
    return checks


def _suite_orthogonality() -> list[Check]:
    checks = []
    checks.append(
        _check("orthogonality.sobolev-gram-identity",
               gram_matrix(10, SobolevPhi(), Normalization.PHI).is_identity())
    )
    checks.append(
        _check("orthogonality.classical-gram-identity",
               gram_matrix(6, Classical(JacobiParams(1, 1)), Normalization.L2).is_identity())
    )
    gm = gram_matrix(8, LeftDefinite(2, 1), Normalization.L2)
    ok = gm.is_diagonal() and all(
        gm.entry(i, i) == Surd.from_rational(Fraction((m * (m - 1) + 1) ** 2))
        for i, m in enumerate(gm.degrees)
    )
    checks.append(_check("orthogonality.left-definite-gram", ok))
    ok = all(
        nonclassical_jacobi(n, Normalization.PHI).scale_sq
        * integrate_weighted(
            nonclassical_jacobi(n, Normalization.PHI).poly ** 2, -1
        )
        == Fraction(1, n * (n - 1))
        for n in range(2, 13)
    )
    checks.append(_check("orthogonality.normalization-bridge", ok))
    ok = True
    for params in (JacobiParams(0, 0), JacobiParams(1, 1), JacobiParams(1, 2)):
        for n in range(7):
            for j in range(n + 1):
                derivative_orthogonality_value(n, n, j, params)
                if n >= 1:
                    if derivative_orthogonality_value(n, n - 1, j, params) != 0:
                        ok = False
    checks.append(_check("orthogonality.derivative-weighted", ok))
    ok = all(
        knorm_crosscheck(n, a, b) < 1e-8
        for n in range(0, 7)
        for (a, b) in ((0.0, 0.0), (1.0, 1.0), (0.5, -0.25))
    )
    checks.append(_check("orthogonality.float-normalization", ok))
    return checks


def _suite_eigen() -> list[Check]:
    checks = []
    ok = True
    for k in (Fraction(0), Fraction(1)):
        for n in range(13):
            fam = nonclassical_jacobi(n, Normalization.PHI)
            lam = Fraction(n * (n - 1)) + k
            if apply_ell(fam, k).poly != lam * fam.poly:
                ok = False
    checks.append(_check("eigen.differential-expression", ok))
    om = operator_matrix(8, SpectrumSpec(OperatorTag.T, 1))
    ok = om.is_diagonal() and all(
        om.entry(i, i) == Surd.from_rational(Fraction(d * (d - 1) + 1))
        for i, d in enumerate(om.degrees)
    )
    checks.append(_check("eigen.sobolev-operator-matrix", ok))
    om = operator_matrix(8, SpectrumSpec(OperatorTag.A, 1))
    ok = om.is_diagonal() and all(
        om.entry(i, i) == Surd.from_rational(Fraction(d * (d - 1) + 1))
        for i, d in enumerate(om.degrees)
    )
    checks.append(_check("eigen.weighted-operator-matrix", ok))
    checks.append(
        _check(
            "eigen.spectra",
            spectrum(SpectrumSpec(OperatorTag.A, 0), 4) == [2, 6, 12, 20]
            and spectrum(SpectrumSpec(OperatorTag.T, 1), 5) == [1, 1, 3, 7, 13]
            and spectrum(SpectrumSpec(OperatorTag.BN, 2, power=3), 3) == [4, 8, 14],
        )
    )
    ok = all(
        apply_ell_power(nonclassical_jacobi(m, Normalization.PHI), p, 1).poly
        == (Fraction(m * (m - 1) + 1) ** p)
        * nonclassical_jacobi(m, Normalization.PHI).poly
        for m in range(7)
        for p in range(1, 4)
    )
    checks.append(_check("eigen.composite-powers", ok))
    return checks


def _suite_identities() -> list[Check]:
    checks = []
    rng = random.Random(1234)
    ok = True
    for _ in range(100):
        f = _random_poly(rng, rng.randint(0, 8))
        g = _random_poly(rng, rng.randint(0, 8))
        k = Fraction(rng.randint(0, 40), rng.randint(1, 9))
        if not verify_lagrange_identity(f, g, k) or not verify_dirichlet_identity(f, g, k):
            ok = False
    checks.append(_check("identities.lagrange-dirichlet", ok))
    ok = True
    for _ in range(50):
        f = _random_poly(rng, rng.randint(0, 10))
        f1, f2 = decompose_w(f)
        if f1 + f2 != f or f1(Fraction(1)) != 0 or f1(Fraction(-1)) != 0 or f2.degree > 1:
            ok = False
        for low in (nonclassical_jacobi(0, Normalization.PHI), nonclassical_jacobi(1, Normalization.PHI)):
            if inner_product(ScaledPolynomial.of(f1), low, SobolevPhi()) != Surd.zero():
                ok = False
    checks.append(_check("identities.sobolev-decomposition", ok))
    ok = True
    seen = 0
    for av in (-1, 0, 1, 2):
        for bv in (-1, 0, 1, 2):
            params = JacobiParams(av, bv)
            for n in range(7):
                for j in range(n + 1):
                    try:
                        if not check_derivative_identity(n, j, params):
                            ok = False
                        seen += 1
                    except (UndefinedNormalization, PoleInGammaRatio):
                        continue
    checks.append(_check("identities.derivative-identity", ok and seen > 0, f"{seen} cases"))
    ok = all(factorization_check(n) > 0 for n in range(2, 9))
    checks.append(_check("identities.endpoint-factorization", ok))
    ok = True
    for k in (Fraction(0), Fraction(1), Fraction(7, 3)):
        for _ in range(10):
            f = ONE_MINUS_X2 * _random_poly(rng, rng.randint(0, 8))
            if f.is_zero:
                continue
            fs = ScaledPolynomial.of(f)
            lower = inner_product(apply_ell(fs, k), fs, Classical(NONCLASSICAL)).to_fraction()
            norm = inner_product(fs, fs, Classical(NONCLASSICAL)).to_fraction()
            if lower - k * norm != integrate_weighted(f.derivative() * f.derivative(), 0):
                ok = False
            if lower - k * norm < 0:
                ok = False
    checks.append(_check("identities.lower-bound", ok))
    ok = True
    for _ in range(10):
        f = ONE_MINUS_X2 * _random_poly(rng, rng.randint(0, 6))
        g = ONE_MINUS_X2 * _random_poly(rng, rng.randint(0, 6))
        k = Fraction(rng.randint(0, 5))
        direct = integrate_weighted(f.derivative() * g.derivative(), 0) + k * integrate_weighted(f * g, -1)
        if inner_product(ScaledPolynomial.of(f), ScaledPolynomial.of(g), LeftDefinite(1, k)) != Surd(direct, Fraction(1)):
            ok = False
        phi_val = inner_product(ScaledPolynomial.of(f), ScaledPolynomial.of(g), SobolevPhi())
        ld0 = inner_product(ScaledPolynomial.of(f), ScaledPolynomial.of(g), LeftDefinite(1, 0))
        if phi_val != ld0:
            ok = False
    checks.append(_check("identities.first-left-definite-bridge", ok))
    return checks


def _suite_galerkin() -> list[Check]:
    checks = []
    ok = True
    detail = []
    for k in (0.0, 1.0):
        ev20 = galerkin_spectrum(20, k)
        ev25 = galerkin_spectrum(25, k)
        exact = [m * (m - 1) + k for m in range(2, 6)]
        worst = max(abs(ev20[i] - exact[i]) for i in range(4))
        detail.append(f"k={k}: err {worst:.2e}")
        if worst > 1e-6:
            ok = False
        if any(ev20[i] < ev25[i] - 1e-9 for i in range(4)):
            ok = False
        if any(v < k - 1e-9 for v in ev20):
            ok = False
    checks.append(_check("galerkin.spectrum-recovery", ok, "; ".join(detail)))
    kmax, _ = chel_K(chel_preset("dirichlet"), 4000)
    closed = _golden_max(
        lambda x: 0.5 * (1 - x) * math.log((1 + x) / (1 - x)), 1e-9, 1 - 1e-9
    )
    checks.append(
        _check(
            "galerkin.chel-dirichlet",
            abs(kmax * kmax - closed) < 1e-6,
            f"K^2 = {kmax * kmax:.9f} vs closed form {closed:.9f}",
        )
    )
    kmax, _ = chel_K(chel_preset("w1v1"), 4000)
    checks.append(
        _check(
            "galerkin.chel-w1v1",
            abs(kmax * kmax - math.exp(-1)) < 1e-9,
            f"K^2 = {kmax * kmax:.12f} vs 1/e",
        )
    )
    kmax, arg = chel_K(chel_preset("unit"), 1000)
    checks.append(
        _check(
            "galerkin.chel-unit",
            abs(kmax - 0.5) < 1e-9 and abs(arg - 0.5) < 1e-4,
            f"K = {kmax:.12f} at {arg:.6f}",
        )
    )
    return checks


_SUITES = {
    "stirling": _suite_stirling,
    "orthogonality": _suite_orthogonality,
    "eigen": _suite_eigen,
    "identities": _suite_identities,
    "galerkin": _suite_galerkin,
}


def cmd_verify(args: argparse.Namespace, cfg: CliConfig) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    checks: list[Check] = []
    for name in names:
        checks.extend(_SUITES[name]())
    passed = sum(1 for _, ok, _ in checks if ok)
    failed = len(checks) - passed
    if cfg.output_format == "json":
        _emit_json(
            {
                "command": "verify",
                "suite": args.suite,
                "passed": passed,
                "failed": failed,
                "checks": [
                    {"name": name, "passed": ok, "detail": detail}
                    for name, ok, detail in checks
                ],
            }
        )
    elif cfg.output_format == "csv":
        _emit_csv(
            ["name", "passed", "detail"],
            [[name, "true" if ok else "false", detail] for name, ok, detail in checks],
        )
    else:
        for name, ok, detail in checks:
            suffix = f"  ({detail})" if detail else ""
            print(f"{'PASS' if ok else 'FAIL'} {name}{suffix}")
        print(f"suite '{args.suite}': {passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _int_in_range(lo: int, hi: int | None = None):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
        if value < lo or (hi is not None and value > hi):
            bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise argparse.ArgumentTypeError(f"value must be {bound}: {value}")
        return value

    return parse


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a 'key = value' config file")
    parser.add_argument("--format", choices=FORMATS, help="output format")
    parser.add_argument("--float-digits", dest="float_digits",
                        help="significant digits for float output (6..30)")
    parser.add_argument("--cache-path", dest="cache_path",
                        help="polynomial cache file (empty disables)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jsob",
        description="Exact nonclassical Jacobi families, their orthogonality "
        "structures, spectra, and numeric cross-checks.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("stirling", help="emit the Jacobi-Stirling triangle")
    p.add_argument("--max-n", dest="max_n", type=_int_in_range(0, 64), required=True)
    _add_common(p)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("poly", help="emit one family member exactly")
    p.add_argument("--n", type=_int_in_range(0), required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--normalization", choices=sorted(_NORM_NAMES), default="reference")
    _add_common(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("gram", help="exact Gram matrix of a family")
    p.add_argument("--max-degree", dest="max_degree", type=_int_in_range(0, 64), required=True)
    p.add_argument("--ip", choices=("phi", "classical", "ld"), required=True)
    p.add_argument("--alpha", help="classical pairing parameter")
    p.add_argument("--beta", help="classical pairing parameter")
    p.add_argument("--ld-n", dest="ld_n", type=_int_in_range(1), help="left-definite order")
    p.add_argument("--k", help="spectral shift (defaults to default_k)")
    p.add_argument("--family", choices=sorted(_NORM_NAMES))
    _add_common(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("spectrum", help="exact spectra; optionally a Galerkin check")
    p.add_argument("--operator", choices=("A", "T", "Bn", "a", "t", "bn"), required=True)
    p.add_argument("--k", help="spectral shift (defaults to default_k)")
    p.add_argument("--count", type=_int_in_range(1), default=8)
    p.add_argument("--ld-n", dest="ld_n", type=_int_in_range(1), help="order for Bn")
    p.add_argument("--galerkin", type=_int_in_range(2, 200),
                   help="also run a Galerkin discretization of this size")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("chel", help="boundedness constant K for a preset instance")
    p.add_argument("--case", choices=("dirichlet", "w1v1", "unit"), required=True)
    p.add_argument("--grid", type=_int_in_range(1000), default=10000)
    _add_common(p)
    p.set_defaults(func=cmd_chel)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all", *sorted(_SUITES)), default="all")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help.
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndefinedNormalization as exc:
        print(f"undefined request: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (ConvergenceFailure, NonFiniteIntegral, MassNotPositiveDefinite) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
