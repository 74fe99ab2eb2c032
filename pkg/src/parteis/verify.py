"""Identity and invariance suites over configurable grids, with JSON reports.

Four suites cover the proved properties of the series family:

* lemma    - per-partition facts: weight-0 value, odd-weight vanishing,
             evenness in z, and the conjugation/inversion duality.
* theorem  - the same invariances for the n-aggregated series g.
* corollary- coefficient-wise invariance of the generating function, the
             q-bracket, the divisor-sum identity for weight 0, and a
             convergence diagnostic.
* remark   - exact decomposition of the square-truncated classical sum,
             closed forms for the axis term, and a float convergence table
             against the classical q-expansion.

On the rational backend every check demands exact equality; on the float
backend residuals must stay below the configured relative tolerance. Reports
are deterministic: two runs with the same config produce identical JSON
(apart from the timestamp field, which is excluded from the config hash).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import _parallel
from .eisenstein import (
    axis_closed_form,
    axis_printed_form,
    axis_sum,
    classical_G_qexp,
    f,
    f_via_quadrants,
    g,
    gen0_divisor_identity,
    gen_coeffs,
    q_bracket_coeffs,
    remark_decompose,
)
from .lattice import min_modulus_squared
from .numerics import (
    ToleranceSpec,
    abs_squared,
    format_scalar,
    int_pow,
    is_nonreal,
    neg_inverse,
    parse_scalar,
    residual_metric,
)
from .partitions import enumerate_partitions, rectangle

DEFAULT_Z_TEXTS = (
    "1/1+1/1i",
    "-2/1+1/1i",
    "1/2+-3/2i",
    "3/1+2/1i",
    "0/1+1/1i",
    "-1/1+2/1i",
    "2/3+5/1i",
    "-7/2+-1/1i",
)


def default_z_samples() -> tuple:
    return tuple(parse_scalar(t, "rational") for t in DEFAULT_Z_TEXTS)


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter grid and policy for a verification run."""

    backend: str = "rational"
    n_max: int = 12
    k_set: tuple = tuple(range(-4, 9))
    z_samples: tuple = field(default_factory=default_z_samples)
    series_n_max: int = 20
    gen0_n_max: int = 50
    n_remark: int = 6
    remark_weights: tuple = (2, 4, 6)
    n_asymptotic: tuple = (50, 100, 200, 400, 800)
    tolerance: ToleranceSpec = ToleranceSpec()

    def validate(self):
        if self.backend not in ("rational", "float"):
            raise ValueError(f"backend must be 'rational' or 'float', got {self.backend!r}")
        if self.n_max < 0 or self.series_n_max < 1 or self.gen0_n_max < 1:
            raise ValueError("grid sizes must be positive")
        if self.n_remark < 1:
            raise ValueError("n_remark must be positive")
        if not self.k_set or not all(isinstance(k, int) for k in self.k_set):
            raise ValueError("k_set must be a nonempty tuple of integers")
        if not self.z_samples:
            raise ValueError("z_samples must be nonempty")
        for z in self.z_samples:
            if not is_nonreal(z):
                raise ValueError(f"z sample {z!r} is real")
        if any(w < 2 or w % 2 for w in self.remark_weights):
            raise ValueError("remark weights must be positive even integers")
        if list(self.n_asymptotic) != sorted(set(self.n_asymptotic)):
            raise ValueError("n_asymptotic must be strictly increasing")

    @property
    def exact(self) -> bool:
        return self.backend == "rational"

    def backend_samples(self) -> tuple:
        if self.exact:
            return tuple(self.z_samples)
        return tuple(complex(z) for z in self.z_samples)

    def even_weights(self) -> list[int]:
        return [k for k in self.k_set if k % 2 == 0]

    def odd_weights(self) -> list[int]:
        return [k for k in self.k_set if k % 2]

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "n_max": self.n_max,
            "k_set": list(self.k_set),
            "z_samples": [format_scalar(z) for z in self.backend_samples()],
            "series_n_max": self.series_n_max,
            "gen0_n_max": self.gen0_n_max,
            "n_remark": self.n_remark,
            "remark_weights": list(self.remark_weights),
            "n_asymptotic": list(self.n_asymptotic),
            "tolerance": {
                "relative_tol": self.tolerance.relative_tol,
                "absolute_floor": self.tolerance.absolute_floor,
            },
        }


def _config_hash(config_dict: dict) -> str:
    canonical = json.dumps(config_dict, sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: id, anchor label, grid params, worst residual."""

    check_id: str
    paper_anchor: str
    params: dict
    residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "params": self.params,
            "residual": self.residual,
            "pass": self.passed,
        }


@dataclass
class Report:
    """Deterministic result bundle for one suite (or the merged 'all' run)."""

    suite: str
    config: dict
    config_hash: str
    checks: list
    sections: dict
    timestamp: str | None = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        return {
            "total": len(self.checks),
            "passed": sum(1 for c in self.checks if c.passed),
        }

    def to_dict(self, include_timestamp: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "config": self.config,
            "config_hash": self.config_hash,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }
        if self.sections:
            out["sections"] = self.sections
        if include_timestamp and self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self, include_timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(include_timestamp), indent=2) + "\n"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _passes(cfg: SuiteConfig, residual: float) -> bool:
    if cfg.exact:
        return residual == 0.0
    return residual <= cfg.tolerance.relative_tol


def _make_report(suite: str, cfg: SuiteConfig, checks: list, sections: dict | None = None) -> Report:
    config_dict = cfg.to_dict()
    return Report(
        suite=suite,
        config=config_dict,
        config_hash=_config_hash(config_dict),
        checks=checks,
        sections=sections or {},
        timestamp=_now(),
    )


def _grid_partitions(cfg: SuiteConfig):
    for n in range(cfg.n_max + 1):
        yield from enumerate_partitions(n)


# ---------------------------------------------------------------------------
# lemma suite


def run_lemma_suite(cfg: SuiteConfig) -> Report:
    """Per-partition identities over all partitions of n <= n_max."""
    cfg.validate()
    zs = cfg.backend_samples()
    base_params = {
        "n_max": cfg.n_max,
        "z_samples": [format_scalar(z) for z in zs],
    }

    def check_weight_zero():
        worst = 0.0
        for z in zs:
            for lam in _grid_partitions(cfg):
                worst = max(worst, residual_metric(f(lam, z, 0), lam.size + z * 0))
        return CheckResult(
            "lemma_i_weight_zero_is_size",
            "Lemma (i)",
            dict(base_params),
            worst,
            _passes(cfg, worst),
        )

    def check_odd_vanishing():
        odd = cfg.odd_weights()
        worst = 0.0
        for z in zs:
            for k in odd:
                for lam in _grid_partitions(cfg):
                    worst = max(worst, residual_metric(f(lam, z, k), z * 0))
        return CheckResult(
            "lemma_ii_odd_weight_vanishes",
            "Lemma (ii)",
            dict(base_params, k_odd=odd),
            worst,
            _passes(cfg, worst),
        )

    def check_evenness():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            for k in even:
                for lam in _grid_partitions(cfg):
                    worst = max(worst, residual_metric(f(lam, -z, k), f(lam, z, k)))
        return CheckResult(
            "lemma_iii_even_in_z",
            "Lemma (iii)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    def check_conjugation_duality():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            z_inv = neg_inverse(z)
            for k in even:
                zk = int_pow(z, k)
                for lam in _grid_partitions(cfg):
                    lhs = zk * f(lam, z, k)
                    rhs = f(lam.conjugate(), z_inv, k)
                    worst = max(worst, residual_metric(lhs, rhs))
        return CheckResult(
            "lemma_iv_conjugation_inversion_duality",
            "Lemma (iv)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    def check_quadrant_regrouping():
        # f recomputed from the four quadrant sums; also the odd-weight
        # cancellation between opposite quadrants
        worst = 0.0
        small_n = min(cfg.n_max, 8)
        for z in zs:
            for k in cfg.k_set:
                for n in range(small_n + 1):
                    for lam in enumerate_partitions(n):
                        worst = max(
                            worst, residual_metric(f_via_quadrants(lam, z, k), f(lam, z, k))
                        )
        return CheckResult(
            "lemma_quadrant_regrouping",
            "Lemma proof, quadrant decomposition",
            dict(base_params, n_max=small_n, k_set=list(cfg.k_set)),
            worst,
            _passes(cfg, worst),
        )

    checks = _parallel.map_ordered(
        lambda fn: fn(),
        [
            check_weight_zero,
            check_odd_vanishing,
            check_evenness,
            check_conjugation_duality,
            check_quadrant_regrouping,
        ],
    )
    return _make_report("lemma", cfg, checks)


# ---------------------------------------------------------------------------
# theorem suite


def run_theorem_suite(cfg: SuiteConfig) -> Report:
    """Aggregated-series identities for n <= n_max."""
    cfg.validate()
    zs = cfg.backend_samples()
    base_params = {
        "n_max": cfg.n_max,
        "z_samples": [format_scalar(z) for z in zs],
    }

    def check_odd():
        odd = cfg.odd_weights()
        worst = 0.0
        for z in zs:
            for k in odd:
                for n in range(cfg.n_max + 1):
                    worst = max(worst, residual_metric(g(n, z, k), z * 0))
        return CheckResult(
            "theorem1_odd_weight_vanishes",
            "Theorem 1",
            dict(base_params, k_odd=odd),
            worst,
            _passes(cfg, worst),
        )

    def check_inversion():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            z_inv = neg_inverse(z)
            for k in even:
                zk = int_pow(z, k)
                for n in range(cfg.n_max + 1):
                    worst = max(worst, residual_metric(g(n, z_inv, k), zk * g(n, z, k)))
        return CheckResult(
            "theorem1_i_weighted_inversion",
            "Theorem 1(i)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    def check_reflection():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            for k in even:
                for n in range(cfg.n_max + 1):
                    worst = max(worst, residual_metric(g(n, -z, k), g(n, z, k)))
        return CheckResult(
            "theorem1_ii_reflection",
            "Theorem 1(ii)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    checks = _parallel.map_ordered(
        lambda fn: fn(), [check_odd, check_inversion, check_reflection]
    )
    return _make_report("theorem", cfg, checks)


# ---------------------------------------------------------------------------
# corollary suite


def run_corollary_suite(cfg: SuiteConfig) -> Report:
    """Coefficient-wise generating-function identities plus exact integer ones."""
    cfg.validate()
    zs = cfg.backend_samples()
    n_series = cfg.series_n_max
    base_params = {
        "series_n_max": n_series,
        "z_samples": [format_scalar(z) for z in zs],
    }

    def series_residual(lhs, rhs) -> float:
        return max(residual_metric(a, b) for a, b in zip(lhs.coeffs, rhs.coeffs))

    def check_odd():
        odd = cfg.odd_weights()
        worst = 0.0
        for z in zs:
            zero = z * 0
            for k in odd:
                for c in gen_coeffs(k, z, n_series).coeffs:
                    worst = max(worst, residual_metric(c, zero))
        return CheckResult(
            "corollary1_odd_weight_vanishes",
            "Corollary 1",
            dict(base_params, k_odd=odd),
            worst,
            _passes(cfg, worst),
        )

    def check_inversion():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            z_inv = neg_inverse(z)
            for k in even:
                zk = int_pow(z, k)
                base = gen_coeffs(k, z, n_series)
                transformed = gen_coeffs(k, z_inv, n_series)
                for c_t, c_b in zip(transformed.coeffs, base.coeffs):
                    worst = max(worst, residual_metric(c_t, zk * c_b))
        return CheckResult(
            "corollary1_i_weighted_inversion",
            "Corollary 1(i)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    def check_reflection():
        even = cfg.even_weights()
        worst = 0.0
        for z in zs:
            for k in even:
                worst = max(
                    worst,
                    series_residual(gen_coeffs(k, -z, n_series), gen_coeffs(k, z, n_series)),
                )
        return CheckResult(
            "corollary1_ii_reflection",
            "Corollary 1(ii)",
            dict(base_params, k_even=even),
            worst,
            _passes(cfg, worst),
        )

    def check_q_bracket():
        even = cfg.even_weights()
        odd = cfg.odd_weights()
        worst = 0.0
        for z in zs:
            zero = z * 0
            for k in even:
                worst = max(
                    worst,
                    series_residual(
                        q_bracket_coeffs(k, -z, n_series), q_bracket_coeffs(k, z, n_series)
                    ),
                )
            for k in odd:
                for c in q_bracket_coeffs(k, z, n_series).coeffs:
                    worst = max(worst, residual_metric(c, zero))
        return CheckResult(
            "q_bracket_inherits_symmetry",
            "Remark 2",
            dict(base_params, k_even=even, k_odd=odd),
            worst,
            _passes(cfg, worst),
        )

    def check_gen0():
        residuals = gen0_divisor_identity(cfg.gen0_n_max)
        worst = max(abs(float(c)) for c in residuals.coeffs)
        return CheckResult(
            "gen0_divisor_convolution",
            "weight-0 divisor identity",
            {"n_max": cfg.gen0_n_max},
            worst,
            worst == 0.0,
        )

    def check_convergence_diag():
        # |f(lam,z,k)|^2 <= size^2 * (min |w|^2)^(-k) for k >= 1, via the
        # measured minimum lattice modulus (the |1+z| shortcut is not a valid
        # lower bound for every lattice, e.g. z = 1+i with w = z-1)
        ks = [k for k in cfg.k_set if k >= 1]
        worst = 0.0
        n_cap = min(cfg.n_max, 10)
        for z in zs:
            for n in range(1, n_cap + 1):
                for lam in enumerate_partitions(n):
                    mm2 = min_modulus_squared(lam, z)
                    for k in ks:
                        lhs = abs_squared(f(lam, z, k))
                        bound = n * n * mm2 ** (-k)
                        if lhs > bound:
                            worst = max(worst, float(lhs - bound) / max(float(bound), 1.0))
        return CheckResult(
            "corollary1_convergence_diagnostic",
            "Corollary 1 proof (diagnostic)",
            dict(base_params, n_max=n_cap, k_set=ks),
            worst,
            worst == 0.0,
        )

    checks = _parallel.map_ordered(
        lambda fn: fn(),
        [
            check_odd,
            check_inversion,
            check_reflection,
            check_q_bracket,
            check_gen0,
            check_convergence_diag,
        ],
    )
    sections = {
        "convergence_bound_note": (
            "the diagnostic uses the measured minimum lattice-point modulus; "
            "the simpler |1+z| lower bound fails at e.g. z=1+1i, w=z-1"
        )
    }
    return _make_report("corollary", cfg, checks, sections)


# ---------------------------------------------------------------------------
# remark suite


def run_remark_suite(cfg: SuiteConfig) -> Report:
    """Truncation decomposition, axis closed forms, and float asymptotics."""
    cfg.validate()
    zs = cfg.backend_samples()
    base_params = {
        "n_remark": cfg.n_remark,
        "weights": list(cfg.remark_weights),
        "z_samples": [format_scalar(z) for z in zs],
    }

    def check_decomposition():
        worst = 0.0
        for z in zs:
            for k2 in cfg.remark_weights:
                for trunc in range(1, cfg.n_remark + 1):
                    dec = remark_decompose(k2, z, trunc)
                    worst = max(
                        worst, residual_metric(dec.lhs, dec.rect_term + dec.axis_term)
                    )
        return CheckResult(
            "remark1_truncation_decomposition",
            "Remark 1",
            dict(base_params),
            worst,
            _passes(cfg, worst),
        )

    def check_axis_closed_form():
        worst = 0.0
        for z in zs:
            for k2 in cfg.remark_weights:
                for trunc in range(1, cfg.n_remark + 1):
                    worst = max(
                        worst,
                        residual_metric(
                            axis_sum(k2, z, trunc), axis_closed_form(k2, z, trunc)
                        ),
                    )
        return CheckResult(
            "remark1_axis_enumerated_factor",
            "Remark 1",
            dict(base_params),
            worst,
            _passes(cfg, worst),
        )

    def factor_rows():
        rows = []
        for k2 in cfg.remark_weights:
            for z in zs:
                for trunc in range(1, cfg.n_remark + 1):
                    enum_value = axis_sum(k2, z, trunc)
                    rows.append(
                        {
                            "k2": k2,
                            "z": format_scalar(z),
                            "N": trunc,
                            "enumerated_factor_residual": residual_metric(
                                enum_value, axis_closed_form(k2, z, trunc)
                            ),
                            "printed_factor_residual": residual_metric(
                                enum_value, axis_printed_form(k2, z, trunc)
                            ),
                        }
                    )
        return rows

    def asymptotic_tables():
        # float-only: the comparison value involves pi
        tables = []
        z = 2j
        for k2 in (4, 6):
            comparison = classical_G_qexp(k2, z)
            rows = []
            for trunc in cfg.n_asymptotic:
                approx = 4 * f(rectangle(trunc), z, k2) + axis_sum(k2, z, trunc)
                rows.append({"N": trunc, "abs_error": abs(approx - comparison.value)})
            tables.append(
                {
                    "weight": k2,
                    "z": format_scalar(z),
                    "qexp_tail_bound": comparison.tail_bound,
                    "rows": rows,
                }
            )
        return tables

    def check_asymptotic(tables):
        worst = 0.0
        ok = True
        for table in tables:
            errs = [row["abs_error"] for row in table["rows"]]
            if not all(b < a for a, b in zip(errs, errs[1:])):
                ok = False
            if table["weight"] == 4:
                worst = max(worst, errs[-1])
                if errs[-1] >= 1e-4:
                    ok = False
        return CheckResult(
            "remark1_asymptotic_convergence",
            "Remark 1 (asymptotic)",
            {
                "z": "0+2i",
                "weights": [4, 6],
                "n_values": list(cfg.n_asymptotic),
                "final_error_threshold_weight4": 1e-4,
            },
            worst,
            ok,
        )

    decomposition, axis_closed = _parallel.map_ordered(
        lambda fn: fn(), [check_decomposition, check_axis_closed_form]
    )
    rows = factor_rows()
    tables = asymptotic_tables()
    checks = [decomposition, axis_closed, check_asymptotic(tables)]
    tol = cfg.tolerance.relative_tol if not cfg.exact else 0.0
    sections = {
        "factor_comparison": rows,
        "printed_factor_discrepant": any(
            row["printed_factor_residual"] > max(tol, 1e-12) for row in rows
        ),
        "asymptotic": tables,
    }
    return _make_report("remark", cfg, checks, sections)


_SUITES = {
    "lemma": run_lemma_suite,
    "theorem": run_theorem_suite,
    "corollary": run_corollary_suite,
    "remark": run_remark_suite,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    """Run one named suite, or the merged 'all' report."""
    if name == "all":
        reports = [_SUITES[s](cfg) for s in ("lemma", "theorem", "corollary", "remark")]
        checks = [c for r in reports for c in r.checks]
        sections = {}
        for r in reports:
            sections.update(r.sections)
        merged = _make_report("all", cfg, checks, sections)
        return merged
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return _SUITES[name](cfg)
