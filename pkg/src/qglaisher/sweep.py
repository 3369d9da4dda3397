"""Parameter sweeps over claim instances, report assembly and the kernel benchmark."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from . import claims as C
from .bigpoly import IntPoly, sub
from .claims import ClaimId, VerificationRecord
from .congruence import reduce, reduce_oracle
from .errors import QGlaisherError
from .primes import primes_between
from .qcore import q_binomial, q_binomial_pascal

log = logging.getLogger(__name__)

ALL_CLAIMS = tuple(ClaimId)
FORMATS = ("json", "csv", "human")

# claims whose hypotheses demand p >= 5; the rest take any odd prime
_P_GE5 = {ClaimId.GLAISHER_BINOM, ClaimId.GLAISHER_PROD, ClaimId.THEOREM1, ClaimId.LEMMA1, ClaimId.THEOREM2}
_INTEGER = {ClaimId.GLAISHER_BINOM, ClaimId.GLAISHER_PROD}
_BINOMIAL_LHS = {
    ClaimId.ANDREWS_Q: lambda p, m: ((m + 1) * p - 1, p - 1),
    ClaimId.THEOREM1: lambda p, m: ((m + 1) * p - 1, p - 1),
    ClaimId.LEMMA1: lambda p, m: ((m + 1) * p, p),
}


class ConfigError(ValueError):
    """Malformed sweep configuration (maps to the usage exit code)."""


@dataclass
class SweepConfig:
    claims: tuple = ALL_CLAIMS
    p_min: int = 3
    p_max: int = 31
    m_min: int = 1
    m_max: int = 4
    i_max: int = 12
    s_set: tuple = (1, 2, 3, 4)
    workers: int = 1
    format: str = "json"
    negative_controls: bool = False
    degree_cap: int = C.DEFAULT_DEGREE_CAP
    theorem2_allow_p3: bool = False

    def __post_init__(self):
        try:
            self.claims = tuple(sorted((ClaimId(c) for c in self.claims), key=lambda c: c.order))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        self.s_set = tuple(sorted(set(self.s_set)))
        self.validate()

    def validate(self) -> None:
        if self.p_min > self.p_max:
            raise ConfigError(f"p_min={self.p_min} > p_max={self.p_max}")
        if self.m_min > self.m_max:
            raise ConfigError(f"m_min={self.m_min} > m_max={self.m_max}")
        if self.m_min < 1:
            raise ConfigError("m_min must be at least 1")
        if self.i_max < 0:
            raise ConfigError("i_max must be non-negative")
        if not self.s_set or min(self.s_set) < 1:
            raise ConfigError("s values must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.degree_cap < 1:
            raise ConfigError("degree_cap must be positive")

    def echo(self) -> dict:
        d = asdict(self)
        d["claims"] = [c.value for c in self.claims]
        d["s_set"] = list(self.s_set)
        return d


@dataclass
class SweepReport:
    config: SweepConfig
    records: list
    wall_time: float = 0.0
    warnings: list = field(default_factory=list)
    version: str = __version__

    @property
    def summary(self) -> dict:
        recs = self.records
        regular = [r for r in recs if r.control is None]
        controls = [r for r in recs if r.control is not None]
        return {
            "total": len(recs),
            "holds": sum(1 for r in regular if r.error is None and r.holds),
            "fails": sum(1 for r in regular if r.error is None and not r.holds),
            "errors": sum(1 for r in recs if r.error is not None),
            "inconsistencies": sum(1 for r in recs if r.inconsistency is not None),
            "controls": len(controls),
            "controls_rejected": sum(1 for r in controls if r.error is None and not r.holds),
            "unexpected": sum(1 for r in recs if not r.ok),
            "wall_time_ms": round(self.wall_time * 1000, 3),
        }

    @property
    def exit_code(self) -> int:
        return 0 if all(r.ok for r in self.records) else 1

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config.echo(),
            "records": [record_to_dict(r) for r in self.records],
            "summary": self.summary,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        cols = ["claim", "p", "m", "i", "s", "control", "holds", "lhs_degree", "max_coeff_bits",
                "wall_time_ms", "error", "inconsistency"]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in self.records:
            row = record_to_dict(r)
            row["holds"] = str(row["holds"]).lower()
            w.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in cols})
        return buf.getvalue()

    def to_human(self) -> str:
        lines = [f"{'claim':<16}{'instances':>10}{'holds':>8}{'fails':>8}{'errors':>8}{'controls':>10}"]
        for cid in self.config.claims:
            rs = [r for r in self.records if r.claim_id == cid]
            reg = [r for r in rs if r.control is None]
            lines.append(
                f"{cid.value:<16}{len(reg):>10}"
                f"{sum(r.holds and r.error is None for r in reg):>8}"
                f"{sum(not r.holds and r.error is None for r in reg):>8}"
                f"{sum(r.error is not None for r in rs):>8}"
                f"{len(rs) - len(reg):>10}"
            )
        s = self.summary
        lines.append("")
        lines.append(
            f"{s['total']} records, {s['unexpected']} unexpected, "
            f"{s['inconsistencies']} inconsistencies, {s['wall_time_ms'] / 1000:.2f} s"
        )
        for r in self.records:
            if not r.ok:
                lines.append(f"  UNEXPECTED {r.claim_id.value} {r.params} control={r.control} "
                             f"holds={r.holds} error={r.error} inconsistency={r.inconsistency}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: Optional[str] = None) -> str:
        fmt = fmt or self.config.format
        return {"json": self.to_json, "csv": self.to_csv, "human": self.to_human}[fmt]()


def record_to_dict(r: VerificationRecord) -> dict:
    d = {"claim": ClaimId(r.claim_id).value, "p": r.params.get("p"), "m": r.params.get("m")}
    if "i" in r.params:
        d["i"] = r.params["i"]
        d["s"] = r.params["s"]
    if r.control is not None:
        d["control"] = r.control
    d["holds"] = r.holds
    d["lhs_degree"] = r.lhs_degree
    d["max_coeff_bits"] = r.max_coeff_bits
    if r.residual is not None and not r.holds:
        d["residual"] = r.residual.to_strings()
    if r.error is not None:
        d["error"] = r.error
    if r.inconsistency is not None:
        d["inconsistency"] = r.inconsistency
    if r.detail:
        d["detail"] = {k: str(v) for k, v in r.detail.items()}
    d["wall_time_ms"] = round(r.wall_time * 1000, 3)
    return d


def strip_timing(report: dict) -> dict:
    """Copy of a report dict without wall-clock fields and tool version."""
    out = json.loads(json.dumps(report))
    out.pop("version", None)
    out["summary"].pop("wall_time_ms", None)
    for r in out["records"]:
        r.pop("wall_time_ms", None)
    return out


# -- task enumeration ---------------------------------------------------------

def enumerate_tasks(config: SweepConfig) -> list:
    """``(claim, params, control)`` triples for every in-hypothesis instance."""
    primes = primes_between(config.p_min, config.p_max)
    ms = range(config.m_min, config.m_max + 1)
    tasks = []
    for cid in config.claims:
        if cid is ClaimId.THEOREM2 and config.theorem2_allow_p3:
            ps = [p for p in primes if p >= 3]
        elif cid in _P_GE5:
            ps = [p for p in primes if p >= 5]
        else:
            ps = [p for p in primes if p >= 3]
        if cid is ClaimId.LEMMA2:
            for p in ps:
                for i in range(config.i_max + 1):
                    for s in config.s_set:
                        tasks.append((cid.value, {"p": p, "i": i, "s": s}, None))
                        if config.negative_controls and i >= 1:
                            tasks.append((cid.value, {"p": p, "i": i, "s": s}, "rhs_plus_one"))
            continue
        for p in ps:
            for m in ms:
                params = {"p": p, "m": m}
                tasks.append((cid.value, params, None))
                if config.negative_controls:
                    tasks.append((cid.value, params, "rhs_plus_one"))
                    if cid is ClaimId.THEOREM1:
                        tasks.append((cid.value, params, "modulus_k4"))
                        tasks.append((cid.value, params, "exponent_plus_one"))
                    if cid is ClaimId.ANDREWS_Q:
                        tasks.append((cid.value, params, "exponent_plus_one"))
    return tasks


def _build(cid: ClaimId, params: dict, control: Optional[str], cap: int, allow_p3: bool,
           binomial=q_binomial):
    p = params["p"]
    exp = 1 if control == "exponent_plus_one" else 0
    if cid is ClaimId.LEMMA2:
        claim = C.build_lemma2(p, params["i"], params["s"], degree_cap=cap)
    elif cid is ClaimId.ANDREWS_Q:
        claim = C.build_andrews_q(p, params["m"], degree_cap=cap, exponent_offset=exp, binomial=binomial)
    elif cid is ClaimId.THEOREM1:
        claim = C.build_theorem1(p, params["m"], degree_cap=cap, exponent_offset=exp, binomial=binomial)
    elif cid is ClaimId.LEMMA1:
        claim = C.build_lemma1(p, params["m"], degree_cap=cap, binomial=binomial)
    elif cid is ClaimId.ANDREWS_PROD_Q:
        claim = C.build_andrews_prod_q(p, params["m"], degree_cap=cap)
    elif cid is ClaimId.THEOREM2:
        claim = C.build_theorem2(p, params["m"], degree_cap=cap, allow_p3=allow_p3)
    else:
        raise ValueError(f"{cid} has no polynomial form")
    if control == "rhs_plus_one":
        claim = C.with_rhs_plus_one(claim)
    elif control == "modulus_k4":
        claim = C.with_modulus_power(claim, 4)
    elif control == "exponent_plus_one":
        claim = C.CongruenceClaim(claim.claim_id, claim.params, claim.lhs, claim.rhs,
                                  claim.modulus, claim.paper_eq, control)
    return claim


def _integer_task(cid: ClaimId, params: dict, control: Optional[str]) -> VerificationRecord:
    fn = C.glaisher_binom if cid is ClaimId.GLAISHER_BINOM else C.glaisher_prod
    rec = fn(params["p"], params["m"], rhs_offset=1 if control == "rhs_plus_one" else 0)
    rec.control = control
    return rec


def _oracle_residual(claim) -> IntPoly:
    return reduce_oracle(sub(claim.lhs, claim.rhs), claim.modulus)


def _oracle_compare(claim, oracle_claim, rec: VerificationRecord) -> Optional[str]:
    problems = []
    if claim.claim_id in _BINOMIAL_LHS and oracle_claim.lhs != claim.lhs:
        problems.append("q_binomial disagrees with the Pascal oracle")
    slow = _oracle_residual(oracle_claim)
    if reduce(sub(claim.lhs, claim.rhs), claim.modulus) != _oracle_residual(claim):
        problems.append("reduce disagrees with reduce_oracle")
    if slow.is_zero() != rec.holds:
        problems.append("holds flag disagrees with the oracle route")
    return "; ".join(problems) or None


def run_task(task: tuple, degree_cap: int = C.DEFAULT_DEGREE_CAP, oracle: bool = False,
             allow_p3: bool = False) -> VerificationRecord:
    """Run one ``(claim, params, control)`` task; library errors become record fields.

    With ``oracle`` set, the claim is rebuilt with the Pascal q-binomial and
    checked with ``reduce_oracle``; any disagreement, including the primary
    route raising where the oracle route does not, is stored in ``inconsistency``.
    """
    name, params, control = task
    cid = ClaimId(name)
    t0 = time.perf_counter()
    try:
        if cid in _INTEGER:
            return _integer_task(cid, params, control)
        claim = _build(cid, params, control, degree_cap, allow_p3)
        rec = C.check(claim, t0)
    except QGlaisherError as exc:
        rec = VerificationRecord(cid, dict(params), False, wall_time=time.perf_counter() - t0,
                                 error=f"{type(exc).__name__}: {exc}", control=control)
        claim = None
    if oracle and cid not in _INTEGER:
        try:
            oracle_claim = _build(cid, params, control, degree_cap, allow_p3, binomial=q_binomial_pascal)
        except QGlaisherError as exc:
            if claim is not None:
                rec.inconsistency = f"oracle route raised {type(exc).__name__} but the primary route did not"
        else:
            if claim is None:
                rec.inconsistency = "primary route raised but the oracle route did not"
            else:
                rec.inconsistency = _oracle_compare(claim, oracle_claim, rec)
        rec.wall_time = time.perf_counter() - t0
    return rec


def _run_star(args):
    return run_task(*args)


def run_sweep(config: SweepConfig, oracle: bool = False) -> SweepReport:
    t0 = time.perf_counter()
    tasks = enumerate_tasks(config)
    warnings = []
    if not tasks:
        msg = f"no claim instances in p range [{config.p_min}, {config.p_max}]"
        log.warning(msg)
        warnings.append(msg)
    args = [(t, config.degree_cap, oracle, config.theorem2_allow_p3) for t in tasks]
    if config.workers == 1 or len(tasks) <= 1:
        records = [_run_star(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run_star, args, chunksize=1))
    records.sort(key=VerificationRecord.sort_key)
    return SweepReport(config, records, time.perf_counter() - t0, warnings)


def run_oracle_mode(config: SweepConfig) -> SweepReport:
    """``run_sweep`` that also recomputes q-binomials and residuals by the oracle routes."""
    return run_sweep(config, oracle=True)


# -- benchmark ----------------------------------------------------------------

BENCH_COLUMNS = ["p", "m", "lhs_degree", "q_binomial_ms", "q_binomial_pascal_ms", "reduce_ms",
                 "theorem1_ms", "peak_coeff_bits"]


def run_bench(sizes: list, degree_cap: int = C.DEFAULT_DEGREE_CAP, pascal_cap: int = 5000) -> list:
    """Time the kernel for each ``(p, m)``.

    The Pascal oracle is quadratic in ``n`` and is skipped (empty cell) above
    ``pascal_cap`` in lhs degree.
    """
    from .congruence import modulus

    rows = []
    for p, m in sizes:
        n, k = (m + 1) * p - 1, p - 1
        t = time.perf_counter()
        f = q_binomial(n, k)
        qb = time.perf_counter() - t
        pascal_ms = ""
        if (f.degree or 0) <= pascal_cap:
            t = time.perf_counter()
            q_binomial_pascal(n, k)
            pascal_ms = round((time.perf_counter() - t) * 1000, 3)
        M = modulus(p, 3)
        t = time.perf_counter()
        reduce(f, M)
        red = time.perf_counter() - t
        t = time.perf_counter()
        rec = C.theorem1(p, m, degree_cap=degree_cap)
        th = time.perf_counter() - t
        rows.append({
            "p": p, "m": m, "lhs_degree": rec.lhs_degree,
            "q_binomial_ms": round(qb * 1000, 3), "q_binomial_pascal_ms": pascal_ms,
            "reduce_ms": round(red * 1000, 3), "theorem1_ms": round(th * 1000, 3),
            "peak_coeff_bits": rec.max_coeff_bits,
        })
    return rows


def bench_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
