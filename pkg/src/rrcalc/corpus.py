"""Seeded random-ideal corpora: generation, parallel checking, reporting.

Reports are byte-identical for a fixed config: per-ideal seeds derive from
the master seed, workers are pure functions of (config, index), and the
merge preserves index order even under a process pool.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from pathlib import Path

from .errors import RRCalcError
from .ideals import Ideal, is_m_primary
from .limits import Limits
from .poly import Polynomial
from .ring import RingCtx
from .theorems import (
    VIOLATED,
    check_marley_parameter,
    has_violation,
    run_checks_with_triage,
)


@dataclass(frozen=True)
class CorpusConfig:
    vars: int = 2
    max_deg: int = 8
    count: int = 5  # bare `fuzz` smoke size; acceptance corpora pass 50
    seed: int = 1
    n_max: int = 12
    window: int = 2
    samples: int = 20
    floor: int | None = None
    param_count: int = 10
    jobs: int = 1
    out_dir: str | None = None

    @staticmethod
    def from_dict(data: dict) -> "CorpusConfig":
        known = {f for f in CorpusConfig.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown corpus config keys: {sorted(unknown)}")
        return CorpusConfig(**data)

    def to_dict(self) -> dict:
        return asdict(self)

    def limits(self) -> Limits:
        return Limits(
            n_max=self.n_max,
            window=self.window,
            samples=self.samples,
            rd_n_max=self.n_max,
            floor=self.floor,
        )


def _ring(config: CorpusConfig) -> RingCtx:
    names = ("x", "y", "z", "w")[: config.vars]
    return RingCtx(names)


def random_monomial_ideal(ring: RingCtx, rng: random.Random, max_deg: int) -> Ideal:
    """m-primary monomial ideal: pure powers on every axis plus interior gens."""
    d = ring.dimension
    powers = [rng.randint(2, max_deg) for _ in range(d)]
    gens = [tuple(p if j == i else 0 for j in range(d)) for i, p in enumerate(powers)]
    for _ in range(rng.randint(1, 3)):
        interior = tuple(rng.randint(1, max(1, powers[i] - 1)) for i in range(d))
        gens.append(interior)
    return Ideal.from_monomials(ring, gens)


def random_parameter_ideal(ring: RingCtx, rng: random.Random, max_deg: int) -> Ideal:
    """System of parameters: pure powers, sometimes with a generic tail."""
    d = ring.dimension
    cap = max(2, min(4, max_deg // 2))
    while True:
        powers = [rng.randint(1, cap) for _ in range(d)]
        gens = []
        for i, p in enumerate(powers):
            mono = tuple(p if j == i else 0 for j in range(d))
            g = Polynomial.monomial(ring, mono)
            if rng.random() < 0.4:
                tail = tuple(rng.randint(0, cap) for _ in range(d))
                if sum(tail) > 0:
                    g = g + Polynomial.monomial(ring, tail, rng.choice([-3, -2, -1, 1, 2, 3]))
            gens.append(g)
        J = Ideal(ring, gens)
        if is_m_primary(J):
            return J


def repro_text(I: Ideal, config: CorpusConfig, index: int, kind: str) -> str:
    lines = [
        f"# corpus reproduction: {kind} #{index}, master seed {config.seed}",
        f"ring Q[{','.join(I.ring.variables)}]",
        "ideal I = " + ", ".join(str(g) for g in I.gens),
        f"# budgets: n_max={config.n_max} window={config.window} "
        f"samples={config.samples} floor={config.floor}",
    ]
    return "\n".join(lines) + "\n"


def _check_one(args) -> dict:
    config_dict, index = args
    config = CorpusConfig.from_dict(config_dict)
    ring = _ring(config)
    rng = random.Random(f"corpus:{config.seed}:{index}")
    I = random_monomial_ideal(ring, rng, config.max_deg)
    record = {
        "index": index,
        "generators": [str(g) for g in I.gens],
        "error": None,
        "triage": None,
        "verdicts": [],
    }
    try:
        verdicts, triage = run_checks_with_triage(I, config.limits(), seed=index)
        record["verdicts"] = [v.to_dict() for v in verdicts]
        record["triage"] = triage
        record["violated"] = has_violation(verdicts)
    except RRCalcError as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        record["violated"] = False
    if record["violated"]:
        record["repro"] = repro_text(I, config, index, "ideal")
    return record


def _check_parameter(args) -> dict:
    config_dict, index = args
    config = CorpusConfig.from_dict(config_dict)
    ring = _ring(config)
    rng = random.Random(f"corpus-param:{config.seed}:{index}")
    J = random_parameter_ideal(ring, rng, config.max_deg)
    record = {
        "index": index,
        "generators": [str(g) for g in J.gens],
        "error": None,
        "verdicts": [],
    }
    try:
        verdict = check_marley_parameter(J, config.limits())
        record["verdicts"] = [verdict.to_dict()]
        record["violated"] = verdict.conclusion == VIOLATED
    except RRCalcError as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        record["violated"] = False
    if record["violated"]:
        record["repro"] = repro_text(J, config, index, "parameter")
    return record


def run_corpus(config: CorpusConfig) -> dict:
    """Generate, check, and aggregate; any violation carries its repro text."""
    ideal_tasks = [(config.to_dict(), i) for i in range(config.count)]
    param_tasks = (
        [(config.to_dict(), i) for i in range(config.param_count)] if config.count else []
    )
    if config.jobs > 1 and (ideal_tasks or param_tasks):
        with Pool(config.jobs) as pool:
            ideal_records = pool.map(_check_one, ideal_tasks)
            param_records = pool.map(_check_parameter, param_tasks)
    else:
        ideal_records = [_check_one(t) for t in ideal_tasks]
        param_records = [_check_parameter(t) for t in param_tasks]

    verdict_counts: dict = {}
    violations = []
    budget_failures = []
    for group, records in (("ideal", ideal_records), ("parameter", param_records)):
        for rec in records:
            if rec["error"]:
                budget_failures.append({"group": group, "index": rec["index"], "error": rec["error"]})
            for v in rec["verdicts"]:
                key = f"{v['theorem']}:{v['conclusion']}"
                verdict_counts[key] = verdict_counts.get(key, 0) + 1
                if v["conclusion"] == VIOLATED:
                    violations.append(
                        {"group": group, "index": rec["index"], "theorem": v["theorem"]}
                    )

    report = {
        "schema": "rrcalc-corpus-v1",
        "config": config.to_dict(),
        "ideals": ideal_records,
        "parameter_ideals": param_records,
        "summary": {
            "ideals_checked": len(ideal_records),
            "parameter_ideals_checked": len(param_records),
            "violations": violations,
            "budget_failures": budget_failures,
            "verdict_counts": {k: verdict_counts[k] for k in sorted(verdict_counts)},
        },
    }
    if config.out_dir:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for group, records in (("ideal", ideal_records), ("parameter", param_records)):
            for rec in records:
                if rec.get("repro"):
                    path = out / f"violation-{group}-{rec['index']}.txt"
                    path.write_text(rec["repro"])
    return report
