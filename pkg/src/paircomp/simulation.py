"""Simulated-expert experiments: scale accuracy, flip sensitivity, control effect.

Every experiment is deterministic: trial t of a run draws from a generator
seeded by (master seed, t), so serial and parallel execution produce the
same report, and identical configs produce identical CSV bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .aggregation import aggregate
from .core import (
    ComparisonScale,
    JudgmentMatrix,
    new_matrix,
    pair_sequence,
    relation_of,
    set_judgment,
    three_point,
)
from .errors import BadDimension, BadValue
from .session import (
    Accepted,
    ConflictDetected,
    SessionState,
    create_study,
    new_session,
    submit_judgment,
    submit_revision,
)
from .transitivity import full_matrix_audit
from .weights import (
    approx_weights,
    consistency_index,
    consistency_report,
    eigen_weights,
    random_index,
)

__all__ = [
    "true_weights_linear",
    "SimulatedExpert",
    "quantize_ratio",
    "generate_matrix",
    "ExperimentReport",
    "scale_accuracy_experiment",
    "sensitivity_experiment",
    "control_effect_experiment",
]


def true_weights_linear(n: int) -> np.ndarray:
    """Linear truth k_i = i / (n(n+1)/2)."""
    if n < 2:
        raise BadDimension(f"need n >= 2, got {n}")
    return np.arange(1, n + 1) / (n * (n + 1) / 2)


@dataclass
class SimulatedExpert:
    truth: np.ndarray
    scale: ComparisonScale
    slip_prob: float = 0.0
    seed: int = 0


def quantize_ratio(r, scale: ComparisonScale) -> Fraction:
    """Scale value nearest to r in log distance; ties go toward equality."""
    if not r > 0:
        raise BadValue(f"ratio must be positive, got {r!r}")
    lr = math.log(r)
    return min(scale.values, key=lambda v: (abs(lr - math.log(v)), abs(math.log(v))))


def generate_matrix(expert: SimulatedExpert) -> JudgmentMatrix:
    """Complete matrix from quantized true ratios, with optional slips.

    Each pair's intended value is quantize_ratio(k_i / k_j); with
    probability slip_prob the recorded value is replaced by a uniformly
    chosen different scale value.
    """
    truth = np.asarray(expert.truth, dtype=float)
    n = truth.size
    rng = np.random.default_rng(expert.seed)
    m = new_matrix(n, [str(i) for i in range(1, n + 1)])
    for i, j in pair_sequence(n):
        v = quantize_ratio(truth[i - 1] / truth[j - 1], expert.scale)
        if rng.random() < expert.slip_prob:
            others = [u for u in expert.scale.values if u != v]
            v = others[rng.integers(len(others))]
        set_judgment(m, i, j, v)
    return m


# ---- reporting ----


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(_fmt(x) for x in row) for row in self.rows)
        return "\n".join(lines) + "\n"


# ---- scale accuracy ----


def _sample_truth(rng: np.random.Generator, n: int, distinct: bool) -> np.ndarray:
    # integers from {1..10}; all-equal draws carry no ranking signal
    if distinct:
        if n > 10:
            raise BadDimension(f"cannot draw {n} distinct integers from 1..10")
        ints = rng.choice(10, size=n, replace=False) + 1
    else:
        ints = rng.integers(1, 11, size=n)
        while np.all(ints == ints[0]):
            ints = rng.integers(1, 11, size=n)
    return ints / ints.sum()


def _cr_of(lam: float, h: int) -> float:
    if h < 3:
        return 0.0
    return consistency_index(lam, h) / random_index(h)


def scale_accuracy_experiment(
    n: int,
    trials: int,
    scales: list[ComparisonScale],
    seed: int,
    distinct: bool = False,
    truth_sampler=None,
) -> ExperimentReport:
    """Recovery error of quantization-only experts, per scale.

    Each trial draws one truth vector, builds one slip-free matrix per
    scale, and records the mean absolute error and max relative error of
    both weight methods against the truth.
    """
    if n < 2:
        raise BadDimension(f"need n >= 2, got {n}")
    report = ExperimentReport(
        kind="scale_accuracy",
        config={
            "n": n,
            "trials": trials,
            "seed": seed,
            "distinct": distinct,
            "scales": [s.name for s in scales],
        },
        columns=[
            "trial",
            "scale",
            "mae_approx",
            "mae_eigen",
            "max_rel_approx",
            "max_rel_eigen",
            "lambda_max",
            "cr",
        ],
    )
    acc: dict[str, list] = {s.name: [] for s in scales}
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        truth = truth_sampler(rng) if truth_sampler else _sample_truth(rng, n, distinct)
        truth = np.asarray(truth, dtype=float)
        truth = truth / truth.sum()
        for scale in scales:
            matrix = generate_matrix(SimulatedExpert(truth, scale))
            w_a = approx_weights(matrix)
            w_e, lam = eigen_weights(matrix)
            mae_a = float(np.abs(w_a - truth).mean())
            mae_e = float(np.abs(w_e - truth).mean())
            rel_a = float((np.abs(w_a - truth) / truth).max())
            rel_e = float((np.abs(w_e - truth) / truth).max())
            cr = _cr_of(lam, truth.size)
            report.rows.append(
                (t, scale.name, mae_a, mae_e, rel_a, rel_e, float(lam), cr)
            )
            acc[scale.name].append((mae_a, mae_e, rel_a, rel_e, cr))
    for scale in scales:
        stats = np.array(acc[scale.name]) if acc[scale.name] else np.zeros((0, 5))
        report.summary[scale.name] = {
            "mean_mae_approx": float(stats[:, 0].mean()) if stats.size else None,
            "mean_mae_eigen": float(stats[:, 1].mean()) if stats.size else None,
            "mean_max_rel_approx": float(stats[:, 2].mean()) if stats.size else None,
            "mean_max_rel_eigen": float(stats[:, 3].mean()) if stats.size else None,
            "mean_cr": float(stats[:, 4].mean()) if stats.size else None,
        }
    return report


# ---- single-judgment sensitivity ----


def sensitivity_experiment(
    h: int, trials: int, seed: int, scale: ComparisonScale | None = None
) -> ExperimentReport:
    """Effect of flipping one judgment to its reciprocal, cell by cell.

    Per flip: the relative CI change and the max relative weight change
    (eigen method), plus their ratio.  A flip of an equality judgment is a
    no-op and records zeros.
    """
    if not 3 <= h <= 64:
        raise BadDimension(f"need 3 <= h <= 64, got {h}")
    scale = scale or three_point()
    report = ExperimentReport(
        kind="sensitivity",
        config={"h": h, "trials": trials, "seed": seed, "scale": scale.name},
        columns=[
            "trial",
            "i",
            "j",
            "ci_base",
            "ci_flipped",
            "rel_dci",
            "max_rel_dw",
            "ratio",
        ],
    )
    dominant = 0
    max_ratio = 0.0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        truth = _sample_truth(rng, h, distinct=False)
        base = generate_matrix(SimulatedExpert(truth, scale))
        w_base, lam_base = eigen_weights(base)
        ci_base = consistency_index(lam_base, h)
        for i, j in pair_sequence(h):
            flipped = base.copy()
            set_judgment(flipped, i, j, 1 / base.get(i, j))
            w_f, lam_f = eigen_weights(flipped)
            ci_f = consistency_index(lam_f, h)
            if ci_base > 0:
                rel_dci = (ci_f - ci_base) / ci_base
            else:
                rel_dci = math.inf if ci_f > 0 else 0.0
            max_rel_dw = float((np.abs(w_f - w_base) / w_base).max())
            ratio = max_rel_dw / rel_dci if 0 < rel_dci < math.inf else 0.0
            if math.isfinite(rel_dci) and max_rel_dw > rel_dci:
                dominant += 1
            max_ratio = max(max_ratio, ratio)
            report.rows.append(
                (t, i, j, float(ci_base), float(ci_f), float(rel_dci), max_rel_dw, float(ratio))
            )
    report.summary = {
        "n_flips": len(report.rows),
        "flips_dw_exceeds_dci": dominant,
        "max_ratio": float(max_ratio),
        # reference instance: a 7% CI change moving a weight by 30%
        "reference_rel_dci_pct": 7.0,
        "reference_rel_dw_pct": 30.0,
    }
    return report


# ---- real-time control effect ----


def _best_admissible(scale: ComparisonScale, admissible, true_ratio: float) -> Fraction:
    allowed = [v for v in scale.values if relation_of(v) in admissible]
    lr = math.log(true_ratio)
    return min(allowed, key=lambda v: (abs(lr - math.log(v)), abs(math.log(v))))


def _run_controlled_session(study, expert_tag, intended, recorded, truth):
    """Drive one expert through the session engine with the truth-guided
    revision oracle: retry the intended value first, then the remaining
    candidates' intended values, then the admissible value closest to the
    true ratio."""
    session = new_session(study, expert_tag)
    pairs = session.pairs
    by_pair = dict(zip(pairs, intended))
    while session.state is not SessionState.COMPLETE:
        idx = session.cursor
        i, j = session.current_pair()
        res = submit_judgment(session, recorded[idx] or intended[idx])
        if isinstance(res, Accepted):
            continue
        for target in res.candidates.pairs:
            res = submit_revision(session, target, by_pair[target])
            if isinstance(res, Accepted):
                break
        if isinstance(res, ConflictDetected):
            true_ratio = truth[i - 1] / truth[j - 1]
            best = _best_admissible(session.scale, res.admissible, true_ratio)
            res = submit_revision(session, (i, j), best)
            assert isinstance(res, Accepted), "admissible value must commit"
    return session


def control_effect_experiment(
    h: int,
    experts: int,
    slip_prob: float,
    seed: int,
    scale: ComparisonScale | None = None,
) -> ExperimentReport:
    """Same slip stream replayed with and without real-time control.

    Per expert, one recorded stream of slips is generated once; the "off"
    arm commits it as-is, the "on" arm routes it through the session engine
    where every conflict is resolved by the truth-guided oracle.  The only
    difference between arms is the control.
    """
    if h < 3:
        raise BadDimension(f"need h >= 3, got {h}")
    if experts < 1:
        raise BadValue(f"need at least one expert, got {experts}")
    if not 0.0 <= slip_prob < 1.0:
        raise BadValue(f"slip_prob must be in [0,1), got {slip_prob}")
    scale = scale or three_point()
    truth = true_weights_linear(h)
    labels = [str(i) for i in range(1, h + 1)]
    pairs = pair_sequence(h)
    intended = [quantize_ratio(truth[i - 1] / truth[j - 1], scale) for i, j in pairs]
    study = create_study(labels, scale, study_id="control-experiment")

    report = ExperimentReport(
        kind="control_effect",
        config={
            "h": h,
            "experts": experts,
            "slip_prob": slip_prob,
            "seed": seed,
            "scale": scale.name,
        },
        columns=[
            "expert",
            "arm",
            "mae_approx",
            "mae_eigen",
            "lambda_max",
            "cr",
            "conflicts",
            "audit_conflicts",
        ],
    )
    arm_data: dict[str, dict[str, list]] = {
        "off": {"w": [], "cr": [], "mae": [], "audit": []},
        "on": {"w": [], "cr": [], "mae": [], "audit": []},
    }

    def record(arm: str, expert_id: int, matrix: JudgmentMatrix, conflicts: int):
        w_a = approx_weights(matrix)
        w_e, lam = eigen_weights(matrix)
        rep = consistency_report(matrix)
        audit = len(full_matrix_audit(matrix))
        mae_e = float(np.abs(w_e - truth).mean())
        report.rows.append(
            (
                expert_id,
                arm,
                float(np.abs(w_a - truth).mean()),
                mae_e,
                float(lam),
                float(rep.cr),
                conflicts,
                audit,
            )
        )
        arm_data[arm]["w"].append(w_e)
        arm_data[arm]["cr"].append(float(rep.cr))
        arm_data[arm]["mae"].append(mae_e)
        arm_data[arm]["audit"].append(audit)

    for e in range(experts):
        rng = np.random.default_rng([seed, e])
        recorded: list[Fraction | None] = []
        for v in intended:
            if rng.random() < slip_prob:
                others = [u for u in scale.values if u != v]
                recorded.append(others[rng.integers(len(others))])
            else:
                recorded.append(None)

        # arm off: slips committed unchecked
        m_off = new_matrix(h, labels)
        for idx, (i, j) in enumerate(pairs):
            set_judgment(m_off, i, j, recorded[idx] or intended[idx])
        record("off", e, m_off, 0)

        # arm on: same stream through the session engine
        session = _run_controlled_session(study, f"sim-{e}", intended, recorded, truth)
        rejected = sum(1 for ev in session.events if ev["action"] == "judgment_rejected")
        record("on", e, session.matrix, rejected)

    def _summarize(arm: str) -> dict:
        ws = arm_data[arm]["w"]
        if len(ws) >= 2:
            agg = aggregate(ws, arm_data[arm]["cr"], 0.95)
            mean_hw = float(agg.half_width.mean())
        else:
            mean_hw = None
        return {
            "mean_cr": float(np.mean(arm_data[arm]["cr"])),
            "mean_mae_eigen": float(np.mean(arm_data[arm]["mae"])),
            "mean_half_width": mean_hw,
            "max_audit_conflicts": int(max(arm_data[arm]["audit"])),
        }

    report.summary = {
        "off": _summarize("off"),
        "on": _summarize("on"),
        # reference band for controlled sessions
        "reference_cr_low": 0.02,
        "reference_cr_high": 0.05,
    }
    return report
