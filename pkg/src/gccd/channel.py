"""Error injection and detection statistics for checked messages.

``UniformReplacement`` is the analytical model: the received payload is a
uniformly random string different from the sent one.  The bit-flip channels
are extensions for experimentation and have no closed-form reference.

Randomness for trial ``i`` comes from ``SeedSequence(seed, spawn_key=(i,))``,
so a report depends only on ``(message, model, seed, trials)`` and not on how
trials are scheduled across workers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .codec import BitString, bits_to_graph, padding_bit, pair_at, triangle_size
from .coloring import is_k_colorable
from .counting import p1_bound
from .scheme import CheckedMessage, Stage, encode, verify

__all__ = [
    "BernoulliFlip",
    "ChannelModel",
    "ExhaustiveReport",
    "ExperimentReport",
    "FlipPositions",
    "FlipRandom",
    "UniformReplacement",
    "corrupt",
    "detection_exponent",
    "exhaustive_acceptance",
    "run_monte_carlo",
    "sweep_exact_fit",
    "verify_padding",
]

EXHAUSTIVE_MAX_LENGTH = 20


@dataclass(frozen=True)
class FlipPositions:
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(int(t) for t in self.positions))


@dataclass(frozen=True)
class FlipRandom:
    t: int
    seed: int


@dataclass(frozen=True)
class BernoulliFlip:
    epsilon: float
    seed: int


@dataclass(frozen=True)
class UniformReplacement:
    seed: int


ChannelModel = Union[FlipPositions, FlipRandom, BernoulliFlip, UniformReplacement]


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def corrupt(payload: BitString, model: ChannelModel, trial: int = 0) -> BitString:
    """Apply ``model`` to ``payload``; seeded models draw from trial ``trial``'s stream."""
    l = payload.length
    if isinstance(model, FlipPositions):
        pos = model.positions
        if len(set(pos)) != len(pos):
            raise ValueError(f"duplicate flip positions {pos}")
        if any(not 0 <= t < l for t in pos):
            raise ValueError(f"flip positions {pos} outside 0..{l - 1}")
        return payload.flipped(pos)
    if isinstance(model, FlipRandom):
        if not 0 <= model.t <= l:
            raise ValueError(f"cannot flip {model.t} of {l} bits")
        rng = _trial_rng(model.seed, trial)
        return payload.flipped(rng.choice(l, size=model.t, replace=False).tolist())
    if isinstance(model, BernoulliFlip):
        if not 0.0 <= model.epsilon <= 1.0:
            raise ValueError(f"flip probability {model.epsilon} outside [0, 1]")
        rng = _trial_rng(model.seed, trial)
        return payload.flipped(np.flatnonzero(rng.random(l) < model.epsilon).tolist())
    if isinstance(model, UniformReplacement):
        if l == 0:
            raise ValueError("no replacement exists for an empty payload")
        rng = _trial_rng(model.seed, trial)
        while True:
            candidate = BitString(tuple(rng.integers(0, 2, size=l).tolist()))
            if candidate != payload:
                return candidate
    raise TypeError(f"unknown channel model {model!r}")


def detection_exponent(msg: CheckedMessage) -> int:
    """Payload positions whose endpoints share a color.

    A corruption goes unnoticed only if all of these stay 0, which bounds the
    undetected fraction by ``2**-exponent`` for padded messages too.
    """
    m = msg.plan.total_order
    colors = msg.colors.colors
    count = 0
    for t in range(msg.plan.payload_len):
        i, j = pair_at(t, m)
        count += colors[i - 1] == colors[j - 1]
    return count


@dataclass
class ExperimentReport:
    trials: int
    detected_by_stage: dict[str, int]
    undetected: int
    p_hat: float
    p1_exact: float
    bound_2_to_minus_y: float
    stderr: float
    model_mismatch: bool = False
    detection_exponent: int = 0

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)

    def to_csv(self) -> str:
        row = self.as_dict()
        stages = row.pop("detected_by_stage")
        for stage in Stage:
            row[f"detected_by_stage.{stage.value}"] = stages.get(stage.value, 0)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()


def _exact_fit(msg: CheckedMessage) -> bool:
    return msg.plan.payload_len == triangle_size(msg.plan.total_order) and msg.plan.pin_size == 0


def _tally(msg: CheckedMessage, model: ChannelModel, trials: Iterable[int]) -> Counter:
    counts: Counter = Counter()
    for trial in trials:
        outcome = verify(msg.with_payload(corrupt(msg.payload, model, trial)))
        counts["undetected" if outcome.accepted else outcome.stage.value] += 1
    return counts


def _tally_range(args: tuple) -> Counter:
    msg, model, start, stop = args
    return _tally(msg, model, range(start, stop))


def run_monte_carlo(
    msg: CheckedMessage,
    model: ChannelModel,
    trials: int,
    workers: int = 1,
) -> ExperimentReport:
    """Corrupt-and-verify ``trials`` times and report detection statistics.

    Trials whose corruption leaves the payload unchanged (possible with the
    bit-flip channels) are counted as undetected, since nothing is flagged.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if workers <= 1:
        counts = _tally(msg, model, range(trials))
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=np.int64)
        jobs = [(msg, model, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        counts = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_tally_range, jobs):
                counts.update(part)
    undetected = counts.pop("undetected", 0)
    p_hat = undetected / trials
    m, n = msg.plan.total_order, msg.n
    p1, bound = p1_bound(m, n)
    return ExperimentReport(
        trials=trials,
        detected_by_stage={stage.value: counts.get(stage.value, 0) for stage in Stage},
        undetected=undetected,
        p_hat=p_hat,
        p1_exact=float(p1),
        bound_2_to_minus_y=float(bound),
        stderr=math.sqrt(p_hat * (1.0 - p_hat) / trials),
        model_mismatch=not _exact_fit(msg) or not isinstance(model, UniformReplacement),
        detection_exponent=detection_exponent(msg),
    )


@dataclass
class ExhaustiveReport:
    corruptions: int
    undetected: int
    detected_by_stage: dict[str, int] = field(default_factory=dict)
    p_hat: Fraction = Fraction(0)
    p1_exact: Fraction = Fraction(1)
    bound_2_to_minus_y: Fraction = Fraction(1)
    exact_fit: bool = True


def exhaustive_acceptance(msg: CheckedMessage) -> ExhaustiveReport:
    """Run the verifier against every ``D' != D`` of the same length.

    Corruptions that touch a same-colored position are rejected by the
    coloring test without building a graph; the rest go through the
    ``(n-1)``-colorability test.
    """
    l = msg.plan.payload_len
    if l > EXHAUSTIVE_MAX_LENGTH:
        raise ValueError(f"exhaustive sweep limited to {EXHAUSTIVE_MAX_LENGTH} payload bits")
    total = (1 << l) - 1
    m, n = msg.plan.total_order, msg.n
    stages = {stage.value: 0 for stage in Stage}
    undetected = 0

    if msg.structural_problem():
        stages[Stage.MALFORMED.value] = total
    else:
        colors = msg.colors.colors
        # clash bit for position t sits at bit (l-1-t), matching BitString.to_int
        clash = 0
        for t in range(l):
            i, j = pair_at(t, m)
            if colors[i - 1] == colors[j - 1]:
                clash |= 1 << (l - 1 - t)
        padding_ok = all(c < n for c in colors) and verify_padding(msg)
        sent = msg.payload.to_int()
        if not padding_ok:
            stages[Stage.IMPROPER_COLORING.value] = total
        else:
            idx = np.arange(1 << l, dtype=np.int64)
            survivors = idx[((idx & clash) == 0) & (idx != sent)]
            stages[Stage.IMPROPER_COLORING.value] = total - len(survivors)
            for value in survivors.tolist():
                g = bits_to_graph(BitString.from_int(value, l), msg.plan)
                if is_k_colorable(g, n - 1) is not None:
                    stages[Stage.CHROMATIC_DROP.value] += 1
                else:
                    undetected += 1

    p1, bound = p1_bound(m, n)
    report = ExhaustiveReport(
        corruptions=total,
        undetected=undetected,
        detected_by_stage=stages,
        p_hat=Fraction(undetected, total) if total else Fraction(0),
        p1_exact=p1.value,
        bound_2_to_minus_y=bound.value,
        exact_fit=_exact_fit(msg),
    )
    if report.exact_fit and report.p_hat > report.bound_2_to_minus_y:
        raise AssertionError(f"undetected fraction {report.p_hat} exceeds {report.bound_2_to_minus_y}")
    return report


def verify_padding(msg: CheckedMessage) -> bool:
    """Whether the regenerated padding edges are properly colored."""
    plan = msg.plan
    colors = msg.colors.colors
    for t in range(plan.payload_len, plan.capacity):
        i, j = pair_at(t, plan.total_order)
        if colors[i - 1] == colors[j - 1] and padding_bit(plan, t):
            return False
    return True


@dataclass
class SweepSummary:
    m: int
    payloads: int
    reports: list[tuple[BitString, int, ExhaustiveReport]]

    @property
    def mean_p_hat(self) -> Fraction:
        return sum((r.p_hat for _, _, r in self.reports), Fraction(0)) / self.payloads


def sweep_exact_fit(m: int, encoder=None) -> SweepSummary:
    """Exhaustive sweep over every exact-fit payload of order ``m``."""
    encoder = encoder or encode
    l = triangle_size(m)
    reports = []
    for value in range(1 << l):
        msg = encoder(BitString.from_int(value, l))
        reports.append((msg.payload, msg.n, exhaustive_acceptance(msg)))
    return SweepSummary(m, len(reports), reports)

