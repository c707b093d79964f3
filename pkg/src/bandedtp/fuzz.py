"""Differential fuzzing of the four banded-total-positivity routes.

The corpus mixes certified-positive instances (seeded factorization
composes), the same composes with one factor entry zeroed, and dense random
nonnegative banded matrices; the four criteria must agree on every one.
Replaying a seed reproduces the report byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .band import BandedMatrix
from .criteria import (
    is_BTP_contiguous,
    is_BTP_delta,
    is_BTP_initial,
    is_BTP_oracle,
)
from .errors import ContractViolationError
from .pbf import PBFactorization, pbf_compose, random_pbf


def zero_random_factor_entry(f: PBFactorization, rng: random.Random) -> PBFactorization:
    """Copy of the factorization with one uniformly chosen factor entry zeroed."""
    slots = []
    for side_idx, side in enumerate((f.lower, f.upper)):
        for i, vec in enumerate(side):
            for t in range(len(vec)):
                slots.append((side_idx, i, t))
    if not slots:
        return f
    side_idx, i, t = slots[rng.randrange(len(slots))]
    lower = [list(vec) for vec in f.lower]
    upper = [list(vec) for vec in f.upper]
    (lower if side_idx == 0 else upper)[i][t] = Fraction(0)
    return PBFactorization(
        f.n,
        tuple(tuple(vec) for vec in lower),
        f.diag,
        tuple(tuple(vec) for vec in upper),
    )


def random_nonneg_banded(rng: random.Random, n: int, p: int, q: int) -> BandedMatrix:
    """Dense random nonnegative entries inside a declared band."""
    rows = [
        [
            Fraction(rng.randint(0, 4), rng.randint(1, 3))
            if -p <= j - i <= q
            else Fraction(0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return BandedMatrix(n, p, q, tuple(tuple(r) for r in rows))


def random_instance(rng: random.Random, n_max: int) -> tuple[str, BandedMatrix]:
    """One corpus draw: kind tag plus the banded matrix."""
    n = rng.randint(3, n_max)
    p = rng.randint(0, min(2, n - 1))
    q = rng.randint(0, min(2, n - 1))
    kind = rng.choice(("pbf", "pbf_zeroed", "dense_nonneg"))
    if kind == "pbf":
        return kind, pbf_compose(random_pbf(rng.randrange(2**30), n, p, q))
    if kind == "pbf_zeroed":
        f = random_pbf(rng.randrange(2**30), n, p, q)
        return kind, pbf_compose(zero_random_factor_entry(f, rng))
    return kind, random_nonneg_banded(rng, n, p, q)


@dataclass(frozen=True)
class FuzzReport:
    seed: int
    count: int
    n_max: int
    instances: tuple[dict, ...]
    semigroup_pairs: int
    semigroup_failures: tuple[dict, ...]
    disagreements: int
    first_disagreement: dict | None

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and not self.semigroup_failures

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "n_max": self.n_max,
            "instances": list(self.instances),
            "semigroup_pairs": self.semigroup_pairs,
            "semigroup_failures": list(self.semigroup_failures),
            "disagreements": self.disagreements,
            "first_disagreement": self.first_disagreement,
            "ok": self.ok,
        }


def fuzz_equivalence(seed: int, count: int, n_max: int) -> FuzzReport:
    """Check the four criteria agree on ``count`` corpus draws, then check
    products of certified-positive pairs stay certified (bands adding)."""
    if count < 0:
        raise ContractViolationError("count must be nonnegative")
    if count > 0 and n_max < 3:
        raise ContractViolationError("n_max must be at least 3")
    rng = random.Random(seed)
    instances = []
    disagreements = 0
    first_disagreement = None
    for index in range(count):
        kind, t = random_instance(rng, n_max)
        verdicts = {
            "oracle": is_BTP_oracle(t),
            "contiguous": is_BTP_contiguous(t),
            "initial": is_BTP_initial(t),
            "delta": is_BTP_delta(t),
        }
        flags = {name: v.verdict for name, v in verdicts.items()}
        agree = len(set(flags.values())) == 1
        record = {
            "index": index,
            "kind": kind,
            "n": t.n,
            "p": t.p,
            "q": t.q,
            "verdicts": flags,
            "agree": agree,
        }
        instances.append(record)
        if not agree:
            disagreements += 1
            if first_disagreement is None:
                first_disagreement = dict(record)
                first_disagreement["witnesses"] = {
                    name: [w.as_dict() for w in v.witnesses]
                    for name, v in verdicts.items()
                }
    semigroup_pairs = count // 4
    semigroup_failures = []
    for index in range(semigroup_pairs):
        n = rng.randint(3, min(n_max, 6))
        p1, q1 = rng.randint(0, 1), rng.randint(0, 1)
        p2, q2 = rng.randint(0, 1), rng.randint(0, 1)
        t1 = pbf_compose(random_pbf(rng.randrange(2**30), n, p1, q1))
        t2 = pbf_compose(random_pbf(rng.randrange(2**30), n, p2, q2))
        product = t1.to_dense().mul(t2.to_dense())
        banded = BandedMatrix(
            n, min(p1 + p2, n - 1), min(q1 + q2, n - 1), product.rows
        )
        verdict = is_BTP_oracle(banded)
        if not verdict.verdict:
            semigroup_failures.append(
                {
                    "index": index,
                    "n": n,
                    "bands": [[p1, q1], [p2, q2]],
                    "witnesses": [w.as_dict() for w in verdict.witnesses],
                }
            )
    return FuzzReport(
        seed,
        count,
        n_max,
        tuple(instances),
        semigroup_pairs,
        tuple(semigroup_failures),
        disagreements,
        first_disagreement,
    )
