"""Parity classification of ideals: sign certificates, witnesses, and surveys.

A single-generator ideal has measure of sign (-1)**degree for any fully
positive weights.  Larger ideals are certified by searching
inclusion-exclusion expansions over generator orderings until every
signed leaf term has the same sign; ideals whose minimal generators mix
even and odd degrees provably take both signs, and witness distributions
for either sign are built by concentrating mass on one generator.
Certification is sound but not complete: Undetermined is a first-class
outcome and surveys still characterise such ideals empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .core import Distribution, atom_bits, degree
from .ideals import Ideal, minimal_antichain
from .measure import EQ_TOL, mu_ideal, mu_ideal_batch

CERTIFIED_EVEN = "CertifiedEven"
CERTIFIED_ODD = "CertifiedOdd"
STRONGLY_MIXED = "StronglyMixed"
UNDETERMINED = "Undetermined"

DEFAULT_BUDGET = 10_000
WITNESS_EPSILONS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)
WITNESS_MARGIN = 10 * EQ_TOL


@dataclass(frozen=True)
class ParityClass:
    """Outcome of structural sign classification.

    A certificate is a signed list of single-generator leaf ideals
    (pattern, integer coefficient) whose weighted measures sum to the
    ideal's measure identically; when present, every term has the sign
    given by `parity`.
    """

    tag: str
    parity: int | None = None
    certificate: tuple[tuple[int, int], ...] | None = None


@dataclass(frozen=True)
class SignSurvey:
    """Signs of an ideal's measure over distributions sampled from the simplex."""

    samples: int
    positive: int
    negative: int
    zero: int
    min_value: float
    max_value: float
    min_weights: tuple[float, ...]
    max_weights: tuple[float, ...]
    seed: int

    def __post_init__(self):
        if self.positive + self.negative + self.zero != self.samples:
            raise ValueError("survey counts must add up to the sample count")


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int):
        self.remaining = limit

    def spend(self) -> None:
        if self.remaining <= 0:
            raise _BudgetExhausted
        self.remaining -= 1


class _BudgetExhausted(Exception):
    pass


def _expansions(gens: frozenset[int], budget: _Budget) -> Iterator[dict[int, int]]:
    """Signed leaf decompositions mu(<gens>) = sum coeff * mu(<leaf>).

    Each step peels one generator g off the set G:
      mu(<G>) = mu(<G - g>) + mu(<g>) - mu(<products of g with G - g>)
    and recurses on both remaining sets, enumerating peel orders.
    """
    budget.spend()
    if len(gens) == 1:
        yield {next(iter(gens)): 1}
        return
    for pivot in sorted(gens):
        budget.spend()
        rest = frozenset(gens - {pivot})
        products = minimal_antichain(h | pivot for h in rest)
        for rest_leaves in _expansions(rest, budget):
            for product_leaves in _expansions(products, budget):
                leaves = dict(rest_leaves)
                leaves[pivot] = leaves.get(pivot, 0) + 1
                for mask, coeff in product_leaves.items():
                    leaves[mask] = leaves.get(mask, 0) - coeff
                yield {m: c for m, c in leaves.items() if c != 0}


def _uniform_sign(leaves: dict[int, int], target: int) -> bool:
    """Every term coeff * mu(<leaf>) has sign `target` for positive weights."""
    if not leaves:
        return False
    for mask, coeff in leaves.items():
        leaf_sign = -1 if degree(mask) & 1 else 1
        if (1 if coeff > 0 else -1) * leaf_sign != target:
            return False
    return True


def classify_parity(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> ParityClass:
    """Classify an ideal's structural sign behaviour.

    Mixed-degree generators are immediately StronglyMixed.  Pure-parity
    generator sets are certified when some bounded expansion search finds
    a uniformly signed leaf decomposition; otherwise Undetermined.
    """
    if ideal.is_empty:
        raise ValueError("the empty ideal has no parity")
    parities = ideal.generator_parities()
    if len(parities) == 2:
        return ParityClass(STRONGLY_MIXED)
    target = 1 if parities == {0} else -1
    tracker = _Budget(budget)
    try:
        for leaves in _expansions(ideal.generators, tracker):
            if _uniform_sign(leaves, target):
                certificate = tuple(
                    sorted(leaves.items(), key=lambda kv: (degree(kv[0]), kv[0]))
                )
                tag = CERTIFIED_EVEN if target == 1 else CERTIFIED_ODD
                return ParityClass(tag, parity=target, certificate=certificate)
    except _BudgetExhausted:
        pass
    return ParityClass(UNDETERMINED)


def certificate_value(dist: Distribution, certificate) -> float:
    """Signed sum of leaf measures; equals the ideal's measure identically."""
    return sum(
        coeff * mu_ideal(dist, Ideal.generated_by(dist.space, [mask]))
        for mask, coeff in certificate
    )


def single_generator_sign(dist: Distribution, generator: int) -> int:
    """Sign of the measure of a one-generator ideal; always (-1)**degree.

    Requires every member of the generator to carry positive weight; a
    disagreement with the predicted sign is raised, not returned.
    """
    if any(dist.weights[i] == 0.0 for i in atom_bits(generator)):
        raise ValueError("sign is undefined when a member has zero weight")
    value = mu_ideal(dist, Ideal.generated_by(dist.space, [generator]))
    expected = -1 if degree(generator) & 1 else 1
    if value * expected <= 0.0:
        raise AssertionError(
            f"single-generator sign rule violated: mu = {value!r} for degree "
            f"{degree(generator)}"
        )
    return expected


def witness_distributions(
    ideal: Ideal, epsilons: tuple[float, ...] = WITNESS_EPSILONS
) -> tuple[Distribution | None, Distribution | None]:
    """Distributions driving the ideal's measure positive and negative.

    Mass sits uniformly on one generator with epsilon elsewhere; the
    schedule shrinks epsilon until the sign is stable with margin.  A
    pure-parity ideal yields only its one achievable side.
    """
    if ideal.is_empty:
        raise ValueError("the empty ideal has measure 0 everywhere")
    evens = [g for g in ideal.sorted_generators() if degree(g) % 2 == 0]
    odds = [g for g in ideal.sorted_generators() if degree(g) % 2 == 1]
    positive = _witness_for(ideal, evens[0], 1, epsilons) if evens else None
    negative = _witness_for(ideal, odds[0], -1, epsilons) if odds else None
    return positive, negative


def _witness_for(ideal, generator, sign, epsilons) -> Distribution:
    space = ideal.space
    members = atom_bits(generator)
    for eps in epsilons:
        weights = [eps] * space.n
        for i in members:
            weights[i] = 1.0 / len(members)
        total = sum(weights)
        dist = Distribution(space, tuple(w / total for w in weights))
        value = mu_ideal(dist, ideal)
        if sign * value > WITNESS_MARGIN:
            return dist
    raise RuntimeError(
        "witness search exhausted its epsilon schedule without a stable sign"
    )


def sign_survey(
    ideal: Ideal,
    samples: int,
    seed: int,
    value_fn: Callable[[np.ndarray], np.ndarray] | None = None,
) -> SignSurvey:
    """Sample the simplex uniformly and record the sign of the ideal's measure.

    `value_fn` may replace the measure evaluation with any identical-value
    routine (censuses pass the entropy-based co-information for speed);
    it receives the whole sample matrix and returns one value per row.
    """
    if samples < 1:
        raise ValueError("surveys need at least one sample")
    n = ideal.space.n
    rng = np.random.default_rng(seed)
    weight_rows = rng.dirichlet(np.ones(n), size=samples)
    if value_fn is None:
        values = mu_ideal_batch(weight_rows, ideal)
    else:
        values = np.asarray(value_fn(weight_rows), dtype=np.float64)
    positive = int(np.count_nonzero(values > EQ_TOL))
    negative = int(np.count_nonzero(values < -EQ_TOL))
    lo = int(np.argmin(values))
    hi = int(np.argmax(values))
    return SignSurvey(
        samples=samples,
        positive=positive,
        negative=negative,
        zero=samples - positive - negative,
        min_value=float(values[lo]),
        max_value=float(values[hi]),
        min_weights=tuple(float(w) for w in weight_rows[lo]),
        max_weights=tuple(float(w) for w in weight_rows[hi]),
        seed=seed,
    )
