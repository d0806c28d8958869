"""Ground types: outcome spaces, distributions, bitmask atoms, atom sets, partitions.

Atoms are plain Python ints used as bit patterns over the outcomes of one
space: bit i set means outcome i belongs to the atom.  Everything that
consumes atoms (AtomSet, Ideal, the measure) carries the space alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_OUTCOMES = 24
NORMALIZATION_TOL = 1e-12


class CapacityError(Exception):
    """An operation would exceed the fixed enumeration capacity."""


def degree(atom: int) -> int:
    """Number of outcomes in an atom bit pattern."""
    return atom.bit_count()


def non_entropic(atom: int) -> bool:
    """Empty and single-outcome patterns contribute no entropy."""
    return atom.bit_count() < 2


def atom_bits(atom: int) -> list[int]:
    """Outcome indices of an atom, ascending."""
    out = []
    i = 0
    while atom:
        if atom & 1:
            out.append(i)
        atom >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class OutcomeSpace:
    """A finite outcome space with labelled outcomes indexed 0..n-1.

    Labels default to "1".."n".  The outcome count is capped at
    MAX_OUTCOMES so atoms fit in one machine word and full-complex
    enumeration stays below 2**24 atoms.
    """

    n: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("an outcome space needs at least one outcome")
        if self.n > MAX_OUTCOMES:
            raise CapacityError(
                f"outcome spaces are capped at {MAX_OUTCOMES} outcomes, got {self.n}"
            )
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(self.n)))
        if len(self.labels) != self.n:
            raise ValueError("label count must match outcome count")
        if len(set(self.labels)) != self.n:
            raise ValueError("outcome labels must be unique")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown outcome label {label!r}") from None

    def atom(self, *labels: str) -> int:
        """Atom bit pattern from outcome labels."""
        mask = 0
        for lab in labels:
            mask |= 1 << self.index_of(lab)
        return mask

    def format_atom(self, atom: int) -> str:
        """Human form of an atom; labels concatenate when all are one char."""
        labs = [self.labels[i] for i in atom_bits(atom)]
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(labs)
        return ",".join(labs)


@dataclass(frozen=True)
class Distribution:
    """Nonnegative weights over one outcome space.

    Weights need not sum to one; several measure identities are quantified
    over arbitrary positive weights.  `normalized` reports whether the
    weights sum to 1 within 1e-12.
    """

    space: OutcomeSpace
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) != self.space.n:
            raise ValueError("weight count must match outcome count")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def uniform(cls, space: OutcomeSpace) -> "Distribution":
        return cls(space, (1.0 / space.n,) * space.n)

    @property
    def normalized(self) -> bool:
        return abs(sum(self.weights) - 1.0) <= NORMALIZATION_TOL

    def mass(self, atom: int) -> float:
        """Total weight of an atom's members."""
        return sum(self.weights[i] for i in atom_bits(atom))

    def replace_weight(self, index: int, value: float) -> "Distribution":
        w = list(self.weights)
        w[index] = value
        return Distribution(self.space, tuple(w))


@dataclass(frozen=True)
class AtomSet:
    """A finite set of atoms of degree >= 2 over one space."""

    space: OutcomeSpace
    atoms: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(int(a) for a in self.atoms))
        full = self.space.full_mask
        for a in self.atoms:
            if a & ~full:
                raise ValueError("atom outside the outcome space")
            if non_entropic(a):
                raise ValueError("atom sets only hold atoms of degree >= 2")

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(sorted(self.atoms))

    def __contains__(self, atom: int) -> bool:
        return atom in self.atoms


class Partition:
    """A surjective block assignment of outcomes (a random variable).

    `block_of[i]` is the block index of outcome i; block indices must be
    dense (0..block_count-1 with every block nonempty).  Two partitions
    compare equal when their blocks agree, regardless of block numbering.
    """

    __slots__ = ("space", "block_of", "block_count", "block_masks", "_key")

    def __init__(self, space: OutcomeSpace, block_of):
        block_of = tuple(int(b) for b in block_of)
        if len(block_of) != space.n:
            raise ValueError("block assignment must cover every outcome")
        if any(b < 0 for b in block_of):
            raise ValueError("block indices must be nonnegative")
        count = max(block_of) + 1
        if set(block_of) != set(range(count)):
            raise ValueError("block indices must be dense with every block nonempty")
        masks = [0] * count
        for i, b in enumerate(block_of):
            masks[b] |= 1 << i
        self.space = space
        self.block_of = block_of
        self.block_count = count
        self.block_masks = tuple(masks)
        self._key = _first_occurrence_relabel(block_of)

    @classmethod
    def from_blocks(cls, space: OutcomeSpace, blocks) -> "Partition":
        block_of = [-1] * space.n
        for b, members in enumerate(blocks):
            for i in members:
                if block_of[i] != -1:
                    raise ValueError("blocks must be disjoint")
                block_of[i] = b
        if -1 in block_of:
            raise ValueError("blocks must cover every outcome")
        return cls(space, block_of)

    @classmethod
    def discrete(cls, space: OutcomeSpace) -> "Partition":
        return cls(space, range(space.n))

    @classmethod
    def single_block(cls, space: OutcomeSpace) -> "Partition":
        return cls(space, [0] * space.n)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for i, b in enumerate(self.block_of):
            out[b].append(i)
        return out

    def crosses(self, atom: int) -> bool:
        """True when the atom has two members in distinct blocks."""
        seen = -1
        for i in atom_bits(atom):
            b = self.block_of[i]
            if seen == -1:
                seen = b
            elif b != seen:
                return True
        return False

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of other."""
        _check_same_space(self, other)
        return all(
            other.block_of[i] == other.block_of[j]
            for blk in self.blocks()
            for i, j in zip(blk, blk[1:])
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Partition)
            and self.space == other.space
            and self._key == other._key
        )

    def __hash__(self) -> int:
        return hash((self.space.n, self._key))

    def __repr__(self) -> str:
        blocks = ["{" + ",".join(self.space.labels[i] for i in blk) + "}" for blk in self.blocks()]
        return "Partition(" + " | ".join(blocks) + ")"


def _first_occurrence_relabel(values) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for v in values:
        if v not in seen:
            seen[v] = len(seen)
        out.append(seen[v])
    return tuple(out)


def _check_same_space(a, b) -> None:
    if a.space != b.space:
        raise ValueError("operands live on different outcome spaces")


def restricted_growth_strings(m: int):
    """All restricted-growth strings of length m: set partitions of m items."""
    prefix: list[int] = []

    def rec(mx: int):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for v in range(mx + 2):
            prefix.append(v)
            yield from rec(max(mx, v))
            prefix.pop()

    yield from rec(-1)


def all_partitions(space: OutcomeSpace):
    """Every partition of the space, one per set partition of its outcomes."""
    for rgs in restricted_growth_strings(space.n):
        yield Partition(space, rgs)


def enumerate_complex(space: OutcomeSpace) -> AtomSet:
    """All atoms of degree >= 2 over the space: 2**n - n - 1 of them."""
    atoms = frozenset(
        m for m in range(1, space.full_mask + 1) if m.bit_count() >= 2
    )
    return AtomSet(space, atoms)


def restrict(atom_set: AtomSet, within: int) -> AtomSet:
    """Atoms of the set fully contained in the given outcome subset."""
    return AtomSet(atom_set.space, frozenset(a for a in atom_set.atoms if a & ~within == 0))


def common_refinement(a: Partition, b: Partition) -> Partition:
    """Coarsest partition finer than both: nonempty pairwise block intersections."""
    _check_same_space(a, b)
    pairs: dict[tuple[int, int], int] = {}
    block_of = []
    for i in range(a.space.n):
        key = (a.block_of[i], b.block_of[i])
        if key not in pairs:
            pairs[key] = len(pairs)
        block_of.append(pairs[key])
    return Partition(a.space, block_of)


def common_coarsening(a: Partition, b: Partition) -> Partition:
    """Finest partition coarser than both.

    Outcomes share a block exactly when they are connected through
    alternating a-block / b-block overlaps.
    """
    _check_same_space(a, b)
    n = a.space.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in (a, b):
        for blk in part.blocks():
            for i, j in zip(blk, blk[1:]):
                union(i, j)
    return Partition(a.space, _first_occurrence_relabel(find(i) for i in range(n)))
