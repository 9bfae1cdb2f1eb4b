"""
Holonomy-induced frame partitions and the split-type decomposition of 3-forms.

Blocks are index sets over the global frame; the sub-frame of a block is the global
frame restricted to it.

"""
from collections import Counter
from dataclasses import dataclass
from enum import Enum, unique
from typing import Iterable, Sequence

import numpy as np

from spinlab.errors import IndexOutOfRangeError, InvalidPartitionError
from spinlab.exterior import Form


@dataclass(frozen=True)
class Partition:
    """
    Ordered decomposition of {1..n} into blocks with nondecreasing sizes.

    `labels[i]` is the 1-based position block i had in the caller's input.

    """
    n: int
    blocks: tuple[frozenset[int], ...]
    labels: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    @property
    def n_k(self) -> int:
        return self.sizes[-1]

    def block_of(self, index: int) -> int:
        """
        The 1-based block containing a frame index.

        """
        for position, block in enumerate(self.blocks, start=1):
            if index in block:
                return position
        raise IndexOutOfRangeError(index, self.n)

    def block(self, i: int) -> list[int]:
        if not 1 <= i <= self.k:
            raise IndexOutOfRangeError(i, self.k, what="block index")
        return sorted(self.blocks[i - 1])

    def projector(self, i: int) -> np.ndarray:
        """
        Orthogonal projection p_i onto block i as an n×n matrix.

        """
        matrix = np.zeros((self.n, self.n))
        for index in self.block(i):
            matrix[index - 1, index - 1] = 1.0
        return matrix

    def block_labels(self) -> np.ndarray:
        """
        Block number of each frame index (0-based positions, 1-based block numbers).

        """
        return np.array([self.block_of(index) for index in range(1, self.n + 1)])

    def as_lists(self) -> list[list[int]]:
        return [sorted(block) for block in self.blocks]

    def render(self) -> str:
        return "{" + "|".join(" ".join(str(index) for index in sorted(block)) for block in self.blocks) + "}"


def make_partition(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    """
    Validate a frame partition and sort its blocks by ascending size.

    The sort is stable, so blocks of equal size keep the caller's order.

    """
    if n < 1:
        raise InvalidPartitionError("empty frame")

    candidates = [frozenset(block) for block in blocks]
    seen: set[int] = set()
    for position, block in enumerate(candidates, start=1):
        if not block:
            raise InvalidPartitionError(f"Block {position} is empty")
        outside = sorted(index for index in block if not 1 <= index <= n)
        if outside:
            raise InvalidPartitionError(f"Block {position} contains indices {outside} outside 1..{n}")
        overlap = sorted(block & seen)
        if overlap:
            raise InvalidPartitionError(f"Block {position} overlaps earlier blocks in {overlap}")
        seen |= block

    gap = sorted(set(range(1, n + 1)) - seen)
    if gap:
        raise InvalidPartitionError(f"Blocks do not cover frame indices {gap}")

    order = sorted(range(len(candidates)), key=lambda position: len(candidates[position]))
    return Partition(
        n=n,
        blocks=tuple(candidates[position] for position in order),
        labels=tuple(position + 1 for position in order),
    )


@unique
class MonomialKind(Enum):
    PURE = "pure"
    TWO_ONE = "two_one"
    MIXED = "mixed"


@dataclass(frozen=True)
class MonomialClass:
    """
    Block type of a 3-form monomial.

    For TWO_ONE the first block holds two of the indices.

    """
    kind: MonomialKind
    blocks: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind.value}({', '.join(str(block) for block in self.blocks)})"


def classify_monomial(partition: Partition, triple: Sequence[int]) -> MonomialClass:
    """
    Tag an index triple by the multiset of blocks it meets.

    """
    if len(triple) != 3 or len(set(triple)) != 3:
        raise InvalidPartitionError(f"Expected three distinct frame indices, got {tuple(triple)}")
    for index in triple:
        if not 1 <= index <= partition.n:
            raise IndexOutOfRangeError(index, partition.n)

    counts = Counter(partition.block_of(index) for index in triple)
    if len(counts) == 1:
        return MonomialClass(MonomialKind.PURE, tuple(counts))
    if len(counts) == 2:
        (double, _), (single, _) = counts.most_common()
        return MonomialClass(MonomialKind.TWO_ONE, (double, single))
    return MonomialClass(MonomialKind.MIXED, tuple(sorted(counts)))


@dataclass(frozen=True)
class Lambda3Decomposition:
    pure: tuple[Form, ...]
    two_one: Form
    mixed: Form

    def total(self) -> Form:
        result = self.two_one + self.mixed
        for part in self.pure:
            result = result + part
        return result


def decompose_3form(torsion: Form, partition: Partition) -> Lambda3Decomposition:
    """
    Split a 3-form into its pure, two-one and mixed components with respect to a partition.

    """
    torsion.require_degree(3).require_dimension(partition.n)

    pure: list[dict] = [{} for _ in partition.blocks]
    two_one: dict = {}
    mixed: dict = {}
    for indices, coefficient in torsion.terms.items():
        tag = classify_monomial(partition, indices)
        if tag.kind is MonomialKind.PURE:
            pure[tag.blocks[0] - 1][indices] = coefficient
        elif tag.kind is MonomialKind.TWO_ONE:
            two_one[indices] = coefficient
        else:
            mixed[indices] = coefficient

    return Lambda3Decomposition(
        pure=tuple(Form(n=torsion.n, terms=terms) for terms in pure),
        two_one=Form(n=torsion.n, terms=two_one),
        mixed=Form(n=torsion.n, terms=mixed),
    )


def is_split_type(torsion: Form, partition: Partition) -> bool:
    """
    True when every monomial of the torsion meets three distinct blocks.

    """
    decomposition = decompose_3form(torsion, partition)
    return decomposition.two_one.is_zero() and all(part.is_zero() for part in decomposition.pure)
