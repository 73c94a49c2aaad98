from __future__ import annotations

from collections.abc import Iterable, Iterator
from numbers import Integral

from entropicpy._typing import Index, Indices
from entropicpy.constants import (
    SUPPORT_DUPLICATE_ERROR,
    SUPPORT_MISSING_ERROR,
    SUPPORT_RANGE_ERROR,
)
from entropicpy.errors import InvalidInputError


class SupportSet:
    """
    Ordered set of selected library columns for one target dimension.

    Insertion order is kept when indices are added and the relative order of
    the remaining indices is kept when one is removed. Instances are
    immutable; + and - return new support sets.

    Attributes:
        indices (tuple[int, ...]): The column indices in insertion order.
    """

    __slots__ = ("indices",)

    def __init__(self, indices: Indices = ()) -> None:
        """
        Initialize a SupportSet from the given indices.

        Args:
            indices (Indices): Distinct column indices.

        Raises:
            InvalidInputError: On a duplicate or negative index.
        """
        ordered: list[int] = []
        for index in indices:
            index = int(index)
            if index < 0:
                raise InvalidInputError(
                    SUPPORT_RANGE_ERROR.format(index=index, columns="any")
                )
            if index in ordered:
                raise InvalidInputError(
                    SUPPORT_DUPLICATE_ERROR.format(index=index)
                )
            ordered.append(index)
        self.indices: tuple[int, ...] = tuple(ordered)

    def __repr__(self) -> str:
        return f"SupportSet({list(self.indices)})"

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, other: object) -> bool:
        return other in self.indices

    def __eq__(self, other: object) -> bool:
        """
        Support sets are equal when they hold the same indices, whatever the
        order.
        """
        if isinstance(other, SupportSet):
            return set(self.indices) == set(other.indices)
        if isinstance(other, Iterable):
            return set(self.indices) == set(other)
        return False

    def __hash__(self) -> int:
        return hash(frozenset(self.indices))

    def __add__(self, other: object) -> SupportSet:
        """
        Appends an index.

        Raises:
            InvalidInputError: If the index is already present.
            TypeError: If other is not an index.
        """
        if isinstance(other, Integral):
            other = int(other)
            if other in self.indices:
                raise InvalidInputError(
                    SUPPORT_DUPLICATE_ERROR.format(index=other)
                )
            return SupportSet((*self.indices, other))
        raise TypeError

    def __sub__(self, other: object) -> SupportSet:
        """
        Removes an index.

        Raises:
            InvalidInputError: If the index is not present.
            TypeError: If other is not an index.
        """
        if isinstance(other, Integral):
            other = int(other)
            if other not in self.indices:
                raise InvalidInputError(
                    SUPPORT_MISSING_ERROR.format(index=other)
                )
            return SupportSet(i for i in self.indices if i != other)
        raise TypeError

    def ascending(self) -> tuple[int, ...]:
        """
        The indices in increasing order.
        """
        return tuple(sorted(self.indices))

    def check_range(self, columns: int) -> None:
        """
        Checks every index against a library of the given size.

        Raises:
            InvalidInputError: If an index is not below columns.
        """
        for index in self.indices:
            if index >= columns:
                raise InvalidInputError(
                    SUPPORT_RANGE_ERROR.format(index=index, columns=columns)
                )

    @staticmethod
    def full(columns: int) -> SupportSet:
        """
        Support of all columns 0..columns-1.
        """
        return SupportSet(range(columns))


def all_one_index_missing(
    support: SupportSet,
) -> Iterator[tuple[Index, SupportSet]]:
    """
    Yields every member of the support together with the support without it.
    """
    for index in support:
        yield index, support - index


EMPTY_SUPPORT = SupportSet()
