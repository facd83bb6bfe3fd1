"""Partially ordered product spaces and coordinate-permutation tuples.

The base space is abstract: callers supply a distance function d(a, b) and a
partial-order test leq(a, b).  On the k-fold product we use the maximum metric
and the partition-twisted order (componentwise <= on the A-block, >= on the
B-block).
"""

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

__all__ = [
    "Partition",
    "UpsilonTuple",
    "UpsilonMembershipError",
    "max_metric",
    "product_leq",
    "upsilon_violations",
    "validate_upsilon",
    "cyclic_shift_upsilon",
    "is_regular_witness",
]

Distance = Callable[[object, object], float]
Leq = Callable[[object, object], bool]


@dataclass(frozen=True)
class Partition:
    """A two-block partition {A, B} of the index set {1, ..., k}.

    Indices are 1-based.  Either block may be empty, but k >= 2.
    """

    k: int
    a: frozenset
    b: frozenset

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        full = frozenset(range(1, self.k + 1))
        if self.a | self.b != full or self.a & self.b:
            raise ValueError(
                f"A={sorted(self.a)} and B={sorted(self.b)} do not partition "
                f"{{1,...,{self.k}}}"
            )

    @staticmethod
    def of(k: int, a: Sequence[int]) -> "Partition":
        a_set = frozenset(a)
        return Partition(k, a_set, frozenset(range(1, k + 1)) - a_set)

    @staticmethod
    def odd_even(k: int) -> "Partition":
        """A = odd indices, B = even indices."""
        return Partition.of(k, range(1, k + 1, 2))


class UpsilonMembershipError(ValueError):
    """A candidate sigma tuple violates the block-membership rules.

    ``violations`` lists (i, j) pairs: map i sends index j into the wrong
    block for its position.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"membership violations at {self.violations}")


@dataclass(frozen=True)
class UpsilonTuple:
    """k index maps sigma_i: {1,...,k} -> {1,...,k}, stored 1-based.

    Maps for i in A must preserve the blocks (A->A, B->B); maps for i in B
    must swap them (A->B, B->A).  Construct through ``validate_upsilon`` to
    get membership checking; the constructor checks only totality/range.
    """

    partition: Partition
    sigmas: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        k = self.partition.k
        if len(self.sigmas) != k:
            raise ValueError(f"expected {k} maps, got {len(self.sigmas)}")
        for i, sigma in enumerate(self.sigmas, start=1):
            if len(sigma) != k:
                raise ValueError(f"sigma_{i} is not total on {{1,...,{k}}}")
            for j, v in enumerate(sigma, start=1):
                if not (1 <= v <= k):
                    raise ValueError(
                        f"sigma_{i}({j}) = {v} is outside {{1,...,{k}}}"
                    )

    def sigma(self, i: int, j: int) -> int:
        """Value sigma_i(j), both arguments 1-based."""
        return self.sigmas[i - 1][j - 1]

    def permute(self, i: int, x: Sequence) -> tuple:
        """The argument tuple (x_{sigma_i(1)}, ..., x_{sigma_i(k)})."""
        row = self.sigmas[i - 1]
        return tuple(x[v - 1] for v in row)


def max_metric(x: Sequence, y: Sequence, dist: Distance) -> float:
    """Maximum of componentwise base distances."""
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return max(dist(xi, yi) for xi, yi in zip(x, y))


def product_leq(x: Sequence, y: Sequence, partition: Partition, leq: Leq) -> bool:
    """Partition-twisted product order: x_i <= y_i on A, x_i >= y_i on B."""
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    if len(x) != partition.k:
        raise ValueError(f"dimension {len(x)} does not match k={partition.k}")
    for i in range(1, partition.k + 1):
        if i in partition.a:
            if not leq(x[i - 1], y[i - 1]):
                return False
        else:
            if not leq(y[i - 1], x[i - 1]):
                return False
    return True


def upsilon_violations(sigmas, partition: Partition):
    """All (i, j) at which the block-membership rules fail.

    Raises ValueError for structurally bad input (non-total maps, values out
    of range); that is distinct from a membership rejection.
    """
    k = partition.k
    if len(sigmas) != k:
        raise ValueError(f"expected {k} maps, got {len(sigmas)}")
    violations = []
    for i in range(1, k + 1):
        sigma = sigmas[i - 1]
        if len(sigma) != k:
            raise ValueError(f"sigma_{i} is not total on {{1,...,{k}}}")
        for j in range(1, k + 1):
            v = sigma[j - 1]
            if not (1 <= v <= k):
                raise ValueError(f"sigma_{i}({j}) = {v} is outside {{1,...,{k}}}")
            j_in_a = j in partition.a
            v_in_a = v in partition.a
            if i in partition.a:
                ok = (v_in_a == j_in_a)  # block-preserving
            else:
                ok = (v_in_a != j_in_a)  # block-swapping
            if not ok:
                violations.append((i, j))
    return violations


def validate_upsilon(sigmas, partition: Partition) -> UpsilonTuple:
    """Accept a candidate sigma tuple or raise UpsilonMembershipError."""
    violations = upsilon_violations(sigmas, partition)
    if violations:
        raise UpsilonMembershipError(violations)
    return UpsilonTuple(partition, tuple(tuple(s) for s in sigmas))


def cyclic_shift_upsilon(m: int) -> UpsilonTuple:
    """The 2m cyclic-shift tuple: sigma_i(j) = ((i + j - 2) mod 2m) + 1.

    Row 1 is the identity; row i shifts by i-1.  With A = odd indices and
    B = even indices every row lands in the required membership class.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    k = 2 * m
    partition = Partition.odd_even(k)
    sigmas = tuple(
        tuple((i + j - 2) % k + 1 for j in range(1, k + 1))
        for i in range(1, k + 1)
    )
    return validate_upsilon(sigmas, partition)


def is_regular_witness(sequence, limit, direction: str, leq: Leq) -> bool:
    """Check, on finite data, that a monotone convergent sequence is
    order-bounded by its limit: every term <= limit (nondecreasing) or
    >= limit (nonincreasing).

    ``leq`` should already absorb any tolerance policy of the base space.
    """
    if len(sequence) == 0:
        raise ValueError("empty sequence")
    if direction == "nondecreasing":
        return all(leq(x, limit) for x in sequence)
    if direction == "nonincreasing":
        return all(leq(limit, x) for x in sequence)
    raise ValueError(f"unknown direction {direction!r}")
