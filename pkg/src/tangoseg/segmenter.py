"""Boundary voting over n-gram counts and boundary placement.

At each gap in a sequence, every n-gram order in the configured set casts a
vote: the fraction of count comparisons in which a non-straddling n-gram
beside the gap outnumbers an n-gram straddling it.  The per-order votes are
averaged, and a gap becomes a boundary when the averaged vote is a strict
local maximum, meets the threshold, or both, depending on the enabled
conditions.

Edge conventions (pinned by tests):
  * only comparisons between existing n-grams are performed; the vote
    denominator is the number of comparisons actually made;
  * an order contributing no comparison at a gap is dropped from the
    average rather than counted as zero;
  * a gap where no order has evidence gets total vote 0;
  * a gap missing one neighbour is a local maximum iff strictly greater
    than its single existing neighbour; a gap with no neighbours (length-2
    sequence) is never a local maximum.
"""

from dataclasses import dataclass

from .annotations import FlatSegmentation
from .errors import ParameterError, UnsupportedOrderError
from .ngrams import NGramTable

__all__ = [
    "TangoParams",
    "VoteProfile",
    "order_vote",
    "order_vote_counts",
    "place_boundaries",
    "segment",
    "total_vote",
    "vote_profile",
]


@dataclass(frozen=True)
class TangoParams:
    """Order set, threshold, and boundary-condition flags."""

    orders: frozenset[int]
    threshold: float
    use_local_max: bool = True
    use_threshold: bool = True

    def __post_init__(self):
        object.__setattr__(self, "orders", frozenset(self.orders))
        if not self.orders:
            raise ParameterError("order set must be non-empty")
        if any(not isinstance(n, int) or n < 2 for n in self.orders):
            raise ParameterError("all orders must be integers >= 2")
        if not 0.0 <= self.threshold <= 1.0:
            raise ParameterError(f"threshold must be in [0, 1], got {self.threshold}")
        if not (self.use_local_max or self.use_threshold):
            raise ParameterError("at least one boundary condition must be enabled")

    @property
    def sorted_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.orders))


@dataclass
class VoteProfile:
    """Total vote per gap of one sequence; gap k follows the k-th character."""

    sequence: str
    votes: list[float]
    per_order: "dict[int, list[float]] | None" = None

    def __post_init__(self):
        if len(self.votes) != len(self.sequence) - 1:
            raise ParameterError(
                f"profile needs {len(self.sequence) - 1} votes, got {len(self.votes)}"
            )
        if any(not 0.0 <= v <= 1.0 for v in self.votes):
            raise ParameterError("votes must lie in [0, 1]")


def _check_location(seq: str, k: int):
    if not 1 <= k <= len(seq) - 1:
        raise ParameterError(f"location {k} out of range 1..{len(seq) - 1}")


def order_vote_counts(seq: str, k: int, n: int, table: NGramTable) -> tuple[int, int]:
    """(affirmative comparisons, total comparisons) for one order at gap k.

    The non-straddling n-grams are the n characters ending at k and the n
    characters starting at k+1; a straddling n-gram leaves j of its
    characters right of the gap, for each j in 1..n-1.  Only pairs whose
    both members fit the sequence are compared.
    """
    _check_location(seq, k)
    if n not in table.orders:
        raise UnsupportedOrderError(f"order {n} not in table orders {sorted(table.orders)}")
    length = len(seq)
    sides = []
    if k >= n:
        sides.append(seq[k - n : k])
    if length - k >= n:
        sides.append(seq[k : k + n])
    straddling = [
        seq[k - (n - j) : k + j]
        for j in range(1, n)
        if j <= length - k and n - j <= k
    ]
    if not sides or not straddling:
        return 0, 0
    side_counts = [table.count(g) for g in sides]
    straddle_counts = [table.count(g) for g in straddling]
    affirmative = sum(1 for s in side_counts for t in straddle_counts if s > t)
    return affirmative, len(side_counts) * len(straddle_counts)


def order_vote(seq: str, k: int, n: int, table: NGramTable) -> float:
    """Fraction of affirmative comparisons at gap k for order n; 0 when the
    order has no evidence there."""
    affirmative, comparisons = order_vote_counts(seq, k, n, table)
    if comparisons == 0:
        return 0.0
    return affirmative / comparisons


def total_vote(seq: str, k: int, params: TangoParams, table: NGramTable) -> float:
    """Mean of the order votes over orders with evidence at gap k."""
    if not params.orders <= table.orders:
        missing = sorted(params.orders - table.orders)
        raise UnsupportedOrderError(f"table does not cover orders {missing}")
    votes = []
    for n in params.sorted_orders:
        affirmative, comparisons = order_vote_counts(seq, k, n, table)
        if comparisons:
            votes.append(affirmative / comparisons)
    if not votes:
        return 0.0
    return sum(votes) / len(votes)


def vote_profile(
    seq: str,
    orders,
    table: NGramTable,
    keep_per_order: bool = False,
) -> VoteProfile:
    """Total vote at every gap; optionally retains per-order votes."""
    orders = sorted(set(orders))
    if not orders:
        raise ParameterError("order set must be non-empty")
    if not set(orders) <= table.orders:
        missing = sorted(set(orders) - table.orders)
        raise UnsupportedOrderError(f"table does not cover orders {missing}")
    votes = []
    per_order: "dict[int, list[float]] | None" = (
        {n: [] for n in orders} if keep_per_order else None
    )
    for k in range(1, len(seq)):
        found = []
        for n in orders:
            affirmative, comparisons = order_vote_counts(seq, k, n, table)
            v = affirmative / comparisons if comparisons else 0.0
            if per_order is not None:
                per_order[n].append(v)
            if comparisons:
                found.append(v)
        votes.append(sum(found) / len(found) if found else 0.0)
    return VoteProfile(seq, votes, per_order)


def place_boundaries(profile: VoteProfile, params: TangoParams) -> FlatSegmentation:
    """Apply the local-maximum / threshold rule to a vote profile."""
    votes = profile.votes
    last = len(votes) - 1
    bounds = []
    for i, v in enumerate(votes):
        hit = False
        if params.use_local_max and last > 0:
            left_ok = i == 0 or v > votes[i - 1]
            right_ok = i == last or v > votes[i + 1]
            hit = left_ok and right_ok
        if not hit and params.use_threshold and v >= params.threshold:
            hit = True
        if hit:
            bounds.append(i + 1)
    return FlatSegmentation(profile.sequence, tuple(bounds))


def segment(seq: str, params: TangoParams, table: NGramTable) -> FlatSegmentation:
    """Vote at every gap of seq and place boundaries; a single-character
    sequence comes back as one segment."""
    return place_boundaries(vote_profile(seq, params.orders, table), params)
