"""Exact counting, enumeration, unranking, and exhaustive probabilities.

The workhorse is a dynamic-programming table of restricted counts
c(m, k) = number of partitions of m whose largest part is at most k.
The table powers pi(n) = c(n, n), reverse-lexicographic enumeration,
and unranking (which in turn powers exact uniform sampling).  An
independently implemented pentagonal-number recurrence cross-checks
the table.  Probabilities are exact rationals throughout.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .partitions import Partition, _parts_of, is_graphical_eg, is_graphical_hh

__all__ = [
    "ENUMERATION_CAP",
    "PAIR_CAP",
    "PartitionTable",
    "build_table",
    "comparable_count",
    "count_partitions",
    "enumerate_partitions",
    "exact_p",
    "exact_r",
    "graphical_count",
    "pentagonal_counts",
    "rank",
    "unrank",
]

#: Default cap for full enumeration of one weight class (exact_p).
ENUMERATION_CAP = 60
#: Default cap for exhaustion over ordered pairs of partitions (exact_r).
PAIR_CAP = 30


class PartitionTable:
    """Restricted partition counts c(m, k) for 0 <= m, k <= max_n.

    c(m, k) counts partitions of m with every part at most k and obeys

        c(0, k) = 1,  c(m, 0) = 0 for m >= 1,
        c(m, k) = c(m, k-1) + c(m-k, k) for 1 <= k <= m,

    with c(m, k) constant in k beyond k = m.  Entries are Python
    integers, so nothing overflows.  Instances are immutable once
    built and safe to share.
    """

    def __init__(self, max_n):
        max_n = int(max_n)
        if max_n < 0:
            raise ValueError("max_n must be nonnegative")
        self.max_n = max_n
        table = [[0] * (max_n + 1) for _ in range(max_n + 1)]
        table[0] = [1] * (max_n + 1)
        for m in range(1, max_n + 1):
            row = table[m]
            for k in range(1, max_n + 1):
                row[k] = row[k - 1] + (table[m - k][k] if k <= m else 0)
        self._table = table

    def count_restricted(self, m, k):
        """c(m, k): partitions of m with largest part at most k."""
        if not (0 <= m <= self.max_n and 0 <= k <= self.max_n):
            raise ValueError(
                f"(m={m}, k={k}) outside table range 0..{self.max_n}"
            )
        return self._table[m][k]

    def count(self, n):
        """pi(n), the number of partitions of n."""
        if not 0 <= n <= self.max_n:
            raise ValueError(f"n={n} outside table range 0..{self.max_n}")
        return self._table[n][n]


def build_table(max_n):
    """Build a PartitionTable covering weights 0..max_n."""
    return PartitionTable(max_n)


def count_partitions(table, n):
    """pi(n) from a prebuilt table."""
    return table.count(n)


def pentagonal_counts(max_n):
    """pi(0..max_n) by Euler's pentagonal-number recurrence.

    Shares no code with PartitionTable, so the two can vouch for each
    other.  Returns a list indexed by n.
    """
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    pi = [0] * (max_n + 1)
    pi[0] = 1
    for n in range(1, max_n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = 1 if j % 2 else -1
            total += sign * pi[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * pi[n - g2]
            j += 1
        pi[n] = total
    return pi


def _part_tuples(n):
    # reverse-lexicographic enumeration, in-place successor stepping
    if n == 0:
        yield ()
        return
    parts = [n]
    while True:
        yield tuple(parts)
        i = len(parts) - 1
        while i >= 0 and parts[i] == 1:
            i -= 1
        if i < 0:
            return
        rem = len(parts) - i  # trailing ones plus the freed unit
        new = parts[i] - 1
        del parts[i + 1:]
        parts[i] = new
        while rem > new:
            parts.append(new)
            rem -= new
        if rem:
            parts.append(rem)


def enumerate_partitions(n):
    """Yield every partition of n once, in reverse-lexicographic order.

    The stream starts at (n) and ends at (1,...,1); its length is
    pi(n).  n = 0 yields exactly the empty partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    for parts in _part_tuples(n):
        yield Partition(parts)


def unrank(table, n, idx):
    """The idx-th partition of n in enumeration order (0-based).

    Walks down the table by first-part blocks: partitions of n whose
    first part is exactly j occupy a block of size c(n-j, j).
    """
    total = table.count(n)
    if not 0 <= idx < total:
        raise ValueError(f"index {idx} out of range for pi({n}) = {total}")
    parts = []
    m, bound = n, n
    while m:
        for j in range(min(m, bound), 0, -1):
            block = table.count_restricted(m - j, j)
            if idx < block:
                parts.append(j)
                m -= j
                bound = j
                break
            idx -= block
    return Partition(parts)


def rank(table, lam):
    """Position of ``lam`` in the enumeration order of its weight.

    Inverse of :func:`unrank`.
    """
    parts = _parts_of(lam)
    n = sum(parts)
    if n > table.max_n:
        raise ValueError(f"weight {n} outside table range 0..{table.max_n}")
    idx = 0
    m, bound = n, n
    for p in parts:
        for j in range(min(m, bound), p, -1):
            idx += table.count_restricted(m - j, j)
        m -= p
        bound = p
    return idx


def graphical_count(n, *, cap=ENUMERATION_CAP):
    """(graphical partitions of n, pi(n)) by exhaustion.

    Decides graphicality with the Erdos-Gallai form and cross-checks
    every verdict against the Havel-Hakimi reduction; a disagreement
    raises immediately.  Cost grows like pi(n), hence the cap
    (default 60).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"n = {n} above enumeration cap {cap}; pass cap= to force")
    total = 0
    hits = 0
    for parts in _part_tuples(n):
        total += 1
        ok = is_graphical_eg(parts)
        if ok != is_graphical_hh(parts):
            raise RuntimeError(f"graphicality tests disagree on {parts}")
        if ok:
            hits += 1
    return hits, total


def exact_p(n, *, cap=ENUMERATION_CAP):
    """Exact probability that a uniform random partition of n is graphical."""
    hits, total = graphical_count(n, cap=cap)
    return Fraction(hits, total)


def comparable_count(n, *, cap=PAIR_CAP, two_sided=False):
    """(comparable ordered pairs of partitions of n, pi(n)) by exhaustion.

    A pair (lam, mu) counts when lam <= mu in dominance; ties count.
    With ``two_sided=True`` pairs comparable in either direction count
    instead, which by antisymmetry is 2*one_sided - pi(n) pairs.  Pair
    exhaustion is quadratic in pi(n), hence the cap (default 30).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"n = {n} above pair-exhaustion cap {cap}; pass cap= to force")
    if n == 0:
        return 1, 1
    plist = list(_part_tuples(n))
    count = len(plist)
    width = max(len(p) for p in plist)
    mat = np.zeros((count, width), dtype=np.int64)
    for i, parts in enumerate(plist):
        mat[i, : len(parts)] = parts
    pref = mat.cumsum(axis=1)
    # row i is dominated by row j iff pref[i] <= pref[j] entrywise
    comparable = 0
    for i in range(count):
        comparable += int((pref >= pref[i]).all(axis=1).sum())
    pairs = 2 * comparable - count if two_sided else comparable
    return pairs, count


def exact_r(n, *, cap=PAIR_CAP, two_sided=False):
    """Exact probability that lam <= mu in dominance, for an ordered pair
    of independent uniform partitions of n (either direction when
    ``two_sided``)."""
    pairs, count = comparable_count(n, cap=cap, two_sided=two_sided)
    return Fraction(pairs, count * count)
