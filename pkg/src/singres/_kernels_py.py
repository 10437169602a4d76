"""Pure-Python exact-change minimum-cost table (fallback for ``_kernels``)."""


def min_cost_change(coins, costs, limit):
    """Cheapest way to pay every total ``0..limit`` with unlimited coins.

    ``best[t]`` is the minimum of ``sum(k_j * costs[j])`` over nonnegative
    ``k`` with ``sum(k_j * coins[j]) == t``, or ``-1`` when no such ``k``
    exists.  ``choice[t]`` is the index of the last coin used (``-1`` at 0 or
    when infeasible); ties keep the lowest index.
    """
    if limit < 0:
        return [], []
    best = [-1] * (limit + 1)
    choice = [-1] * (limit + 1)
    best[0] = 0
    pairs = list(enumerate(zip(coins, costs)))
    for t in range(1, limit + 1):
        b = -1
        ch = -1
        for j, (c, w) in pairs:
            if c <= t:
                prev = best[t - c]
                if prev >= 0:
                    cand = prev + w
                    if b < 0 or cand < b:
                        b = cand
                        ch = j
        best[t] = b
        choice[t] = ch
    return best, choice
