"""Top-level counting and listing dispatch over all pattern lengths."""
from __future__ import annotations

from .errors import InvalidEpsilon
from .oracle import exact_count_small
from .perm import Pattern, Permutation


def count(p: Permutation, sigma: Pattern, epsilon: float | None = 0.1,
          threads: int = 1) -> float:
    """Number of sigma-copies in p, within a multiplicative (1 +- eps).

    epsilon=None selects exact mode.  Patterns of length <= 3 are always
    counted exactly in near-linear time; k = 4 and k = 5 dispatch to the
    approximate engines (which never overestimate the true count).
    """
    if epsilon is not None and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    if sigma.k > p.n:
        return 0.0
    if sigma.k <= 3:
        return float(exact_count_small(p, sigma))
    if sigma.k == 4:
        from .count4 import count4
        from .parallel import count4_parallel

        if threads > 1:
            return count4_parallel(p, sigma, epsilon, threads)
        return count4(p, sigma, epsilon)
    from .count5 import count5
    from .parallel import count5_parallel

    if threads > 1:
        return count5_parallel(p, sigma, epsilon, threads)
    return count5(p, sigma, epsilon)


def list_copies(p: Permutation, sigma: Pattern, t: int | None):
    """Up to t distinct copies (all copies when t is None)."""
    from .listing import list_copies as _impl

    return _impl(p, sigma, t)
