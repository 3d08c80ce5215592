"""Complex-Golay-number membership, minimal-decomposition dynamic
programs, and the asymptotic bound calculators.

Membership follows the closure result for products over {2, 3, 5, 11, 13}:
m = 2^(a+u) 3^b 5^c 11^d 13^e is admissible when nonnegative exponents
exist with b + c + d + e <= a + 2u + 1 and u <= c + e.  All logs here are
base 2 with log(0) = 0 by convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OddTarget

_PRIMES = (2, 3, 5, 11, 13)


def _factor_smooth(m: int) -> tuple[int, int, int, int, int] | None:
    """Exponents of (2, 3, 5, 11, 13) or None if another prime divides m."""
    exps = []
    for p in _PRIMES:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        exps.append(e)
    return tuple(exps) if m == 1 else None


def is_cgn(m: int) -> bool:
    """Membership test for the complex-Golay-number family."""
    if m < 1:
        raise ValueError("m must be positive")
    exps = _factor_smooth(m)
    if exps is None:
        return False
    t, b, c, d, e = exps
    # split t = a + u maximizing a + 2u + 1 subject to u <= c + e
    u = min(t, c + e)
    return b + c + d + e <= (t - u) + 2 * u + 1


def cgn_upto(limit: int) -> list[int]:
    """Sorted list of all admissible numbers <= limit."""
    return [m for m in range(1, limit + 1) if is_cgn(m)]


@dataclass(frozen=True)
class Decomposition:
    target: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.parts) != self.target:
            raise ValueError("parts do not sum to target")

    def to_json(self) -> dict:
        return {"target": self.target, "parts": list(self.parts)}


def _layered_min_counts(limit: int, parts: list[int]) -> np.ndarray:
    """Minimal part counts for every target 0..limit (layered reachability
    sweep; counts here never exceed ~5 so a few layers suffice).  -1 marks
    unreachable targets."""
    counts = np.full(limit + 1, -1, dtype=np.int64)
    counts[0] = 0
    reached = np.zeros(limit + 1, dtype=bool)
    reached[0] = True
    frontier = reached.copy()
    layer = 0
    while frontier.any():
        layer += 1
        new = np.zeros(limit + 1, dtype=bool)
        for g in parts:
            new[g:] |= frontier[:limit + 1 - g]
        new &= ~reached
        if not new.any():
            break
        counts[new] = layer
        reached |= new
        frontier = new
    return counts


@lru_cache(maxsize=None)
def _lc_table_cached(limit: int) -> np.ndarray:
    table = _layered_min_counts(limit, cgn_upto(limit))
    table.setflags(write=False)
    return table


def lc(u: int) -> int:
    """Least number of admissible parts summing to u (0 for u = 0)."""
    if u < 0:
        raise ValueError("u must be nonnegative")
    if u == 0:
        return 0
    # grow the cached table in big steps so sweeps stay cheap
    limit = max(1024, 1 << (u.bit_length()))
    val = int(_lc_table_cached(limit)[u])
    assert val >= 0, "every positive integer decomposes (1 is admissible)"
    return val


def lc_decomposition(u: int) -> Decomposition:
    """A witness minimal decomposition, ties broken toward larger parts."""
    k = lc(u)
    members = cgn_upto(u) if u else []
    table = _lc_table_cached(max(1024, 1 << (u.bit_length()))) if u else None
    parts = []
    x = u
    while x:
        for g in reversed(members):
            if g <= x and int(table[x - g]) == int(table[x]) - 1:
                parts.append(g)
                x -= g
                break
        else:
            raise AssertionError("witness walk failed")
    assert len(parts) == k
    return Decomposition(u, tuple(parts))


@lru_cache(maxsize=None)
def _lcp_table_cached(limit: int) -> np.ndarray:
    parts = [2 * g for g in cgn_upto(limit // 2)]
    table = _layered_min_counts(limit, parts)
    table.setflags(write=False)
    return table


def lcp(u: int) -> int:
    """Least number of two-variable pair lengths (doubled admissible
    numbers) summing to u; u must be even."""
    if u < 0:
        raise ValueError("u must be nonnegative")
    if u % 2 != 0:
        raise OddTarget(f"two-variable lengths are even; {u} is odd")
    if u == 0:
        return 0
    limit = max(2048, 1 << (u.bit_length()))
    val = int(_lcp_table_cached(limit)[u])
    assert val >= 0
    return val


def lc_upper_bound(u: int) -> int:
    """Reported upper bound 3*floor(log2(u)/26) + 4 for the minimal
    decomposition count of any positive u."""
    if u < 1:
        raise ValueError("u must be positive")
    return 3 * ((u.bit_length() - 1) // 26) + 4


def _log2(x: int) -> float:
    """Base-2 log with the log(0) = 0 convention."""
    return math.log2(x) if x > 0 else 0.0


def _pick_lead(tuple_: tuple[int, ...]) -> int:
    """Index of the element whose decomposition count drops most when
    reduced by one; ties prefer the smaller element (a leading 1 then
    drops out entirely)."""
    diffs = [lc(v) - lc(v - 1) for v in tuple_]
    best = max(diffs)
    candidates = [i for i, d in enumerate(diffs) if d == best]
    return min(candidates, key=lambda i: tuple_[i])


def od_exponent_bound(tuple_: tuple[int, ...]) -> tuple[float, int]:
    """(3/13) log(u1 - 1) + (3/13) sum log(u_i) + 8k + 4, with u1 chosen
    by the maximal count-difference rule; returns (real value, ceiling)."""
    tuple_ = tuple(tuple_)
    if not tuple_:
        raise ValueError("empty tuple")
    k = len(tuple_)
    lead = _pick_lead(tuple_)
    rest = [v for i, v in enumerate(tuple_) if i != lead]
    val = (3 / 13) * (_log2(tuple_[lead] - 1) + sum(_log2(v) for v in rest)) \
        + 8 * k + 4
    return val, math.ceil(val)


def od_exponent_bound_via_sets(tuple_: tuple[int, ...]) -> tuple[float, int]:
    """(1/5) log(v1 - 1) + (1/5) sum log(v_i) + 10k + 4, same lead rule."""
    tuple_ = tuple(tuple_)
    if not tuple_:
        raise ValueError("empty tuple")
    k = len(tuple_)
    lead = _pick_lead(tuple_)
    rest = [v for i, v in enumerate(tuple_) if i != lead]
    val = (1 / 5) * (_log2(tuple_[lead] - 1) + sum(_log2(v) for v in rest)) \
        + 10 * k + 4
    return val, math.ceil(val)


def remrep_exponent_bound_sorted(tuple_: tuple[int, ...]) -> tuple[float, int]:
    """Bound on the representation exponent after canonicalizing into
    (1, singles..., pairs...): 2 + (3/13)(sum log v + sum log w) + 8(q+t)."""
    from .circulant import canonicalize_tuple
    canon = canonicalize_tuple(tuple_)
    q, t = len(canon.v_slots), len(canon.w_slots)
    val = 2.0 + (3 / 13) * (sum(_log2(v) for v in canon.v_slots)
                            + sum(_log2(w) for w in canon.w_slots)) \
        + 8 * (q + t)
    return val, math.ceil(val)


def pair_count_bound(u: int) -> int:
    """Ceiling of (1/10) log2(u) + 5: complementary-set size bound used
    by the generic construction."""
    if u < 1:
        raise ValueError("u must be positive")
    return math.ceil(_log2(u) / 10 + 5)
