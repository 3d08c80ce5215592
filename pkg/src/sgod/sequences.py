"""Sequences over {0, +-x, +-i*x}, non-periodic autocorrelation,
complementary pairs, and the pair database feeding the circulant builder.

Sequence entries are (coefficient, variable) with the coefficient a
signed permutation of degree 1 (real alphabet) or 2 (complex alphabet,
i represented by R).  Unit bookkeeping in searches and compositions uses
exponent codes k = 0..3 standing for i**k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .algebra import GroupRingElem, QuadForm, SignedPerm, embed_central_i, sp_R
from .errors import (BudgetExceeded, CompositionUnsupported, NotGolay,
                     NotReachable, VerificationFailure)

DEFAULT_SEARCH_BUDGET = 2 ** 26

_I1 = SignedPerm.identity(1)
_I2 = SignedPerm.identity(2)
_R = sp_R()

# i**k at degree 2 and (for k in {0, 2}) at degree 1
_UNIT2 = (_I2, _R, -_I2, -_R)
_UNIT1 = {0: _I1, 2: -_I1}


def unit_sp(code: int, degree: int = 2) -> SignedPerm:
    """Signed-perm image of i**code at degree 1 or 2."""
    code %= 4
    if degree == 2:
        return _UNIT2[code]
    if degree == 1:
        if code not in _UNIT1:
            raise ValueError("imaginary unit has no degree-1 image")
        return _UNIT1[code]
    raise ValueError("unit degree must be 1 or 2")


def unit_code(sp: SignedPerm) -> int:
    """Inverse of unit_sp for degree <= 2 coefficients."""
    for code in range(4):
        try:
            if unit_sp(code, sp.degree) == sp:
                return code
        except ValueError:
            continue
    raise ValueError(f"{sp!r} is not an embedded unit")


class GolaySeq:
    """Finite sequence of entries 0 or coeff * x_var."""

    __slots__ = ("entries", "degree")

    def __init__(self, entries, degree: int):
        self.entries = tuple(entries)
        self.degree = degree
        for e in self.entries:
            if e is not None and e[0].degree != degree:
                raise ValueError("entry coefficient degree mismatch")

    @classmethod
    def from_codes(cls, codes, var: int = 1, degree: int = 2) -> GolaySeq:
        """Build from unit exponent codes (None for a zero entry)."""
        return cls(tuple(None if c is None else (unit_sp(c, degree), var)
                         for c in codes), degree)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GolaySeq):
            return NotImplemented
        return self.degree == other.degree and self.entries == other.entries

    def __repr__(self) -> str:
        return f"GolaySeq({' '.join(self.tokens())})"

    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({e[1] for e in self.entries if e is not None}))

    def abs_profile(self) -> tuple[int, ...]:
        """Componentwise magnitude: the variable index, 0 for zero."""
        return tuple(0 if e is None else e[1] for e in self.entries)

    def conj_reversed(self) -> GolaySeq:
        ents = tuple(None if e is None else (e[0].conj(), e[1])
                     for e in reversed(self.entries))
        return GolaySeq(ents, self.degree)

    def negated(self) -> GolaySeq:
        return GolaySeq(tuple(None if e is None else (-e[0], e[1])
                              for e in self.entries), self.degree)

    def retagged(self, var: int) -> GolaySeq:
        return GolaySeq(tuple(None if e is None else (e[0], var)
                              for e in self.entries), self.degree)

    def embedded(self, degree: int) -> GolaySeq:
        """Blow units up to the given degree (1 -> I, i -> I kron R)."""
        if degree == self.degree:
            return self
        ident = SignedPerm.identity(degree)
        i_img = embed_central_i(degree) if degree % 2 == 0 else None
        table = {}
        ents = []
        for e in self.entries:
            if e is None:
                ents.append(None)
                continue
            sp, var = e
            img = table.get(sp.key())
            if img is None:
                code = unit_code(sp)
                if code % 2 == 0:
                    img = ident if code == 0 else -ident
                else:
                    if i_img is None:
                        raise ValueError("cannot embed i at odd degree")
                    img = i_img if code == 1 else -i_img
                table[sp.key()] = img
            ents.append((img, var))
        return GolaySeq(tuple(ents), degree)

    def npaf(self, j: int) -> QuadForm:
        """Non-periodic autocorrelation value at shift j (zero for
        j >= length)."""
        if j < 0:
            raise ValueError("shift must be nonnegative")
        out = QuadForm(self.degree)
        n = len(self.entries)
        for i in range(n - j):
            hi = self.entries[i + j]
            lo = self.entries[i]
            if hi is None or lo is None:
                continue
            out.add_product(hi[0] * lo[0].conj(), hi[1], lo[1])
        return out

    def weight(self) -> dict[int, int]:
        """Nonzero entry count per variable."""
        w: dict[int, int] = {}
        for e in self.entries:
            if e is not None:
                w[e[1]] = w.get(e[1], 0) + 1
        return w

    def tokens(self, unit_style: bool = False) -> list[str]:
        """Entry tokens; unit_style drops the variable tag (one-variable
        pairs are stored as plain units)."""
        return [format_entry(e, unit_style) for e in self.entries]

    @classmethod
    def from_tokens(cls, tokens, degree: int | None = None) -> GolaySeq:
        parsed = [parse_entry(t) for t in tokens]
        if degree is None:
            degree = 1 if all(c is None or c % 2 == 0 for c, _ in parsed) else 2
        ents = []
        for code, var in parsed:
            # bare units read as variable 1
            ents.append(None if code is None
                        else (unit_sp(code, degree), var if var else 1))
        return cls(tuple(ents), degree)


def format_entry(e, unit_style: bool = False) -> str:
    if e is None:
        return "0"
    code = unit_code(e[0])
    sign = "+" if code < 2 else "-"
    imag = code % 2 == 1
    if unit_style:
        return f"{sign}{'i' if imag else '1'}"
    return f"{sign}{'i*' if imag else ''}x{e[1]}"


def parse_entry(token: str) -> tuple[int | None, int]:
    """Parse an entry token into (unit code, var index); var 0 means a
    bare unit (implicitly variable 1 in one-variable contexts)."""
    t = token.strip()
    if t == "0":
        return None, 0
    sign = 0
    if t[0] in "+-":
        if t[0] == "-":
            sign = 2
        t = t[1:]
    imag = 0
    if t.startswith("i*"):
        imag = 1
        t = t[2:]
    elif t == "i":
        return (1 + sign) % 4, 0
    if t == "1":
        return sign % 4, 0
    if t.startswith("x") and t[1:].isdigit():
        return (imag + sign) % 4, int(t[1:])
    raise ValueError(f"bad entry token {token!r}")


@dataclass(frozen=True)
class GolayPair:
    """A pair of equal-length sequences; `verified` means the summed
    NPAF vanished at every positive shift when the flag was set."""

    first: GolaySeq
    second: GolaySeq
    variables: int
    verified: bool = False

    def __post_init__(self):
        if len(self.first) != len(self.second):
            raise ValueError("pair sequences must have equal length")

    @property
    def length(self) -> int:
        return len(self.first)

    @property
    def is_real(self) -> bool:
        try:
            return all(unit_code(e[0]) % 2 == 0
                       for s in (self.first, self.second)
                       for e in s.entries if e is not None)
        except ValueError:
            return False

    def as_degree(self, degree: int) -> GolayPair:
        return GolayPair(self.first.embedded(degree),
                         self.second.embedded(degree),
                         self.variables, self.verified)

    def to_json(self) -> dict:
        alphabet = "real" if self.is_real and self.first.degree == 1 else "complex"
        unit_style = self.variables == 1
        return {"length": self.length, "alphabet": alphabet,
                "first": self.first.tokens(unit_style),
                "second": self.second.tokens(unit_style)}

    @classmethod
    def from_json(cls, obj: dict) -> GolayPair:
        degree = 1 if obj.get("alphabet") == "real" else 2
        first = GolaySeq.from_tokens(obj["first"], degree)
        second = GolaySeq.from_tokens(obj["second"], degree)
        if len(first) != obj.get("length", len(first)):
            raise ValueError("length field inconsistent with sequence")
        nvars = max([1] + [e[1] for s in (first, second)
                           for e in s.entries if e is not None])
        return cls(first, second, nvars, verified=False)


def npaf(seq: GolaySeq, j: int) -> QuadForm:
    return seq.npaf(j)


def is_complementary(seqs) -> bool:
    """True iff the NPAF sums vanish for every shift j > 0."""
    seqs = list(seqs)
    if not seqs:
        return True
    degree = max(s.degree for s in seqs)
    seqs = [s.embedded(degree) for s in seqs]
    for j in range(1, max(len(s) for s in seqs)):
        total = QuadForm(degree)
        for s in seqs:
            total = total + s.npaf(j)
        if not total.is_zero():
            return False
    return True


def quasireverse_check(a: GolaySeq, b: GolaySeq) -> bool:
    """abs of conjugated-reversed a equals abs of b."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return a.conj_reversed().abs_profile() == b.abs_profile()


def verify_pair(first: GolaySeq, second: GolaySeq) -> GolayPair:
    """Run the NPAF oracle and return the pair marked verified."""
    if not is_complementary([first, second]):
        raise VerificationFailure("pair fails the autocorrelation oracle")
    nvars = max([1] + [e[1] for s in (first, second)
                       for e in s.entries if e is not None])
    return GolayPair(first, second, nvars, verified=True)


def two_variable_lift(p: GolayPair) -> GolayPair:
    """(A;B) of length m -> ((xA, yB); (yA, -xB)) of length 2m."""
    if not p.verified:
        raise ValueError("input pair must be verified")
    if p.variables != 1:
        raise ValueError("input pair must be one-variable")
    a, b = p.first, p.second
    first = GolaySeq(a.retagged(1).entries + b.retagged(2).entries, a.degree)
    second = GolaySeq(a.retagged(2).entries + b.retagged(1).negated().entries,
                      a.degree)
    out = verify_pair(first, second)
    if not quasireverse_check(out.first, out.second):
        raise VerificationFailure("lifted pair is not quasireverse-compatible")
    return out


def double_pair(p: GolayPair) -> GolayPair:
    """(A;B) -> ((A,B); (A,-B)), doubling the length."""
    if not p.verified:
        raise ValueError("input pair must be verified")
    a, b = p.first, p.second
    first = GolaySeq(a.entries + b.entries, a.degree)
    second = GolaySeq(a.entries + b.negated().entries, a.degree)
    return verify_pair(first, second)


def _pair_codes(p: GolayPair) -> tuple[list[int], list[int]]:
    """Unit codes of a unit-entry pair (zero entries rejected)."""
    out = []
    for s in (p.first, p.second):
        codes = []
        for e in s.entries:
            if e is None:
                raise ValueError("pair has zero entries")
            codes.append(unit_code(e[0]))
        out.append(codes)
    return out[0], out[1]


def compose_pairs(p: GolayPair, q: GolayPair) -> GolayPair:
    """Product construction: a real pair of length m and a complex pair
    of length n make a complex pair of length m*n.

    With (A;B) the real pair, S = (A+B)/2 and T = (A-B)/2 have disjoint
    {0, +-1} entries; with (C;D) the complex pair and * conjugate-reversal,
    the candidate is (C x S + D* x T ; D x S - C* x T), blockwise with
    inner blocks of length m.  The result is accepted only after the
    autocorrelation oracle passes.
    """
    if not (p.verified and q.verified):
        raise ValueError("both input pairs must be verified")
    if not p.is_real:
        raise ValueError("first pair must be real (+-1 entries)")
    a_codes, b_codes = _pair_codes(p)
    a = [1 if c == 0 else -1 for c in a_codes]
    b = [1 if c == 0 else -1 for c in b_codes]
    c_codes, d_codes = _pair_codes(q)
    m, n = p.length, q.length
    s = [(x + y) // 2 for x, y in zip(a, b)]
    t = [(x - y) // 2 for x, y in zip(a, b)]
    c_star = [(-c) % 4 for c in reversed(c_codes)]
    d_star = [(-c) % 4 for c in reversed(d_codes)]

    def block_mix(outer1, outer2):
        codes = []
        for i in range(n):
            for j in range(m):
                if s[j] != 0:
                    u = (outer1[i] + (0 if s[j] == 1 else 2)) % 4
                else:
                    u = (outer2[i] + (0 if t[j] == 1 else 2)) % 4
                codes.append(u)
        return codes

    h = block_mix(c_codes, d_star)
    k = block_mix(d_codes, [(c + 2) % 4 for c in c_star])
    first = GolaySeq.from_codes(h, 1, 2)
    second = GolaySeq.from_codes(k, 1, 2)
    try:
        return verify_pair(first, second)
    except VerificationFailure as exc:
        raise CompositionUnsupported(
            f"composition candidate {m}x{n} failed the oracle") from exc


_UNIT_VALUES = np.array([1, 1j, -1, -1j], dtype=np.complex128)


def _npaf_table(codes: np.ndarray) -> np.ndarray:
    """Vectorized NPAF over candidate rows of unit codes: returns
    (rows, length-1) complex values for shifts 1..length-1."""
    vals = _UNIT_VALUES[codes]
    n = codes.shape[1]
    out = np.empty((codes.shape[0], n - 1), dtype=np.complex128)
    for j in range(1, n):
        out[:, j - 1] = np.sum(vals[:, j:] * np.conj(vals[:, :n - j]), axis=1)
    return out


def search_pairs(length: int, alphabet: str,
                 budget: int = DEFAULT_SEARCH_BUDGET) -> list[GolayPair]:
    """Exhaustive normalized pair search (first entries pinned to +1).

    Candidates are matched on negated autocorrelation signatures, then
    every surviving pair is re-checked with the exact group-ring oracle.
    Results come back in lexicographic code order.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if alphabet not in ("real", "complex"):
        raise ValueError("alphabet must be 'real' or 'complex'")
    base = 4 if alphabet == "complex" else 2
    if base ** (2 * length) > budget:
        raise BudgetExceeded(
            f"search space {base}**{2 * length} exceeds budget {budget}")
    degree = 2 if alphabet == "complex" else 1
    codes_pool = (0, 1, 2, 3) if alphabet == "complex" else (0, 2)
    if length == 1:
        pair = verify_pair(GolaySeq.from_codes([0], 1, degree),
                           GolaySeq.from_codes([0], 1, degree))
        return [pair]
    rows = np.array([(0,) + tail for tail in
                     itertools.product(codes_pool, repeat=length - 1)],
                    dtype=np.int64)
    table = _npaf_table(rows)
    table = table + 0.0  # flush -0.0 so byte keys compare equal
    index: dict[bytes, list[int]] = {}
    for i in range(rows.shape[0]):
        index.setdefault(table[i].tobytes(), []).append(i)
    out = []
    for i in range(rows.shape[0]):
        want = (-table[i] + 0.0).tobytes()
        for j in index.get(want, ()):
            first = GolaySeq.from_codes(rows[i].tolist(), 1, degree)
            second = GolaySeq.from_codes(rows[j].tolist(), 1, degree)
            out.append(verify_pair(first, second))
    return out


PRIMITIVE_COMPLEX = (1, 2, 3, 5)
PRIMITIVE_REAL = (2, 4, 8, 10)
DATA_FILES = {11: "golay11.json", 13: "golay13.json", 26: "golay26.json"}


class PairDatabase:
    """Verified Golay pairs: exhaustive primitives, optional data files,
    and closure under doubling and the real-by-complex product."""

    def __init__(self, data_dir=None, use_data_files: bool = True):
        self._data_dir = data_dir
        self._use_data = use_data_files
        self._pairs: dict[int, GolayPair] = {}
        self._real: dict[int, GolayPair] = {}
        self._two_var: dict[int, GolayPair] = {}
        self._data_checked: set[int] = set()

    # -- primitive sourcing ------------------------------------------------

    def _search_primitive(self, n: int, alphabet: str) -> GolayPair:
        found = search_pairs(n, alphabet)
        if not found:
            raise NotReachable(f"no {alphabet} pair of length {n} exists")
        return found[0]

    def _data_path(self, n: int):
        name = DATA_FILES[n]
        if self._data_dir is not None:
            import pathlib
            return pathlib.Path(self._data_dir) / name
        import importlib.resources as res
        return res.files("sgod").joinpath("data").joinpath(name)

    def _try_data(self, n: int) -> GolayPair | None:
        if not self._use_data or n not in DATA_FILES or n in self._data_checked:
            return None
        self._data_checked.add(n)
        path = self._data_path(n)
        try:
            raw = path.read_text()
        except (FileNotFoundError, OSError):
            return None
        pair = self.load_pair_json(json.loads(raw))
        return pair

    def load_pair_json(self, obj: dict) -> GolayPair:
        """Verified load: a pair failing the oracle is rejected."""
        cand = GolayPair.from_json(obj)
        pair = verify_pair(cand.first, cand.second)  # raises if invalid
        n = pair.length
        self._pairs.setdefault(n, pair)
        if pair.is_real:
            self._real.setdefault(n, pair)
        return pair

    def load_pair_file(self, path) -> GolayPair:
        with open(path) as fh:
            return self.load_pair_json(json.load(fh))

    def _real_pair_primitive(self, n: int) -> GolayPair:
        if n in self._real:
            return self._real[n]
        if n in PRIMITIVE_REAL:
            pair = self._search_primitive(n, "real")
            self._real[n] = pair
            self._pairs.setdefault(n, pair)
            return pair
        self._has_data(n)
        if n in self._real:
            return self._real[n]
        raise NotReachable(f"no real primitive pair of length {n}")

    def _complex_seed(self, n: int) -> GolayPair:
        if n in self._pairs:
            return self._pairs[n]
        if n in PRIMITIVE_COMPLEX:
            pair = self._search_primitive(n, "complex")
        else:
            pair = self._try_data(n)
            if pair is None:
                raise NotReachable(f"no primitive pair of length {n}")
        self._pairs.setdefault(n, pair)
        return self._pairs[n]

    # -- reachability ------------------------------------------------------

    def _available_seeds(self) -> list[int]:
        seeds = set(PRIMITIVE_COMPLEX)
        for n in DATA_FILES:
            if self._has_data(n):
                seeds.add(n)
        seeds.update(self._pairs)
        return sorted(seeds)

    def _has_data(self, n: int) -> bool:
        if n in self._pairs:
            return True
        return self._try_data(n) is not None

    def _real_factors(self, r: int) -> list[int] | None:
        """Factor r into available real primitive lengths, largest first;
        None if r is not a product of {2, 10, 26} powers (with 26 only
        when its data pair is available)."""
        if r == 1:
            return []
        beta = 0
        gamma = 0
        x = r
        while x % 13 == 0:
            x //= 13
            gamma += 1
        while x % 5 == 0:
            x //= 5
            beta += 1
        alpha = 0
        while x % 2 == 0:
            x //= 2
            alpha += 1
        if x != 1:
            return None
        alpha -= beta + gamma
        if alpha < 0:
            return None
        if gamma > 0:
            if 26 not in self._real:
                self._has_data(26)  # loads the data pair if present
            if 26 not in self._real:
                return None
        factors = [26] * gamma + [10] * beta
        factors += [8] * (alpha // 3)
        factors += {0: [], 1: [2], 2: [4]}[alpha % 3]
        return factors

    def plan(self, n: int) -> tuple[int, list[int]] | None:
        """(complex seed length, real multiplier factors) or None."""
        if n in self._pairs:
            return (n, [])
        seeds = [s for s in self._available_seeds() if n % s == 0]
        for s in sorted(seeds, reverse=True):
            factors = self._real_factors(n // s)
            if factors is not None:
                return (s, factors)
        return None

    def reachable(self, n: int) -> bool:
        return self.plan(n) is not None

    def reachable_lengths(self, limit: int) -> list[int]:
        return [n for n in range(1, limit + 1) if self.reachable(n)]

    # -- construction ------------------------------------------------------

    def pair(self, n: int) -> GolayPair:
        """A verified complex-usable pair of length n."""
        from .golay_numbers import is_cgn
        if n < 1:
            raise ValueError("length must be positive")
        if n in self._pairs:
            return self._pairs[n]
        if not is_cgn(n):
            raise NotGolay(f"{n} admits no pair under the membership test")
        plan = self.plan(n)
        if plan is None:
            raise NotReachable(
                f"{n} passes membership but no pair is derivable from the "
                f"available primitives")
        seed, factors = plan
        pair = self._complex_seed(seed)
        for f in factors:
            pair = compose_pairs(self._real_pair_primitive(f), pair)
        if pair.length != n:
            raise CompositionUnsupported("plan produced the wrong length")
        self._pairs[n] = pair
        if pair.is_real:
            self._real.setdefault(n, pair)
        return pair

    def two_variable_pair(self, w: int) -> GolayPair:
        """A verified two-variable pair of (even) length w."""
        if w % 2 != 0:
            raise NotReachable(f"two-variable pairs have even length, not {w}")
        if w not in self._two_var:
            base = self.pair(w // 2).as_degree(2)
            self._two_var[w] = two_variable_lift(base)
        return self._two_var[w]

    def min_parts(self, target: int, two_variable: bool = False) -> list[int]:
        """Minimal-count decomposition of target into reachable lengths
        (doubled lengths for the two-variable universe); ties prefer
        larger parts.  Raises NotReachable when no decomposition exists."""
        if target == 0:
            return []
        if two_variable:
            universe = [2 * g for g in self.reachable_lengths(target // 2)]
        else:
            universe = self.reachable_lengths(target)
        if not universe:
            raise NotReachable(f"no reachable parts for {target}")
        INF = target + 1
        dp = [INF] * (target + 1)
        dp[0] = 0
        for x in range(1, target + 1):
            best = INF
            for g in universe:
                if g > x:
                    break
                if dp[x - g] + 1 < best:
                    best = dp[x - g] + 1
            dp[x] = best
        if dp[target] >= INF:
            raise NotReachable(f"{target} is not a sum of reachable lengths")
        parts = []
        x = target
        while x:
            for g in reversed(universe):
                if g <= x and dp[x - g] == dp[x] - 1:
                    parts.append(g)
                    x -= g
                    break
        return parts
