"""Exact arithmetic for signed permutations and signed-group-ring values.

A signed permutation of degree n is a monomial {0, +-1} matrix; these are
the concrete carriers for every signed-group element in the pipeline
(each group arrives with a faithful monomial representation, so equality,
conjugation and centrality checks are plain array comparisons).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, RelationViolation


class SignedPerm:
    """Monomial matrix M of order `degree` with M[perm[c], c] = sign[c].

    Immutable; arrays are locked after construction so instances can be
    shared freely and used as dict keys.
    """

    __slots__ = ("degree", "perm", "sign", "_key")

    def __init__(self, perm, sign):
        perm = np.ascontiguousarray(perm, dtype=np.int64)
        sign = np.ascontiguousarray(sign, dtype=np.int8)
        if perm.ndim != 1 or sign.shape != perm.shape:
            raise ValueError("perm and sign must be 1-d arrays of equal length")
        n = perm.shape[0]
        if n == 0:
            raise ValueError("degree must be positive")
        if not np.all(np.abs(sign) == 1):
            raise ValueError("sign entries must be +-1")
        seen = np.zeros(n, dtype=bool)
        seen[perm] = True
        if not seen.all():
            raise ValueError("perm is not a permutation")
        perm.setflags(write=False)
        sign.setflags(write=False)
        self.degree = n
        self.perm = perm
        self.sign = sign
        self._key = None

    @classmethod
    def _raw(cls, perm, sign):
        """Internal constructor skipping validation (inputs already sound)."""
        obj = cls.__new__(cls)
        perm.setflags(write=False)
        sign.setflags(write=False)
        obj.degree = perm.shape[0]
        obj.perm = perm
        obj.sign = sign
        obj._key = None
        return obj

    @classmethod
    def identity(cls, degree: int) -> SignedPerm:
        return cls._raw(np.arange(degree, dtype=np.int64),
                        np.ones(degree, dtype=np.int8))

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.perm.tobytes() + self.sign.tobytes()
        return self._key

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        return SignedPerm._raw(self.perm[other.perm],
                               self.sign[other.perm] * other.sign)

    def __neg__(self) -> SignedPerm:
        return SignedPerm._raw(self.perm, -self.sign)

    def conj(self) -> SignedPerm:
        """Transpose (= inverse) of the monomial matrix."""
        perm = np.empty(self.degree, dtype=np.int64)
        sign = np.empty(self.degree, dtype=np.int8)
        perm[self.perm] = np.arange(self.degree, dtype=np.int64)
        sign[self.perm] = self.sign
        return SignedPerm._raw(perm, sign)

    def kron(self, other: SignedPerm) -> SignedPerm:
        """Kronecker product; degree multiplies."""
        db = other.degree
        perm = (self.perm[:, None] * db + other.perm[None, :]).ravel()
        sign = (self.sign[:, None] * other.sign[None, :]).ravel()
        return SignedPerm._raw(np.ascontiguousarray(perm),
                               np.ascontiguousarray(sign.astype(np.int8)))

    def commutes_with(self, other: SignedPerm) -> bool:
        return self * other == other * self

    def is_identity(self) -> bool:
        return bool(np.all(self.sign == 1)
                    and np.all(self.perm == np.arange(self.degree)))

    def is_pm_identity(self) -> bool:
        """True exactly for +identity and -identity."""
        if not np.all(self.perm == np.arange(self.degree)):
            return False
        return bool(np.all(self.sign == 1) or np.all(self.sign == -1))

    def is_canonical(self) -> bool:
        """Canonical coset representative of {s, -s}: the first nonzero
        entry in row-major order is +1."""
        col_of_row0 = int(np.nonzero(self.perm == 0)[0][0])
        return bool(self.sign[col_of_row0] > 0)

    def canonical(self) -> tuple[SignedPerm, int]:
        """Return (representative, flip) with flip in {+1, -1} such that
        self == flip * representative and representative.is_canonical()."""
        if self.is_canonical():
            return self, 1
        return -self, -1

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.degree, self.degree), dtype=np.int64)
        m[self.perm, np.arange(self.degree)] = self.sign
        return m

    @classmethod
    def from_matrix(cls, m) -> SignedPerm:
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("square matrix required")
        rows, cols = np.nonzero(m)
        if len(rows) != m.shape[0]:
            raise ValueError("not a monomial matrix")
        order = np.argsort(cols)
        perm = rows[order].astype(np.int64)
        sign = m[rows[order], cols[order]].astype(np.int8)
        return cls(perm, sign)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedPerm):
            return NotImplemented
        return (self.degree == other.degree
                and np.array_equal(self.perm, other.perm)
                and np.array_equal(self.sign, other.sign))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SignedPerm({self.perm.tolist()}, {self.sign.tolist()})"

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "perm": self.perm.tolist(),
                "sign": self.sign.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> SignedPerm:
        sp = cls(obj["perm"], obj["sign"])
        if sp.degree != obj.get("degree", sp.degree):
            raise ValueError("degree field inconsistent with perm length")
        return sp


def sp_P() -> SignedPerm:
    return SignedPerm(np.array([1, 0]), np.array([1, 1]))


def sp_Q() -> SignedPerm:
    return SignedPerm(np.array([0, 1]), np.array([1, -1]))


def sp_R() -> SignedPerm:
    return SignedPerm(np.array([1, 0]), np.array([-1, 1]))


def embed_central_i(level_degree: int) -> SignedPerm:
    """Image of the complex unit i at an even degree: I_(d/2) kron R.

    Squares to the negated identity; commutes with every coefficient the
    doubling pipeline produces (the caller still confirms centrality
    against the coefficients it will actually meet).
    """
    if level_degree % 2 != 0:
        raise ValueError("level degree must be even")
    half = level_degree // 2
    return SignedPerm.identity(half).kron(sp_R())


def block_diag2(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """[[a, 0], [0, b]] as a signed permutation of doubled degree."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs {b.degree}")
    m = a.degree
    perm = np.concatenate([a.perm, b.perm + m])
    sign = np.concatenate([a.sign, b.sign])
    return SignedPerm._raw(perm, sign)


def block_antidiag2(upper: SignedPerm, lower: SignedPerm) -> SignedPerm:
    """[[0, upper], [lower, 0]] as a signed permutation of doubled degree."""
    if upper.degree != lower.degree:
        raise DegreeMismatch(f"degree {upper.degree} vs {lower.degree}")
    m = upper.degree
    perm = np.concatenate([lower.perm + m, upper.perm])
    sign = np.concatenate([lower.sign, upper.sign])
    return SignedPerm._raw(perm, sign)


class GroupRingElem:
    """Integer combination of canonical signed-perm coset representatives.

    Term keys are canonical representatives (first row-major nonzero
    positive); -s enters as s with negated coefficient.  The zero element
    has an empty term map.

    Equality and zero tests evaluate through the faithful representation:
    a value vanishes iff its integer matrix image (the linear extension
    of the monomial representation) is the zero matrix.  Distinct group
    elements are not linearly independent as matrices once the degree
    grows, so term-map cancellation alone would reject genuinely
    orthogonal products; the term map is kept as the exact carrier and
    cancels identical terms first, the sparse image settles the rest.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[SignedPerm, int] | None = None):
        self.degree = degree
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, degree: int) -> GroupRingElem:
        return cls(degree)

    @classmethod
    def from_term(cls, coeff: int, sp: SignedPerm) -> GroupRingElem:
        if coeff == 0:
            return cls(sp.degree)
        rep, flip = sp.canonical()
        return cls(sp.degree, {rep: coeff * flip})

    @classmethod
    def one(cls, degree: int) -> GroupRingElem:
        return cls.from_term(1, SignedPerm.identity(degree))

    def _check(self, other: GroupRingElem):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def add_term(self, coeff: int, sp: SignedPerm):
        """In-place accumulate (only used while building a fresh value)."""
        if coeff == 0:
            return
        rep, flip = sp.canonical()
        c = self.terms.get(rep, 0) + coeff * flip
        if c == 0:
            self.terms.pop(rep, None)
        else:
            self.terms[rep] = c

    def __add__(self, other: GroupRingElem) -> GroupRingElem:
        self._check(other)
        out = dict(self.terms)
        for sp, c in other.terms.items():
            nc = out.get(sp, 0) + c
            if nc == 0:
                out.pop(sp, None)
            else:
                out[sp] = nc
        return GroupRingElem(self.degree, out)

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(self.degree, {sp: -c for sp, c in self.terms.items()})

    def __sub__(self, other: GroupRingElem) -> GroupRingElem:
        return self + (-other)

    def __mul__(self, other: GroupRingElem) -> GroupRingElem:
        self._check(other)
        out = GroupRingElem(self.degree)
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                out.add_term(c1 * c2, s1 * s2)
        return out

    def scaled(self, k: int) -> GroupRingElem:
        if k == 0:
            return GroupRingElem(self.degree)
        return GroupRingElem(self.degree, {sp: k * c for sp, c in self.terms.items()})

    def conj(self) -> GroupRingElem:
        out = GroupRingElem(self.degree)
        for sp, c in self.terms.items():
            out.add_term(c, sp.conj())
        return out

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        m = self.degree
        cols = np.arange(m, dtype=np.int64)
        if len(self.terms) * m >= m * m:
            total = np.zeros((m, m), dtype=np.int64)
            for sp, c in self.terms.items():
                total[sp.perm, cols] += c * sp.sign
            return not total.any()
        idx = np.concatenate([sp.perm * m + cols for sp in self.terms])
        vals = np.concatenate([c * sp.sign.astype(np.int64)
                               for sp, c in self.terms.items()])
        order = np.argsort(idx, kind="stable")
        si = idx[order]
        sv = vals[order]
        starts = np.flatnonzero(np.concatenate(([True], si[1:] != si[:-1])))
        sums = np.add.reduceat(sv, starts)
        return not sums.any()

    def is_scalar(self, k: int) -> bool:
        """True iff the value equals k times the identity."""
        if k == 0:
            return self.is_zero()
        if len(self.terms) == 1:
            sp, c = next(iter(self.terms.items()))
            if c == k and sp.is_identity():
                return True
        return (self - GroupRingElem.one(self.degree).scaled(k)).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if self.terms == other.terms:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("GroupRingElem is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "GroupRingElem(0)"
        bits = " + ".join(f"{c}*{sp!r}" for sp, c in self.terms.items())
        return f"GroupRingElem({bits})"


class QuadForm:
    """Quadratic form in commuting real variables with group-ring
    coefficients: a map from unordered variable pairs to GroupRingElem.

    This is the value type of matrix-product entries; variables commute
    with everything, group elements need not commute with each other.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[tuple[int, int], GroupRingElem] | None = None):
        self.degree = degree
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, degree: int) -> QuadForm:
        return cls(degree)

    def add_product(self, coeff_sp: SignedPerm, v1: int, v2: int, scale: int = 1):
        """Accumulate scale * coeff_sp * x_v1 * x_v2 in place."""
        key = (v1, v2) if v1 <= v2 else (v2, v1)
        cur = self.terms.get(key)
        if cur is None:
            cur = GroupRingElem(self.degree)
            self.terms[key] = cur
        cur.add_term(scale, coeff_sp)
        if not cur.terms:
            del self.terms[key]

    def __add__(self, other: QuadForm) -> QuadForm:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        out = {k: GroupRingElem(v.degree, dict(v.terms)) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if not s.terms:
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return QuadForm(self.degree, out)

    def conj(self) -> QuadForm:
        return QuadForm(self.degree, {k: v.conj() for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.terms.values())

    def coefficient(self, v1: int, v2: int) -> GroupRingElem:
        key = (v1, v2) if v1 <= v2 else (v2, v1)
        return self.terms.get(key, GroupRingElem(self.degree))

    def is_diagonal_weights(self, weights: dict[int, int]) -> bool:
        """True iff the form equals sum_v weights[v] * identity * x_v^2."""
        keys = set(self.terms) | {(v, v) for v, w in weights.items() if w != 0}
        for key in keys:
            want = weights.get(key[0], 0) if key[0] == key[1] else 0
            if not self.coefficient(*key).is_scalar(want):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadForm):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if self.terms == other.terms:
            return True
        for key in set(self.terms) | set(other.terms):
            if self.coefficient(*key) != other.coefficient(*key):
                return False
        return True

    def __repr__(self) -> str:
        if not self.terms:
            return "QuadForm(0)"
        bits = " + ".join(f"x{a}*x{b}*[{v!r}]" for (a, b), v in self.terms.items())
        return f"QuadForm({bits})"


@dataclass(frozen=True)
class ChainLevel:
    """One level of the representation tower: its degree and the images
    of the generators created when the level was built."""
    degree: int
    generators: tuple[SignedPerm, ...]
    relations: tuple[tuple[int, int], ...] = ()  # (generator index, square sign)


@dataclass
class RemrepChain:
    """Tower of faithful monomial representations built by repeated
    degree doubling.  base is "real" (degree-1 start) or "complex"
    (degree-2 start with i -> R)."""

    base: str
    levels: list[ChainLevel] = field(default_factory=list)

    @classmethod
    def real_base(cls) -> RemrepChain:
        return cls("real", [ChainLevel(1, ())])

    @classmethod
    def complex_base(cls) -> RemrepChain:
        return cls("complex", [ChainLevel(2, (sp_R(),))])

    @property
    def top_degree(self) -> int:
        return self.levels[-1].degree

    @property
    def exponent(self) -> int:
        """n with top degree == 2^n."""
        return self.top_degree.bit_length() - 1

    def extended(self, degree: int, generators: tuple[SignedPerm, ...],
                 relations: tuple[tuple[int, int], ...] = ()) -> RemrepChain:
        if degree != 2 * self.top_degree:
            raise RelationViolation(
                f"level degree {degree} does not double the current {self.top_degree}")
        for g in generators:
            if g.degree != degree:
                raise RelationViolation("generator image has wrong degree")
            if not (g * g.conj()).is_identity():
                raise RelationViolation("generator image is not orthogonal")
        for idx, sq in relations:
            g = generators[idx]
            g2 = g * g
            if not g2.is_pm_identity():
                raise RelationViolation("recorded square is not +-identity")
            actual = 1 if np.all(g2.sign == 1) else -1
            if actual != sq:
                raise RelationViolation(
                    f"generator {idx} squares to {actual}, recorded {sq}")
        return RemrepChain(self.base,
                           self.levels + [ChainLevel(degree, generators, relations)])

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "levels": [
                {"degree": lv.degree,
                 "generators": [g.to_json() for g in lv.generators],
                 "relations": [list(r) for r in lv.relations]}
                for lv in self.levels
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> RemrepChain:
        base = obj["base"]
        if base not in ("real", "complex"):
            raise ValueError(f"unknown chain base {base!r}")
        chain = cls.real_base() if base == "real" else cls.complex_base()
        levels = obj["levels"]
        if not levels or levels[0]["degree"] != chain.top_degree:
            raise ValueError("chain levels do not start at the base degree")
        for lv in levels[1:]:
            gens = tuple(SignedPerm.from_json(g) for g in lv["generators"])
            rels = tuple((int(a), int(b)) for a, b in lv.get("relations", []))
            chain = chain.extended(lv["degree"], gens, rels)
        return chain
