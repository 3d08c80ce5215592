"""Variable-entry matrices over a signed group: the design objects, their
adjoints, supports, gram products, and the exact orthogonality checks.

Entries are 0 or coeff * x_var with coeff a signed permutation; all
verification is integer-exact, with a first-row autocorrelation fast path
for circulants (order-squared entry products instead of a dense cube) and
plain integer matmuls when the group degree is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GroupRingElem, QuadForm, SignedPerm


@dataclass(frozen=True)
class SodType:
    """Order plus per-variable weights (nonzeros per row)."""
    order: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if sum(self.weights) > self.order:
            raise ValueError("weights exceed the order")

    @property
    def full(self) -> bool:
        return sum(self.weights) == self.order

    def weight_map(self) -> dict[int, int]:
        return {i + 1: w for i, w in enumerate(self.weights)}


class DesignMatrix:
    """Dense square matrix with entries 0 or (coeff, var)."""

    def __init__(self, entries, nvars: int, group_degree: int):
        self.entries = [tuple(row) for row in entries]
        self.order = len(self.entries)
        for row in self.entries:
            if len(row) != self.order:
                raise ValueError("matrix must be square")
            for e in row:
                if e is not None and e[0].degree != group_degree:
                    raise ValueError("coefficient degree mismatch")
        self.nvars = nvars
        self.group_degree = group_degree

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def is_full(self) -> bool:
        return all(e is not None for row in self.entries for e in row)

    def adjoint(self) -> DesignMatrix:
        n = self.order
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                e = self.entries[j][i]
                if e is not None:
                    out[i][j] = (e[0].conj(), e[1])
        return DesignMatrix(out, self.nvars, self.group_degree)

    def abs_matrix(self) -> list[tuple[int, ...]]:
        """Componentwise magnitudes: variable index per entry, 0 for zero."""
        return [tuple(0 if e is None else e[1] for e in row)
                for row in self.entries]

    def support(self) -> set[tuple[int, int]]:
        return {(i, j) for i, row in enumerate(self.entries)
                for j, e in enumerate(row) if e is not None}

    def var_sign_matrices(self) -> dict[int, np.ndarray]:
        """Per-variable integer sign matrices (group degree 1 only)."""
        if self.group_degree != 1:
            raise ValueError("sign matrices require group degree 1")
        out = {v: np.zeros((self.order, self.order), dtype=np.int64)
               for v in range(1, self.nvars + 1)}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e is not None:
                    out[e[1]][i, j] = int(e[0].sign[0])
        return out

    def substitute_ones(self) -> DesignMatrix:
        """Merge all variables into one."""
        ents = [[None if e is None else (e[0], 1) for e in row]
                for row in self.entries]
        return DesignMatrix(ents, 1, self.group_degree)


class CirculantDesign:
    """Circulant matrix stored by its first row; row i is the first row
    cyclically shifted right i places."""

    def __init__(self, first_row, nvars: int, group_degree: int):
        self.first_row = tuple(first_row)
        self.order = len(self.first_row)
        for e in self.first_row:
            if e is not None and e[0].degree != group_degree:
                raise ValueError("coefficient degree mismatch")
        self.nvars = nvars
        self.group_degree = group_degree

    def entry(self, i: int, j: int):
        return self.first_row[(j - i) % self.order]

    def is_full(self) -> bool:
        return all(e is not None for e in self.first_row)

    def adjoint(self) -> CirculantDesign:
        d = self.order
        row = [None] * d
        for j in range(d):
            e = self.first_row[(-j) % d]
            if e is not None:
                row[j] = (e[0].conj(), e[1])
        return CirculantDesign(row, self.nvars, self.group_degree)

    def abs_row(self) -> tuple[int, ...]:
        return tuple(0 if e is None else e[1] for e in self.first_row)

    def support(self) -> set[int]:
        return {j for j, e in enumerate(self.first_row) if e is not None}

    def substitute_ones(self) -> CirculantDesign:
        row = [None if e is None else (e[0], 1) for e in self.first_row]
        return CirculantDesign(row, 1, self.group_degree)

    def to_dense(self) -> DesignMatrix:
        d = self.order
        ents = [[self.entry(i, j) for j in range(d)] for i in range(d)]
        return DesignMatrix(ents, self.nvars, self.group_degree)


def is_quasisymmetric(m) -> bool:
    """abs(M) == abs(M*)."""
    if isinstance(m, CirculantDesign):
        prof = m.abs_row()
        d = m.order
        return all(prof[j] == prof[(-j) % d] for j in range(d))
    return m.abs_matrix() == m.adjoint().abs_matrix()


def paf_profile(m: CirculantDesign, top_shift: int | None = None) -> list[QuadForm]:
    """First row of M M*: shift s holds sum_t f[t+s] * conj(f[t]).

    Shift d-s is always the entrywise conjugate of shift s, so callers
    that only test against self-adjoint targets pass top_shift = d//2 and
    skip the mirrored half (the returned list is still length d; skipped
    shifts stay zero).
    """
    d = m.order
    top = d - 1 if top_shift is None else top_shift
    shifts = [QuadForm(m.group_degree) for _ in range(d)]
    supp = sorted(m.support())
    conj_cache = {q: m.first_row[q][0].conj() for q in supp}
    for p in supp:
        cp, vp = m.first_row[p]
        for q in supp:
            s = (p - q) % d
            if s > top:
                continue
            shifts[s].add_product(cp * conj_cache[q], vp, m.first_row[q][1])
    return shifts


def cross_paf(a: CirculantDesign, b: CirculantDesign,
              top_shift: int | None = None) -> list[QuadForm]:
    """First row of A B* for circulants of a common order."""
    if a.order != b.order:
        raise ValueError("order mismatch")
    d = a.order
    top = d - 1 if top_shift is None else top_shift
    shifts = [QuadForm(a.group_degree) for _ in range(d)]
    supp_b = sorted(b.support())
    conj_cache = {q: b.first_row[q][0].conj() for q in supp_b}
    for p in sorted(a.support()):
        cp, vp = a.first_row[p]
        for q in supp_b:
            s = (p - q) % d
            if s > top:
                continue
            shifts[s].add_product(cp * conj_cache[q], vp, b.first_row[q][1])
    return shifts


def profile_matches_type(shifts: list[QuadForm], t: SodType,
                         top_shift: int | None = None) -> bool:
    """Check a (possibly half-computed) autocorrelation profile against
    the diagonal target."""
    top = len(shifts) // 2 if top_shift is None else top_shift
    if not shifts[0].is_diagonal_weights(t.weight_map()):
        return False
    return all(shifts[s].is_zero() for s in range(1, top + 1))


def gram(m: DesignMatrix) -> list[list[QuadForm]]:
    """M M* with QuadForm entries (dense path)."""
    n = m.order
    rows = [[(k, e[0], e[1]) for k, e in enumerate(r) if e is not None]
            for r in m.entries]
    conj_rows = [{k: (c.conj(), v) for k, c, v in r} for r in rows]
    out = [[QuadForm(m.group_degree) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cell = out[i][j]
            row_j = conj_rows[j]
            for k, c, v in rows[i]:
                other = row_j.get(k)
                if other is not None:
                    cell.add_product(c * other[0], v, other[1])
    return out


def _verify_degree1_dense(m: DesignMatrix, t: SodType) -> bool:
    mats = m.var_sign_matrices()
    n = m.order
    eye = np.eye(n, dtype=np.int64)
    for v, w in t.weight_map().items():
        a = mats.get(v)
        if a is None or not np.array_equal(a @ a.T, w * eye):
            return False
    vs = sorted(mats)
    for i, v1 in enumerate(vs):
        for v2 in vs[i + 1:]:
            prod = mats[v1] @ mats[v2].T
            if not np.array_equal(prod + prod.T, np.zeros((n, n), dtype=np.int64)):
                return False
    return True


def verify_sod(m, t: SodType) -> bool:
    """Exact check of M M* == (sum_l u_l x_l^2) I."""
    if m.order != t.order:
        return False
    weights = t.weight_map()
    if isinstance(m, CirculantDesign):
        top = m.order // 2
        return profile_matches_type(paf_profile(m, top), t, top)
    if m.group_degree == 1:
        return _verify_degree1_dense(m, t)
    g = gram(m)
    for i in range(m.order):
        for j in range(m.order):
            if i == j:
                if not g[i][j].is_diagonal_weights(weights):
                    return False
            elif not g[i][j].is_zero():
                return False
    return True


def first_gram_defect(m, t: SodType):
    """Locate a failing gram position for diagnostics: (shift,) for a
    circulant or (i, j) for a dense design, None if the check passes."""
    weights = t.weight_map()
    if isinstance(m, CirculantDesign):
        shifts = paf_profile(m)
        if not shifts[0].is_diagonal_weights(weights):
            return (0,)
        for s in range(1, m.order):
            if not shifts[s].is_zero():
                return (s,)
        return None
    g = gram(m if isinstance(m, DesignMatrix) else m.to_dense())
    for i in range(m.order):
        for j in range(m.order):
            ok = g[i][j].is_diagonal_weights(weights) if i == j \
                else g[i][j].is_zero()
            if not ok:
                return (i, j)
    return None


def is_normal(m) -> bool:
    """M M* == M* M."""
    if isinstance(m, CirculantDesign):
        top = m.order // 2
        return paf_profile(m, top) == paf_profile(m.adjoint(), top)
    if m.group_degree == 1:
        mats = m.var_sign_matrices()
        vs = sorted(mats)
        n = m.order
        for i, v1 in enumerate(vs):
            for v2 in vs[i:]:
                left = mats[v1] @ mats[v2].T
                right = mats[v1].T @ mats[v2]
                if v1 != v2:
                    left = left + mats[v2] @ mats[v1].T
                    right = right + mats[v2].T @ mats[v1]
                if not np.array_equal(left, right):
                    return False
        return True
    ga = gram(m)
    gb = gram(m.adjoint())
    return ga == gb


def decompose(m) -> dict[int, object]:
    """Coefficient matrices per variable: A = sum_v x_v A_v."""
    if isinstance(m, CirculantDesign):
        out = {}
        for v in range(1, m.nvars + 1):
            row = [e[0] if (e is not None and e[1] == v) else None
                   for e in m.first_row]
            out[v] = CirculantDesign([None if c is None else (c, v)
                                      for c in row], m.nvars, m.group_degree)
        return out
    out = {}
    for v in range(1, m.nvars + 1):
        ents = [[e if (e is not None and e[1] == v) else None for e in row]
                for row in m.entries]
        out[v] = DesignMatrix(ents, m.nvars, m.group_degree)
    return out


def check_decomposition(parts: dict[int, object], t: SodType) -> bool:
    """Pairwise disjointness, A_i A_i* = u_i I, and anti-amicability
    A_i A_j* = -A_j A_i*."""
    weights = t.weight_map()
    vs = sorted(parts)
    supports = [parts[v].support() for v in vs]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if supports[i] & supports[j]:
                return False
    circulant = all(isinstance(parts[v], CirculantDesign) for v in vs)
    for v in vs:
        w = weights.get(v, 0)
        if circulant:
            top = t.order // 2
            shifts = paf_profile(parts[v], top)
            ok = shifts[0].is_diagonal_weights({v: w}) and \
                all(shifts[s].is_zero() for s in range(1, top + 1))
        else:
            g = gram(parts[v])
            ok = all(
                (g[i][j].coefficient(v, v).is_scalar(w)
                 and len(g[i][j].terms) == (1 if w else 0)) if i == j
                else g[i][j].is_zero()
                for i in range(t.order) for j in range(t.order))
        if not ok:
            return False
    for i, v1 in enumerate(vs):
        for v2 in vs[i + 1:]:
            if circulant:
                # A B* = -(B A*): shifts above d//2 follow by conjugation
                # from the swapped product, so half of each pair suffices
                top = t.order // 2
                ab = cross_paf(parts[v1], parts[v2], top)
                ba = cross_paf(parts[v2], parts[v1], top)
                for s in range(top + 1):
                    if not (ab[s] + ba[s]).is_zero():
                        return False
            else:
                a, b = parts[v1], parts[v2]
                ab = _dense_cross(a, b)
                ba = _dense_cross(b, a)
                n = t.order
                for i2 in range(n):
                    for j2 in range(n):
                        if not (ab[i2][j2] + ba[i2][j2]).is_zero():
                            return False
    return True


def _dense_cross(a: DesignMatrix, b: DesignMatrix) -> list[list[QuadForm]]:
    """A B* with QuadForm entries."""
    n = a.order
    out = [[QuadForm(a.group_degree) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        arow = [(k, e[0], e[1]) for k, e in enumerate(a.entries[i])
                if e is not None]
        for j in range(n):
            cell = out[i][j]
            for k, c, v in arow:
                e = b.entries[j][k]
                if e is not None:
                    cell.add_product(c * e[0].conj(), v, e[1])
    return out


def row_weights(m) -> list[dict[int, int]] | None:
    """Per-row nonzero counts by variable; None if rows disagree."""
    if isinstance(m, CirculantDesign):
        w: dict[int, int] = {}
        for e in m.first_row:
            if e is not None:
                w[e[1]] = w.get(e[1], 0) + 1
        return [w] * m.order
    rows = []
    for row in m.entries:
        w = {}
        for e in row:
            if e is not None:
                w[e[1]] = w.get(e[1], 0) + 1
        rows.append(w)
    if any(r != rows[0] for r in rows[1:]):
        return None
    return rows


def is_signed_weighing(m, w: int) -> bool:
    """All variables merged equal 1: weight w per row and gram w*I."""
    merged = m.substitute_ones()
    rows = row_weights(merged)
    if rows is None or rows[0].get(1, 0) != w:
        return False
    return verify_sod(merged, SodType(m.order, (w,)))


def is_signed_hadamard(m) -> bool:
    return m.is_full() and is_signed_weighing(m, m.order)


def must_even_violation(m) -> bool:
    """True when the shape alone rules the design out: full and of odd
    order greater than one."""
    return m.is_full() and m.order > 1 and m.order % 2 == 1


# -- serialization ----------------------------------------------------------

def _entry_to_json(e):
    if e is None:
        return None
    return {"var": e[1], "coeff": e[0].to_json()}


def _entry_from_json(obj):
    if obj is None:
        return None
    return (SignedPerm.from_json(obj["coeff"]), int(obj["var"]))


def design_to_json(m, weights: tuple[int, ...] | None = None) -> dict:
    out = {"order": m.order, "nvars": m.nvars, "group_degree": m.group_degree}
    if weights is not None:
        out["weights"] = list(weights)
    if isinstance(m, CirculantDesign):
        out["circulant"] = True
        out["first_row"] = [_entry_to_json(e) for e in m.first_row]
    else:
        out["entries"] = [[_entry_to_json(e) for e in row] for row in m.entries]
    return out


def design_from_json(obj: dict):
    """Returns (design, weights-or-None)."""
    weights = tuple(obj["weights"]) if "weights" in obj else None
    if obj.get("circulant"):
        row = [_entry_from_json(e) for e in obj["first_row"]]
        m = CirculantDesign(row, obj["nvars"], obj["group_degree"])
    else:
        ents = [[_entry_from_json(e) for e in row] for row in obj["entries"]]
        m = DesignMatrix(ents, obj["nvars"], obj["group_degree"])
    if m.order != obj["order"]:
        raise ValueError("order field inconsistent with entries")
    return m, weights
