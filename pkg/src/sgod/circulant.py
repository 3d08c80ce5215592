"""Disjoint quasisymmetric circulant families from pair decompositions.

A k-tuple is first canonicalized to (1, v_1..v_q, w_1,w_1, .., w_t,w_t);
each v-slot consumes one-variable pairs whose lengths sum to v, each
w-slot two-variable pairs summing to 2w.  The family layout places pair
blocks at exact offsets so the supports tile the whole order-4u cycle;
disjointness, quasisymmetry and complementarity are asserted after
construction, so a wrong offset can never pass silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import QuadForm, SignedPerm
from .design import CirculantDesign, SodType, is_quasisymmetric, paf_profile
from .errors import (ComplementarityFailure, OffsetCollision,
                     QuasireverseViolation, VerificationFailure)
from .golay_numbers import lc
from .sequences import (GolayPair, GolaySeq, is_complementary,
                        quasireverse_check)


@dataclass(frozen=True)
class TupleCanonicalization:
    """Input tuple rewritten as a leading 1, unpaired values v, and
    paired values w."""
    input_tuple: tuple[int, ...]
    lead_index: int
    v_slots: tuple[int, ...]
    w_slots: tuple[int, ...]

    @property
    def u(self) -> int:
        return 1 + sum(self.v_slots) + 2 * sum(self.w_slots)

    @property
    def order(self) -> int:
        return 4 * self.u

    @property
    def nvars(self) -> int:
        return 1 + len(self.v_slots) + 2 * len(self.w_slots)

    def weights(self) -> tuple[int, ...]:
        out = [4] + [4 * v for v in self.v_slots]
        for w in self.w_slots:
            out += [4 * w, 4 * w]
        return tuple(out)

    def sod_type(self) -> SodType:
        return SodType(self.order, self.weights())

    def to_json(self) -> dict:
        return {"input": list(self.input_tuple), "lead_index": self.lead_index,
                "v": list(self.v_slots), "w": list(self.w_slots)}


def canonicalize_tuple(tuple_) -> TupleCanonicalization:
    """Prepend 1, subtract 1 from the element whose decomposition count
    drops the most (ties prefer the smaller element), then sort and pair
    equal values; a value occurring more than twice splits into pairs
    plus at most one singleton."""
    tuple_ = tuple(int(v) for v in tuple_)
    if not tuple_ or any(v < 1 for v in tuple_):
        raise ValueError("tuple must be nonempty with positive entries")
    diffs = [lc(v) - lc(v - 1) for v in tuple_]
    best = max(diffs)
    lead = min((i for i, d in enumerate(diffs) if d == best),
               key=lambda i: tuple_[i])
    working = sorted(v - 1 if i == lead else v
                     for i, v in enumerate(tuple_) if not (i == lead and v == 1))
    v_slots: list[int] = []
    w_slots: list[int] = []
    i = 0
    while i < len(working):
        if i + 1 < len(working) and working[i] == working[i + 1]:
            w_slots.append(working[i])
            i += 2
        else:
            v_slots.append(working[i])
            i += 1
    return TupleCanonicalization(tuple_, lead, tuple(v_slots), tuple(w_slots))


def pair_circulant(a: GolaySeq, b: GolaySeq, pad_a: int, pad_b: int,
                   nvars: int | None = None) -> CirculantDesign:
    """circ(0_(pad_a+1), A, 0_(2*pad_b+1), B, 0_(pad_a)) of order
    2*pad_a + 2*pad_b + 2*len + 2; quasisymmetric when A is quasireverse
    to B."""
    if pad_a < 0 or pad_b < 0:
        raise ValueError("pads must be nonnegative")
    if not quasireverse_check(a, b):
        raise QuasireverseViolation("first sequence is not quasireverse to second")
    if nvars is None:
        nvars = max([1] + [e[1] for s in (a, b) for e in s.entries if e])
    row = ([None] * (pad_a + 1) + list(a.entries) + [None] * (2 * pad_b + 1)
           + list(b.entries) + [None] * pad_a)
    return CirculantDesign(row, nvars, a.degree)


@dataclass
class CirculantFamily:
    """The complementary circulant family for one canonicalized tuple."""
    canon: TupleCanonicalization
    members: list[tuple[str, CirculantDesign]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.canon.order

    @property
    def designs(self) -> list[CirculantDesign]:
        return [m for _, m in self.members]

    def member_count(self) -> int:
        return len(self.members)


def _place(row: list, start: int, entries, label: str):
    d = len(row)
    for k, e in enumerate(entries):
        if e is None:
            continue
        pos = (start + k) % d
        if row[pos] is not None:
            raise OffsetCollision(f"{label} collides at position {pos}")
        row[pos] = e


def _unit_rows(order: int, u: int, nvars: int) -> list[CirculantDesign]:
    """M1 = circ(x, 0.., x, 0..) and M2 = circ(0..., -x, 0..., x, 0...)."""
    from .sequences import unit_sp
    one = unit_sp(0, 2)
    m1 = [None] * order
    m1[0] = (one, 1)
    m1[2 * u] = (one, 1)
    m2 = [None] * order
    m2[u] = (-one, 1)
    m2[3 * u] = (one, 1)
    return [CirculantDesign(m1, nvars, 2), CirculantDesign(m2, nvars, 2)]


def _check_family(fam: CirculantFamily, weights: dict[int, int]):
    order = fam.order
    used = [None] * order
    for label, m in fam.members:
        for pos in m.support():
            if used[pos] is not None:
                raise OffsetCollision(
                    f"supports of {used[pos]} and {label} intersect at {pos}")
            used[pos] = label
        if not is_quasisymmetric(m):
            raise VerificationFailure(f"member {label} is not quasisymmetric")
    top = order // 2
    total = [QuadForm(2) for _ in range(order)]
    for _, m in fam.members:
        for s, q in enumerate(paf_profile(m, top)):
            total[s] = total[s] + q
    if not total[0].is_diagonal_weights(weights):
        raise ComplementarityFailure("summed gram has a wrong diagonal")
    for s in range(1, top + 1):
        if not total[s].is_zero():
            raise ComplementarityFailure(f"summed gram does not vanish at shift {s}")


def build_family(canon: TupleCanonicalization,
                 v_pairs: list[list[GolayPair]],
                 w_pairs: list[list[GolayPair]]) -> CirculantFamily:
    """Assemble the family from per-slot pair decompositions.

    v_pairs[b] holds one-variable pairs with lengths summing to the b-th
    v value; w_pairs[d] two-variable pairs summing to twice the d-th w
    value.  All pairs must be verified.
    """
    if len(v_pairs) != len(canon.v_slots) or len(w_pairs) != len(canon.w_slots):
        raise ValueError("decomposition does not match the canonical slots")
    u = canon.u
    order = canon.order
    nvars = canon.nvars
    v_total = sum(canon.v_slots)
    m1, m2 = _unit_rows(order, u, nvars)
    fam = CirculantFamily(canon, [("M1", m1), ("M2", m2)])

    offset = 0
    for b, pairs in enumerate(v_pairs):
        if sum(p.length for p in pairs) != canon.v_slots[b]:
            raise ValueError(f"v slot {b} lengths do not sum to {canon.v_slots[b]}")
        var = 2 + b
        for al, p in enumerate(pairs):
            if not p.verified:
                raise VerificationFailure("unverified pair in decomposition")
            a_seq = p.first.embedded(2).retagged(var)
            b_seq = p.second.embedded(2).retagged(var)
            V = p.length
            s_off = offset
            x_row = [None] * order
            _place(x_row, s_off + 1, a_seq.entries, "X.A")
            _place(x_row, order - s_off - V, b_seq.entries, "X.B")
            y_row = [None] * order
            _place(y_row, 2 * u - s_off - V, b_seq.negated().entries, "Y.B")
            _place(y_row, 2 * u + s_off + 1, a_seq.entries, "Y.A")
            fam.members.append((f"X{al + 1}{b + 1}",
                                CirculantDesign(x_row, nvars, 2)))
            fam.members.append((f"Y{al + 1}{b + 1}",
                                CirculantDesign(y_row, nvars, 2)))
            offset += V

    offset2 = 0
    for dd, pairs in enumerate(w_pairs):
        if sum(p.length for p in pairs) != 2 * canon.w_slots[dd]:
            raise ValueError(
                f"w slot {dd} lengths do not sum to {2 * canon.w_slots[dd]}")
        y_var = 2 + len(canon.v_slots) + 2 * dd
        z_var = y_var + 1
        for gl, p in enumerate(pairs):
            if not p.verified or p.variables != 2:
                raise VerificationFailure("w slots need verified two-variable pairs")
            retag = {1: y_var, 2: z_var}
            c_seq = GolaySeq(tuple(None if e is None else (e[0], retag[e[1]])
                                   for e in p.first.embedded(2).entries), 2)
            d_seq = GolaySeq(tuple(None if e is None else (e[0], retag[e[1]])
                                   for e in p.second.embedded(2).entries), 2)
            W = p.length
            s_off = offset2
            z_row = [None] * order
            _place(z_row, v_total + s_off + 1, c_seq.entries, "Z.C")
            _place(z_row, order - v_total - s_off - W, d_seq.entries, "Z.D")
            t_row = [None] * order
            _place(t_row, 2 * u - v_total - s_off - W,
                   d_seq.negated().entries, "T.D")
            _place(t_row, 2 * u + v_total + s_off + 1, c_seq.entries, "T.C")
            fam.members.append((f"Z{gl + 1}{dd + 1}",
                                CirculantDesign(z_row, nvars, 2)))
            fam.members.append((f"T{gl + 1}{dd + 1}",
                                CirculantDesign(t_row, nvars, 2)))
            offset2 += W

    weights = {1: 4}
    for b, v in enumerate(canon.v_slots):
        weights[2 + b] = 4 * v
    for dd, w in enumerate(canon.w_slots):
        weights[2 + len(canon.v_slots) + 2 * dd] = 4 * w
        weights[3 + len(canon.v_slots) + 2 * dd] = 4 * w
    _check_family(fam, weights)
    return fam


def build_generic(pair_sets: list[list[GolayPair]],
                  u_values: list[int]) -> CirculantFamily:
    """Family for the tuple (1, u_1, .., u_k) from externally supplied
    complementary pair sets: pair_sets[b] is a set of equal-length pairs
    whose sequences are jointly complementary with total weight 2*u_b.

    Pairs need not be individually complementary; the set check runs
    before any layout work and rejects bad data."""
    if len(pair_sets) != len(u_values):
        raise ValueError("one pair set per tuple value required")
    for b, pairs in enumerate(pair_sets):
        seqs = []
        for p in pairs:
            if p.variables != 1:
                raise ValueError("generic sets are one-variable")
            seqs += [p.first, p.second]
        total = sum(len(s) for s in seqs)
        if total != 2 * u_values[b]:
            raise ValueError(f"set {b} weight {total} != {2 * u_values[b]}")
        if not is_complementary(seqs):
            raise VerificationFailure(f"pair set {b} fails the oracle")

    canon = TupleCanonicalization(tuple([1] + list(u_values)), 0,
                                  tuple(u_values), ())
    u = canon.u
    order = canon.order
    nvars = canon.nvars
    m1, m2 = _unit_rows(order, u, nvars)
    fam = CirculantFamily(canon, [("M1", m1), ("M2", m2)])
    offset = 0
    for b, pairs in enumerate(pair_sets):
        var = 2 + b
        for al, p in enumerate(pairs):
            a_seq = p.first.embedded(2).retagged(var)
            b_seq = p.second.embedded(2).retagged(var)
            V = p.length
            s_off = offset
            x_row = [None] * order
            _place(x_row, s_off + 1, a_seq.entries, "X.A")
            _place(x_row, order - s_off - V, b_seq.entries, "X.B")
            y_row = [None] * order
            _place(y_row, 2 * u - s_off - V, b_seq.negated().entries, "Y.B")
            _place(y_row, 2 * u + s_off + 1, a_seq.entries, "Y.A")
            fam.members.append((f"X{al + 1}{b + 1}",
                                CirculantDesign(x_row, nvars, 2)))
            fam.members.append((f"Y{al + 1}{b + 1}",
                                CirculantDesign(y_row, nvars, 2)))
            offset += V

    weights = {1: 4}
    for b, uv in enumerate(u_values):
        weights[2 + b] = 4 * uv
    _check_family(fam, weights)
    return fam


def family_for_tuple(tuple_, db) -> tuple[CirculantFamily, dict]:
    """Canonicalize, pull minimal reachable decompositions from the pair
    database, and build the family.  Returns (family, decomposition
    report)."""
    canon = canonicalize_tuple(tuple_)
    v_pairs = []
    v_parts = []
    for v in canon.v_slots:
        parts = db.min_parts(v)
        v_parts.append(parts)
        v_pairs.append([db.pair(n).as_degree(2) for n in parts])
    w_pairs = []
    w_parts = []
    for w in canon.w_slots:
        parts = db.min_parts(2 * w, two_variable=True)
        w_parts.append(parts)
        w_pairs.append([db.two_variable_pair(n) for n in parts])
    fam = build_family(canon, v_pairs, w_pairs)
    report = {"canonical": canon.to_json(),
              "v_decompositions": v_parts,
              "w_decompositions": w_parts,
              "member_count": fam.member_count()}
    return fam, report
