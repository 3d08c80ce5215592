"""Degree-doubling merge of disjoint quasisymmetric circulants and the
folding drivers that turn a complementary family into one circulant
design over an extended signed group.

The merge works directly on first rows.  Writing a for A's entry at
position p and a' for the entry at -p (same variable, by quasisymmetry),
the merged coefficient at p is the block matrix

    [[a, 0], [0, conj(a')]]      for positions from A,
    [[0, b], [-conj(b'), 0]]     for positions from B,

at twice the representation degree.  This is the closed-form effect of
interleaving rows/columns of [[A+B, A-B], [A*-B*, -A*-B*]] and applying
the column transform (1/2) I kron [[1, 1], [1, -1]]; the halving cancels
against duplicated entries, so everything stays integral.  The gram
post-assertion certifies the equivalence on every call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (QuadForm, RemrepChain, SignedPerm, block_antidiag2,
                      block_diag2, embed_central_i)
from .design import (CirculantDesign, SodType, is_quasisymmetric, paf_profile,
                     profile_matches_type)
from .errors import (GramMismatch, NotCentral, NotDisjoint,
                     VerificationFailure)


@dataclass
class DoublingStep:
    """Record of one merge: inputs, output, and the representation data
    created for the new level."""
    input_a: CirculantDesign
    input_b: CirculantDesign
    output: CirculantDesign
    new_degree: int
    new_generators: tuple[SignedPerm, ...]
    relations: tuple[tuple[int, int], ...]


def _distinct_coeffs(m: CirculantDesign) -> list[SignedPerm]:
    seen = {}
    for e in m.first_row:
        if e is not None:
            rep, _ = e[0].canonical()
            seen.setdefault(rep.key(), rep)
    return list(seen.values())


def _check_central(a: CirculantDesign, b: CirculantDesign):
    a_coeffs = _distinct_coeffs(a)
    for u in _distinct_coeffs(b):
        for c in a_coeffs:
            if not u.commutes_with(c):
                raise NotCentral(
                    f"coefficient {u!r} does not commute with {c!r}")


def _zs_double_profiled(a: CirculantDesign, b: CirculantDesign,
                        chain: RemrepChain,
                        paf_a: list[QuadForm] | None = None):
    """Core merge returning (output, chain, paf(output)); gram profiles
    are compared on shifts <= d//2 (the rest follow by conjugation)."""
    if a.order != b.order:
        raise ValueError("order mismatch")
    if a.group_degree != b.group_degree:
        raise ValueError("inputs must sit at a common representation level")
    if a.group_degree != chain.top_degree:
        raise ValueError("inputs are not at the chain's top level")
    if a.support() & b.support():
        raise NotDisjoint("inputs share support positions")
    if not (is_quasisymmetric(a) and is_quasisymmetric(b)):
        raise ValueError("inputs must be quasisymmetric")
    _check_central(a, b)

    d = a.order
    top = d // 2
    row = [None] * d
    new_gens: list[SignedPerm] = []
    seen: dict[bytes, None] = {}

    def record(sp: SignedPerm):
        if sp.is_pm_identity():
            return
        rep, _ = sp.canonical()
        if rep.key() not in seen:
            seen[rep.key()] = None
            new_gens.append(rep)

    for p in range(d):
        ea = a.first_row[p]
        eb = b.first_row[p]
        if ea is not None:
            partner = a.first_row[(-p) % d]
            if partner is None or partner[1] != ea[1]:
                raise ValueError("quasisymmetry broken at position %d" % p)
            coeff = block_diag2(ea[0], partner[0].conj())
            row[p] = (coeff, ea[1])
            record(coeff)
        elif eb is not None:
            partner = b.first_row[(-p) % d]
            if partner is None or partner[1] != eb[1]:
                raise ValueError("quasisymmetry broken at position %d" % p)
            coeff = block_antidiag2(eb[0], -partner[0].conj())
            row[p] = (coeff, eb[1])
            record(coeff)

    out = CirculantDesign(row, max(a.nvars, b.nvars), 2 * a.group_degree)

    if out.support() != (a.support() | b.support()):
        raise NotDisjoint("output support is not the input union")
    if not is_quasisymmetric(out):
        raise GramMismatch("output lost quasisymmetry")
    if paf_a is None:
        paf_a = paf_profile(a, top)
    got = paf_profile(out, top)
    paf_b = paf_profile(b, top)
    for s in range(top + 1):
        want = _lift_quadform(paf_a[s] + paf_b[s], out.group_degree)
        if got[s] != want:
            raise GramMismatch(f"gram additivity failed at shift {s}")

    relations = []
    for idx, g in enumerate(new_gens):
        g2 = g * g
        if g2.is_pm_identity():
            relations.append((idx, 1 if bool(g2.sign[0] == 1) else -1))
    step = DoublingStep(a, b, out, out.group_degree,
                        tuple(new_gens), tuple(relations))
    return out, extend_remrep(chain, step), got


def zs_double(a: CirculantDesign, b: CirculantDesign,
              chain: RemrepChain) -> tuple[CirculantDesign, RemrepChain]:
    """Merge disjoint quasisymmetric circulants A (normal) and B (central
    coefficients) into one circulant with supp(A) | supp(B) and gram
    equal to gram(A) + gram(B), doubling the representation degree."""
    out, chain, _ = _zs_double_profiled(a, b, chain)
    return out, chain


def _lift_quadform(q: QuadForm, degree: int) -> QuadForm:
    """Push a QuadForm through the canonical embedding s -> diag(s, s)
    into the doubled degree."""
    out = QuadForm(degree)
    for key, gre in q.terms.items():
        for sp, c in gre.terms.items():
            out.add_product(block_diag2(sp, sp), key[0], key[1], c)
    return out


def extend_remrep(chain: RemrepChain, step: DoublingStep) -> RemrepChain:
    """Append the doubling step's level after consistency checks."""
    if step.new_degree != 2 * chain.top_degree:
        raise ValueError("step degree does not extend the chain")
    return chain.extended(step.new_degree, step.new_generators, step.relations)


def _embed_row(m: CirculantDesign, degree: int) -> CirculantDesign:
    """Re-embed unit coefficients (+-1, +-i) at a target degree."""
    from .sequences import unit_code
    ident = SignedPerm.identity(degree)
    i_img = embed_central_i(degree) if degree % 2 == 0 else None
    images = {0: ident, 2: -ident}
    if i_img is not None:
        images[1] = i_img
        images[3] = -i_img
    row = []
    for e in m.first_row:
        if e is None:
            row.append(None)
            continue
        code = unit_code(e[0])
        if code not in images:
            raise ValueError("cannot embed i over the real base")
        row.append((images[code], e[1]))
    return CirculantDesign(row, m.nvars, degree)


def _fold(bs: list[CirculantDesign], t: SodType,
          chain: RemrepChain) -> tuple[CirculantDesign, RemrepChain]:
    if not bs:
        raise ValueError("no inputs to fold")
    acc = _embed_row(bs[0], chain.top_degree)
    profile = None
    for b in bs[1:]:
        b_emb = _embed_row(b, chain.top_degree)
        acc, chain, profile = _zs_double_profiled(acc, b_emb, chain, profile)
    top = acc.order // 2
    if profile is None:
        profile = paf_profile(acc, top)
    if not profile_matches_type(profile, t, top):
        raise VerificationFailure("folded circulant failed the design check")
    if not is_quasisymmetric(acc):
        raise VerificationFailure("folded circulant lost quasisymmetry")
    return acc, chain


def fold_complex(bs: list[CirculantDesign],
                 t: SodType) -> tuple[CirculantDesign, RemrepChain]:
    """Left-fold a disjoint quasisymmetric complementary family over the
    embedded complex units; n inputs give representation degree 2^n."""
    return _fold(bs, t, RemrepChain.complex_base())


def fold_real(bs: list[CirculantDesign],
              t: SodType) -> tuple[CirculantDesign, RemrepChain]:
    """Same with +-1 coefficients; n inputs give degree 2^(n-1)."""
    return _fold(bs, t, RemrepChain.real_base())
