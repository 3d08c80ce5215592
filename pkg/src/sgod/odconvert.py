"""Real orthogonal designs from signed-group designs: decompose per
variable, push coefficients through the representation, multiply each
block by a Hadamard matrix, and verify the assembled design exactly.
"""

from __future__ import annotations

import numpy as np

from .algebra import RemrepChain, SignedPerm, sp_P, sp_R
from .design import CirculantDesign, DesignMatrix, SodType, verify_sod
from .errors import DegreeMismatch, DenseCapExceeded, VerificationFailure
from .sequences import unit_code

DEFAULT_DENSE_CAP = 4096

_I1 = SignedPerm.identity(1)


class HadamardMatrix:
    """Integer +-1 matrix with H H^t = order * I, checked on build."""

    def __init__(self, entries):
        h = np.asarray(entries, dtype=np.int64)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("square matrix required")
        if not np.all(np.abs(h) == 1):
            raise ValueError("entries must be +-1")
        n = h.shape[0]
        if not np.array_equal(h @ h.T, n * np.eye(n, dtype=np.int64)):
            raise VerificationFailure("rows are not orthogonal")
        h.setflags(write=False)
        self.order = n
        self.entries = h


def sylvester(k: int) -> HadamardMatrix:
    """The order-2^k doubling construction [[H, H], [H, -H]]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    h = np.array([[1]], dtype=np.int64)
    block = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(k):
        h = np.kron(block, h)
    return HadamardMatrix(h)


def sod_to_od(sod, chain: RemrepChain, h: HadamardMatrix,
              max_order: int = DEFAULT_DENSE_CAP) -> DesignMatrix:
    """Inflate each coefficient to its matrix image times H, producing a
    verified real design of order m*n with weights m*u."""
    m = h.order
    if chain.top_degree != m:
        raise DegreeMismatch(
            f"Hadamard order {m} != representation degree {chain.top_degree}")
    if sod.group_degree != m:
        raise DegreeMismatch("design coefficients are not at the chain's level")
    n = sod.order
    if m * n > max_order:
        raise DenseCapExceeded(f"dense order {m * n} exceeds cap {max_order}")

    dense = sod.to_dense() if isinstance(sod, CirculantDesign) else sod
    out = np.zeros((m * n, m * n), dtype=np.int64)
    var = np.zeros((m * n, m * n), dtype=np.int64)
    cols = np.arange(m)
    for i in range(n):
        for j in range(n):
            e = dense.entries[i][j]
            if e is None:
                continue
            sp, v = e
            block = np.zeros((m, m), dtype=np.int64)
            block[sp.perm, cols] = sp.sign
            bh = block @ h.entries
            out[i * m:(i + 1) * m, j * m:(j + 1) * m] = bh
            var[i * m:(i + 1) * m, j * m:(j + 1) * m] = v

    entries = [[None] * (m * n) for _ in range(m * n)]
    for r in range(m * n):
        row_out = out[r]
        row_var = var[r]
        row_e = entries[r]
        for c in np.nonzero(row_out)[0]:
            sp = _I1 if row_out[c] > 0 else -_I1
            row_e[c] = (sp, int(row_var[c]))
    od = DesignMatrix(entries, dense.nvars, 1)

    weights = _design_weights(dense)
    t = SodType(m * n, tuple(m * w for w in weights))
    if not verify_sod(od, t):
        raise VerificationFailure("inflated design failed verification")
    return od


def _design_weights(dense: DesignMatrix) -> list[int]:
    counts = {v: 0 for v in range(1, dense.nvars + 1)}
    for e in dense.entries[0]:
        if e is not None:
            counts[e[1]] += 1
    return [counts[v] for v in range(1, dense.nvars + 1)]


def _cod_chain() -> RemrepChain:
    return RemrepChain.complex_base()


def cod_to_od(cod, max_order: int = DEFAULT_DENSE_CAP) -> DesignMatrix:
    """Design over the embedded complex units -> real design of doubled
    order and weights (i carried by R)."""
    for e in _iter_entries(cod):
        unit_code(e[0])  # raises if a coefficient is not an embedded unit
    return sod_to_od(cod, _cod_chain(), sylvester(1), max_order)


QUATERNION_J = sp_R().kron(SignedPerm.identity(2))
QUATERNION_K = sp_P().kron(sp_R())


def quaternion_images() -> dict[str, SignedPerm]:
    """Degree-4 images of the quaternion units."""
    return {"1": SignedPerm.identity(4), "j": QUATERNION_J,
            "k": QUATERNION_K, "jk": QUATERNION_J * QUATERNION_K}


def _quaternion_chain() -> RemrepChain:
    chain = RemrepChain.complex_base()
    # reuse the extension hook to register the degree-4 level directly
    return chain.extended(4, (QUATERNION_J, QUATERNION_K),
                          ((0, -1), (1, -1)))


def qod_to_od(qod, max_order: int = DEFAULT_DENSE_CAP) -> DesignMatrix:
    """Design over the embedded quaternion units -> real design of
    quadrupled order and weights."""
    allowed = set()
    for sp in quaternion_images().values():
        allowed.add(sp.key())
        allowed.add((-sp).key())
    for e in _iter_entries(qod):
        if e[0].key() not in allowed:
            raise ValueError("coefficient outside the embedded quaternion units")
    return sod_to_od(qod, _quaternion_chain(), sylvester(2), max_order)


def _iter_entries(m):
    rows = [m.first_row] if isinstance(m, CirculantDesign) else m.entries
    for row in rows:
        for e in row:
            if e is not None:
                yield e


def conversion_manifest(sod, chain: RemrepChain, weights) -> dict:
    """Certified descriptor for conversions too large to materialize."""
    m = chain.top_degree
    n = sod.order
    return {
        "method": "hadamard-inflation",
        "source_order": n,
        "source_weights": list(weights),
        "representation_degree": m,
        "hadamard": {"kind": "sylvester", "exponent": m.bit_length() - 1},
        "od": {"order": m * n, "weights": [m * w for w in weights]},
        "materialized": False,
    }
