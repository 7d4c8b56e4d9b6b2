"""Dense complex matrices with party structure and the slot-permutation map.

Index layout (fixed once, everything else depends on it): a matrix on r
subsystems of local dimension d is indexed by 2r digits i_1 .. i_2r, each in
0..d-1.  Odd slots i_1, i_3, ... form the row multi-index and even slots the
column multi-index, party 1 most significant in both.  The entry map of a
slot permutation s is

    B[i_1, ..., i_2r] = A[i_s(1), ..., i_s(2r)],

a pure rearrangement of entries.  A state is entangled whenever the trace
norm of some permuted image exceeds 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .perms import Permutation

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state: d^r x d^r, Hermitian, unit trace, PSD."""

    matrix: np.ndarray
    dim: int
    parties: int

    @property
    def size(self) -> int:
        return self.dim**self.parties

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, parties={self.parties})"


def density_matrix(matrix: np.ndarray, dim: int, parties: int) -> DensityMatrix:
    """Validate and wrap a raw matrix, naming the violated invariant on failure."""
    if dim < 2:
        raise ValueError(f"local dimension must be >= 2, got {dim}")
    if parties < 1:
        raise ValueError(f"parties must be >= 1, got {parties}")
    matrix = np.ascontiguousarray(matrix, dtype=complex)
    n = dim**parties
    if matrix.shape != (n, n):
        raise ValueError(
            f"shape: expected {n}x{n} for d={dim}, r={parties}, got {matrix.shape}"
        )
    dev = np.abs(matrix - matrix.conj().T).max()
    if dev > HERMITICITY_TOL:
        raise ValueError(f"hermiticity: max |A - A^dagger| = {dev:.3e}")
    tr = np.trace(matrix)
    if abs(tr - 1) > TRACE_TOL:
        raise ValueError(f"trace: expected 1, got {tr:.15g}")
    lo = np.linalg.eigvalsh(matrix).min()
    if lo < EIGENVALUE_FLOOR:
        raise ValueError(f"positivity: minimum eigenvalue {lo:.3e}")
    matrix.setflags(write=False)
    return DensityMatrix(matrix=matrix, dim=dim, parties=parties)


def _slot_axes(parties: int) -> list[int]:
    # reshaped tensor axes are (rows of parties 1..r, cols of parties 1..r);
    # this axes list regroups them into slot order i_1, i_2, ..., i_2r
    return [k // 2 if k % 2 == 0 else parties + (k - 1) // 2 for k in range(2 * parties)]


def apply_criterion(matrix: np.ndarray, sigma: Permutation, dim: int) -> np.ndarray:
    """Entry map of a slot permutation: B[i_1..i_2r] = A[i_sigma(1)..i_sigma(2r)].

    The identity returns the input unchanged and the global transpose returns
    the matrix transpose; every image has the same entry multiset as A.
    """
    r = sigma.parties
    n = dim**r
    matrix = np.asarray(matrix)
    if matrix.shape != (n, n):
        raise ValueError(
            f"matrix is {matrix.shape}, expected {n}x{n} for d={dim}, r={r}"
        )
    axes = _slot_axes(r)
    tensor = matrix.reshape((dim,) * (2 * r)).transpose(axes)
    tensor = tensor.transpose(np.argsort([s - 1 for s in sigma.images]))
    return np.ascontiguousarray(tensor.transpose(np.argsort(axes)).reshape(n, n))


def trace_norm(matrix: np.ndarray) -> float:
    """Sum of singular values."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"trace norm needs a square matrix, got {matrix.shape}")
    return float(np.linalg.svd(matrix, compute_uv=False).sum())


_CHESSBOARD = np.array(
    [
        [1, 0, 1, 0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, -1, 0, -1, 0],
        [1, 0, 2, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, -1, 0, 1, 0],
        [0, 0, -1, 0, 1, 0, 1, 0, 0],
        [0, -1, 0, -1, 0, 2, 0, 0, 0],
        [1, 0, 0, 0, 1, 0, 2, 0, 0],
        [0, -1, 0, 1, 0, 0, 0, 2, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
    ],
    dtype=float,
)


def chessboard_state() -> DensityMatrix:
    """A two-qutrit bound entangled state: positive under partial transpose
    yet realigning it gives trace norm 7/6, so only the reshuffling
    criterion detects it."""
    return density_matrix(_CHESSBOARD / 12.0, dim=3, parties=2)


def bell_state() -> DensityMatrix:
    """The maximally entangled two-qubit state (|00> + |11>)/sqrt(2) as a
    density matrix; both partial transpose and realignment give norm 2."""
    ket = np.zeros(4)
    ket[0] = ket[3] = 1 / np.sqrt(2)
    return density_matrix(np.outer(ket, ket), dim=2, parties=2)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary: QR of a complex Ginibre matrix with
    the R-diagonal phases absorbed so the distribution is exactly invariant."""
    ginibre = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(ginibre)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def simplex_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """A uniform point on the probability simplex (normalized exponentials)."""
    w = rng.exponential(size=n)
    return w / w.sum()


def random_density_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random n x n state: Haar unitary rotation of a uniform spectrum,
    U diag(lambda) U^dagger.  Deterministic for a fixed generator state."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    u = random_unitary(n, rng)
    lam = simplex_weights(n, rng)
    return (u * lam) @ u.conj().T


def random_state(dim: int, parties: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank state with party structure attached."""
    return density_matrix(random_density_matrix(dim**parties, rng), dim, parties)


def random_pure_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def product_state(vectors: list[np.ndarray]) -> np.ndarray:
    """Projector onto the tensor product of single-party unit vectors."""
    ket = vectors[0]
    for v in vectors[1:]:
        ket = np.kron(ket, v)
    return np.outer(ket, ket.conj())


def random_separable(
    dim: int, parties: int, terms: int, rng: np.random.Generator
) -> DensityMatrix:
    """Convex mixture of ``terms`` random pure product states.  By
    construction no permutation criterion can exceed trace norm 1 on the
    result (up to rounding)."""
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    weights = simplex_weights(terms, rng)
    acc = np.zeros((dim**parties, dim**parties), dtype=complex)
    for w in weights:
        factors = [random_pure_vector(dim, rng) for _ in range(parties)]
        acc += w * product_state(factors)
    return density_matrix(acc, dim, parties)


def tensor_product(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product with concatenated party structure (equal local dims)."""
    if a.dim != b.dim:
        raise ValueError(f"local dimensions differ: {a.dim} vs {b.dim}")
    return density_matrix(
        np.kron(a.matrix, b.matrix), a.dim, a.parties + b.parties
    )


def maximally_mixed(dim: int, parties: int = 1) -> DensityMatrix:
    """The state I/n on the given party structure."""
    n = dim**parties
    return density_matrix(np.eye(n) / n, dim, parties)


def mix_with_noise(rho: DensityMatrix, beta: float) -> DensityMatrix:
    """(1 - beta) * rho + beta * I/n."""
    if not 0 <= beta <= 1:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    n = rho.size
    return density_matrix(
        (1 - beta) * rho.matrix + beta * np.eye(n) / n, rho.dim, rho.parties
    )


def reorder_parties(rho: DensityMatrix, order: list[int]) -> DensityMatrix:
    """Relabel subsystems: party j of the result is party order[j-1] of the
    input (1-based).  Moves each party's row and column slot together, a
    norm-preserving relabeling."""
    r = rho.parties
    if sorted(order) != list(range(1, r + 1)):
        raise ValueError(f"order {order} is not a permutation of 1..{r}")
    images = [0] * (2 * r)
    for j, src in enumerate(order, start=1):
        images[2 * src - 2] = 2 * j - 1
        images[2 * src - 1] = 2 * j
    moved = apply_criterion(rho.matrix, Permutation(tuple(images)), rho.dim)
    return density_matrix(moved, rho.dim, rho.parties)


BUILTIN_STATES = {"chessboard": chessboard_state, "bell": bell_state}


def state_from_dict(data: dict) -> DensityMatrix:
    """Parse the state wire format.

    Either {"builtin": "chessboard" | "bell"} or an explicit matrix
    {"d": int, "r": int, "re": [[...]], "im": [[...]]} with row-major
    d^r x d^r arrays.  Validation failures name the violated invariant.
    """
    if "builtin" in data:
        name = data["builtin"]
        if name not in BUILTIN_STATES:
            raise ValueError(
                f"unknown builtin {name!r}; have {sorted(BUILTIN_STATES)}"
            )
        return BUILTIN_STATES[name]()
    for key in ("d", "r", "re"):
        if key not in data:
            raise ValueError(f"state object is missing key {key!r}")
    dim, parties = int(data["d"]), int(data["r"])
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError(f"re/im shapes differ: {re.shape} vs {im.shape}")
    return density_matrix(re + 1j * im, dim, parties)


def load_state(path: str | Path) -> DensityMatrix:
    """Read a state file (JSON, see :func:`state_from_dict`)."""
    with open(path) as fh:
        return state_from_dict(json.load(fh))


def state_to_dict(rho: DensityMatrix) -> dict:
    """Explicit-matrix wire format of a state."""
    return {
        "d": rho.dim,
        "r": rho.parties,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }
