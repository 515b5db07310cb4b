"""Localization operators: assembly, application and eigendecomposition.

A symbol f on the phase plane and a window system S define the dense L x L
matrix A = (1/L) sum_z f[z] sum_k s_k (pi(z) g_k)(pi(z) g_k)*.  The 1/L
normalization makes f = 1 give the identity.  Dense storage is deliberate:
the estimators need the full spectrum and L stays at desk scale (<= 256).
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import WindowSystem, as_signal
from .errors import NotSelfAdjointError, ValidationError
from .gabor import _roll_table

HERMITIAN_REJECT_TOL = 1e-6
DEGENERACY_GAP = 1e-8

_DUMP_MAGIC = b"LOCOP1"


@dataclass(frozen=True)
class LocOperator:
    """Dense localization operator with provenance.

    ``windows`` and ``symbol_hash`` record how the matrix was built; they
    are informational and may be absent for operators loaded from disk.
    """

    matrix: np.ndarray
    windows: Optional[WindowSystem] = None
    symbol_hash: str = ""

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (descending |lambda|) and matching orthonormal eigenvectors.

    ``eigenvectors[i]`` is the eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.size


def _single_window_matrix(symbol_rows_ifft: np.ndarray, g: np.ndarray,
                          diff: np.ndarray, idx: np.ndarray) -> np.ndarray:
    length = g.size
    shifted = g[idx]
    acc = np.zeros((length, length), dtype=np.complex128)
    for n in range(length):
        gn = shifted[n]
        acc += np.outer(gn, gn.conj()) * symbol_rows_ifft[n][diff]
    return acc


def build_locop(symbol, windows: WindowSystem) -> LocOperator:
    """Assemble the localization operator for ``symbol`` over ``windows``.

    O(L^3) per window: the frequency sum per lattice row collapses to one
    inverse FFT, leaving a circulant-weighted rank-one accumulation over
    time shifts.  Hermitian (up to roundoff) whenever the symbol is real.
    """
    f = np.asarray(symbol)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValidationError(f"symbol must be a square map, got {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValidationError("symbol has non-finite entries")
    length = f.shape[0]
    if windows.length != length:
        raise ValidationError(
            f"window length {windows.length} != symbol size {length}"
        )
    # rows_ifft[n, k] = (1/L) sum_m f[n, m] exp(2 pi i m k / L)
    rows_ifft = np.fft.ifft(np.asarray(f, dtype=np.complex128), axis=1)
    t = np.arange(length)
    diff = (t[:, None] - t[None, :]) % length
    idx = _roll_table(length)
    acc = np.zeros((length, length), dtype=np.complex128)
    for w, g in windows:
        acc += w * _single_window_matrix(rows_ifft, g, diff, idx)
    digest = hashlib.sha256(np.ascontiguousarray(f).tobytes()).hexdigest()[:16]
    return LocOperator(acc, windows, digest)


def apply(op: LocOperator, psi) -> np.ndarray:
    """Apply the operator: plain matrix-vector product."""
    psi = as_signal(psi)
    if psi.size != op.size:
        raise ValidationError(f"signal length {psi.size} != operator size {op.size}")
    return op.matrix @ psi


def _vector_key(v: np.ndarray):
    r = np.round(np.concatenate([v.real, v.imag]), 9)
    return tuple(r)


def eigendecompose(op: LocOperator) -> Spectrum:
    """Full spectrum of a Hermitian localization operator.

    Ordering is deterministic: descending |lambda|, ties broken by
    descending signed lambda, then by the rounded eigenvector.  Numerically
    degenerate clusters (gap < 1e-8) are re-orthonormalized by
    Gram-Schmidt, since near-degenerate eigenvectors are exactly where
    spectral estimators go wrong.  Eigenvector phases are canonicalized so
    the largest-magnitude entry is real positive.
    """
    h = op.matrix
    asym = np.max(np.abs(h - h.conj().T))
    if asym > HERMITIAN_REJECT_TOL:
        raise NotSelfAdjointError(
            f"operator asymmetry {asym:.3e} exceeds {HERMITIAN_REJECT_TOL}; "
            "complex symbol or invalid window system?"
        )
    sym = (h + h.conj().T) / 2
    lam, vec = np.linalg.eigh(sym)
    lam = lam.real
    order = sorted(
        range(lam.size),
        key=lambda i: (-abs(lam[i]), -lam[i], _vector_key(vec[:, i])),
    )
    lam = lam[order]
    vecs = vec[:, order].T.copy()

    # Gram-Schmidt within degenerate clusters.
    start = 0
    for i in range(1, lam.size + 1):
        if i == lam.size or abs(lam[i] - lam[i - 1]) >= DEGENERACY_GAP:
            if i - start > 1:
                block = vecs[start:i]
                for a in range(block.shape[0]):
                    for b in range(a):
                        block[a] -= (block[b].conj() @ block[a]) * block[b]
                    block[a] /= np.linalg.norm(block[a])
                vecs[start:i] = block
            start = i

    # Canonical phase: largest entry real positive.
    for i in range(vecs.shape[0]):
        k = int(np.argmax(np.abs(vecs[i])))
        pivot = vecs[i][k]
        if abs(pivot) > 0:
            vecs[i] *= pivot.conj() / abs(pivot)
    return Spectrum(lam, vecs)


def save_locop(op: LocOperator, path):
    """Binary dump: 16-byte header (magic ``LOCOP1``, u32 L), then the
    matrix row-major as little-endian float64 (real, imag) pairs."""
    header = _DUMP_MAGIC + b"\x00\x00" + struct.pack("<I", op.size) + b"\x00" * 4
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(op.matrix, dtype="<c16").tobytes())


def load_locop(path) -> LocOperator:
    """Read a matrix dumped by :func:`save_locop`."""
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:6] != _DUMP_MAGIC:
            raise ValidationError(f"{path}: not a LOCOP1 dump")
        (length,) = struct.unpack("<I", header[8:12])
        data = np.frombuffer(fh.read(), dtype="<c16")
    if data.size != length * length:
        raise ValidationError(
            f"{path}: expected {length * length} entries, found {data.size}"
        )
    return LocOperator(data.reshape(length, length).astype(np.complex128))
