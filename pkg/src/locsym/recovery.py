"""Symbol recovery: the five estimators, impulse kernels and deconvolution.

Methods
-------
wn    white-noise probing: average spectrogram of operator-filtered noise,
      normalized by an estimated noise variance; targets the squared symbol.
was   weighted accumulated Cohen's class over the leading eigenpairs.
wawd  weighted accumulated Wigner distribution over the leading eigenpairs.
pt    plane tiling: accumulate spectrograms of operator images of an
      orthonormal family; with a complete basis it equals wn_limit exactly.
gp    Gabor projection: pointwise quadratic form <A pi(z) phi, pi(z) phi>,
      which equals the symbol blurred by a known unit-mass kernel.

In finite dimension the identity chain is exact: gp over the full grid,
was with all L eigenpairs and a rank-one reconstruction system, and the
circular convolution of the symbol with the analytic impulse kernel all
agree to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import WindowSystem, as_signal, tf_shift
from .errors import DegenerateKernelError, NumericalError, ValidationError
from .gabor import _dgt_stack, spectrogram
from .operator import LocOperator, Spectrum, build_locop, eigendecompose
from .wigner import cohen_class, wigner

_NOISE_BATCH = 128


@dataclass(frozen=True)
class RecoveryResult:
    """Estimate map plus the parameters that produced it."""

    estimate: np.ndarray
    method: str
    meta: dict = field(default_factory=dict)


def _check_unit(phi: np.ndarray, what: str = "reconstruction window"):
    nrm = np.linalg.norm(phi)
    if abs(nrm - 1.0) > 1e-9:
        raise ValidationError(f"{what} must be unit-norm, got ||.|| = {nrm!r}")


def wn_limit(spectrum: Spectrum, phi) -> np.ndarray:
    """Large-sample limit of the white-noise estimator.

    sum_m lambda_m^2 |dgt(h_m, phi)|^2; also the value of the full
    plane-tiling sum.  Invariant under negating the operator because only
    squared eigenvalues enter.
    """
    phi = as_signal(phi)
    _check_unit(phi)
    out = np.zeros((spectrum.size, spectrum.size))
    for lam, h in zip(spectrum.eigenvalues, spectrum.eigenvectors):
        out += (lam * lam) * spectrogram(h, phi)
    return out


def _noise_realization(seed: int, k: int, length: int, scale: float,
                       real_noise: bool) -> np.ndarray:
    # Philox is counter-based: keying by (seed, k) gives independent
    # substreams per realization, so results never depend on batching.
    rng = np.random.Generator(np.random.Philox(key=np.array(
        [np.uint64(seed), np.uint64(k)], dtype=np.uint64)))
    if real_noise:
        return (scale * math.sqrt(2.0)) * rng.standard_normal(length) + 0j
    re = rng.standard_normal(length)
    im = rng.standard_normal(length)
    return scale * (re + 1j * im)


def wn_recover(op: LocOperator, phi, draws: int, noise_var: float,
               seed: int, real_noise: bool = False) -> RecoveryResult:
    """Monte-Carlo white-noise probing of the operator.

    Draws ``draws`` complex circular Gaussian signals with per-entry
    variance ``noise_var`` (substream per realization keyed by
    (seed, k)), filters each through the operator and averages the
    spectrograms.  The estimate is that average divided by the observed
    noise level, the mean of |dgt(noise, phi)|^2 over realizations and
    lattice points; it targets the squared symbol, so signs are lost.

    ``real_noise`` switches to real-valued noise of the same variance
    (kept behind a flag: constants degrade, and nothing downstream
    depends on it).
    """
    phi = as_signal(phi)
    _check_unit(phi)
    if draws < 1:
        raise ValidationError(f"draws must be >= 1, got {draws}")
    if not noise_var > 0:
        raise ValidationError(f"noise variance must be positive, got {noise_var}")
    if op.size != phi.size:
        raise ValidationError("operator and window sizes differ")
    length = op.size
    scale = math.sqrt(noise_var / 2.0)
    avg = np.zeros((length, length))
    level = 0.0
    for lo in range(0, draws, _NOISE_BATCH):
        hi = min(lo + _NOISE_BATCH, draws)
        noise = np.stack([
            _noise_realization(seed, k, length, scale, real_noise)
            for k in range(lo, hi)
        ])
        filtered = noise @ op.matrix.T
        v = _dgt_stack(filtered, phi)
        avg += np.sum(v.real ** 2 + v.imag ** 2, axis=0)
        v = _dgt_stack(noise, phi)
        level += float(np.sum(v.real ** 2 + v.imag ** 2))
    avg /= draws
    noise_var_hat = level / (draws * length * length)
    meta = {
        "draws": draws,
        "noise_var": noise_var,
        "noise_var_hat": noise_var_hat,
        "seed": seed,
        "real_noise": real_noise,
        "avg_observed": avg,
    }
    return RecoveryResult(avg / noise_var_hat, "wn", meta)


def was_recover(spectrum: Spectrum, system: WindowSystem,
                terms: int) -> RecoveryResult:
    """Weighted accumulated Cohen's class over the leading eigenpairs.

    Partial sum of lambda_m * Q_T(h_m) for the ``terms`` largest-|lambda|
    eigenpairs.  With all terms and a rank-one system this is the Gabor
    projection estimator, computed through spectral data instead.
    """
    if not 1 <= terms <= spectrum.size:
        raise ValidationError(
            f"terms must be in 1..{spectrum.size}, got {terms}"
        )
    out = np.zeros((spectrum.size, spectrum.size))
    for lam, h in zip(spectrum.eigenvalues[:terms], spectrum.eigenvectors[:terms]):
        out += lam * cohen_class(h, system)
    tail = float(np.sum(np.abs(spectrum.eigenvalues[terms:])))
    return RecoveryResult(out, "was", {"terms": terms, "eig_tail_mass": tail})


def wawd_recover(spectrum: Spectrum, terms: int) -> RecoveryResult:
    """Weighted accumulated Wigner distribution over the leading eigenpairs.

    Needs no reconstruction window.  The full sum equals the circular
    convolution (1/L)(f conv W(g)); for even L the Wigner frequency
    aliasing leaks into the estimate, which the meta flag records.
    """
    if not 1 <= terms <= spectrum.size:
        raise ValidationError(
            f"terms must be in 1..{spectrum.size}, got {terms}"
        )
    out = np.zeros((spectrum.size, spectrum.size))
    for lam, h in zip(spectrum.eigenvalues[:terms], spectrum.eigenvectors[:terms]):
        out += lam * wigner(h)
    tail = float(np.sum(np.abs(spectrum.eigenvalues[terms:])))
    meta = {
        "terms": terms,
        "eig_tail_mass": tail,
        "even_length_artifacts": spectrum.size % 2 == 0,
    }
    return RecoveryResult(out, "wawd", meta)


def pt_recover(op: LocOperator, basis, phi) -> RecoveryResult:
    """Plane tiling: sum of spectrograms of operator images of a basis.

    ``basis`` is any orthonormal family (rows), full or partial.  With a
    complete basis the sum equals wn_limit for any basis whatsoever.
    """
    phi = as_signal(phi)
    _check_unit(phi)
    family = np.atleast_2d(np.asarray(basis, dtype=np.complex128))
    if family.shape[1] != op.size:
        raise ValidationError("basis length does not match operator size")
    gram = family @ family.conj().T
    if np.max(np.abs(gram - np.eye(family.shape[0]))) > 1e-8:
        raise ValidationError("basis must be orthonormal within 1e-8")
    out = np.zeros((op.size, op.size))
    for e in family:
        out += spectrogram(op.matrix @ e, phi)
    return RecoveryResult(out, "pt", {"basis_size": family.shape[0]})


def gp_recover(op: LocOperator, phi, region=None) -> RecoveryResult:
    """Gabor projection: estimate[z] = Re <A pi(z) phi, pi(z) phi>.

    Pointwise and embarrassingly parallel; ``region`` (an iterable of
    lattice points) restricts evaluation, leaving NaN sentinels elsewhere
    since zero is a meaningful symbol value.
    """
    phi = as_signal(phi)
    _check_unit(phi)
    length = op.size
    if phi.size != length:
        raise ValidationError("operator and window sizes differ")
    if region is not None:
        est = np.full((length, length), np.nan)
        points = [(int(n) % length, int(m) % length) for n, m in region]
        for n, m in points:
            v = tf_shift(phi, (n, m))
            est[n, m] = (v.conj() @ (op.matrix @ v)).real
        meta = {"region_points": len(points)}
        return RecoveryResult(est, "gp", meta)
    est = np.empty((length, length))
    max_imag = 0.0
    t = np.arange(length)
    for n in range(length):
        shifted = np.roll(phi, n)
        # columns of q are A pi(n, m) phi for m = 0..L-1
        q = length * np.fft.ifft(op.matrix * shifted[None, :], axis=1)
        z = shifted.conj()[:, None] * q
        row = np.fft.fft(z, axis=0)[t, t]
        max_imag = max(max_imag, float(np.max(np.abs(row.imag))))
        est[n] = row.real
    return RecoveryResult(est, "gp", {"region_points": None,
                                      "max_imag_residue": max_imag})


def impulse_kernel(windows: WindowSystem, phi, mode: str = "analytic",
                   estimator: str = "gp", builder=build_locop) -> np.ndarray:
    """Unit-mass blurring kernel separating gp/was estimates from the symbol.

    analytic: (1/L) sum_k s_k |dgt(g_k, phi)|^2, peaked at the origin.
    measured: build the operator for a unit Dirac symbol at the origin and
    run the requested estimator pipeline on it; for gp and was this
    reproduces the analytic kernel to machine precision.
    """
    phi = as_signal(phi)
    _check_unit(phi)
    length = windows.length
    if mode == "analytic":
        out = np.zeros((length, length))
        for w, g in windows:
            out += (w / length) * spectrogram(g, phi)
        return out
    if mode != "measured":
        raise ValidationError(f"unknown impulse mode {mode!r}")
    delta = np.zeros((length, length))
    delta[0, 0] = 1.0
    op = builder(delta, windows)
    if estimator == "gp":
        return gp_recover(op, phi).estimate
    if estimator == "was":
        spec = eigendecompose(op)
        return was_recover(spec, WindowSystem.single(phi), length).estimate
    raise ValidationError(f"unsupported impulse estimator {estimator!r}")


def deconvolve(estimate, kernel, eps: float) -> np.ndarray:
    """Invert a circular blur by spectral division with hard thresholding.

    Divides the 2-d FFT of ``estimate`` by that of ``kernel`` wherever the
    kernel spectrum exceeds ``eps`` times its maximum and zeroes the rest.
    Small eps on a zero-free kernel spectrum recovers the symbol exactly;
    large eps degrades gracefully into a band-limited projection.
    """
    est = np.asarray(estimate, dtype=np.complex128)
    ker = np.asarray(kernel, dtype=np.complex128)
    if est.shape != ker.shape or est.ndim != 2:
        raise ValidationError("estimate and kernel must be equal-shape 2-d maps")
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    ker_hat = np.fft.fft2(ker)
    peak = float(np.max(np.abs(ker_hat)))
    if peak == 0.0:
        raise DegenerateKernelError("kernel has no spectral content")
    mask = np.abs(ker_hat) > eps * peak
    ratio = np.zeros_like(ker_hat)
    np.divide(np.fft.fft2(est), ker_hat, out=ratio, where=mask)
    out = np.fft.ifft2(ratio)
    # the residue sits near 1e-8 when eps rides the kernel's noise floor;
    # an order of magnitude above that the division is noise-dominated
    residue = float(np.max(np.abs(out.imag)))
    if residue > 1e-6 * max(1.0, float(np.max(np.abs(out.real)))):
        raise NumericalError(
            f"deconvolution unstable: imaginary residue {residue:.3e}; raise eps"
        )
    return out.real
