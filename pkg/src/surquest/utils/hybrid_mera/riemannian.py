"""
Riemannian ADAM on the product of isometric (here unitary) MERA tensors.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from .errors import InvalidSizeError, NumericalError, RetractionError
from .models.mera import GradientSet, Mera
from .models.optimization import AdamState

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-12


def _check_shapes(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise InvalidSizeError(f"shape mismatch: {x.shape} vs {y.shape}")


def project_tangent(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Project ``y`` onto the tangent space at the isometry ``x``: ``y - x (x^dagger y + y^dagger x) / 2``."""
    x = np.asarray(x)
    y = np.asarray(y)
    _check_shapes(x, y)
    xh_y = x.conj().T @ y
    return y - 0.5 * x @ (xh_y + xh_y.conj().T)


def retract(candidate: np.ndarray, tolerance: float = RANK_TOLERANCE) -> np.ndarray:
    """Polar-nearest isometry ``U V^dagger`` of ``candidate = U S V^dagger``."""
    candidate = np.asarray(candidate)
    if not np.all(np.isfinite(candidate)):
        raise NumericalError("retraction candidate has non-finite entries")
    u, s, vh = np.linalg.svd(candidate, full_matrices=False)
    if s.size == 0 or s[-1] <= tolerance * max(1.0, s[0]):
        smallest = s[-1] if s.size else 0.0
        raise RetractionError(
            f"candidate is rank deficient (smallest singular value {smallest:.3e})"
        )
    return u @ vh


def transport(x_new: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Move a moment into the tangent space at ``x_new`` by projection."""
    return project_tangent(x_new, v)


def init_adam(
    mera: Mera,
    alpha: float = 0.01,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> AdamState:
    """Zero moments for every tensor of ``mera``."""
    return AdamState(
        alpha=alpha,
        beta1=beta1,
        beta2=beta2,
        eps=eps,
        t=0,
        m=tuple(np.zeros_like(x) for x in mera.matrices),
        v=tuple(0.0 for _ in mera.tensors),
    )


def riemannian_gradient(mera: Mera, grads: GradientSet) -> Tuple[np.ndarray, ...]:
    return tuple(project_tangent(x, g) for x, g in zip(mera.matrices, grads.matrices))


def adam_step(mera: Mera, grads: GradientSet, state: AdamState) -> Tuple[Mera, AdamState]:
    """One Riemannian ADAM update of every tensor, followed by SVD retraction."""
    if len(grads.matrices) != len(mera.tensors) or len(state.m) != len(mera.tensors):
        raise InvalidSizeError(
            f"{len(grads.matrices)} gradients and {len(state.m)} moments "
            f"for {len(mera.tensors)} tensors"
        )
    t = state.t + 1
    first_correction = 1.0 - state.beta1**t
    second_correction = 1.0 - state.beta2**t

    matrices, moments, seconds = [], [], []
    for index, (x, g, m, v) in enumerate(zip(mera.matrices, grads.matrices, state.m, state.v)):
        if not np.all(np.isfinite(g)):
            raise NumericalError(f"non-finite gradient for tensor {index} on {mera.tensors[index].block}")
        g_riemann = project_tangent(x, g)
        m = state.beta1 * transport(x, m) + (1.0 - state.beta1) * g_riemann
        v = state.beta2 * v + (1.0 - state.beta2) * float(np.sum(np.abs(g_riemann) ** 2))
        m_hat = m / first_correction
        v_hat = v / second_correction
        candidate = x - state.alpha * m_hat / (np.sqrt(v_hat) + state.eps)
        matrices.append(retract(candidate))
        moments.append(m)
        seconds.append(v)

    new_state = AdamState(
        alpha=state.alpha,
        beta1=state.beta1,
        beta2=state.beta2,
        eps=state.eps,
        t=t,
        m=moments,
        v=tuple(seconds),
    )
    return mera.with_matrices(matrices), new_state
