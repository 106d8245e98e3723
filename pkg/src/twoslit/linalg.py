"""Dense complex linear algebra with an explicit tolerance policy.

All operators and states are plain numpy arrays of dtype complex128
(matrices are 2-d, vectors 1-d).  Two thresholds are used throughout the
package:

* ``DEFAULT_TOL`` — residual tolerance for equalities (``A == B`` style
  checks), 1e-12 unless overridden;
* ``NONZERO_TOL`` — threshold a norm must *exceed* for a "nonzero"
  requirement to count as satisfied, 1e-6 unless overridden.

Both can be overridden globally through the ``TWOSLIT_TOL`` /
``TWOSLIT_NONZERO_TOL`` environment variables, or per call via the ``tol``
arguments.
"""

import os

import numpy as np

from .errors import DimensionError

DEFAULT_TOL = 1e-12
NONZERO_TOL = 1e-6


def default_tol():
    """Equality tolerance, honoring the TWOSLIT_TOL environment override."""
    env = os.environ.get("TWOSLIT_TOL")
    return float(env) if env else DEFAULT_TOL


def default_nonzero_tol():
    env = os.environ.get("TWOSLIT_NONZERO_TOL")
    return float(env) if env else NONZERO_TOL


def as_cmatrix(a):
    """Coerce to a 2-d complex ndarray, validating the shape."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    return m


def as_cvector(v):
    """Coerce to a 1-d complex ndarray, validating the shape."""
    w = np.asarray(v, dtype=complex)
    if w.ndim != 1:
        raise DimensionError(f"expected a vector, got ndim={w.ndim}")
    return w


def matmul(a, b):
    """Matrix product with an explicit conformability check."""
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a):
    """Conjugate transpose."""
    return as_cmatrix(a).conj().T


def commutator(a, b):
    """[a, b] = ab - ba for square matrices of equal size."""
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def kron(a, b):
    """Tensor (Kronecker) product, left factor coarse."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def frobenius_norm(a):
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def is_hermitian(a, tol=None):
    """True when max |a - a†| <= tol."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    t = default_tol() if tol is None else float(tol)
    return bool(np.max(np.abs(a - a.conj().T)) <= t)


def is_idempotent(a, tol=None):
    """True when max |a·a - a| <= tol."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    t = default_tol() if tol is None else float(tol)
    return bool(np.max(np.abs(a @ a - a)) <= t)


def projector_rank(a, tol=1e-9):
    """Rank of a Hermitian idempotent, read off its trace.

    The trace of a projector is a nonnegative integer up to roundoff; a
    trace further than ``tol`` from an integer raises DimensionError since
    the input was then not a projector to begin with.
    """
    tr = np.trace(as_cmatrix(a))
    r = round(tr.real)
    if abs(tr - r) > tol or r < 0:
        raise DimensionError(f"trace {tr} is not a nonnegative integer within {tol}")
    return int(r)
