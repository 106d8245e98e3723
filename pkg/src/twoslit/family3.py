"""Closed-form solution family with two detectors (4-block mode).

Produces a rank-3 projector G_I on a 6-dimensional H_I, an entangled state
psi on H_I (x) H_II, and detector projectors T, Y such that on psi the
detector outcomes reproduce the outcomes of the mutually incompatible
projections E (which-slit) and G — every defining condition is checkable
with :mod:`twoslit.verify`.

Free data: two real scalars (p, theta), four complex coefficients
(mu2, mu3, lambda2, lambda3) and four nonzero seed vectors, one per block
of H_II.  The remaining scalars u and q are forced by idempotence of G_I
and are exposed through :func:`derive_u` / :func:`derive_q`.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParamRangeError, SeedError
from .linalg import as_cvector
from .space import ProductSpace, detector_projectors, lift_left, lift_right, slit_projector


def _unit_seed():
    return np.ones(1, dtype=complex)


@dataclass
class Family3Params:
    p: float
    theta: float = 0.0
    mu2: complex = 0.0
    mu3: complex = 0.0
    lambda2: complex = 0.0
    lambda3: complex = 0.0
    seed_a3: np.ndarray = field(default_factory=_unit_seed)
    seed_b2: np.ndarray = field(default_factory=_unit_seed)
    seed_gamma3: np.ndarray = field(default_factory=_unit_seed)
    seed_delta2: np.ndarray = field(default_factory=_unit_seed)

    def __post_init__(self):
        self.p = float(self.p)
        self.theta = float(self.theta)
        for name in ("mu2", "mu3", "lambda2", "lambda3"):
            setattr(self, name, complex(getattr(self, name)))
        for name in ("seed_a3", "seed_b2", "seed_gamma3", "seed_delta2"):
            setattr(self, name, as_cvector(getattr(self, name)))

    # scalar combinations that recur in every formula
    @property
    def k_mu(self):
        return abs(self.mu3) ** 2 / (1 + abs(self.mu3) ** 2)

    @property
    def k_lambda(self):
        return abs(self.lambda3) ** 2 / (1 + abs(self.lambda3) ** 2)

    @property
    def s_mu(self):
        return 1 + abs(self.mu2) ** 2 + abs(self.mu3) ** 2

    @property
    def s_lambda(self):
        return 1 + abs(self.lambda2) ** 2 + abs(self.lambda3) ** 2

    @property
    def p_interval(self):
        """Open interval of admissible p values."""
        return self.k_mu, self.k_mu + 1.0 / self.s_mu

    def space(self):
        return ProductSpace(6, (len(self.seed_a3), len(self.seed_b2),
                                len(self.seed_gamma3), len(self.seed_delta2)))

    def validate(self):
        lo, hi = self.p_interval
        if not (lo < self.p < hi):
            raise ParamRangeError(f"p={self.p} outside open interval ({lo}, {hi})")
        for name in ("seed_a3", "seed_b2", "seed_gamma3", "seed_delta2"):
            if np.linalg.norm(getattr(self, name)) == 0.0:
                raise SeedError(f"{name} must be nonzero")


@dataclass
class SolutionBundle3:
    space: ProductSpace
    E: np.ndarray
    G: np.ndarray
    T: np.ndarray
    Y: np.ndarray
    G_I: np.ndarray
    psi: np.ndarray
    params: Family3Params
    derived_u: complex
    derived_q: float


def derive_u(params: Family3Params) -> complex:
    """Off-diagonal scale u = e^{i theta} sqrt(radicand), forced by G_I^2 = G_I.

    The radicand is positive exactly on the open p interval, vanishing at
    both endpoints.
    """
    params.validate()
    t = params.p - params.k_mu
    radicand = (t - params.s_mu * t * t) / params.s_lambda
    if radicand <= 0:
        raise ParamRangeError(f"u radicand {radicand} not positive at p={params.p}")
    return np.exp(1j * params.theta) * np.sqrt(radicand)


def q_increment(params: Family3Params) -> float:
    """The increment q - k_lambda forced by idempotence.

    On its own this is *not* a valid q: plugged in directly it fails the
    idempotence oracle (see the regression test), which is why
    :func:`derive_q` adds the k_lambda offset.
    """
    params.validate()
    return (1 - params.s_mu * (params.p - params.k_mu)) / params.s_lambda


def derive_q(params: Family3Params) -> float:
    """Diagonal anchor of the lower-right block, forced by idempotence."""
    return params.k_lambda + q_increment(params)


def _corner_block(t, c2, c3, k):
    """3x3 projector-family block with diagonal anchor t.

    Same shape serves for both diagonal blocks of G_I: the upper-left one
    with (p, mu2, mu3, k_mu), the lower-right with (q, lambda2, lambda3,
    k_lambda).
    """
    c2b, c3b = np.conj(c2), np.conj(c3)
    return np.array([
        [t, -c2 * (t - k), c3 * (1 - t)],
        [-c2b * (t - k), abs(c2) ** 2 * (t - k), c3 * c2b * (t - k)],
        [c3b * (1 - t), c3b * c2 * (t - k), 1 - abs(c3) ** 2 * (1 - t)],
    ], dtype=complex)


def core_projector(params: Family3Params):
    """G_I as a 6x6 complex matrix (Hermitian idempotent for valid params)."""
    params.validate()
    u = derive_u(params)
    q = derive_q(params)
    pb = _corner_block(params.p, params.mu2, params.mu3, params.k_mu)
    qb = _corner_block(q, params.lambda2, params.lambda3, params.k_lambda)
    left = np.array([1.0, -np.conj(params.mu2), -np.conj(params.mu3)])
    right = np.array([1.0, -params.lambda2, -params.lambda3])
    ub = u * np.outer(left, right)
    return np.block([[pb, ub], [ub.conj().T, qb]]), u, q


def state(params: Family3Params):
    """The entangled unit vector on the product space.

    Block content per H_I row: the first three rows populate blocks 1-2 of
    H_II (multiples of seed_a3 / seed_b2), the last three rows blocks 3-4
    (multiples of seed_gamma3 / seed_delta2).
    """
    params.validate()
    sp = params.space()
    a, b = params.seed_a3, params.seed_b2
    g, d = params.seed_gamma3, params.seed_delta2
    mu2, mu3 = params.mu2, params.mu3
    la2, la3 = params.lambda2, params.lambda3
    mden = 1 + abs(mu3) ** 2
    lden = 1 + abs(la3) ** 2
    z1, z2, z3, z4 = (np.zeros(n, dtype=complex) for n in sp.partition)
    rows = [
        np.concatenate([mu3 * a, (mu2 / mden) * b, z3, z4]),
        np.concatenate([z1, b, z3, z4]),
        np.concatenate([a, (-mu2 * np.conj(mu3) / mden) * b, z3, z4]),
        np.concatenate([z1, z2, la3 * g, (la2 / lden) * d]),
        np.concatenate([z1, z2, z3, d]),
        np.concatenate([z1, z2, g, (-la2 * np.conj(la3) / lden) * d]),
    ]
    psi = np.concatenate(rows)
    return psi / np.linalg.norm(psi)


def build(params: Family3Params) -> SolutionBundle3:
    """Assemble the full bundle (operators lifted to the product space)."""
    g_core, u, q = core_projector(params)
    sp = params.space()
    psi = state(params)
    t2, y2 = detector_projectors(sp)
    return SolutionBundle3(
        space=sp,
        E=lift_left(slit_projector(sp), sp),
        G=lift_left(g_core, sp),
        T=lift_right(t2, sp),
        Y=lift_right(y2, sp),
        G_I=g_core,
        psi=psi,
        params=params,
        derived_u=u,
        derived_q=q,
    )
