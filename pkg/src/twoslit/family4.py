"""Closed-form solution family with three detectors (8-block mode).

Builds two rank-deficient projectors G_I (rank 3) and L_I (rank 5) on a
10-dimensional H_I, a state psi on H_I (x) H_II with H_II split into eight
blocks, and detectors T, Y, W such that T tracks the which-slit projector
E while Y and W track G and L — with E, G, L pairwise non-commuting and
T, Y, W pairwise commuting.

The two anchor scalars (p, m), two phases and ten complex coefficients are
free within open intervals; everything else (u, z, q, n and the
normalization constants below) is forced by idempotence of G_I and L_I.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParamRangeError, SeedError
from .linalg import as_cvector
from .space import ProductSpace, detector_projectors, lift_left, lift_right, slit_projector


def _unit_seed():
    return np.ones(1, dtype=complex)


@dataclass
class Family4Params:
    p: float
    m: float
    theta1: float = 0.0
    theta2: float = 0.0
    # x-side coefficients (first five H_I rows)
    a2: complex = 1.0
    a3: complex = 1.0
    b4: complex = 1.0
    b5: complex = 1.0
    l5: complex = 1.0
    # y-side coefficients (last five H_I rows)
    alpha2: complex = 1.0
    alpha3: complex = 1.0
    beta4: complex = 1.0
    beta5: complex = 1.0
    lambda5: complex = 1.0
    # one seed vector per populated sub-block of psi
    seed_a5: np.ndarray = field(default_factory=_unit_seed)
    seed_c5: np.ndarray = field(default_factory=_unit_seed)
    seed_e4: np.ndarray = field(default_factory=_unit_seed)
    seed_e5: np.ndarray = field(default_factory=_unit_seed)
    seed_delta5: np.ndarray = field(default_factory=_unit_seed)
    seed_eta5: np.ndarray = field(default_factory=_unit_seed)
    seed_theta4: np.ndarray = field(default_factory=_unit_seed)
    seed_theta5: np.ndarray = field(default_factory=_unit_seed)
    # blocks 2 and 6 carry no component of psi; their sizes are free
    dim_block2: int = 1
    dim_block6: int = 1

    def __post_init__(self):
        self.p = float(self.p)
        self.m = float(self.m)
        self.theta1 = float(self.theta1)
        self.theta2 = float(self.theta2)
        for name in ("a2", "a3", "b4", "b5", "l5",
                     "alpha2", "alpha3", "beta4", "beta5", "lambda5"):
            setattr(self, name, complex(getattr(self, name)))
        for name in ("seed_a5", "seed_c5", "seed_e4", "seed_e5",
                     "seed_delta5", "seed_eta5", "seed_theta4", "seed_theta5"):
            setattr(self, name, as_cvector(getattr(self, name)))
        if len(self.seed_e4) != len(self.seed_e5):
            raise DimensionError("seed_e4 and seed_e5 must share a block, equal lengths required")
        if len(self.seed_theta4) != len(self.seed_theta5):
            raise DimensionError("seed_theta4 and seed_theta5 must share a block, equal lengths required")

    def space(self):
        return ProductSpace(10, (
            len(self.seed_a5), int(self.dim_block2), len(self.seed_c5),
            len(self.seed_delta5), len(self.seed_e4), int(self.dim_block6),
            len(self.seed_eta5), len(self.seed_theta4),
        ))

    def validate(self):
        for name in ("b4", "beta4", "b5", "l5", "beta5", "lambda5"):
            if getattr(self, name) == 0:
                raise ZeroDivisionError(f"{name} = 0 divides the coefficient formulas")
        for name in ("seed_a5", "seed_c5", "seed_e4", "seed_e5",
                     "seed_delta5", "seed_eta5", "seed_theta4", "seed_theta5"):
            if np.linalg.norm(getattr(self, name)) == 0.0:
                raise SeedError(f"{name} must be nonzero")


@dataclass
class Family4Coefficients:
    """All derived scalars, in dependency order."""

    s_a: float
    s_alpha: float
    l4: complex
    lambda4: complex
    C: float
    Gamma: float
    D: float
    Delta: float
    A2: float
    A3: float
    A: float
    B2: float
    B3: float
    B: float
    Lambda2: float
    Lambda3: float
    Lambda: float
    Sigma2: float
    Sigma3: float
    Sigma: float
    u: complex
    z: complex
    q: float
    n: float

    @property
    def p_interval(self):
        return self.A2 / self.s_a, (self.A2 + 1) / self.s_a

    @property
    def m_interval(self):
        return (self.A2 + self.B3) / self.s_a, (self.A2 + self.B3 + 1) / self.s_a


def derive_coefficients(params: Family4Params) -> Family4Coefficients:
    """Resolve every derived scalar, validating the p and m ranges."""
    params.validate()
    pr = params
    s_a = 1 + abs(pr.a2) ** 2 + abs(pr.a3) ** 2
    s_al = 1 + abs(pr.alpha2) ** 2 + abs(pr.alpha3) ** 2
    l4 = pr.a2 * np.conj(pr.a3) / (np.conj(pr.b4) * s_a) - pr.l5 * np.conj(pr.b5) / np.conj(pr.b4)
    lambda4 = (pr.alpha2 * np.conj(pr.alpha3) / (np.conj(pr.beta4) * s_al)
               - pr.lambda5 * np.conj(pr.beta5) / np.conj(pr.beta4))
    big_c = (1 + abs(pr.a3) ** 2) + (abs(pr.b4) ** 2 + abs(pr.b5) ** 2) * s_a
    gamma = (1 + abs(pr.alpha3) ** 2) + (abs(pr.beta4) ** 2 + abs(pr.beta5) ** 2) * s_al
    big_d = (1 + abs(pr.a2) ** 2) + (abs(l4) ** 2 + abs(pr.l5) ** 2) * s_a
    delta = (1 + abs(pr.alpha2) ** 2) + (abs(lambda4) ** 2 + abs(pr.lambda5) ** 2) * s_al
    a2f, a3f = abs(pr.a2) ** 2 / big_c, (1 + abs(pr.a3) ** 2) / big_c
    b2f, b3f = (1 + abs(pr.a2) ** 2) / big_d, abs(pr.a3) ** 2 / big_d
    lam2, lam3 = abs(pr.alpha2) ** 2 / gamma, (1 + abs(pr.alpha3) ** 2) / gamma
    sig2, sig3 = (1 + abs(pr.alpha2) ** 2) / delta, abs(pr.alpha3) ** 2 / delta

    plo, phi = a2f / s_a, (a2f + 1) / s_a
    if not (plo < pr.p < phi):
        raise ParamRangeError(f"p={pr.p} outside open interval ({plo}, {phi})")
    mlo, mhi = (a2f + b3f) / s_a, (a2f + b3f + 1) / s_a
    if not (mlo < pr.m < mhi):
        raise ParamRangeError(f"m={pr.m} outside open interval ({mlo}, {mhi})")

    dp = pr.p - 1 / big_c
    rad_u = (dp * (1 - 2 * a3f) - dp * dp * s_a
             + a3f * (abs(pr.b4) ** 2 + abs(pr.b5) ** 2) / big_c) / s_al
    if rad_u <= 0:
        raise ParamRangeError(f"u radicand {rad_u} not positive at p={pr.p}")
    dm = pr.m - 1 / big_c
    rad_z = (dm * (1 - 2 * (a3f - b3f)) - dm * dm * s_a
             - ((b3f - a3f) ** 2 + (b3f - a3f)) / s_a) / s_al
    if rad_z <= 0:
        raise ParamRangeError(f"z radicand {rad_z} not positive at m={pr.m}")

    return Family4Coefficients(
        s_a=s_a, s_alpha=s_al, l4=l4, lambda4=lambda4,
        C=big_c, Gamma=gamma, D=big_d, Delta=delta,
        A2=a2f, A3=a3f, A=a2f + a3f, B2=b2f, B3=b3f, B=b2f + b3f,
        Lambda2=lam2, Lambda3=lam3, Lambda=lam2 + lam3,
        Sigma2=sig2, Sigma3=sig3, Sigma=sig2 + sig3,
        u=np.exp(1j * pr.theta1) * np.sqrt(rad_u),
        z=np.exp(1j * pr.theta2) * np.sqrt(rad_z),
        q=(1 + lam2 + a2f - pr.p * s_a) / s_al,
        n=(1 + a2f + b3f + lam2 + sig3 - pr.m * s_a) / s_al,
    )


def _single_block(t, c2, c3, d4, d5, norm, f3, f):
    """5x5 diagonal block whose last three columns are linear in the first two.

    Used for P (t=p, x-side letters) and Q (t=q, y-side letters); ``norm``
    is the corresponding normalization constant (C or Gamma), ``f3``/``f``
    the block fractions (A3, A) or (Lambda3, Lambda).
    """
    c = np.conj
    out = np.empty((5, 5), dtype=complex)
    out[0] = [t, -c2 * (t - 1 / norm), -c3 * t, -d4 * c2 / norm, -d5 * c2 / norm]
    out[1, 1] = f3 + abs(c2) ** 2 * (t - 1 / norm)
    out[1, 2] = c3 * c(c2) * (t - 1 / norm)
    out[1, 3] = -d4 * f3
    out[1, 4] = -d5 * f3
    out[2, 2] = abs(c3) ** 2 * t
    out[2, 3] = c(c3) * d4 * c2 / norm
    out[2, 4] = c(c3) * d5 * c2 / norm
    out[3, 3] = abs(d4) ** 2 * f
    out[3, 4] = c(d4) * d5 * f
    out[4, 4] = abs(d5) ** 2 * f
    for i in range(5):
        for j in range(i):
            out[i, j] = c(out[j, i])
    return out


def _double_block(t, c2, c3, d4, d5, e4, e5, norm1, norm2, f3, f, g2, g):
    """5x5 diagonal block mixing two coefficient ladders (d and e).

    Used for M (x-side, e = l-coefficients) and N (y-side, e =
    lambda-coefficients); ``norm1``/``norm2`` are (C, D) or (Gamma, Delta)
    and (g2, g) the second ladder's fractions (B2, B) or (Sigma2, Sigma).
    """
    c = np.conj
    out = np.empty((5, 5), dtype=complex)
    out[0] = [t, -c2 * (t - 1 / norm1), -c3 * (t - 1 / norm2),
              -d4 * c2 / norm1 - e4 * c3 / norm2, -d5 * c2 / norm1 - e5 * c3 / norm2]
    out[1, 1] = f3 + abs(c2) ** 2 * (t - 1 / norm1)
    out[1, 2] = c3 * c(c2) * (t - 1 / norm1 - 1 / norm2)
    out[1, 3] = -d4 * f3 + e4 * c(c2) * c3 / norm2
    out[1, 4] = -d5 * f3 + e5 * c(c2) * c3 / norm2
    out[2, 2] = g2 + abs(c3) ** 2 * (t - 1 / norm2)
    out[2, 3] = c(c3) * d4 * c2 / norm1 - e4 * g2
    out[2, 4] = c(c3) * d5 * c2 / norm1 - e5 * g2
    out[3, 3] = abs(d4) ** 2 * f + abs(e4) ** 2 * g
    out[3, 4] = c(d4) * d5 * f + c(e4) * e5 * g
    out[4, 4] = abs(d5) ** 2 * f + abs(e5) ** 2 * g
    for i in range(5):
        for j in range(i):
            out[i, j] = c(out[j, i])
    return out


def core_projectors(params: Family4Params):
    """(G_I, L_I) as 10x10 complex matrices, plus the derived coefficients."""
    co = derive_coefficients(params)
    pr = params
    pb = _single_block(pr.p, pr.a2, pr.a3, pr.b4, pr.b5, co.C, co.A3, co.A)
    qb = _single_block(co.q, pr.alpha2, pr.alpha3, pr.beta4, pr.beta5,
                       co.Gamma, co.Lambda3, co.Lambda)
    mb = _double_block(pr.m, pr.a2, pr.a3, pr.b4, pr.b5, co.l4, pr.l5,
                       co.C, co.D, co.A3, co.A, co.B2, co.B)
    nb = _double_block(co.n, pr.alpha2, pr.alpha3, pr.beta4, pr.beta5,
                       co.lambda4, pr.lambda5, co.Gamma, co.Delta,
                       co.Lambda3, co.Lambda, co.Sigma2, co.Sigma)
    left = np.array([1.0, -np.conj(pr.a2), -np.conj(pr.a3), 0.0, 0.0])
    right = np.array([1.0, -pr.alpha2, -pr.alpha3, 0.0, 0.0])
    ub = co.u * np.outer(left, right)
    zb = co.z * np.outer(left, right)
    g_core = np.block([[pb, ub], [ub.conj().T, qb]])
    l_core = np.block([[mb, zb], [zb.conj().T, nb]])
    return g_core, l_core, co


def _dependence_ladders(params: Family4Params, co: Family4Coefficients):
    """Per-row multipliers of the seed vectors in each populated block.

    Returns (gx, hx, sx, tx, gy, hy, sy, ty): rows i of the x side carry
    gx[i]*seed_a5 in block 1, hx[i]*seed_c5 in block 3 and
    sx[i]*seed_e4 + tx[i]*seed_e5 in block 5; rows j of the y side carry
    gy[j]*seed_delta5 in block 4, hy[j]*seed_eta5 in block 7 and
    sy[j]*seed_theta4 + ty[j]*seed_theta5 in block 8.
    """
    pr = params
    c = np.conj
    # y side
    g2 = -co.Lambda3 / (c(pr.beta5) * co.Lambda)
    g4 = c(pr.beta4) / c(pr.beta5)
    g3 = co.lambda4 * g4 + pr.lambda5
    g1 = pr.alpha2 * g2 + pr.alpha3 * g3
    mu4 = c(co.lambda4) / c(pr.lambda5)
    mu3 = -co.Sigma2 / (c(pr.lambda5) * co.Sigma)
    h2 = pr.beta4 * mu4 + pr.beta5
    h1 = pr.alpha2 * h2 + pr.alpha3 * mu3
    gy = np.array([g1, g2, g3, g4, 1.0])
    hy = np.array([h1, h2, mu3, mu4, 1.0])
    sy = np.array([pr.alpha2 * pr.beta4 + pr.alpha3 * co.lambda4,
                   pr.beta4, co.lambda4, 1.0, 0.0])
    ty = np.array([pr.alpha2 * pr.beta5 + pr.alpha3 * pr.lambda5,
                   pr.beta5, pr.lambda5, 0.0, 1.0])
    # x side, same ladder with the x-side letters
    gg2 = -co.A3 / (c(pr.b5) * co.A)
    gg4 = c(pr.b4) / c(pr.b5)
    gg3 = co.l4 * gg4 + pr.l5
    gg1 = pr.a2 * gg2 + pr.a3 * gg3
    mm4 = c(co.l4) / c(pr.l5)
    mm3 = -co.B2 / (c(pr.l5) * co.B)
    hh2 = pr.b4 * mm4 + pr.b5
    hh1 = pr.a2 * hh2 + pr.a3 * mm3
    gx = np.array([gg1, gg2, gg3, gg4, 1.0])
    hx = np.array([hh1, hh2, mm3, mm4, 1.0])
    sx = np.array([pr.a2 * pr.b4 + pr.a3 * co.l4, pr.b4, co.l4, 1.0, 0.0])
    tx = np.array([pr.a2 * pr.b5 + pr.a3 * pr.l5, pr.b5, pr.l5, 0.0, 1.0])
    return gx, hx, sx, tx, gy, hy, sy, ty


def state(params: Family4Params, co: Family4Coefficients = None):
    """The entangled unit vector on the product space."""
    if co is None:
        co = derive_coefficients(params)
    params.validate()
    sp = params.space()
    gx, hx, sx, tx, gy, hy, sy, ty = _dependence_ladders(params, co)
    zeros = [np.zeros(b, dtype=complex) for b in sp.partition]
    rows = []
    for i in range(5):
        row = list(zeros)
        row[0] = gx[i] * params.seed_a5
        row[2] = hx[i] * params.seed_c5
        row[4] = sx[i] * params.seed_e4 + tx[i] * params.seed_e5
        rows.append(np.concatenate(row))
    for j in range(5):
        row = list(zeros)
        row[3] = gy[j] * params.seed_delta5
        row[6] = hy[j] * params.seed_eta5
        row[7] = sy[j] * params.seed_theta4 + ty[j] * params.seed_theta5
        rows.append(np.concatenate(row))
    psi = np.concatenate(rows)
    return psi / np.linalg.norm(psi)


@dataclass
class SolutionBundle4:
    space: ProductSpace
    E: np.ndarray
    G: np.ndarray
    L: np.ndarray
    T: np.ndarray
    Y: np.ndarray
    W: np.ndarray
    G_I: np.ndarray
    L_I: np.ndarray
    psi: np.ndarray
    params: Family4Params
    coefficients: Family4Coefficients


def build(params: Family4Params) -> SolutionBundle4:
    """Assemble the full bundle (operators lifted to the product space)."""
    g_core, l_core, co = core_projectors(params)
    sp = params.space()
    psi = state(params, co)
    t2, y2, w2 = detector_projectors(sp)
    return SolutionBundle4(
        space=sp,
        E=lift_left(slit_projector(sp), sp),
        G=lift_left(g_core, sp),
        L=lift_left(l_core, sp),
        T=lift_right(t2, sp),
        Y=lift_right(y2, sp),
        W=lift_right(w2, sp),
        G_I=g_core,
        L_I=l_core,
        psi=psi,
        params=params,
        coefficients=co,
    )
