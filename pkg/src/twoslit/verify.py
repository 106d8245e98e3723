"""Condition checks, conditional probabilities and correlation detection.

Every defining condition of a candidate solution is evaluated numerically
and reported with its residual.  Equality conditions pass when the
residual is at most the equality tolerance; "nonzero" conditions (the
incompatibility requirements) pass when the residual *exceeds* a separate
nonzeroness threshold, so they cannot be satisfied by numerical dust.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NonCommutingError, ZeroConditioningError
from .linalg import (as_cmatrix, as_cvector, commutator, default_nonzero_tol,
                     default_tol, frobenius_norm)
from .space import lift_right


@dataclass
class CheckEntry:
    name: str
    kind: str  # "eq" | "nonzero" | "structural"
    residual: float
    passed: bool


@dataclass
class CorrelationFinding:
    identity: str
    residual: float


@dataclass
class VerificationReport:
    entries: list
    tol: float
    tol_nonzero: float
    correlation_findings: list = field(default_factory=list)

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def failing(self):
        return [e.name for e in self.entries if not e.passed]

    def to_dict(self):
        return {
            "tol": self.tol,
            "tol_nonzero": self.tol_nonzero,
            "passed": self.passed,
            "conditions": [
                {"name": e.name, "kind": e.kind, "residual": e.residual, "pass": e.passed}
                for e in self.entries
            ],
            "correlations": [
                {"identity": f.identity, "residual": f.residual}
                for f in self.correlation_findings
            ],
        }


def _normalized(psi):
    psi = as_cvector(psi)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise DimensionError("state vector must be nonzero")
    return psi / nrm


def _conformable(psi, *mats):
    n = psi.shape[0]
    for m in mats:
        m = as_cmatrix(m)
        if m.shape != (n, n):
            raise DimensionError(f"operator shape {m.shape} does not match state length {n}")


def _eq(name, residual, tol):
    return CheckEntry(name, "eq", float(residual), bool(residual <= tol))


def _nonzero(name, residual, tol_nz):
    return CheckEntry(name, "nonzero", float(residual), bool(residual > tol_nz))


def check3(E, G, T, Y, psi, tol=None, tol_nonzero=None, space=None):
    """Evaluate the five (plus one structural) two-detector conditions.

    C.1  [E,G] nonzero (incompatibility);
    C.2  [T,E] = 0 and T psi = E psi;
    C.3  [Y,G] = 0 and Y psi = G psi;
    C.4  [T,Y] = 0;
    C.5  E psi and G psi differ from both 0 and psi (non-triviality);
    C.6  (when ``space`` is given) T and Y act on the right factor only.
    """
    t = default_tol() if tol is None else float(tol)
    tnz = default_nonzero_tol() if tol_nonzero is None else float(tol_nonzero)
    psi = _normalized(psi)
    _conformable(psi, E, G, T, Y)
    entries = [
        _nonzero("C.1", frobenius_norm(commutator(E, G)), tnz),
        _eq("C.2", max(frobenius_norm(commutator(T, E)), np.linalg.norm(T @ psi - E @ psi)), t),
        _eq("C.3", max(frobenius_norm(commutator(Y, G)), np.linalg.norm(Y @ psi - G @ psi)), t),
        _eq("C.4", frobenius_norm(commutator(T, Y)), t),
        _nonzero("C.5", min(np.linalg.norm(E @ psi), np.linalg.norm(psi - E @ psi),
                            np.linalg.norm(G @ psi), np.linalg.norm(psi - G @ psi)), tnz),
    ]
    if space is not None:
        res = max(_right_factor_residual(T, space), _right_factor_residual(Y, space))
        entries.append(CheckEntry("C.6", "structural", float(res), bool(res <= t)))
    return VerificationReport(entries=entries, tol=t, tol_nonzero=tnz)


def _right_factor_residual(op, space):
    """How far op is from identity (x) (its leading right-factor block)."""
    op = as_cmatrix(op)
    d2 = space.dim_ii
    if op.shape != (space.dim, space.dim):
        raise DimensionError(f"operator shape {op.shape} does not match space dim {space.dim}")
    return float(np.max(np.abs(op - lift_right(op[:d2, :d2], space))))


def check4(E, G, L, T, Y, W, psi, tol=None, tol_nonzero=None):
    """Evaluate the ten three-detector conditions.

    C.1-C.3  pairwise incompatibility of E, G, L;
    C.4-C.6  T, Y, W track E, G, L on psi while commuting with them;
    C.7-C.9  pairwise compatibility of T, Y, W;
    C.10     non-triviality of E psi, G psi, L psi.
    """
    t = default_tol() if tol is None else float(tol)
    tnz = default_nonzero_tol() if tol_nonzero is None else float(tol_nonzero)
    psi = _normalized(psi)
    _conformable(psi, E, G, L, T, Y, W)
    nontrivial = min(v for target in (E, G, L)
                     for v in (np.linalg.norm(target @ psi),
                               np.linalg.norm(psi - target @ psi)))
    entries = [
        _nonzero("C.1", frobenius_norm(commutator(E, G)), tnz),
        _nonzero("C.2", frobenius_norm(commutator(E, L)), tnz),
        _nonzero("C.3", frobenius_norm(commutator(G, L)), tnz),
        _eq("C.4", max(frobenius_norm(commutator(T, E)), np.linalg.norm(T @ psi - E @ psi)), t),
        _eq("C.5", max(frobenius_norm(commutator(Y, G)), np.linalg.norm(Y @ psi - G @ psi)), t),
        _eq("C.6", max(frobenius_norm(commutator(W, L)), np.linalg.norm(W @ psi - L @ psi)), t),
        _eq("C.7", frobenius_norm(commutator(T, Y)), t),
        _eq("C.8", frobenius_norm(commutator(T, W)), t),
        _eq("C.9", frobenius_norm(commutator(Y, W)), t),
        _nonzero("C.10", nontrivial, tnz),
    ]
    return VerificationReport(entries=entries, tol=t, tol_nonzero=tnz)


def conditional_probability(a, b, psi, tol=None):
    """p(a | b) = <psi| a b psi> / <psi| b psi> for commuting projectors.

    Raises NonCommutingError when [a, b] is not numerically zero (the
    ratio has no probability meaning then) and ZeroConditioningError when
    the conditioning event has zero probability on psi.
    """
    t = default_tol() if tol is None else float(tol)
    psi = _normalized(psi)
    _conformable(psi, a, b)
    if frobenius_norm(commutator(a, b)) > max(t, 1e-10):
        raise NonCommutingError("projectors do not commute; conditional probability undefined")
    bp = b @ psi
    denom = float(np.real(np.vdot(psi, bp)))
    if denom <= t:
        raise ZeroConditioningError(f"conditioning probability {denom} is not positive")
    num = float(np.real(np.vdot(psi, a @ bp)))
    return num / denom


# The finite catalog of detection-correlation identities.  Each entry maps
# an identity label to a residual function of the bundle's operators.
def _catalog(bundle):
    T, Y, psi = bundle.T, bundle.Y, _normalized(bundle.psi)
    idents = [
        ("YT psi = Y psi", np.linalg.norm(Y @ (T @ psi) - Y @ psi)),
        ("TY psi = T psi", np.linalg.norm(T @ (Y @ psi) - T @ psi)),
    ]
    W = getattr(bundle, "W", None)
    if W is not None:
        eye = np.eye(W.shape[0])
        idents += [
            ("TW psi = 0", np.linalg.norm(T @ (W @ psi))),
            ("WY psi = 0", np.linalg.norm(W @ (Y @ psi))),
            ("(1-W)Y psi = 0", np.linalg.norm((eye - W) @ (Y @ psi))),
            ("(1-T)(1-W)Y psi = 0", np.linalg.norm((eye - T) @ ((eye - W) @ (Y @ psi)))),
        ]
    return idents


def detect_correlations(bundle, tol=None):
    """Identities from the catalog that hold on the bundle's state.

    A returned finding means one detector's outcome constrains another's,
    i.e. the detections are not informationally independent.  An empty
    list certifies the non-correlated branch.
    """
    t = default_tol() if tol is None else float(tol)
    return [CorrelationFinding(name, float(res))
            for name, res in _catalog(bundle) if res <= t]


def _projector_residual(m):
    m = as_cmatrix(m)
    return max(float(np.max(np.abs(m - m.conj().T))), float(np.max(np.abs(m @ m - m))))


def verify_bundle(bundle, tol=None, tol_nonzero=None):
    """Full report for a solution bundle.

    Runs the applicable condition list, then appends one "projector"
    precondition per operator (Hermiticity + idempotence residual, so a
    tampered operator entry is caught even where the detector identities
    are blind to it) and the correlation scan.
    """
    if getattr(bundle, "W", None) is not None:
        ops = [("E", bundle.E), ("G", bundle.G), ("L", bundle.L),
               ("T", bundle.T), ("Y", bundle.Y), ("W", bundle.W)]
        report = check4(bundle.E, bundle.G, bundle.L, bundle.T, bundle.Y, bundle.W,
                        bundle.psi, tol=tol, tol_nonzero=tol_nonzero)
    else:
        ops = [("E", bundle.E), ("G", bundle.G), ("T", bundle.T), ("Y", bundle.Y)]
        report = check3(bundle.E, bundle.G, bundle.T, bundle.Y, bundle.psi,
                        tol=tol, tol_nonzero=tol_nonzero, space=bundle.space)
    for name, op in ops:
        report.entries.append(_eq(f"projector({name})", _projector_residual(op), report.tol))
    report.correlation_findings = detect_correlations(bundle, tol=tol)
    return report
