"""JSON wire formats for matrices, states, spaces, parameters and bundles.

Complex numbers travel as [re, im] pairs; matrices as
``{"rows": r, "cols": c, "data": [[re, im], ...]}`` with the data flat in
row-major order; vectors as ``{"dim": n, "data": [...]}``.  Values
round-trip through these encoders at full double precision.
"""

import json

import numpy as np

from .errors import DimensionError
from .family3 import Family3Params
from .family4 import Family4Params
from .space import ProductSpace


def complex_to_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise DimensionError(f"cannot read {v!r} as a complex number")


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    return {"rows": m.shape[0], "cols": m.shape[1],
            "data": [[z.real, z.imag] for z in m.reshape(-1)]}


def matrix_from_json(d):
    rows, cols = int(d["rows"]), int(d["cols"])
    data = d["data"]
    if len(data) != rows * cols:
        raise DimensionError(f"matrix data length {len(data)} != {rows}*{cols}")
    flat = np.array([pair_to_complex(v) for v in data], dtype=complex)
    return flat.reshape(rows, cols)


def vector_to_json(v):
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise DimensionError(f"expected a vector, got ndim={v.ndim}")
    return {"dim": v.shape[0], "data": [[z.real, z.imag] for z in v]}


def vector_from_json(d):
    data = d["data"]
    if len(data) != int(d["dim"]):
        raise DimensionError(f"vector data length {len(data)} != dim {d['dim']}")
    return np.array([pair_to_complex(v) for v in data], dtype=complex)


def space_to_json(sp):
    return {"dim_i": sp.dim_i, "rank_e": sp.rank_e, "partition": list(sp.partition)}


def space_from_json(d):
    sp = ProductSpace(int(d["dim_i"]), tuple(d["partition"]))
    rank = d.get("rank_e")
    if rank is not None and int(rank) != sp.rank_e:
        raise DimensionError(f"rank_e {rank} inconsistent with dim_i {sp.dim_i}")
    return sp


_P3_COMPLEX = ("mu2", "mu3", "lambda2", "lambda3")
_P3_SEEDS = ("seed_a3", "seed_b2", "seed_gamma3", "seed_delta2")
_P4_COMPLEX = ("a2", "a3", "b4", "b5", "l5", "alpha2", "alpha3", "beta4", "beta5", "lambda5")
_P4_SEEDS = ("seed_a5", "seed_c5", "seed_e4", "seed_e5",
             "seed_delta5", "seed_eta5", "seed_theta4", "seed_theta5")


def params3_to_json(p: Family3Params):
    out = {"p": p.p, "theta": p.theta}
    out.update({k: complex_to_pair(getattr(p, k)) for k in _P3_COMPLEX})
    out.update({k: vector_to_json(getattr(p, k)) for k in _P3_SEEDS})
    return out


def params3_from_json(d):
    kwargs = {"p": float(d["p"]), "theta": float(d.get("theta", 0.0))}
    for k in _P3_COMPLEX:
        if k in d:
            kwargs[k] = pair_to_complex(d[k])
    for k in _P3_SEEDS:
        if k in d:
            kwargs[k] = vector_from_json(d[k])
    return Family3Params(**kwargs)


def params4_to_json(p: Family4Params):
    out = {"p": p.p, "m": p.m, "theta1": p.theta1, "theta2": p.theta2,
           "dim_block2": p.dim_block2, "dim_block6": p.dim_block6}
    out.update({k: complex_to_pair(getattr(p, k)) for k in _P4_COMPLEX})
    out.update({k: vector_to_json(getattr(p, k)) for k in _P4_SEEDS})
    return out


def params4_from_json(d):
    kwargs = {"p": float(d["p"]), "m": float(d["m"]),
              "theta1": float(d.get("theta1", 0.0)), "theta2": float(d.get("theta2", 0.0))}
    for k in _P4_COMPLEX:
        if k in d:
            kwargs[k] = pair_to_complex(d[k])
    for k in _P4_SEEDS:
        if k in d:
            kwargs[k] = vector_from_json(d[k])
    for k in ("dim_block2", "dim_block6"):
        if k in d:
            kwargs[k] = int(d[k])
    return Family4Params(**kwargs)


def bundle_to_json(bundle):
    three_detectors = getattr(bundle, "W", None) is not None
    out = {
        "kind": "three-detector" if three_detectors else "two-detector",
        "space": space_to_json(bundle.space),
        "psi": vector_to_json(bundle.psi),
        "operators": {"E": matrix_to_json(bundle.E), "G": matrix_to_json(bundle.G),
                      "T": matrix_to_json(bundle.T), "Y": matrix_to_json(bundle.Y)},
        "core": {"G_I": matrix_to_json(bundle.G_I)},
    }
    if three_detectors:
        out["operators"]["L"] = matrix_to_json(bundle.L)
        out["operators"]["W"] = matrix_to_json(bundle.W)
        out["core"]["L_I"] = matrix_to_json(bundle.L_I)
        out["params"] = params4_to_json(bundle.params) if bundle.params else None
        co = bundle.coefficients
        out["derived"] = {
            "u": complex_to_pair(co.u), "z": complex_to_pair(co.z),
            "q": co.q, "n": co.n, "l4": complex_to_pair(co.l4),
            "lambda4": complex_to_pair(co.lambda4),
        } if co else None
    else:
        out["params"] = params3_to_json(bundle.params) if bundle.params else None
        out["derived"] = {"u": complex_to_pair(bundle.derived_u), "q": bundle.derived_q}
    return out


def bundle_from_json(d):
    """Rebuild a bundle good enough for verification from its JSON form.

    ``params``/coefficient details are restored when present, otherwise
    left as None — the condition checks need only the operators, the
    state, and the space.
    """
    from .family3 import SolutionBundle3
    from .family4 import SolutionBundle4

    sp = space_from_json(d["space"])
    ops = {k: matrix_from_json(v) for k, v in d["operators"].items()}
    psi = vector_from_json(d["psi"])
    core = {k: matrix_from_json(v) for k, v in d.get("core", {}).items()}
    if d.get("kind") == "three-detector" or "W" in ops:
        params = params4_from_json(d["params"]) if d.get("params") else None
        return SolutionBundle4(
            space=sp, E=ops["E"], G=ops["G"], L=ops["L"], T=ops["T"], Y=ops["Y"],
            W=ops["W"], G_I=core.get("G_I"), L_I=core.get("L_I"), psi=psi,
            params=params, coefficients=None)
    params = params3_from_json(d["params"]) if d.get("params") else None
    derived = d.get("derived") or {}
    return SolutionBundle3(
        space=sp, E=ops["E"], G=ops["G"], T=ops["T"], Y=ops["Y"],
        G_I=core.get("G_I"), psi=psi, params=params,
        derived_u=pair_to_complex(derived["u"]) if "u" in derived else None,
        derived_q=derived.get("q"))


def report_to_csv(report):
    lines = ["name,kind,residual,pass"]
    for e in report.entries:
        lines.append(f"{e.name},{e.kind},{e.residual:.6e},{str(e.passed).lower()}")
    for f in report.correlation_findings:
        lines.append(f"\"{f.identity}\",correlation,{f.residual:.6e},true")
    return "\n".join(lines) + "\n"


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)
