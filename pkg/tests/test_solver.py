import numpy as np
import pytest

from twoslit import fixtures, solver
from twoslit.errors import ModeError, StateShapeError
from twoslit.linalg import is_hermitian, is_idempotent
from twoslit.space import slit_projector


@pytest.fixture(scope="module")
def sys3():
    fx = fixtures.fixture("spin32")
    cs = solver.assemble(slit_projector(fx.space), fx.psi, fx.space)
    return fx, cs, solver.solve(cs)


@pytest.fixture(scope="module")
def sys4():
    fx = fixtures.fixture("dim10")
    cs = solver.assemble(slit_projector(fx.space), fx.psi, fx.space)
    return fx, cs, solver.solve(cs)


def test_hermitian_basis_spans_and_is_orthogonal():
    basis = solver.hermitian_basis(3)
    assert len(basis) == 9
    flat = np.array([b.reshape(-1) for b in basis])
    gram = (flat @ flat.conj().T).real
    assert np.max(np.abs(gram - np.diag([1, 1, 1, 2, 2, 2, 2, 2, 2]))) < 1e-14
    for b in basis:
        assert is_hermitian(b, 1e-15)


def test_coords_roundtrip():
    rng = np.random.default_rng(2)
    h = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = h + h.conj().T
    assert np.max(np.abs(solver.from_coords(solver.coords(h), 4) - h)) < 1e-14


def test_reference_system_solution(sys3):
    fx, cs, sols = sys3
    assert cs.mode == 3 and not cs.degenerate
    (sol,) = sols
    assert sol.name == "G"
    assert sol.residual < 1e-12
    assert sol.nullity == 4
    assert cs.residual_of("G", fx.cores["G_I"]) < 1e-12


def test_members_satisfy_system(sys3):
    fx, cs, (sol,) = sys3
    rng = np.random.default_rng(8)
    for _ in range(5):
        m = sol.member(rng.uniform(-2, 2, sol.nullity))
        assert is_hermitian(m, 1e-12)
        assert cs.residual_of("G", m) < 1e-10


def test_projection_fixes_members(sys3):
    fx, cs, (sol,) = sys3
    proj = sol.project(fx.cores["G_I"])
    assert np.max(np.abs(proj - fx.cores["G_I"])) < 1e-12


def test_filter_recovers_stored_core_from_candidate(sys3):
    fx, cs, (sol,) = sys3
    found = solver.filter_projectors(sol, fx.space, draws=0,
                                     candidates=[fx.cores["G_I"]])
    assert len(found) == 1
    assert np.max(np.abs(found[0] - fx.cores["G_I"])) < 1e-9


def test_blind_filter_finds_projectors(sys3):
    fx, cs, (sol,) = sys3
    found = solver.filter_projectors(sol, fx.space, draws=800, seed=1)
    assert len(found) >= 1
    for m in found:
        assert is_hermitian(m, 1e-9) and is_idempotent(m, 1e-9)
        assert cs.residual_of("G", m) < 1e-8
    again = solver.filter_projectors(sol, fx.space, draws=800, seed=1)
    assert len(again) == len(found)
    assert all(np.array_equal(a, b) for a, b in zip(found, again))


def test_filter_with_nothing_to_do(sys3):
    fx, cs, (sol,) = sys3
    assert solver.filter_projectors(sol, fx.space, draws=0) == []


def test_degenerate_flag_for_slit_eigenstate():
    fx = fixtures.fixture("spin32")
    psi = np.zeros(fx.space.dim, dtype=complex)
    psi[0] = 1.0
    cs = solver.assemble(slit_projector(fx.space), psi, fx.space)
    assert cs.degenerate


def test_zero_state_gives_unconstrained_system():
    fx = fixtures.fixture("spin32")
    cs = solver.assemble(slit_projector(fx.space), np.zeros(fx.space.dim), fx.space)
    (sol,) = solver.solve(cs)
    assert cs.degenerate
    assert sol.nullity == 36
    assert sol.residual < 1e-14


def test_pattern_violation_rejected():
    fx = fixtures.fixture("spin32")
    psi = fx.psi.copy()
    psi[5 * 4 + 0] = 0.5  # weight in a first-detector block over a non-slit row
    with pytest.raises(StateShapeError):
        solver.assemble(slit_projector(fx.space), psi / np.linalg.norm(psi), fx.space)


def test_shape_and_mode_errors():
    fx = fixtures.fixture("spin32")
    with pytest.raises(ModeError):
        solver.assemble(slit_projector(fx.space), fx.psi, fx.space, mode=4)
    with pytest.raises(StateShapeError):
        solver.assemble(np.eye(5), fx.psi, fx.space)
    with pytest.raises(StateShapeError):
        solver.assemble(slit_projector(fx.space), fx.psi[:23], fx.space)


def test_three_detector_system_solution(sys4):
    fx, cs, sols = sys4
    assert cs.mode == 4
    by_name = {s.name: s for s in sols}
    assert set(by_name) == {"G", "L"}
    for name, core in (("G", fx.cores["G_I"]), ("L", fx.cores["L_I"])):
        sol = by_name[name]
        assert sol.residual < 1e-10
        assert sol.nullity == 16
        assert cs.residual_of(name, core) < 1e-12
        found = solver.filter_projectors(sol, fx.space, draws=0, candidates=[core])
        assert len(found) == 1
        assert np.max(np.abs(found[0] - core)) < 1e-9
