import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normlab.estimate import estimate_norm
from normlab.operators import make_symbol, toeplitz, toeplitz_apply
from normlab.trig import GridConfig, TrigPoly, compose_eN, duality_map, lp_norm, monomial
from normlab.witness import build_witness, verify_certificate, witness_grid

SHIFT = make_symbol("e", -1)


@pytest.fixture(scope="module")
def est4():
    return estimate_norm(toeplitz(SHIFT, 8), 4, restarts=4)


def random_candidates(seed, k, deg):
    rng = np.random.default_rng(seed)
    return [TrigPoly(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1), 0) for _ in range(k)]


def test_witness_basic(est4):
    cands = random_candidates(7, 3, 8)
    rep = build_witness(4, 0.01, cands, est4)
    assert rep.N == 10
    assert rep.certificate_ok
    assert rep.distances_ok()
    assert lp_norm(rep.witness, 4) == pytest.approx(1, abs=1e-10)
    # support of the witness lives on multiples of N, exactly
    k = np.arange(rep.witness.k_min, rep.witness.k_max + 1)
    assert np.all(rep.witness.coeffs[k % rep.N != 0] == 0)


def test_no_candidates(est4):
    rep = build_witness(4, 0.01, [], est4)
    assert rep.N == 2 and rep.distances == []


def test_zero_candidate_distance_is_image_norm(est4):
    rep = build_witness(4, 0.01, [TrigPoly([])], est4)
    image = toeplitz_apply(SHIFT, rep.witness)
    assert rep.distances[0] == pytest.approx(lp_norm(image, 4), abs=1e-10)


def test_rejects_two_sided_candidate(est4):
    with pytest.raises(ValueError):
        build_witness(4, 0.01, [monomial(-1)], est4)


def test_dual_element_is_periodic():
    # h = J_p(q0 o e_N) is invariant under theta -> theta + 2 pi / N
    q0 = TrigPoly([0, 1, 0.5j, -0.3])
    N = 5
    g = GridConfig(400)
    h = duality_map(compose_eN(q0, N), 3, g)
    assert np.allclose(np.roll(h, g.size // N), h, atol=1e-12)


def test_shift_intertwines_dilation():
    # T(e_{-1})(q o e_N) = (q0 o e_N) e_{-1}, so both have the same p-norm
    q = TrigPoly([0.7, 1, 0.5j, -0.3])
    N = 4
    q0 = q - monomial(0, q[0])
    lhs = toeplitz_apply(SHIFT, compose_eN(q, N))
    assert lhs == monomial(-1) * compose_eN(q0, N)
    assert lp_norm(lhs, 3) == pytest.approx(lp_norm(q0, 3), abs=1e-10)


def test_certificate_detects_bad_support():
    # f0 not lacunary: e_1 phi is not annihilated
    f0 = TrigPoly([0, 1, 1])
    rep = verify_certificate(f0, 4, [TrigPoly([1])], 3)
    assert not rep.ok


def test_witness_grid_divisible():
    g = witness_grid(7, 8, 4)
    assert g.size % 7 == 0


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 1000), st.integers(1, 4), st.integers(0, 6))
def test_witness_property(seed, k, deg):
    est = estimate_norm(toeplitz(SHIFT, 4), 3, restarts=1, seed=seed)
    rep = build_witness(3, 0.01, random_candidates(seed, k, deg), est)
    assert rep.N == deg + 2
    assert rep.certificate_ok
    assert rep.distances_ok()
