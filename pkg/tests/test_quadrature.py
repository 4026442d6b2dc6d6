"""Weighted Gauss-Chebyshev rules, principal-value and finite-part values,
and the truncated half-line cosine quadrature."""

import numpy as np
import pytest

from hypersing import (
    Interval,
    OscIntSpec,
    PVQuadSpec,
    TailOrder,
    chebyshev_finite_part,
    chebyshev_nodes,
    halfline_cosine_integral,
    pv_weighted_integral,
    weighted_integral,
)
from oracles import (
    cosine_transform_oracle,
    finite_part_oracle,
    pv_weighted_oracle,
    weighted_oracle,
)

IV = Interval(-1.0, 1.0)
SPEC = PVQuadSpec(m=200)


def test_chebyshev_nodes_are_ascending_and_interior():
    iv = Interval(2.0, 5.0)
    for m in (1, 2, 17, 64):
        t = chebyshev_nodes(iv, m)
        assert t.shape == (m,)
        assert np.all(np.diff(t) > 0.0) or m == 1
        assert np.all((t > 2.0) & (t < 5.0))
        # first-kind nodes are symmetric about the midpoint
        assert np.max(np.abs((t + t[::-1]) / 2.0 - iv.midpoint)) <= 1e-13
    assert chebyshev_nodes(iv, 1)[0] == pytest.approx(3.5, abs=1e-15)


def test_weighted_moments_on_the_reference_interval():
    assert weighted_integral(lambda t: np.ones_like(t), IV, SPEC) == pytest.approx(np.pi, abs=1e-12)
    assert weighted_integral(lambda t: np.asarray(t), IV, SPEC) == pytest.approx(0.0, abs=1e-12)
    assert weighted_integral(lambda t: np.asarray(t) ** 2, IV, SPEC) == pytest.approx(np.pi / 2, abs=1e-12)


def test_weighted_moments_translate_to_general_intervals():
    iv = Interval(2.0, 5.0)
    # mass pi is interval independent; first moment sits at the midpoint
    assert weighted_integral(lambda t: np.ones_like(t), iv, SPEC) == pytest.approx(np.pi, abs=1e-12)
    assert weighted_integral(lambda t: np.asarray(t), iv, SPEC) == pytest.approx(3.5 * np.pi, abs=1e-11)
    second = np.pi * (3.5**2 + 1.5**2 / 2.0)
    assert weighted_integral(lambda t: np.asarray(t) ** 2, iv, SPEC) == pytest.approx(second, abs=1e-11)


def test_weighted_rule_matches_midpoint_oracle():
    val = weighted_integral(np.exp, IV, SPEC)
    assert val == pytest.approx(weighted_oracle(np.exp, -1.0, 1.0), abs=2e-6)


def test_principal_value_frozen_identities():
    one = lambda t: np.ones_like(np.asarray(t, dtype=float))
    ident = lambda t: np.asarray(t, dtype=float)
    for x in (0.0, 0.3, -0.77):
        assert pv_weighted_integral(one, IV, x, SPEC) == pytest.approx(0.0, abs=1e-12)
        assert pv_weighted_integral(ident, IV, x, SPEC) == pytest.approx(-np.pi, abs=1e-12)
    sq = lambda t: np.asarray(t) ** 2
    assert pv_weighted_integral(sq, IV, 0.3, SPEC) == pytest.approx(-0.3 * np.pi, abs=1e-12)


def test_principal_value_identities_hold_off_reference_interval():
    iv = Interval(2.0, 5.0)
    one = lambda t: np.ones_like(np.asarray(t, dtype=float))
    ident = lambda t: np.asarray(t, dtype=float)
    assert pv_weighted_integral(one, iv, 3.1, SPEC) == pytest.approx(0.0, abs=1e-11)
    assert pv_weighted_integral(ident, iv, 3.1, SPEC) == pytest.approx(-np.pi, abs=1e-11)


def test_principal_value_matches_independent_oracle():
    for f, x in ((np.exp, 0.3), (np.cos, -0.4)):
        rule = pv_weighted_integral(f, IV, x, SPEC)
        assert rule == pytest.approx(pv_weighted_oracle(f, -1.0, 1.0, x), abs=1e-5)
    rule = pv_weighted_integral(np.exp, Interval(2.0, 5.0), 3.1, SPEC)
    assert rule == pytest.approx(pv_weighted_oracle(np.exp, 2.0, 5.0, 3.1), abs=1e-4 * np.exp(5.0))


def test_rule_is_exact_for_low_degree_polynomials():
    # m-point rule integrates the pv integrand exactly through degree m-2
    coarse = PVQuadSpec(m=12)
    f = lambda t: np.asarray(t) ** 10
    v12 = pv_weighted_integral(f, IV, 0.37, coarse)
    v200 = pv_weighted_integral(f, IV, 0.37, SPEC)
    assert v12 == pytest.approx(v200, abs=1e-12)
    w12 = weighted_integral(f, IV, coarse)
    w40 = weighted_integral(f, IV, PVQuadSpec(m=40))
    assert w12 == pytest.approx(w40, abs=1e-13)


def test_principal_value_continuous_through_node_collision():
    nodes = chebyshev_nodes(IV, 200)
    x0 = float(nodes[137])
    at_node = pv_weighted_integral(np.exp, IV, x0, SPEC)
    nearby = pv_weighted_integral(np.exp, IV, x0 + 3e-7, SPEC)
    assert abs(at_node - nearby) <= 1e-4


def test_principal_value_antisymmetric_for_even_functions():
    for x in (0.2, 0.55, 0.9):
        left = pv_weighted_integral(np.cos, IV, -x, SPEC)
        right = pv_weighted_integral(np.cos, IV, x, SPEC)
        assert left == pytest.approx(-right, abs=1e-10)


def test_principal_value_is_deterministic():
    a = pv_weighted_integral(np.exp, IV, 0.3, SPEC)
    b = pv_weighted_integral(np.exp, IV, 0.3, SPEC)
    assert a == b


def test_finite_part_frozen_values():
    assert chebyshev_finite_part(0, 0.5) == pytest.approx(-np.pi, abs=1e-13)
    assert chebyshev_finite_part(1, 0.5) == pytest.approx(-2.0 * np.pi, abs=1e-13)
    assert chebyshev_finite_part(2, 0.0) == pytest.approx(3.0 * np.pi, abs=1e-13)


def test_finite_part_matches_difference_oracle():
    def weighted_poly(k):
        def f(t):
            t = np.asarray(t, dtype=float)
            u = {0: np.ones_like(t), 1: 2.0 * t, 2: 4.0 * t * t - 1.0}[k]
            return (1.0 - t * t) * u
        return f

    for k, x in ((0, 0.5), (1, -0.25), (2, 0.123)):
        oracle = finite_part_oracle(weighted_poly(k), -1.0, 1.0, x)
        assert chebyshev_finite_part(k, x) == pytest.approx(oracle, abs=1e-6)


def test_quadrature_input_validation():
    with pytest.raises(ValueError):
        PVQuadSpec(m=3)
    with pytest.raises(ValueError):
        PVQuadSpec(m=-2)
    with pytest.raises(ValueError):
        pv_weighted_integral(np.exp, IV, 1.5, SPEC)
    with pytest.raises(ValueError):
        pv_weighted_integral(np.exp, IV, 1.0, SPEC)
    with pytest.raises(ValueError):
        chebyshev_finite_part(-1, 0.3)
    with pytest.raises(ValueError):
        chebyshev_finite_part(1.5, 0.3)
    with pytest.raises(ValueError):
        chebyshev_finite_part(0, 1.0)


def test_non_finite_samples_are_rejected():
    bad = lambda t: np.sqrt(np.asarray(t, dtype=float) - 0.5)
    with np.errstate(invalid="ignore"):
        with pytest.raises(ValueError):
            weighted_integral(bad, IV, SPEC)
        with pytest.raises(ValueError):
            pv_weighted_integral(bad, IV, -0.3, SPEC)


def test_halfline_transform_of_decaying_exponential():
    F = lambda s: np.exp(-np.asarray(s, dtype=float))
    spec = OscIntSpec()
    # closed form 1/(1+x^2); truncation tail is ~exp(-200)
    assert halfline_cosine_integral(F, 0.0, spec) == pytest.approx(1.0, abs=1e-7)
    assert halfline_cosine_integral(F, 1.0, spec) == pytest.approx(0.5, abs=1e-7)
    assert halfline_cosine_integral(F, 3.0, spec) == pytest.approx(0.1, abs=1e-7)
    oracle = cosine_transform_oracle(F, 1.2, 200.0)
    assert halfline_cosine_integral(F, 1.2, spec) == pytest.approx(oracle, abs=1e-8)


def test_halfline_truncation_with_no_tail_claim():
    one = lambda s: np.ones_like(np.asarray(s, dtype=float))
    spec = OscIntSpec(tail=TailOrder.NONE)
    assert halfline_cosine_integral(one, 1.0, spec) == pytest.approx(np.sin(200.0), abs=1e-5)


def test_halfline_panel_refinement_converges():
    F = lambda s: 1.0 / (1.0 + np.asarray(s, dtype=float)) ** 3
    ref = halfline_cosine_integral(F, 0.5, OscIntSpec(panels_per_period=32))
    err4 = abs(halfline_cosine_integral(F, 0.5, OscIntSpec(panels_per_period=4)) - ref)
    err8 = abs(halfline_cosine_integral(F, 0.5, OscIntSpec(panels_per_period=8)) - ref)
    assert err8 <= max(err4 / 2.0, 5e-15)


def test_halfline_rejects_undeclared_slow_decay():
    one = lambda s: np.ones_like(np.asarray(s, dtype=float))
    lin = lambda s: np.asarray(s, dtype=float)
    with pytest.raises(ValueError):
        halfline_cosine_integral(one, 1.0, OscIntSpec())
    with pytest.raises(ValueError):
        halfline_cosine_integral(lin, 1.0, OscIntSpec())


def test_halfline_panel_budget_is_capped():
    F = lambda s: 1.0 / (1.0 + np.asarray(s, dtype=float)) ** 3
    with pytest.raises(ValueError):
        halfline_cosine_integral(F, 1e9, OscIntSpec())


def test_oscillatory_spec_validation():
    with pytest.raises(ValueError):
        OscIntSpec(s_max=0.0)
    with pytest.raises(ValueError):
        OscIntSpec(s_max=float("inf"))
    with pytest.raises(ValueError):
        OscIntSpec(panels_per_period=3)
