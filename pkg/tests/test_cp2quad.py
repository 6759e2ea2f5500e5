import math

import numpy as np
import pytest

from oracles import simplex_monomial
from vibronqpt.coherent import log_multinomial
from vibronqpt.cp2quad import (asymptotic_moment, asymptotic_wehrl, build_grid,
                               closed_form_cat_moment, closed_form_cat_wehrl, integrate, ipr,
                               moment, renyi_wehrl, total_measure, wehrl, wehrl_result)
from vibronqpt.husimi import CatHusimi, CoherentHusimi, make_field


@pytest.mark.parametrize("N", [1, 4, 8, 16])
def test_total_measure_is_dimension(N):
    g = build_grid(N, 2)
    assert total_measure(g) / ((N + 1) * (N + 2) / 2) == pytest.approx(1.0, abs=1e-12)
    assert integrate(lambda z1, z2: np.ones(np.broadcast(z1, z2).shape), g) == pytest.approx(
        (N + 1) * (N + 2) / 2, rel=1e-12)


def test_simplex_nodes_inside():
    s1, s2, w = build_grid(10, 2).simplex()
    assert np.all(s1 > 0) and np.all(s2 > 0) and np.all(s1 + s2 < 1) and np.all(w > 0)
    assert math.fsum(w) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("N", range(1, 7))
def test_basis_densities_match_beta_integrals(N):
    # |phi_nm|^2 = multinomial * s1^(n-m) s2^m s0^(N-n)
    g = build_grid(N, 1)
    for n in range(N + 1):
        for m in range(n + 1):
            pref = math.exp(log_multinomial(N, n, m))

            def dens(z1, z2, n=n, m=m, pref=pref):
                q = 1 + abs(z1) ** 2 + abs(z2) ** 2
                return pref * abs(z1) ** (2 * (n - m)) * abs(z2) ** (2 * m) / q ** N

            exact = (N + 1) * (N + 2) * pref * float(simplex_monomial(n - m, m, N - n))
            assert integrate(dens, g) == pytest.approx(exact, abs=1e-12)


@pytest.mark.parametrize("N", [2, 4, 6])
def test_resolution_of_identity(N):
    # int <k|z><z|k'> dmu = delta_kk' for all basis pairs
    from vibronqpt.coherent import PhasePoint, cs_coefficients
    g = build_grid(N, 1)
    keys = [(n, m) for n in range(N + 1) for m in range(n + 1)]
    gram = np.zeros((len(keys), len(keys)), complex)
    for i, ki in enumerate(keys):
        for j, kj in enumerate(keys):
            def f(z1, z2, a=ki, b=kj):
                n1, m1 = a
                n2, m2 = b
                q = 1 + abs(z1) ** 2 + abs(z2) ** 2
                pa = math.exp(0.5 * log_multinomial(N, n1, m1))
                pb = math.exp(0.5 * log_multinomial(N, n2, m2))
                return (pa * pb * z1 ** (n1 - m1) * z2 ** m1 * np.conj(z1 ** (n2 - m2) * z2 ** m2)
                        / q ** N).real
            gram[i, j] = integrate(f, g)
    np.testing.assert_allclose(gram, np.eye(len(keys)), atol=1e-12)


def test_grid_validation():
    with pytest.raises(ValueError):
        build_grid(4, 2, tol=0)
    with pytest.raises(ValueError):
        build_grid(0, 2)
    g = build_grid(8, 2)
    assert g.K1 >= 2 * 16 + 2 and g.n_t >= (16 + 3) / 2


def test_cs_field_normalized_any_radius():
    g = build_grid(8, 1)
    for r in (0.0, 0.5, 0.9):
        assert moment(CoherentHusimi(8, r), 1, g).value == pytest.approx(1.0, abs=1e-12)


def test_closed_forms():
    assert closed_form_cat_moment(4, 2) == pytest.approx(1 / 3)
    assert closed_form_cat_wehrl(4) == pytest.approx(44 / 30)
    assert asymptotic_moment(2, 0) == 0.25 and asymptotic_moment(2, 1) == 0.125
    assert asymptotic_wehrl(1) - asymptotic_wehrl(0) == pytest.approx(math.log(2))
    with pytest.raises(ValueError):
        asymptotic_wehrl(0.5)
    with pytest.raises(ValueError):
        asymptotic_moment(2, 0.3)


@pytest.mark.parametrize("N", [4, 8, 16])
def test_linear_phase_closed_forms(N):
    f = CatHusimi(N, 0.0)
    g = build_grid(N, 3)
    for nu in (2, 3, 2.5):
        assert moment(f, nu, g).value == pytest.approx(closed_form_cat_moment(N, nu), abs=1e-8)
    assert wehrl(f, build_grid(N, 1)) == pytest.approx(closed_form_cat_wehrl(N), abs=1e-8)


def test_ipr_and_renyi_examples():
    f = CatHusimi(4, 0.0)
    g = build_grid(4, 2)
    assert ipr(f, g) == pytest.approx(1 / 3, abs=1e-12)
    assert renyi_wehrl(f, 2, g) == pytest.approx(math.log(3), abs=1e-12)
    with pytest.raises(ValueError):
        renyi_wehrl(f, 1, g)


def test_renyi_approaches_wehrl():
    f = make_field("cat", 6, 0.6)
    g = build_grid(6, 2)
    w = wehrl(f, build_grid(6, 1), tol=1e-8)
    for nu in (1 - 1e-3, 1 + 1e-3):
        assert renyi_wehrl(f, nu, g) == pytest.approx(w, abs=5e-3)


@pytest.mark.parametrize("N", [4, 8])
def test_cs_measures_radius_independent(N):
    g = build_grid(N, 3)
    for nu in (2, 3):
        vals = [moment(CoherentHusimi(N, r), nu, g).value for r in (0, 0.3, 0.5, 0.7, 0.9)]
        assert max(vals) - min(vals) < 1e-8
        assert vals[0] == pytest.approx(closed_form_cat_moment(N, nu), abs=1e-10)
    ws = [wehrl(CoherentHusimi(N, r), build_grid(N, 1)) for r in (0, 0.3, 0.7)]
    assert max(ws) - min(ws) < 1e-8


@pytest.mark.parametrize("kind", ["exact", "cs", "cat"])
def test_reduction_matches_full_grid(kind):
    f = make_field(kind, 8, 0.7)
    g = build_grid(8, 2)
    full = moment(f, 2, g).value
    red = moment(f, 2, g, reduce=True).value
    assert red == pytest.approx(full, abs=1e-12)


def test_moment_error_estimate_small_for_polynomial_integrand():
    res = moment(make_field("exact", 8, 0.5), 2, build_grid(8, 2))
    assert res.error < 1e-12 and res.value > 0


def test_wehrl_result_reports_change():
    res = wehrl_result(make_field("cat", 8, 0.8), build_grid(8, 1), tol=1e-6, reduce=True)
    assert res.error < 1e-6


@pytest.mark.parametrize("N", [4, 8])
def test_wehrl_lieb_floor(N):
    floor = closed_form_cat_wehrl(N)
    for kind in ("exact", "cat", "cs"):
        for xi in (0.0, 0.2, 0.5, 0.9):
            w = wehrl(make_field(kind, N, xi), build_grid(N, 1), tol=1e-7, reduce=True)
            assert w >= floor - 1e-7


def test_entropy_excess_grows_with_N():
    gaps = []
    for N in (4, 8, 16):
        w1 = wehrl(make_field("cat", N, 1.0), build_grid(N, 1), tol=1e-7, reduce=True)
        gaps.append(w1 - closed_form_cat_wehrl(N))
    assert gaps[0] < gaps[1] < gaps[2] < math.log(2) + 1e-3
