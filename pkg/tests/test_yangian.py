import itertools
from fractions import Fraction

import pytest

from yosp import yangian as Y
from yosp.errors import ContextMismatch, InvalidInput, NotApplicable
from yosp.exact import Polynomial, RationalFunction
from yosp.hw import HighestWeight, LinearWeight, central_eigenvalue, classify_linear, consistency_extend, odd_reflection_osp22
from yosp.series import FactoredSeries
from yosp.superlinalg import AlgebraContext

ALL_PARITIES = [
    AlgebraContext(m, n, p)
    for m, n in [(1, 1), (1, 2), (2, 1)]
    for p in sorted(set(itertools.permutations((1,) * m + (0,) * n)))
] + [AlgebraContext(0, 1, (0,)), AlgebraContext(1, 0, (1,))]
ids = [c.label() for c in ALL_PARITIES]
PAIRS = [(Fraction(5, 3), Fraction(-2, 7)), (Fraction(9, 2), Fraction(1, 5)), (Fraction(-7, 4), Fraction(3, 1))]


def vec(ctx):
    return Y.vector_representation(ctx)


def tensor(ctx, c=Fraction(1, 3)):
    return Y.tensor_shifted([vec(ctx), vec(ctx)], [0, c])


def e1_weight(T, xi=None, order=8):
    hwx = Y.extract_highest_weight(T, xi or Y.basis_vector(0), order)
    assert hwx.ok, [c.to_json() for c in hwx.report.failures()]
    comps, last = hwx.highest_weight()
    return HighestWeight(T.ctx, comps, last), hwx


@pytest.mark.parametrize("ctx", ALL_PARITIES, ids=ids)
def test_rtt_every_parity(ctx):
    assert Y.verify_rtt(vec(ctx), PAIRS).ok
    assert Y.verify_rtt_components(vec(ctx), PAIRS[:1]).ok


@pytest.mark.parametrize("ctx", ALL_PARITIES[:4], ids=ids[:4])
def test_rtt_tensor_and_trivial(ctx):
    assert Y.verify_rtt(tensor(ctx), PAIRS[:2]).ok
    assert Y.verify_rtt(Y.trivial_representation(ctx), PAIRS[:1]).ok


def test_negative_control_names_generators():
    ctx = AlgebraContext.standard(1, 1)
    rep = Y.verify_rtt(Y.corrupted(vec(ctx), 1, 2), PAIRS[:1])
    assert not rep.ok
    w = rep.failures()[0].witness
    assert w["value"] != "0" and len(w["entries"]) == 2


def test_rtt_skips_pole_samples():
    ctx = AlgebraContext.standard(1, 1)
    rep = Y.verify_rtt(vec(ctx), [(Fraction(1), Fraction(1)), PAIRS[0]])
    assert len(rep.checks) == 1 and rep.notes


def test_twist_and_shift_preserve_rtt():
    ctx = AlgebraContext.standard(1, 1)
    f = RationalFunction(Polynomial([3, 1]), Polynomial([-2, 1]))
    assert Y.verify_rtt(Y.twisted(vec(ctx), f), PAIRS[:2]).ok
    assert Y.verify_rtt(Y.shifted(vec(ctx), Fraction(2, 3)), PAIRS[:2]).ok
    with pytest.raises(InvalidInput):
        Y.twisted(vec(ctx), RationalFunction(Polynomial([1, 2]), Polynomial([0, 1])))


def test_tensor_guards(monkeypatch):
    a, b = vec(AlgebraContext.standard(1, 1)), vec(AlgebraContext(1, 1, (0, 1)))
    with pytest.raises(ContextMismatch):
        Y.tensor_product(a, b)
    with pytest.raises(NotApplicable):
        Y.tensor_shifted([a, a, a], [0, 1, 2], max_dim=10)
    monkeypatch.setenv("YOSP_MAX_DIM", "8")
    assert Y.max_module_dim() == 8
    with pytest.raises(NotApplicable):
        Y.tensor_shifted([a, a], [0, 1])
    with pytest.raises(InvalidInput):
        Y.tensor_shifted([a], [0, 1])


@pytest.mark.parametrize("ctx", ALL_PARITIES, ids=ids)
def test_center_on_vector_matches_weight_prediction(ctx):
    T = vec(ctx)
    assert Y.verify_center(T, 6).ok
    c = Y.scalar_series(Y.central_series(T, 8))
    hw, hwx = e1_weight(T)
    pred = central_eigenvalue(hw)
    assert pred.series(8) == c
    # every diagonal eigenvalue on e_1 agrees with the consistency relations
    full = consistency_extend(hw)
    assert all(FactoredSeries.from_rational(f) == g for f, g in zip(hwx.rational, full))


def test_center_on_tensor_is_product_of_factors():
    ctx = AlgebraContext.standard(1, 1)
    c1 = Y.scalar_series(Y.central_series(vec(ctx), 8))
    c2 = c1.shift(Fraction(1, 3))
    assert Y.scalar_series(Y.central_series(tensor(ctx), 8)) == c1 * c2


def test_center_detects_broken_module():
    ctx = AlgebraContext.standard(1, 1)
    rep = Y.verify_center(Y.corrupted(vec(ctx), 0, 0, Y.Op.diag([1, 0, 0, 0])), 4)
    assert not rep.ok


@pytest.mark.parametrize("ctx", ALL_PARITIES, ids=ids)
def test_gauss_every_parity(ctx):
    assert Y.verify_gauss(vec(ctx), 6).ok


def test_gauss_h3_identities_on_tensor():
    rep = Y.verify_gauss(tensor(AlgebraContext(1, 1, (1, 0))), 8)
    assert rep.ok
    assert any("h3(u) = c(u-1)" in c.name for c in rep.checks)


def test_gauss_detects_mismatch():
    ctx = AlgebraContext.standard(1, 1)
    S = vec(ctx).series(6)
    G = Y.gauss_decompose(S)
    wrong = Y.quasideterminant_h2(S) + Y.TruncatedSeries([S[0][0][0] * 0, S[0][0][0]] + [S[0][0][0] * 0] * 5)
    assert Y.first_difference(G.H[1], wrong) == 1


# ---- highest vectors and the sharp construction


def test_sharp_d2_weight():
    ctx = AlgebraContext.standard(2, 1)
    T = Y.sharp_module(ctx, 2)
    hw, _ = e1_weight(T, Y.antisymmetrizer_vector(ctx, 2))
    u1 = FactoredSeries.linear(-1)
    assert hw.components == (u1, u1, FactoredSeries.one())
    lw = LinearWeight.from_highest_weight(hw)
    assert classify_linear(lw) == (True, Y_diagram((1, 1)))


def test_sharp_d2_on_osp26():
    ctx = AlgebraContext.standard(2, 2)
    T = Y.sharp_module(ctx, 2)
    hw, _ = e1_weight(T, Y.antisymmetrizer_vector(ctx, 2), order=6)
    u1 = FactoredSeries.linear(-1)
    assert hw.components == (u1, u1, FactoredSeries.one(), FactoredSeries.one())


def test_sharp_d3_weight():
    ctx = AlgebraContext.standard(3, 1)
    T = Y.sharp_module(ctx, 3)
    hw, _ = e1_weight(T, Y.antisymmetrizer_vector(ctx, 3), order=6)
    assert LinearWeight.from_highest_weight(hw).values == (-1, -1, -1, 0)


def test_opposite_shifts_do_not_give_a_highest_vector():
    ctx = AlgebraContext.standard(2, 1)
    T = Y.tensor_shifted([vec(ctx)] * 2, [0, 1])
    hwx = Y.extract_highest_weight(T, Y.antisymmetrizer_vector(ctx, 2), 6)
    assert not hwx.ok


def test_one_odd_direction_uses_the_symmetric_vector():
    ctx = AlgebraContext.standard(1, 2)
    N = ctx.N
    xi = {1: Fraction(1), N: Fraction(1)}  # e1 (x) e2 + e2 (x) e1
    hw, _ = e1_weight(Y.sharp_module(ctx, 2), xi)
    assert LinearWeight.from_highest_weight(hw).values == (-1, 1, 0)
    assert classify_linear(LinearWeight.from_highest_weight(hw)) == (True, Y_diagram((1, 1)))


def test_flat_module_is_a_module():
    ctx = AlgebraContext.standard(1, 1)
    assert Y.verify_rtt(Y.flat_module(ctx, 2), PAIRS[:1]).ok
    with pytest.raises(InvalidInput):
        Y.sharp_module(ctx, 0)
    with pytest.raises(InvalidInput):
        Y.antisymmetrizer_vector(ctx, 5)


def Y_diagram(rows):
    from yosp.hw import YoungDiagram

    return YoungDiagram(rows)


# ---- the gl(1|2) correspondence


def test_iso_negative_control():
    rep = Y.verify_gl12_isomorphism(order=4, half=Fraction(1, 3))
    assert not rep.ok


def test_iso_on_tensor_module():
    T = tensor(AlgebraContext(1, 1, (0, 1)), Fraction(1, 2))
    assert Y.verify_gl12_isomorphism(T, order=5).ok


def test_stated_images_break_a_level_one_relation():
    rep = Y.verify_gl12_isomorphism(order=4, normalization="stated")
    first = rep.failures()[0]
    assert first.witness == {"ijkl": [1, 2, 2, 1], "r": 0, "s": 1}


def test_iso_guards():
    with pytest.raises(InvalidInput):
        Y.phi_images(vec(AlgebraContext.standard(1, 1)))
    with pytest.raises(InvalidInput):
        Y.phi_images(vec(AlgebraContext(1, 1, (0, 1))), normalization="other")


# ---- odd reflection certificate


def test_certificate_on_vector_module():
    rep = Y.certify_osp22_reflection()
    assert rep.ok and rep.data["p"] == 1
    assert rep.data["zeta"] == {"2": Fraction(1)}


@pytest.mark.parametrize("shift,p", [(Fraction(1, 3), 2), (Fraction(2), 2), (Fraction(-5, 2), 2), (Fraction(1), 1)])
def test_certificate_on_twisted_tensors(shift, p):
    ctx = AlgebraContext.standard(1, 1)
    T = tensor(ctx, shift)
    # clear the denominator of lambda_1 so that lambda_1, lambda_2 are polynomial in u^-1
    hw, hwx = e1_weight(T, order=8)
    den = hw.components[0].to_rational().denom
    f = RationalFunction(den, Polynomial([0, 1]) ** den.degree)
    rep = Y.certify_osp22_reflection(Y.twisted(T, f), order=8)
    assert rep.ok, [c.to_json() for c in rep.failures()]
    assert rep.data["p"] == p


def test_certificate_refuses_wrong_context():
    with pytest.raises(InvalidInput):
        Y.certify_osp22_reflection(vec(AlgebraContext(1, 1, (0, 1))))


def test_swapped_module_matches_reflection_formula():
    ctx = AlgebraContext.standard(1, 1)
    T = vec(ctx)
    cert = Y.certify_osp22_reflection(T)
    zeta = {int(k) - 1: Fraction(v) for k, v in cert.data["zeta"].items()}
    S = Y.swap_parity_osp22(T)
    assert Y.verify_rtt(S, PAIRS[:2]).ok
    hw10, _ = e1_weight(T)
    hwx = Y.extract_highest_weight(S, zeta, 8)
    assert hwx.ok
    got = [FactoredSeries.from_rational(f) for f in hwx.rational[:3]]
    assert tuple(got) == odd_reflection_osp22(hw10[1], hw10[2], hw10[3])


def test_swap_requires_parity_10():
    with pytest.raises(InvalidInput):
        Y.swap_parity_osp22(vec(AlgebraContext(1, 1, (0, 1))))


def test_eigen_helpers():
    ctx = AlgebraContext.standard(1, 1)
    S = vec(ctx).series(4)
    assert Y.first_nonzero_action(S[0][1], Y.basis_vector(1)) == 1
    assert Y.first_nonzero_action(S[0][1], Y.basis_vector(0)) is None
    with pytest.raises(InvalidInput):
        Y.extract_highest_weight(vec(ctx), {}, 4)


def test_certificate_without_polynomial_weight_is_not_applicable():
    rep = Y.certify_osp22_reflection(tensor(AlgebraContext.standard(1, 1)), order=8)
    assert rep.verdict == "not-applicable"


@pytest.mark.parametrize("ctx", [c for c in ALL_PARITIES if c.m + c.n >= 2], ids=lambda c: c.label())
def test_embedding_gives_a_module_of_the_reduced_algebra(ctx):
    R = Y.embed_reduce(vec(ctx))
    assert R.ctx == ctx.reduced()
    assert Y.verify_rtt(R, PAIRS[:2]).ok


def test_reduced_rank_one_contexts():
    # deleting an even first bit lowers n: parity 01 gives osp(0|2) = sp(2), parity 10 gives o(2)
    assert Y.embed_reduce(vec(AlgebraContext(1, 1, (0, 1)))).ctx == AlgebraContext(1, 0, (1,))
    assert Y.embed_reduce(vec(AlgebraContext(1, 1, (1, 0)))).ctx == AlgebraContext(0, 1, (0,))


def test_coproduct_is_coassociative():
    ctx = AlgebraContext(1, 1, (0, 1))
    v = vec(ctx)
    a, b, c = v, Y.shifted(v, Fraction(1, 2)), Y.shifted(v, -2)
    left = Y.tensor_product(Y.tensor_product(a, b), c).series(5)
    right = Y.tensor_product(a, Y.tensor_product(b, c)).series(5)
    assert all(Y.first_difference(left[i][j], right[i][j]) is None for i in range(4) for j in range(4))
    x = Fraction(7, 3)
    assert Y.tensor_product(Y.tensor_product(a, b), c).at(x) == Y.tensor_product(a, Y.tensor_product(b, c)).at(x)


def test_t11_on_xi2_with_shifts_one_zero():
    ctx = AlgebraContext.standard(2, 1)
    T = Y.tensor_shifted([vec(ctx)] * 2, [1, 0])
    hwx = Y.extract_highest_weight(T, Y.antisymmetrizer_vector(ctx, 2), 8)
    assert hwx.rational[0] == RationalFunction(Polynomial([-1, 1]), Polynomial([0, 1]))
