"""Extended transformations: Jacobian part, interchange, group report."""

import random
from fractions import Fraction

import pytest

from partrans import (
    BasicTransformation,
    Divisor,
    ExtendedCompositionError,
    ExtendedTransformation,
    JacobianElement,
    LineBundleClass,
    NotGeneric,
    ParabolicInvariant,
    ShapeMismatch,
    WeightSystem,
    act_A,
    act_ext,
    act_invariant,
    apply_jac_aut_line,
    automorphism_group_report,
    compose,
    compose_ext,
    conjugate_tilde,
    default_ref_det,
    describe,
    describe_ext,
    ext_inverse,
    identity_ext,
    identity_transform,
    inverse,
    jac_aut_inverse,
    lift_basic,
    lincomb,
    make_basic,
    make_jac_aut,
    tilde_compose,
)
from partrans.intmat import inverse_unimodular, mat_mul, zero_matrix
from conftest import (
    rand_basic,
    rand_invariant,
    rand_jac,
    rand_line,
    rand_tilde,
)


def rand_rho(rng, model, moves=3):
    return make_jac_aut(rand_tilde(rng, 2 * model.genus, model.rank, moves), model.rank)


def rand_deg_preserving_basic(rng, model, d=0):
    """Random tuple fixing degree d, so the Jacobian part interchange is
    defined over a degree-d reference class."""
    r = model.rank
    names = model.point_names
    while True:
        mults = {x: rng.randrange(r) for x in names}
        if sum(mults.values()) % r == 0:
            break
    s = rng.choice((1, -1))
    size = sum(mults.values())
    # s * (r * dl + d - size) = d forces dl = (s*d - d + size) / r
    dl = (s * d - d + size) // r if (s * d - d + size) % r == 0 else None
    if dl is None:
        return rand_deg_preserving_basic(rng, model, d)
    line = LineBundleClass(dl, rand_jac(rng, 2 * model.genus))
    sigma = rng.choice([a.name for a in model.automorphisms])
    return make_basic(sigma, s, line, Divisor(mults), model)


def rand_ext(rng, model, ref):
    return ExtendedTransformation(
        rand_rho(rng, model), rand_deg_preserving_basic(rng, model, ref.degree), ref
    )


# -- construction --------------------------------------------------------


def test_extended_validation(elliptic2, g2r3):
    ref = default_ref_det(elliptic2)
    rho2 = make_jac_aut(zero_matrix(2), 2)
    ExtendedTransformation(rho2, identity_transform(elliptic2), ref)
    with pytest.raises(ShapeMismatch):
        ExtendedTransformation(
            make_jac_aut(zero_matrix(4), 2), identity_transform(elliptic2), ref
        )
    with pytest.raises(ShapeMismatch):
        ExtendedTransformation(
            make_jac_aut(zero_matrix(2), 3), identity_transform(elliptic2), ref
        )
    with pytest.raises(ShapeMismatch):
        ExtendedTransformation(
            rho2,
            identity_transform(elliptic2),
            LineBundleClass(0, JacobianElement([0, 0, 0])),
        )


def test_identity_and_lift(elliptic2, rng=random.Random(90)):
    e = identity_ext(elliptic2)
    assert e.is_identity()
    assert describe_ext(e) == "id"
    t = rand_basic(rng, elliptic2)
    lifted = lift_basic(t)
    assert lifted.basic == t and lifted.rho.is_identity()
    assert describe_ext(lifted) == describe(t)


def test_describe_ext_prefix(elliptic2):
    rho = make_jac_aut([[0, 1], [0, 0]], 2)
    e = ExtendedTransformation(rho, identity_transform(elliptic2), default_ref_det(elliptic2))
    assert describe_ext(e) == "A[[0,1],[0,0]] * id"


# -- the Jacobian-part action --------------------------------------------


def test_act_A_hand_value(elliptic2):
    # inversion at rank 2: tilde = -I, so (0, 1/5) goes to (0, -1/5)
    m = elliptic2
    rho = make_jac_aut([[-1, 0], [0, -1]], 2)
    xi = default_ref_det(m)
    v = ParabolicInvariant(
        2,
        LineBundleClass(0, JacobianElement([Fraction(1, 5), 0])),
        WeightSystem({"p": (0, Fraction(1, 3)), "q": (0, Fraction(1, 7))}, 2),
    )
    out = act_A(rho, xi, v)
    assert out.det == LineBundleClass(0, JacobianElement([Fraction(4, 5), 0]))
    assert out.weights == v.weights


def test_act_A_fixes_reference(elliptic2, rng=random.Random(91)):
    m = elliptic2
    xi = LineBundleClass(0, rand_jac(rng, 2))
    v = rand_invariant(rng, m, degree=0)
    v = ParabolicInvariant(v.rank, xi, v.weights)
    for _ in range(10):
        out = act_A(rand_rho(rng, m), xi, v)
        assert out.det == xi


def test_act_A_guards(elliptic2, rng=random.Random(92)):
    m = elliptic2
    rho = rand_rho(rng, m)
    v = rand_invariant(rng, m, degree=1)
    with pytest.raises(ShapeMismatch):
        act_A(rho, default_ref_det(m), v)  # degree 1 vs reference degree 0
    v0 = rand_invariant(rng, m, degree=0)
    with pytest.raises(ShapeMismatch):
        act_A(make_jac_aut(zero_matrix(2), 3), default_ref_det(m), v0)


def test_act_A_composition_law(elliptic2, g2r3, rng=random.Random(93)):
    for m in (elliptic2, g2r3):
        xi = default_ref_det(m)
        for _ in range(30):
            a, b = rand_rho(rng, m), rand_rho(rng, m)
            v = rand_invariant(rng, m, degree=0)
            left = act_A(a, xi, act_A(b, xi, v))
            ab = make_jac_aut(tilde_compose(a.tilde, b.tilde, m.rank), m.rank)
            right = act_A(ab, xi, v)
            assert left.det == right.det and left.weights == right.weights


def test_act_A_tensor_commutation(elliptic2, rng=random.Random(94)):
    # pushing the Jacobian part past a degree-zero twist rescales the twist
    m = elliptic2
    xi = default_ref_det(m)
    for _ in range(30):
        rho = rand_rho(rng, m)
        line = LineBundleClass(0, rand_jac(rng, 2))
        t = make_basic(m.identity_name, 1, line, Divisor(), m)
        moved = apply_jac_aut_line(rho, line)
        t_moved = make_basic(m.identity_name, 1, moved, Divisor(), m)
        v = rand_invariant(rng, m, degree=0)
        left = act_A(rho, xi, act_invariant(t, v))
        right = act_invariant(t_moved, act_A(rho, xi, v))
        assert left.det == right.det and left.weights == right.weights


def test_act_A_base_change(elliptic2, rng=random.Random(95)):
    # changing the reference class costs one twist by tilde of the change
    m = elliptic2
    xi = default_ref_det(m)
    for _ in range(30):
        rho = rand_rho(rng, m)
        change = rand_jac(rng, 2)
        xi_prime = LineBundleClass(0, change)
        v = rand_invariant(rng, m, degree=0)
        tilde_of_change = LineBundleClass(
            0,
            JacobianElement(
                sum(Fraction(rho.tilde[i][j]) * change.coords[j] for j in range(2))
                for i in range(2)
            ),
        )
        t = make_basic(m.identity_name, 1, tilde_of_change, Divisor(), m)
        left = act_A(rho, xi, v)
        right = act_invariant(t, act_A(rho, xi_prime, v))
        assert left.det == right.det and left.weights == right.weights


# -- composition and inversion -------------------------------------------


def test_compose_ext_matches_sequential_action(elliptic2, g2r3, order4):
    rng = random.Random(96)
    for m in (elliptic2, g2r3, order4):
        ref = default_ref_det(m)
        for _ in range(25):
            e1, e2 = rand_ext(rng, m, ref), rand_ext(rng, m, ref)
            v = rand_invariant(rng, m, degree=ref.degree)
            prod = compose_ext(e1, e2)
            left = act_ext(prod, v)
            right = act_ext(e1, act_ext(e2, v))
            assert left.det == right.det and left.weights == right.weights


def test_compose_ext_identity_rho_shortcut(elliptic2, rng=random.Random(97)):
    m = elliptic2
    ref = default_ref_det(m)
    a, b = rand_basic(rng, m), rand_basic(rng, m)
    prod = compose_ext(lift_basic(a, ref), lift_basic(b, ref))
    assert prod.basic == compose(a, b) and prod.rho.is_identity()


def test_compose_ext_associative(g2r3, rng=random.Random(98)):
    m = g2r3
    ref = default_ref_det(m)
    for _ in range(15):
        e1, e2, e3 = (rand_ext(rng, m, ref) for _ in range(3))
        assert compose_ext(compose_ext(e1, e2), e3) == compose_ext(
            e1, compose_ext(e2, e3)
        )


def test_compose_ext_degree_obstruction(elliptic2, rng=random.Random(99)):
    m = elliptic2
    ref = default_ref_det(m)
    mover = make_basic(
        m.identity_name, 1, LineBundleClass(1, JacobianElement([0, 0])), Divisor(), m
    )
    e1 = lift_basic(mover, ref)
    e2 = ExtendedTransformation(rand_rho(rng, m), identity_transform(m), ref)
    with pytest.raises(ExtendedCompositionError):
        compose_ext(e1, e2)


def test_compose_ext_reference_mismatch(elliptic2):
    m = elliptic2
    a = identity_ext(m, default_ref_det(m, 0))
    b = identity_ext(m, default_ref_det(m, 1))
    with pytest.raises(ShapeMismatch):
        compose_ext(a, b)


def test_ext_inverse_round_trip(elliptic2, g2r3):
    rng = random.Random(100)
    for m in (elliptic2, g2r3):
        ref = default_ref_det(m)
        for _ in range(20):
            e = rand_ext(rng, m, ref)
            assert compose_ext(ext_inverse(e), e).is_identity()
            assert compose_ext(e, ext_inverse(e)).is_identity()


def test_ext_inverse_of_basic_lift(elliptic2, rng=random.Random(101)):
    m = elliptic2
    for _ in range(20):
        t = rand_basic(rng, m)
        assert ext_inverse(lift_basic(t)).basic == inverse(t)


def test_conjugate_tilde_formula(order4, rng=random.Random(102)):
    m = order4
    a = m.automorphism("r1")
    ms = [list(row) for row in a.matrix]
    for _ in range(10):
        rho = rand_rho(rng, m)
        conj = conjugate_tilde(m, "r1", rho)
        want = mat_mul(mat_mul(ms, [list(r) for r in rho.tilde]), inverse_unimodular(ms))
        assert [list(r) for r in conj.tilde] == want
        assert conj.r == m.rank


# -- the layered report --------------------------------------------------


def worked_alpha():
    return WeightSystem({"p": (0, Fraction(1, 3)), "q": (0, Fraction(1, 5))}, 2)


def test_report_worked_example(worked6):
    rep = automorphism_group_report(0, worked_alpha(), worked6)
    assert rep["degree"] == 0
    assert rep["jacobian_layer"]["model"] == "(Q/Z)^12"
    assert rep["jacobian_layer"]["genus"] == 6
    assert rep["aut_j_layer"]["endo_ring"] == "scalar"
    assert len(rep["discrete_3bir"]) == 4
    regular = rep["discrete_regular"]
    assert [(e["sigma"], e["s"], e["H"], e["L_degree"]) for e in regular] == [
        ("id", 1, {}, 0),
        ("id", -1, {}, 0),
    ]
    assert regular[0]["text"] == "id"
    assert regular[1]["text"] == "D-"
    assert regular[1]["redundant_at_rank_2"] is True
    assert "rank 2" in regular[1]["note"]
    assert "redundant_at_rank_2" not in regular[0]


def test_report_requires_generic(elliptic2):
    wall = WeightSystem({"p": (0, Fraction(1, 2)), "q": (0, Fraction(1, 2))}, 2)
    with pytest.raises(NotGeneric):
        automorphism_group_report(0, wall, elliptic2)


def test_report_no_points_chamber_vacuous(g1r3n0):
    m = g1r3n0
    rep = automorphism_group_report(0, WeightSystem((), 3), m)
    kinds = [(e["s"], e["H"]) for e in rep["discrete_regular"]]
    assert kinds == [(1, {}), (-1, {})]
    # rank 3: no redundancy marks anywhere
    assert all("redundant_at_rank_2" not in e for e in rep["discrete_3bir"])


def test_report_asymmetric_weights_can_kill_duals(g2r3):
    # weights chosen so that no nontrivial representative survives
    m = g2r3
    alpha = WeightSystem({"p": (0, Fraction(1, 97), Fraction(5, 97))}, 3)
    rep = automorphism_group_report(0, alpha, m)
    texts = [e["text"] for e in rep["discrete_regular"]]
    assert texts == ["id"]


def test_report_endo_ring_echo(elliptic2):
    rep = automorphism_group_report(0, worked_alpha(), elliptic2)
    assert rep["aut_j_layer"]["endo_ring"] == "scalar"
    assert "scalar" in rep["aut_j_layer"]["description"]
