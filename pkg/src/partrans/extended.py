"""Extended transformations: a Jacobian-automorphism part wrapped around a
basic transformation, relative to a fixed reference determinant.

Normal form keeps the Jacobian part outermost. Pushing it through a basic
part conjugates its matrix by the sigma-pullback's linear part and emits a
degree-zero correction tensor; both steps are exact.
"""

from .errors import ExtendedCompositionError, NotGeneric, ShapeMismatch
from .intmat import inverse_unimodular, mat_mul, mat_vec, zero_matrix
from .picard import (
    DEFAULT_ENUM_CAP,
    JacobianElement,
    LineBundleClass,
    apply_jac_aut_line,
    frac_to_str,
    jac_aut_inverse,
    lincomb,
    make_jac_aut,
    tilde_compose,
)
from .transform import (
    BasicTransformation,
    Divisor,
    ParabolicInvariant,
    act_det,
    act_invariant,
    compose,
    describe,
    identity_transform,
    inverse,
    stabilizer_d_alpha_quotient,
    t_d_quotient_reps,
)
from .weights import is_generic


class ExtendedTransformation:
    """Pair (rho, basic) read as rho-part applied after the basic part,
    over a fixed reference determinant class."""

    __slots__ = ("rho", "basic", "ref_det")

    def __init__(self, rho, basic, ref_det):
        model = basic.model
        if rho.dim != 2 * model.genus:
            raise ShapeMismatch(
                f"Jacobian part dimension {rho.dim} does not match 2g = {2 * model.genus}"
            )
        if rho.r != model.rank:
            raise ShapeMismatch(
                f"Jacobian part modulus {rho.r} does not match rank {model.rank}"
            )
        if len(ref_det.jac) != 2 * model.genus:
            raise ShapeMismatch("reference determinant has wrong coordinate length")
        self.rho = rho
        self.basic = basic
        self.ref_det = ref_det

    @property
    def model(self):
        return self.basic.model

    def is_identity(self):
        return self.rho.is_identity() and self.basic.is_identity()

    def __eq__(self, other):
        return (
            isinstance(other, ExtendedTransformation)
            and self.rho == other.rho
            and self.basic == other.basic
            and self.ref_det == other.ref_det
        )

    def __hash__(self):
        return hash((self.rho, self.basic, self.ref_det))

    def __mul__(self, other):
        return compose_ext(self, other)

    def __repr__(self):
        return f"ExtendedTransformation({describe_ext(self)!r})"

    def to_json(self):
        return {
            "rho_tilde": [list(row) for row in self.rho.tilde],
            "basic": self.basic.to_json(),
            "ref_det": self.ref_det.to_json(),
        }


def describe_ext(e):
    rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in e.rho.tilde)
    base = describe(e.basic)
    if e.rho.is_identity():
        return base
    return f"A[{rows}] * {base}"


def default_ref_det(model, d=None):
    """Degree-d class with zero torsion part, the session reference."""
    if d is None:
        d = model.degree_context
    return LineBundleClass(d, JacobianElement.zero(2 * model.genus))


def identity_ext(model, ref_det=None):
    if ref_det is None:
        ref_det = default_ref_det(model)
    rho = make_jac_aut(zero_matrix(2 * model.genus), model.rank)
    return ExtendedTransformation(rho, identity_transform(model), ref_det)


def lift_basic(t, ref_det=None):
    """Embed a basic transformation with trivial Jacobian part."""
    if ref_det is None:
        ref_det = default_ref_det(t.model)
    rho = make_jac_aut(zero_matrix(2 * t.model.genus), t.model.rank)
    return ExtendedTransformation(rho, t, ref_det)


def act_A(rho, xi, v):
    """Twist the determinant by the r-th power of tilde(det v - xi);
    rank and weights are untouched, the label records the twist."""
    if v.det.degree != xi.degree:
        raise ShapeMismatch(
            f"determinant degree {v.det.degree} does not match reference degree {xi.degree}"
        )
    if rho.r != v.rank:
        raise ShapeMismatch(f"Jacobian part modulus {rho.r} does not match rank {v.rank}")
    delta = lincomb([(v.det, 1), (xi, -1)])
    twist = LineBundleClass(
        0, JacobianElement(mat_vec([list(r) for r in rho.tilde], list(delta.jac.coords)))
    )
    det_new = lincomb([(v.det, 1), (twist, v.rank)])
    note = "A-twist(0, [" + ", ".join(frac_to_str(c) for c in twist.jac) + "])"
    label = v.label + "|" + note if v.label else note
    return ParabolicInvariant(v.rank, det_new, v.weights, label)


def act_ext(e, v):
    """Apply an extended transformation to a parabolic invariant: the
    basic part first, then the Jacobian twist relative to ref_det."""
    moved = act_invariant(e.basic, v)
    if e.rho.is_identity():
        return moved
    return act_A(e.rho, e.ref_det, moved)


def conjugate_tilde(model, sigma_name, rho):
    """Jacobian part of sigma-pullback conjugation: tilde becomes
    M_sigma . tilde . M_sigma^{-1} (translations cancel on degree zero)."""
    a = model.automorphism(sigma_name)
    ms = [list(row) for row in a.matrix]
    ms_inv = inverse_unimodular(ms)
    m = mat_mul(mat_mul(ms, [list(row) for row in rho.tilde]), ms_inv)
    return make_jac_aut(m, rho.r)


def compose_ext(e1, e2):
    """Normal form of e1 after e2.

    The inner Jacobian part is conjugated through e1's basic part; the
    interchange emits the correction tensor tilde(rho_c)(xi - T1(xi)),
    which is well defined only when T1 fixes the reference degree.
    """
    if e1.basic.model is not e2.basic.model:
        raise ShapeMismatch("cannot compose extended transformations over different models")
    if e1.ref_det != e2.ref_det:
        raise ShapeMismatch("mismatched reference determinant")
    model = e1.basic.model
    xi = e1.ref_det
    t1 = e1.basic
    if e2.rho.is_identity():
        return ExtendedTransformation(e1.rho, compose(t1, e2.basic), xi)
    txi = act_det(t1, xi)
    if txi.degree != xi.degree:
        raise ExtendedCompositionError(
            "cannot push a Jacobian part through a basic part moving the reference "
            f"degree ({xi.degree} -> {txi.degree})"
        )
    rho_c = conjugate_tilde(model, t1.sigma, e2.rho)
    delta = lincomb([(xi, 1), (txi, -1)])
    correction = LineBundleClass(
        0,
        JacobianElement(mat_vec([list(r) for r in rho_c.tilde], list(delta.jac.coords))),
    )
    pulled_in = apply_jac_aut_line(jac_aut_inverse(rho_c), correction)
    t_corr = BasicTransformation(model, model.identity_name, 1, pulled_in, Divisor())
    new_rho = make_jac_aut(
        tilde_compose(e1.rho.tilde, rho_c.tilde, model.rank), model.rank
    )
    new_basic = compose(t_corr, compose(t1, e2.basic))
    return ExtendedTransformation(new_rho, new_basic, xi)


def ext_inverse(e):
    """Inverse in the extended group, via basic inversion and the
    interchange in compose_ext."""
    left = lift_basic(inverse(e.basic), e.ref_det)
    right = ExtendedTransformation(
        jac_aut_inverse(e.rho), identity_transform(e.basic.model), e.ref_det
    )
    return compose_ext(left, right)


def automorphism_group_report(d, alpha, model, cap=DEFAULT_ENUM_CAP):
    """Layered description of the moduli automorphisms the engine sees.

    The continuous Jacobian layer and the configured Jacobian-automorphism
    layer are always present; the finite layer lists the degree-stabilizer
    representatives, unfiltered (3-birational) and chamber-filtered
    (regular). At rank 2 every s = -1 representative is marked redundant:
    composing with the inversion Jacobian part realizes it as a tensor
    operation.
    """
    from .dsl import format_canonical

    ok, witness = is_generic(alpha, cap)
    if not ok:
        raise NotGeneric(witness)
    reps = t_d_quotient_reps(d, model, cap)
    survivors = set(stabilizer_d_alpha_quotient(d, alpha, model, cap))

    def entry(t):
        rec = {
            "sigma": t.sigma,
            "s": t.s,
            "H": t.hecke.to_json(),
            "L_degree": t.line.degree,
            "text": format_canonical(t),
        }
        if model.rank == 2 and t.s == -1:
            rec["redundant_at_rank_2"] = True
            rec["note"] = (
                "at rank 2 the inversion Jacobian part turns dualization into "
                "tensoring by the reference class, so s = -1 adds nothing new"
            )
        return rec

    if model.endo_ring == "matrix":
        ring_desc = "all integer matrices M with det(I + rM) = +-1"
    else:
        ring_desc = "scalar matrices m*I with det(I + rm*I) = +-1"
    return {
        "degree": d,
        "jacobian_layer": {
            "description": "tensoring by degree-zero classes, always present",
            "model": f"(Q/Z)^{2 * model.genus}",
            "genus": model.genus,
        },
        "aut_j_layer": {
            "endo_ring": model.endo_ring,
            "description": "Jacobian automorphisms id + r*M fixing the r-torsion; " + ring_desc,
        },
        "discrete_3bir": [entry(t) for t in reps],
        "discrete_regular": [entry(t) for t in reps if t in survivors],
    }
