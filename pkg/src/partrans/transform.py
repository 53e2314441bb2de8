"""The group of basic transformations and its actions.

An element is the canonical tuple (sigma, s, L, H) realizing the operator
Sigma_sigma o D^s o T_L o H_H, applied innermost first. Composition builds
the concatenated generator word and rewrites it back into this order; each
rewrite step either merges neighbours of the same kind or moves an atom of
smaller kind leftward, so the process terminates.
"""

from .errors import (
    EnumerationCapExceeded,
    HeckeOutOfRange,
    ModelError,
    NotGeneric,
    ShapeMismatch,
    UnknownPoint,
)
from .picard import (
    DEFAULT_ENUM_CAP,
    JacobianElement,
    LineBundleClass,
    divide_by_r,
    frac_to_str,
    lincomb,
    of_divisor,
    pullback,
)
from .weights import WeightSystem, dual_weights, hecke_weights, is_generic, same_chamber

import itertools


class Divisor:
    """Integer multiplicities on the marked points; zero entries dropped."""

    __slots__ = ("mult",)

    def __init__(self, mult=None):
        d = {}
        for k, v in dict(mult or {}).items():
            v = int(v)
            if v:
                d[k] = v
        self.mult = d

    def items(self):
        return self.mult.items()

    def get(self, name):
        return self.mult.get(name, 0)

    def support(self):
        return tuple(self.mult)

    def degree(self):
        return sum(self.mult.values())

    def is_zero(self):
        return not self.mult

    def __add__(self, other):
        out = dict(self.mult)
        for k, v in other.mult.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __neg__(self):
        return Divisor({k: -v for k, v in self.mult.items()})

    def scale(self, n):
        return Divisor({k: n * v for k, v in self.mult.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mult == other.mult

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def to_json(self):
        return {k: self.mult[k] for k in sorted(self.mult)}

    def __repr__(self):
        if not self.mult:
            return "Divisor(0)"
        return "Divisor(%s)" % " + ".join(f"{v}*{k}" for k, v in sorted(self.mult.items()))


class BasicTransformation:
    """Canonical tuple (sigma, s, line, hecke) over a fixed model."""

    __slots__ = ("model", "sigma", "s", "line", "hecke")

    def __init__(self, model, sigma, s, line, hecke):
        self.model = model
        self.sigma = sigma
        self.s = s
        self.line = line
        self.hecke = hecke

    def is_identity(self):
        return (
            self.sigma == self.model.identity_name
            and self.s == 1
            and self.line.is_trivial()
            and self.hecke.is_zero()
        )

    def __eq__(self, other):
        return (
            isinstance(other, BasicTransformation)
            and self.sigma == other.sigma
            and self.s == other.s
            and self.line == other.line
            and self.hecke == other.hecke
        )

    def __hash__(self):
        return hash((self.sigma, self.s, self.line, self.hecke))

    def __mul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return f"BasicTransformation({describe(self)!r})"

    def to_json(self):
        return {
            "sigma": self.sigma,
            "s": self.s,
            "line": self.line.to_json(),
            "hecke": self.hecke.to_json(),
        }


class ParabolicInvariant:
    """Discrete shadow (rank, determinant class, weights) of a parabolic bundle.

    The label is provenance only and is ignored by equality.
    """

    __slots__ = ("rank", "det", "weights", "label")

    def __init__(self, rank, det, weights, label=""):
        if weights.rank is not None and weights.rank != rank:
            raise ShapeMismatch(f"weights have rank {weights.rank}, invariant has rank {rank}")
        self.rank = rank
        self.det = det
        self.weights = weights
        self.label = label

    def __eq__(self, other):
        return (
            isinstance(other, ParabolicInvariant)
            and self.rank == other.rank
            and self.det == other.det
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.rank, self.det, self.weights))

    def to_json(self):
        return {
            "rank": self.rank,
            "det": self.det.to_json(),
            "weights": self.weights.to_json(),
            "label": self.label,
        }

    def __repr__(self):
        return f"ParabolicInvariant(rank={self.rank}, det={self.det!r}, weights={self.weights!r})"


def describe(t):
    """Plain canonical text of a tuple, without divisor sugar."""
    parts = []
    if t.sigma != t.model.identity_name:
        parts.append(f"S({t.sigma})")
    if t.s == -1:
        parts.append("D-")
    if not t.line.is_trivial():
        coords = ", ".join(frac_to_str(c) for c in t.line.jac)
        parts.append(f"T({t.line.degree}, [{coords}])")
    if not t.hecke.is_zero():
        terms = " + ".join(
            f"{t.hecke.get(name)}*{name}"
            for name in t.model.point_names
            if t.hecke.get(name)
        )
        parts.append(f"H({terms})")
    return " * ".join(parts) if parts else "id"


def make_basic(sigma, s, line, hecke, model):
    """Validated tuple constructor."""
    if not model.has_automorphism(sigma):
        model.automorphism(sigma)  # raises UnknownAutomorphism
    if s not in (1, -1):
        raise ShapeMismatch(f"s must be +1 or -1, got {s!r}")
    if not isinstance(line, LineBundleClass):
        raise ShapeMismatch("line part must be a LineBundleClass")
    if len(line.jac) != 2 * model.genus:
        raise ShapeMismatch(
            f"line coordinate length {len(line.jac)} does not match 2g = {2 * model.genus}"
        )
    if not isinstance(hecke, Divisor):
        hecke = Divisor(hecke)
    for name, mult in hecke.items():
        model.point(name)
        if not 0 <= mult <= model.rank - 1:
            raise HeckeOutOfRange(name, mult, model.rank)
    return BasicTransformation(model, sigma, s, line, hecke)


def identity_transform(model):
    return BasicTransformation(
        model,
        model.identity_name,
        1,
        LineBundleClass.trivial(2 * model.genus),
        Divisor(),
    )


# -- the rewrite engine --------------------------------------------------

_KIND = {"S": 0, "D": 1, "T": 2, "H": 3}


def _word_of(t):
    atoms = []
    if t.sigma != t.model.identity_name:
        atoms.append(("S", t.sigma))
    if t.s == -1:
        atoms.append(("D",))
    if not t.line.is_trivial():
        atoms.append(("T", t.line))
    if not t.hecke.is_zero():
        atoms.append(("H", t.hecke))
    return atoms


def _split_hecke(model, dv):
    """Replace an out-of-range Hecke divisor by a tensor atom plus an
    in-range one, through the r-fold identity H_x^r = T_O(-x)."""
    r = model.rank
    floor_part = {x: v // r for x, v in dv.items() if v // r}
    rem = Divisor({x: v - r * (v // r) for x, v in dv.items()})
    atoms = []
    if floor_part:
        cls = lincomb(
            [(model.point_class(x), -n) for x, n in floor_part.items()],
            dim=2 * model.genus,
        )
        if not cls.is_trivial():
            atoms.append(("T", cls))
    if not rem.is_zero():
        atoms.append(("H", rem))
    return atoms


def _hecke_in_range(model, dv):
    return all(0 <= v <= model.rank - 1 for v in dv.mult.values())


def _rewrite_step(model, word, i):
    """Apply one rule at position i; return (consumed, replacement) or None."""
    a = word[i]
    if a[0] == "H" and not _hecke_in_range(model, a[1]):
        return 1, _split_hecke(model, a[1])
    if i + 1 >= len(word):
        return None
    b = word[i + 1]
    ka, kb = a[0], b[0]
    if ka == "S" and kb == "S":
        merged = model.compose_autos(a[1], b[1])
        return 2, ([] if merged == model.identity_name else [("S", merged)])
    if ka == "D" and kb == "D":
        return 2, []
    if ka == "T" and kb == "T":
        cls = lincomb([(a[1], 1), (b[1], 1)])
        return 2, ([] if cls.is_trivial() else [("T", cls)])
    if ka == "H" and kb == "H":
        return 2, _split_hecke(model, a[1] + b[1])
    if ka == "D" and kb == "S":
        return 2, [b, a]
    if ka == "T" and kb == "S":
        inv = model.automorphism(model.inverse_auto(b[1]))
        return 2, [b, ("T", pullback(inv, a[1]))]
    if ka == "H" and kb == "S":
        perm = model.automorphism(b[1]).point_perm
        moved = Divisor({perm.get(x, x): v for x, v in a[1].items()})
        return 2, [b, ("H", moved)]
    if ka == "T" and kb == "D":
        return 2, [b, ("T", lincomb([(a[1], -1)]))]
    if ka == "H" and kb == "D":
        # pointwise dual interchange, only points actually touched by H
        support = a[1].support()
        comp = Divisor({x: model.rank - a[1].get(x) for x in support})
        cls = lincomb(
            [(model.point_class(x), -1) for x in support], dim=2 * model.genus
        )
        out = []
        if not cls.is_trivial():
            out.append(("T", cls))
        out.append(b)
        if not comp.is_zero():
            out.append(("H", comp))
        return 2, out
    if ka == "H" and kb == "T":
        return 2, [b, a]
    return None


def normalize_word(model, atoms):
    """Rewrite an arbitrary generator word into the canonical tuple."""
    word = list(atoms)
    steps = 0
    limit = 10000 + 100 * (len(word) + 1) ** 2
    progress = True
    while progress:
        progress = False
        for i in range(len(word)):
            hit = _rewrite_step(model, word, i)
            if hit is not None:
                consumed, rep = hit
                word[i : i + consumed] = rep
                progress = True
                break
        steps += 1
        if steps > limit:
            raise ModelError("rewrite did not terminate; malformed model table")
    sigma = model.identity_name
    s = 1
    line = LineBundleClass.trivial(2 * model.genus)
    hecke = Divisor()
    for atom in word:
        if atom[0] == "S":
            sigma = atom[1]
        elif atom[0] == "D":
            s = -1
        elif atom[0] == "T":
            line = atom[1]
        else:
            hecke = atom[1]
    return BasicTransformation(model, sigma, s, line, hecke)


def compose(t1, t2):
    """Tuple acting as t1 after t2."""
    if t1.model is not t2.model:
        raise ShapeMismatch("cannot compose transformations over different models")
    return normalize_word(t1.model, _word_of(t1) + _word_of(t2))


def inverse(t):
    """Group inverse; the inverse of a Hecke part H at its support P is
    T_O(D_P) o H_{(r - h)|_P}."""
    model = t.model
    support = t.hecke.support()
    atoms = []
    if support:
        cls = lincomb([(model.point_class(x), 1) for x in support], dim=2 * model.genus)
        atoms.append(("T", cls))
        atoms.append(("H", Divisor({x: model.rank - t.hecke.get(x) for x in support})))
    if not t.line.is_trivial():
        atoms.append(("T", lincomb([(t.line, -1)])))
    if t.s == -1:
        atoms.append(("D",))
    if t.sigma != model.identity_name:
        atoms.append(("S", model.inverse_auto(t.sigma)))
    return normalize_word(model, atoms)


# -- actions -------------------------------------------------------------


def act_degree(t, d):
    """s * (r * deg L + d - |H|)."""
    return t.s * (t.model.rank * t.line.degree + d - t.hecke.degree())


def act_det(t, xi):
    """sigma-pullback of (L^r tensor xi(-H))^s."""
    model = t.model
    inner = lincomb(
        [(t.line, model.rank), (xi, 1), (of_divisor(model, t.hecke), -1)]
    )
    if t.s == -1:
        inner = lincomb([(inner, -1)])
    return pullback(model.automorphism(t.sigma), inner)


def act_weights(t, w):
    """Hecke steps at every point, optional dualization, then relabeling.

    The output weights at y are the processed weights at sigma(y), matching
    the fiber of the pullback bundle and the determinant convention.
    """
    model = t.model
    out = w
    for x, mult in t.hecke.items():
        for _ in range(mult):
            out = hecke_weights(out, x)
    if t.s == -1:
        out = dual_weights(out)
    perm = model.automorphism(t.sigma).point_perm
    if any(perm.get(x, x) != x for x in w.point_names):
        out = WeightSystem(
            tuple((y, out.vector(perm.get(y, y))) for y in w.point_names), w.rank
        )
    return out


def act_invariant(t, v):
    if v.rank != t.model.rank:
        raise ShapeMismatch(f"invariant rank {v.rank} does not match model rank {t.model.rank}")
    label = v.label + "|" + describe(t) if v.label else describe(t)
    return ParabolicInvariant(
        v.rank, act_det(t, v.det), act_weights(t, v.weights), label
    )


def subgroup_membership(t, d, xi=None, alpha=None):
    """Membership flags for the sign, degree, determinant and chamber subgroups."""
    flags = {
        "in_T_plus": t.s == 1,
        "in_T_d": act_degree(t, d) == d,
        "in_T_xi": None,
        "in_T_alpha": None,
    }
    if xi is not None:
        flags["in_T_xi"] = act_det(t, xi) == xi
    if alpha is not None:
        flags["in_T_alpha"] = same_chamber(act_weights(t, alpha), alpha)
    return flags


# -- stabilizers ---------------------------------------------------------


def _hecke_sectors(model, cap):
    """All in-range Hecke divisors in lexicographic multiplicity order."""
    n = len(model.points)
    count = model.rank**n
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    names = model.point_names
    for mults in itertools.product(range(model.rank), repeat=n):
        yield Divisor(dict(zip(names, mults)))


def stabilizer_xi(xi, model, cap=DEFAULT_ENUM_CAP):
    """Sector report of the determinant stabilizer.

    A sector (sigma, s, H) is admissible when the forced degree of L is an
    integer; its L solutions then form a torsor under J[r] around the
    canonical r-th root of pullback_{sigma^{-1}}(xi)^s tensor xi^{-1}(H).
    """
    r = model.rank
    dim = 2 * model.genus
    sectors = []
    for auto in model.automorphisms:
        inv = model.automorphism(model.inverse_auto(auto.name))
        for s in (1, -1):
            for hecke in _hecke_sectors(model, cap):
                size = hecke.degree()
                num = s * xi.degree - xi.degree + size
                if num % r != 0:
                    continue
                rhs = lincomb(
                    [
                        (pullback(inv, xi), s),
                        (xi, -1),
                        (of_divisor(model, hecke), 1),
                    ]
                )
                root, torsor = divide_by_r(rhs.jac, r)
                sectors.append(
                    {
                        "sigma": auto.name,
                        "s": s,
                        "H": hecke.to_json(),
                        "L_degree": num // r,
                        "root": root.to_json(),
                        "torsor_size": torsor,
                    }
                )
    return {"total": len(sectors) * r**dim, "sectors": sectors}


def t_d_quotient_reps(d, model, cap=DEFAULT_ENUM_CAP):
    """Representatives of the degree-d stabilizer modulo tensoring by
    degree-zero classes: one tuple per admissible (sigma, s, H) sector,
    with the forced L degree and zero torsion part."""
    r = model.rank
    dim = 2 * model.genus
    reps = []
    for auto in model.automorphisms:
        for s in (1, -1):
            for hecke in _hecke_sectors(model, cap):
                num = s * d - d + hecke.degree()
                if num % r != 0:
                    continue
                line = LineBundleClass(num // r, JacobianElement.zero(dim))
                reps.append(BasicTransformation(model, auto.name, s, line, hecke))
    return reps


def stabilizer_d_alpha_quotient(d, alpha, model, cap=DEFAULT_ENUM_CAP):
    """Chamber-filtered representatives of the degree stabilizer."""
    ok, witness = is_generic(alpha, cap)
    if not ok:
        raise NotGeneric(witness)
    out = []
    for rep in t_d_quotient_reps(d, model, cap):
        if same_chamber(act_weights(rep, alpha), alpha):
            out.append(rep)
    return out
