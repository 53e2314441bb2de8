"""Exact arithmetic in the Picard model Z + (Q/Z)^{2g}.

A line bundle class is an integer degree plus a torsion coordinate vector.
Only finite-order Jacobian data is representable; an infinite-order class
appears as its degree plus a torsion part.
"""

import itertools
from fractions import Fraction

from .errors import EnumerationCapExceeded, NotInvertible, ShapeMismatch
from .intmat import (
    det_int,
    identity_matrix,
    inverse_unimodular,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
)

DEFAULT_ENUM_CAP = 10**6


def frac_to_str(f):
    return str(Fraction(f))


class JacobianElement:
    """Vector in (Q/Z)^{2g}; every coordinate reduced into [0, 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(c) % 1 for c in coords)

    @staticmethod
    def zero(dim):
        return JacobianElement([0] * dim)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        return isinstance(other, JacobianElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        self._check(other)
        return JacobianElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return JacobianElement(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return JacobianElement(-a for a in self.coords)

    def scale(self, n):
        return JacobianElement(n * a for a in self.coords)

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def _check(self, other):
        if len(self.coords) != len(other.coords):
            raise ShapeMismatch(
                f"coordinate lengths differ: {len(self.coords)} vs {len(other.coords)}"
            )

    def to_json(self):
        return [frac_to_str(c) for c in self.coords]

    def __repr__(self):
        return "JacobianElement(%s)" % (", ".join(frac_to_str(c) for c in self.coords))


class LineBundleClass:
    """Degree plus Jacobian coordinate; the model of every line bundle symbol."""

    __slots__ = ("degree", "jac")

    def __init__(self, degree, jac):
        self.degree = int(degree)
        self.jac = jac if isinstance(jac, JacobianElement) else JacobianElement(jac)

    @staticmethod
    def trivial(dim):
        return LineBundleClass(0, JacobianElement.zero(dim))

    def is_trivial(self):
        return self.degree == 0 and self.jac.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, LineBundleClass)
            and self.degree == other.degree
            and self.jac == other.jac
        )

    def __hash__(self):
        return hash((self.degree, self.jac))

    def to_json(self):
        return {"degree": self.degree, "jac": self.jac.to_json()}

    def __repr__(self):
        return f"LineBundleClass({self.degree}, {self.jac!r})"


def lincomb(terms, dim=None):
    """Integer combination sum(n_i * c_i) of line bundle classes.

    dim is only needed for an empty combination, where the ambient
    coordinate length cannot be inferred.
    """
    terms = list(terms)
    if not terms:
        if dim is None:
            raise ShapeMismatch("empty combination needs an explicit dimension")
        return LineBundleClass.trivial(dim)
    d = len(terms[0][0].jac)
    degree = 0
    jac = JacobianElement.zero(d)
    for cls, n in terms:
        if len(cls.jac) != d:
            raise ShapeMismatch("mixed coordinate lengths in combination")
        degree += n * cls.degree
        jac = jac + cls.jac.scale(n)
    return LineBundleClass(degree, jac)


def of_divisor(model, divisor):
    """Class of an integer divisor supported on the marked points."""
    items = divisor.items() if hasattr(divisor, "items") else divisor
    return lincomb(
        [(model.point_class(name), mult) for name, mult in items],
        dim=2 * model.genus,
    )


def divide_by_r(j, r):
    """Canonical r-th root of a torsion element plus the torsor size.

    The full solution set is root + J[r]; only its size r^{2g} is returned,
    never the enumeration.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    root = JacobianElement(c / r for c in j.coords)
    return root, r ** len(j.coords)


def r_torsion(g, r, cap=DEFAULT_ENUM_CAP):
    """All r-torsion elements of (Q/Z)^{2g} in lexicographic coordinate order."""
    if r < 1:
        raise ValueError("r must be at least 1")
    count = r ** (2 * g)
    if count > cap:
        raise EnumerationCapExceeded(count, cap)

    def gen():
        for combo in itertools.product(range(r), repeat=2 * g):
            yield JacobianElement(Fraction(c, r) for c in combo)

    return gen()


def pullback(sigma, c):
    """Affine pullback action of a curve automorphism on a class:
    (deg, j) -> (deg, M j + deg * t)."""
    mj = mat_vec(sigma.matrix, list(c.jac.coords))
    coords = (x + c.degree * y for x, y in zip(mj, sigma.translation.coords))
    return LineBundleClass(c.degree, JacobianElement(coords))


class JacobianAutomorphism:
    """rho = id + r * tilde, an automorphism of (Q/Z)^{2g} fixing J[r]."""

    __slots__ = ("tilde", "r")

    def __init__(self, tilde, r):
        self.tilde = tuple(tuple(int(x) for x in row) for row in tilde)
        self.r = int(r)

    @property
    def dim(self):
        return len(self.tilde)

    def is_identity(self):
        return all(all(x == 0 for x in row) for row in self.tilde)

    def __eq__(self, other):
        return (
            isinstance(other, JacobianAutomorphism)
            and self.tilde == other.tilde
            and self.r == other.r
        )

    def __hash__(self):
        return hash((self.tilde, self.r))

    def __repr__(self):
        return f"JacobianAutomorphism(tilde={self.tilde}, r={self.r})"


def make_jac_aut(m, r):
    """Build rho = id + r*M, rejecting matrices where id + r*M is not unimodular."""
    if r < 2:
        raise ValueError("r must be at least 2")
    entries = [list(map(int, row)) for row in m]
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise ShapeMismatch(f"matrix must be square, got rows {[len(r_) for r_ in entries]}")
    full = mat_add(identity_matrix(n), mat_scale(r, entries))
    d = det_int(full)
    if d not in (1, -1):
        raise NotInvertible(d)
    return JacobianAutomorphism(entries, r)


def apply_jac_aut(rho, j):
    """rho(j) = j + r * (M j) in (Q/Z)^{2g}."""
    mj = mat_vec([list(row) for row in rho.tilde], list(j.coords))
    return JacobianElement(a + rho.r * b for a, b in zip(j.coords, mj))


def apply_jac_aut_line(rho, c):
    """rho applied to a degree-zero line bundle class."""
    if c.degree != 0:
        raise ShapeMismatch("Jacobian automorphisms act on degree-zero classes")
    return LineBundleClass(0, apply_jac_aut(rho, c.jac))


def tilde_compose(m1, m2, r):
    """Tilde matrix of rho1 o rho2 where m1 belongs to the outer factor:
    M1 + M2 + r * M1 M2."""
    a = [list(map(int, row)) for row in m1]
    b = [list(map(int, row)) for row in m2]
    return mat_add(mat_add(a, b), mat_scale(r, mat_mul(a, b)))


def jac_aut_inverse(rho):
    """Inverse automorphism; its tilde is -M (id + r M)^{-1}, still integral."""
    m = [list(row) for row in rho.tilde]
    n = len(m)
    full = mat_add(identity_matrix(n), mat_scale(rho.r, m))
    inv = inverse_unimodular(full)
    tilde = mat_scale(-1, mat_mul(m, inv))
    return JacobianAutomorphism(tilde, rho.r)
