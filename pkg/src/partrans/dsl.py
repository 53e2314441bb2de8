"""Expression language for transformation words.

Grammar (left factor of * is the outer map):

    expr    := atom ("*" atom)*
    atom    := primary ("^" int)?
    primary := "id" | "D-" | "S(" name ")" | "T(" line ")"
             | "H(" divisor ")" | "A(" matrix ")" | "A" matrix | "(" expr ")"
    line    := "O(" divisor ")" | ["("] int "," vector [")"]
    divisor := ["+"|"-"] term (("+"|"-") term)*
    term    := [int "*"] name
    vector  := "[" rational ("," rational)* "]"
    matrix  := "[" row ("," row)* "]"

"D-" must be written without an intervening space. Evaluation resolves
names against a model and folds the word through the group law; any A
atom promotes the whole word to an extended element.
"""

from fractions import Fraction
import itertools
import math

from .errors import ParseError, ShapeMismatch
from .intmat import solve_integer_system
from .picard import (
    JacobianElement,
    LineBundleClass,
    frac_to_str,
    make_jac_aut,
    of_divisor,
)
from .transform import (
    BasicTransformation,
    Divisor,
    compose,
    identity_transform,
    inverse,
    normalize_word,
)
from .extended import (
    ExtendedTransformation,
    compose_ext,
    default_ref_det,
    ext_inverse,
    lift_basic,
)


_PUNCT = set("*^()[],+-/")


def tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "D" and j < n and text[j] == "-":
                out.append(("DMINUS", "D-", i))
                i = j + 1
            else:
                out.append(("NAME", word, i))
                i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch in _PUNCT:
            out.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(("EOF", None, n))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, k=0):
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    # -- literals --------------------------------------------------------

    def parse_int(self):
        sign = 1
        while self.at("+") or self.at("-"):
            if self.next()[0] == "-":
                sign = -sign
        tok = self.expect("INT")
        return sign * tok[1]

    def parse_rational(self):
        num = self.parse_int()
        if self.at("/"):
            self.next()
            den = self.expect("INT")[1]
            if den == 0:
                raise ParseError("zero denominator", self.peek()[2])
            return Fraction(num, den)
        return Fraction(num)

    def parse_vector(self):
        self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.parse_rational())
            while self.at(","):
                self.next()
                items.append(self.parse_rational())
        self.expect("]")
        return items

    def parse_matrix(self):
        self.expect("[")
        rows = [self._parse_int_row()]
        while self.at(","):
            self.next()
            rows.append(self._parse_int_row())
        self.expect("]")
        return rows

    def _parse_int_row(self):
        self.expect("[")
        row = [self.parse_int()]
        while self.at(","):
            self.next()
            row.append(self.parse_int())
        self.expect("]")
        return row

    def parse_divisor(self):
        mult = {}
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.next()[0] == "-" else 1
        self._parse_divisor_term(mult, sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.next()[0] == "-" else 1
            self._parse_divisor_term(mult, sign)
        return mult

    def _parse_divisor_term(self, mult, sign):
        if self.at("INT"):
            coeff = self.next()[1]
            self.expect("*")
        else:
            coeff = 1
        name = self.expect("NAME")[1]
        mult[name] = mult.get(name, 0) + sign * coeff

    # -- expressions -----------------------------------------------------

    def parse_expr(self):
        atoms = [self.parse_atom()]
        while self.at("*"):
            self.next()
            atoms.append(self.parse_atom())
        return ("word", atoms) if len(atoms) > 1 else atoms[0]

    def parse_atom(self):
        node = self.parse_primary()
        if self.at("^"):
            self.next()
            return ("pow", node, self.parse_int())
        return node

    def parse_primary(self):
        tok = self.peek()
        if tok[0] == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok[0] == "DMINUS":
            self.next()
            return ("dual",)
        if tok[0] != "NAME":
            raise ParseError(f"expected a generator, found {tok[1]!r}", tok[2])
        name = tok[1]
        if name == "id":
            self.next()
            return ("id",)
        if name == "S":
            self.next()
            self.expect("(")
            inner = self.expect("NAME")[1]
            self.expect(")")
            return ("sigma", inner)
        if name == "T":
            self.next()
            self.expect("(")
            node = self._parse_line()
            self.expect(")")
            return node
        if name == "H":
            self.next()
            self.expect("(")
            dv = self.parse_divisor()
            self.expect(")")
            return ("hecke", dv)
        if name == "A":
            self.next()
            if self.at("("):
                self.next()
                rows = self.parse_matrix()
                self.expect(")")
            else:
                rows = self.parse_matrix()
            return ("ajac", rows)
        raise ParseError(f"unknown generator {name!r}", tok[2])

    def _parse_line(self):
        if self.at("NAME", "O"):
            self.next()
            self.expect("(")
            dv = self.parse_divisor()
            self.expect(")")
            return ("tensor_div", dv)
        if self.at("("):
            self.next()
            deg = self.parse_int()
            self.expect(",")
            vec = self.parse_vector()
            self.expect(")")
            return ("tensor_class", deg, vec)
        deg = self.parse_int()
        self.expect(",")
        vec = self.parse_vector()
        return ("tensor_class", deg, vec)


def parse_expression(text, model=None):
    """AST of a transformation word; with a model, names are resolved."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "EOF":
        raise ParseError(f"trailing input starting at {tok[1]!r}", tok[2])
    if model is not None:
        _resolve_names(node, model)
    return node


def _resolve_names(node, model):
    kind = node[0]
    if kind == "word":
        for child in node[1]:
            _resolve_names(child, model)
    elif kind == "pow":
        _resolve_names(node[1], model)
    elif kind == "sigma":
        model.automorphism(node[1])
    elif kind in ("hecke", "tensor_div"):
        for name in node[1]:
            model.point(name)


def evaluate(node, model, ref_det=None):
    """Fold an AST through the group law over the model.

    Returns a basic tuple, or an extended element when any A atom occurs
    (reference determinant defaulting to the model's degree context).
    """
    kind = node[0]
    if kind == "word":
        acc = None
        for child in node[1]:
            val = evaluate(child, model, ref_det)
            acc = val if acc is None else _mul(acc, val, model, ref_det)
        return acc
    if kind == "pow":
        base = evaluate(node[1], model, ref_det)
        return _power(base, node[2], model, ref_det)
    if kind == "id":
        return identity_transform(model)
    if kind == "dual":
        return BasicTransformation(
            model,
            model.identity_name,
            -1,
            LineBundleClass.trivial(2 * model.genus),
            Divisor(),
        )
    if kind == "sigma":
        name = node[1]
        model.automorphism(name)
        return normalize_word(model, [("S", name)])
    if kind == "tensor_div":
        for name in node[1]:
            model.point(name)
        cls = of_divisor(model, node[1])
        return normalize_word(model, [("T", cls)] if not cls.is_trivial() else [])
    if kind == "tensor_class":
        deg, vec = node[1], node[2]
        if len(vec) != 2 * model.genus:
            raise ShapeMismatch(
                f"coordinate vector has length {len(vec)}, expected 2g = {2 * model.genus}"
            )
        cls = LineBundleClass(deg, JacobianElement(vec))
        return normalize_word(model, [("T", cls)] if not cls.is_trivial() else [])
    if kind == "hecke":
        for name in node[1]:
            model.point(name)
        return normalize_word(model, [("H", Divisor(node[1]))])
    if kind == "ajac":
        rho = make_jac_aut(node[1], model.rank)
        return ExtendedTransformation(
            rho, identity_transform(model), ref_det or default_ref_det(model)
        )
    raise ParseError(f"unknown node kind {kind!r}", 0)


def _mul(x, y, model, ref_det):
    if isinstance(x, BasicTransformation) and isinstance(y, BasicTransformation):
        return compose(x, y)
    ref = ref_det or default_ref_det(model)
    if isinstance(x, BasicTransformation):
        x = lift_basic(x, ref)
    if isinstance(y, BasicTransformation):
        y = lift_basic(y, ref)
    return compose_ext(x, y)


def _power(base, n, model, ref_det):
    if n == 0:
        return identity_transform(model)
    if n < 0:
        pos = _power(base, -n, model, ref_det)
        if isinstance(pos, BasicTransformation):
            return inverse(pos)
        return ext_inverse(pos)
    acc = base
    for _ in range(n - 1):
        acc = _mul(acc, base, model, ref_det)
    return acc


def eval_expression(text, model, ref_det=None):
    return evaluate(parse_expression(text, model), model, ref_det)


# -- canonical text ------------------------------------------------------


def _divisor_text(model, mult):
    parts = []
    for name in model.point_names:
        c = mult.get(name, 0)
        if not c:
            continue
        if not parts:
            parts.append(f"{c}*{name}")
        elif c > 0:
            parts.append(f"+ {c}*{name}")
        else:
            parts.append(f"- {-c}*{name}")
    return " ".join(parts)


def _bounded_divisor_search(model, cls):
    n = len(model.points)
    if n == 0:
        return None
    bound = max(6, 2 * model.rank)
    while bound >= 1 and (2 * bound + 1) ** n > 100000:
        bound -= 1
    if bound < 1:
        return None
    names = model.point_names
    best = None
    for combo in itertools.product(range(-bound, bound + 1), repeat=n):
        if sum(combo) != cls.degree:
            continue
        key = (sum(abs(c) for c in combo), combo)
        if best is not None and key >= best[0]:
            continue
        if of_divisor(model, dict(zip(names, combo))) == cls:
            best = (key, {k: v for k, v in zip(names, combo) if v})
    return None if best is None else best[1]


def _solved_divisor_form(model, cls):
    """Integer-solve n_x summing to the degree with matching torsion,
    slack variables absorbing the mod-1 reduction."""
    n = len(model.points)
    dim = 2 * model.genus
    if n == 0:
        return None
    coords = [list(model.point(x).jac_class.coords) for x in model.point_names]
    target = list(cls.jac.coords)
    q = 1
    for v in itertools.chain(*coords, target):
        q = q * v.denominator // math.gcd(q, v.denominator)
    a = []
    c = []
    a.append([1] * n + [0] * dim)
    c.append(cls.degree)
    for i in range(dim):
        row = [int(q * coords[x][i]) for x in range(n)]
        row += [q if j == i else 0 for j in range(dim)]
        a.append(row)
        c.append(int(q * target[i]))
    z = solve_integer_system(a, c)
    if z is None:
        return None
    mult = {name: z[k] for k, name in enumerate(model.point_names) if z[k]}
    if of_divisor(model, mult) != cls:
        return None
    return mult


def divisor_form(model, cls):
    """Divisor multiplicities realizing a class, or None; small
    coefficients preferred, exact integer solving as fallback."""
    found = _bounded_divisor_search(model, cls)
    if found is not None:
        return found
    return _solved_divisor_form(model, cls)


def format_canonical(x):
    """Deterministic canonical text; evaluates back to x exactly."""
    if isinstance(x, ExtendedTransformation):
        base = format_canonical(x.basic)
        if x.rho.is_identity():
            return base
        rows = ",".join(
            "[" + ",".join(str(v) for v in row) + "]" for row in x.rho.tilde
        )
        return f"A[{rows}] * {base}"
    model = x.model
    parts = []
    if x.sigma != model.identity_name:
        parts.append(f"S({x.sigma})")
    if x.s == -1:
        parts.append("D-")
    if not x.line.is_trivial():
        dv = divisor_form(model, x.line)
        if dv is not None:
            parts.append(f"T(O({_divisor_text(model, dv)}))")
        else:
            coords = ", ".join(frac_to_str(c) for c in x.line.jac)
            parts.append(f"T({x.line.degree}, [{coords}])")
    if not x.hecke.is_zero():
        parts.append(f"H({_divisor_text(model, x.hecke.mult)})")
    return " * ".join(parts) if parts else "id"
