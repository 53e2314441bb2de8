"""Canonical full-flag weight systems and the wall-and-chamber calculus.

A weight system holds, per marked point, a strictly increasing vector of r
rationals in [0, 1) whose first entry is 0. Chambers are identified by the
floor vector of all wall values, enumerated in a fixed lexicographic order:
subrank r' from 1 to r-1, then per-point index subsets lexicographically,
with the last point varying fastest.
"""

import itertools
import math
from fractions import Fraction

from .errors import EnumerationCapExceeded, NotGeneric, ShapeMismatch, UnknownPoint
from .picard import DEFAULT_ENUM_CAP, frac_to_str

WALL_ORDER_HEADER = (
    "wall order: subrank r' = 1..r-1, per-point index subsets of size r' "
    "in lexicographic order, last point fastest"
)


class WeightSystem:
    """Canonical per-point weight vectors; immutable."""

    __slots__ = ("rank", "entries")

    def __init__(self, entries, rank=None):
        if hasattr(entries, "items"):
            entries = entries.items()
        entries = tuple((name, tuple(Fraction(v) for v in vec)) for name, vec in entries)
        for name, vec in entries:
            if rank is None:
                rank = len(vec)
            if len(vec) != rank:
                raise ShapeMismatch(f"weight vector at {name!r} has length {len(vec)}, expected {rank}")
            if vec[0] != 0:
                raise ShapeMismatch(f"weights at {name!r} are not canonical (first entry {vec[0]})")
            for a, b in zip(vec, vec[1:]):
                if not a < b:
                    raise ShapeMismatch(f"weights at {name!r} are not strictly increasing")
            if vec[-1] >= 1:
                raise ShapeMismatch(f"weights at {name!r} leave [0, 1)")
        self.entries = entries
        self.rank = rank

    @property
    def point_names(self):
        return tuple(name for name, _ in self.entries)

    def vector(self, name):
        for n, vec in self.entries:
            if n == name:
                return vec
        raise UnknownPoint(name)

    def replace(self, name, vec):
        if name not in self.point_names:
            raise UnknownPoint(name)
        return WeightSystem(
            tuple((n, vec if n == name else v) for n, v in self.entries), self.rank
        )

    def total(self):
        return sum((sum(vec) for _, vec in self.entries), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, WeightSystem)
            and self.entries == other.entries
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.entries, self.rank))

    def to_json(self):
        return {name: [frac_to_str(v) for v in vec] for name, vec in self.entries}

    def __repr__(self):
        inner = ", ".join(
            "%s=(%s)" % (name, ", ".join(frac_to_str(v) for v in vec))
            for name, vec in self.entries
        )
        return f"WeightSystem({inner})"


class WallDatum:
    """One wall: a subrank r' and a size-r' index subset at every point.

    value = r' * sum(all weights) - r * sum(selected weights).
    Indices are 1-based.
    """

    __slots__ = ("subrank", "subsets", "value")

    def __init__(self, subrank, subsets, value):
        self.subrank = subrank
        self.subsets = tuple((name, tuple(sub)) for name, sub in subsets)
        self.value = Fraction(value)

    def is_integral(self):
        return self.value.denominator == 1

    def to_json(self):
        return {
            "subrank": self.subrank,
            "subsets": {name: list(sub) for name, sub in self.subsets},
            "value": frac_to_str(self.value),
        }

    def __str__(self):
        subs = ", ".join(
            "I(%s)={%s}" % (name, ",".join(map(str, sub))) for name, sub in self.subsets
        )
        return f"r'={self.subrank}, {subs}, value={frac_to_str(self.value)}"

    def __repr__(self):
        return f"WallDatum({self})"


class ChamberFingerprint:
    """Floor vector of every wall value, in the fixed wall order."""

    __slots__ = ("floors",)

    def __init__(self, floors):
        self.floors = tuple(int(f) for f in floors)

    def __eq__(self, other):
        return isinstance(other, ChamberFingerprint) and self.floors == other.floors

    def __hash__(self):
        return hash(self.floors)

    def to_json(self):
        return {"wall_order": WALL_ORDER_HEADER, "floors": list(self.floors)}

    def __str__(self):
        return "%s\n(%s)" % (WALL_ORDER_HEADER, ", ".join(map(str, self.floors)))

    def __repr__(self):
        return f"ChamberFingerprint{self.floors}"


def canonicalize(raw, rank=None):
    """Shift every per-point vector so its first weight is 0.

    Accepts a mapping name -> sequence or an iterable of (name, sequence).
    Requires strictly increasing entries with spread below 1.
    """
    items = raw.items() if hasattr(raw, "items") else raw
    entries = []
    for name, vec in items:
        vec = [Fraction(v) for v in vec]
        if not vec:
            raise ShapeMismatch(f"empty weight vector at {name!r}")
        for a, b in zip(vec, vec[1:]):
            if not a < b:
                raise ShapeMismatch(f"weights at {name!r} are not strictly increasing")
        if vec[-1] - vec[0] >= 1:
            raise ShapeMismatch(f"weights at {name!r} spread over 1 or more")
        base = vec[0]
        entries.append((name, tuple(v - base for v in vec)))
    return WeightSystem(entries, rank)


def parabolic_degree(d, w):
    return d + w.total()


def _wall_count(w):
    n = len(w.entries)
    if n == 0:
        return 0
    return sum(math.comb(w.rank, rp) ** n for rp in range(1, w.rank))


def _iter_walls(w):
    """All wall data in the fixed lexicographic order."""
    r = w.rank
    names = w.point_names
    total = w.total()
    for rp in range(1, r):
        subsets = list(itertools.combinations(range(1, r + 1), rp))
        for combo in itertools.product(subsets, repeat=len(names)):
            sel = Fraction(0)
            for (name, vec), sub in zip(w.entries, combo):
                sel += sum(vec[i - 1] for i in sub)
            value = rp * total - r * sel
            yield WallDatum(rp, zip(names, combo), value)


def _dp_witness(w):
    """Residue dynamic program deciding whether some wall value is integral.

    Returns a witness WallDatum or None. Avoids enumerating the full
    product of per-point subsets; only residues modulo the common weight
    denominator are tracked, with one representative subset path each.
    """
    r = w.rank
    names = w.point_names
    q = 1
    for _, vec in w.entries:
        for v in vec:
            q = q * v.denominator // math.gcd(q, v.denominator)
    scaled = {name: [int(v * q) for v in vec] for name, vec in w.entries}
    total_scaled = sum(sum(vals) for vals in scaled.values())
    for rp in range(1, r):
        target = (rp * total_scaled) % q
        subsets = list(itertools.combinations(range(1, r + 1), rp))
        reachable = {0: ()}
        for name in names:
            contrib = {}
            for sub in subsets:
                c = (r * sum(scaled[name][i - 1] for i in sub)) % q
                contrib.setdefault(c, sub)
            nxt = {}
            for res in sorted(reachable):
                path = reachable[res]
                for c in sorted(contrib):
                    nr = (res + c) % q
                    if nr not in nxt:
                        nxt[nr] = path + (contrib[c],)
            reachable = nxt
        if target in reachable:
            combo = reachable[target]
            sel = Fraction(0)
            for (name, vec), sub in zip(w.entries, combo):
                sel += sum(vec[i - 1] for i in sub)
            value = rp * w.total() - r * sel
            return WallDatum(rp, zip(names, combo), value)
    return None


def is_generic(w, cap=DEFAULT_ENUM_CAP):
    """(True, None) when no wall value is integral, else (False, witness)."""
    if not w.entries:
        return True, None
    if _wall_count(w) > cap:
        witness = _dp_witness(w)
        return (witness is None), witness
    for wall in _iter_walls(w):
        if wall.is_integral():
            return False, wall
    return True, None


def chamber_fingerprint(w, cap=DEFAULT_ENUM_CAP):
    if not w.entries:
        return ChamberFingerprint(())
    count = _wall_count(w)
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    floors = []
    for wall in _iter_walls(w):
        if wall.is_integral():
            raise NotGeneric(wall)
        floors.append(wall.value.__floor__())
    return ChamberFingerprint(floors)


def same_chamber(w1, w2):
    """Lazy floor-by-floor comparison; aborts at the first differing wall."""
    if w1.point_names != w2.point_names or w1.rank != w2.rank:
        if w1.point_names == w2.point_names == ():
            return True
        raise ShapeMismatch("weight systems live on different point sets or ranks")
    if not w1.entries:
        return True
    for wall1, wall2 in zip(_iter_walls(w1), _iter_walls(w2)):
        if wall1.is_integral():
            raise NotGeneric(wall1)
        if wall2.is_integral():
            raise NotGeneric(wall2)
        if wall1.value.__floor__() != wall2.value.__floor__():
            return False
    return True


def hecke_weights(w, x):
    """One elementary modification step at x:
    (0, a2, ..., ar) -> (0, a3 - a2, ..., ar - a2, 1 - a2)."""
    vec = w.vector(x)
    shifted = vec[1:] + (1 + vec[0],)
    base = shifted[0]
    return w.replace(x, tuple(v - base for v in shifted))


def dual_weights(w):
    """Reverse and reflect every vector: canonical form of (1 - ar, ..., 1 - a1)."""
    entries = []
    for name, vec in w.entries:
        rev = tuple(1 - v for v in reversed(vec))
        base = rev[0]
        entries.append((name, tuple(v - base for v in rev)))
    return WeightSystem(entries, w.rank)
