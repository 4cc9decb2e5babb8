"""Tropical hyperfields over Z^n with lex order.

Elements are value-group vectors plus ``None`` for infinity, the additive
zero.  Two variants share the code path: the inclusive one (x boxplus x is
the closed ray [x, infinity]) and the strict one (the open ray).  Hypersums
are symbolic: a Singleton or a Ray, never a materialized set.

The rank-0 group Z^0 = {()} is allowed; it shows up as the value group of a
trivial valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import hypersets as hs
from .finite import FiniteHyperfield
from .ordgroup import (Cut, ConvexSubgroup, GroupElem, Value, gadd, gneg,
                       gzero, window)
from .report import ValidationReport

TropElem = Value  # tuple for a group element, None for infinity


@dataclass(frozen=True)
class Ray:
    """{z : z >= bound} (inclusive) or {z : z > bound}, plus infinity."""

    bound: GroupElem
    inclusive: bool

    def as_cut(self) -> Cut:
        """The cut c with the ray equal to {z : z > c}."""
        rank = len(self.bound)
        return Cut.lt(rank, self.bound) if self.inclusive else Cut.le(rank, self.bound)

    def contains(self, x: TropElem) -> bool:
        if x is None:
            return True
        return x >= self.bound if self.inclusive else x > self.bound

    def __eq__(self, other):
        if isinstance(other, Ray):
            return self.as_cut() == other.as_cut()
        return NotImplemented

    def __hash__(self):
        return hash(self.as_cut())

    def to_json(self) -> dict:
        return {"bound": list(self.bound), "inclusive": self.inclusive}


def t_mul(x: TropElem, y: TropElem) -> TropElem:
    if x is None or y is None:
        return None
    return gadd(x, y)


def t_neg(x: TropElem) -> TropElem:
    return x  # -x = x: 0 lies in x boxplus x, and inverses are unique


def t_inv(x: TropElem) -> TropElem:
    if x is None:
        raise ZeroDivisionError("infinity is the additive zero")
    return gneg(x)


def t_add(x: TropElem, y: TropElem, strict: bool = False):
    """Hypersum: {min} when the values differ, the ray above the common
    value when they agree (closed ray, or open in the strict variant)."""
    if x is None:
        return hs.Singleton(y)
    if y is None:
        return hs.Singleton(x)
    if x != y:
        return hs.Singleton(min(x, y))
    return Ray(x, inclusive=not strict)


def _sum_sets(a, b, strict: bool):
    """Pointwise hypersum of two symbolic sets; closed on {Singleton, Ray}."""
    if isinstance(a, hs.Singleton) and isinstance(b, hs.Singleton):
        return t_add(a.elem, b.elem, strict)
    if isinstance(a, Ray) and isinstance(b, hs.Singleton):
        a, b = b, a
    if isinstance(a, hs.Singleton) and isinstance(b, Ray):
        c = a.elem
        if c is None:
            return b
        if (c < b.bound) if b.inclusive else (c <= b.bound):
            return hs.Singleton(c)
        return b
    if isinstance(a, Ray) and isinstance(b, Ray):
        assert a.inclusive == b.inclusive
        return Ray(min(a.bound, b.bound), a.inclusive)
    raise TypeError("expected Singleton or Ray")


def _set_eq(a, b) -> bool:
    if isinstance(a, hs.Singleton) and isinstance(b, hs.Singleton):
        return a.elem == b.elem
    if isinstance(a, Ray) and isinstance(b, Ray):
        return a == b
    return False


class TropicalHyperfield:
    """Backend view: elements TropElem, hypersums as generic hypersets."""

    def __init__(self, rank: int, strict: bool = False):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank
        self.strict = strict
        self.zero: TropElem = None
        self.one: TropElem = gzero(rank)
        self.value_rank = rank

    def mul(self, x, y):
        return t_mul(x, y)

    def neg(self, x):
        return x

    def inv(self, x):
        return t_inv(x)

    def add(self, x, y):
        out = t_add(x, y, self.strict)
        if isinstance(out, Ray):
            return hs.AboveValue(out.as_cut())
        return out

    def value_of(self, x: TropElem) -> Value:
        return x  # the identity is the intrinsic valuation

    def elements(self, bound: int) -> list[TropElem]:
        return [None] + window(self.rank, bound)

    def elem_json(self, x: TropElem):
        return None if x is None else list(x)

    def sort_key(self, x: TropElem):
        return (0,) if x is None else (1,) + x

    def describe(self) -> str:
        variant = "strict " if self.strict else ""
        return f"{variant}tropical hyperfield over Z^{self.rank} (lex)"


def tropical_axiom_suite(rank: int, bound: int = 3, strict: bool = False) -> ValidationReport:
    """Windowed hyperfield axioms for T(Z^rank): CH1..CH4 and HR3 over all
    tuples from the window plus infinity, with classification predicates
    (char2, cchar1, stringency) recorded as observations."""
    T = TropicalHyperfield(rank, strict)
    U: list[TropElem] = T.elements(bound)
    rep = ValidationReport(
        subject=T.describe(), mode="bounded verification",
        window={"bound": bound, "rank": rank})

    def sadd(x, y):
        return t_add(x, y, strict)

    w = None
    for x in U:
        for y in U:
            if not _set_eq(sadd(x, y), sadd(y, x)):
                w = (T.elem_json(x), T.elem_json(y))
                break
        if w:
            break
    rep.add("CH2", w is None, w)

    w = None
    for x in U:
        inverses = []
        for u in U:
            s = sadd(x, u)
            member = (s.elem is None) if isinstance(s, hs.Singleton) else s.contains(None)
            if member:
                inverses.append(u)
        if len(inverses) != 1:
            w = (T.elem_json(x), [T.elem_json(u) for u in inverses])
            break
    rep.add("CH3", w is None, w)

    w = None
    for x in U:
        for y in U:
            s = sadd(x, y)
            zs = [s.elem] if isinstance(s, hs.Singleton) else [u for u in U if s.contains(u)]
            for z in zs:
                back = sadd(z, t_neg(x))
                member = (back.elem == y) if isinstance(back, hs.Singleton) else back.contains(y)
                if not member:
                    w = (T.elem_json(x), T.elem_json(y), T.elem_json(z))
                    break
            if w:
                break
        if w:
            break
    rep.add("CH4", w is None, w)

    w = None
    for x in U:
        for y in U:
            left = sadd(x, y)
            for z in U:
                l2 = _sum_sets(left, hs.Singleton(z), strict)
                r2 = _sum_sets(hs.Singleton(x), sadd(y, z), strict)
                if not _set_eq(l2, r2):
                    w = (T.elem_json(x), T.elem_json(y), T.elem_json(z))
                    break
            if w:
                break
        if w:
            break
    rep.add("CH1", w is None, w)

    def scale(x, s):
        if isinstance(s, hs.Singleton):
            return hs.Singleton(t_mul(x, s.elem))
        if x is None:
            return hs.Singleton(None)
        return Ray(gadd(x, s.bound), s.inclusive)

    w = None
    for x in U:
        for y in U:
            for z in U:
                if not _set_eq(scale(x, sadd(y, z)), sadd(t_mul(x, y), t_mul(x, z))):
                    w = (T.elem_json(x), T.elem_json(y), T.elem_json(z))
                    break
            if w:
                break
        if w:
            break
    rep.add("HR3", w is None, w)

    one_plus_one = sadd(T.one, T.one)
    rep.observe("char2", one_plus_one.contains(None),
                note="0 belongs to 1+1")
    rep.observe("cchar1", one_plus_one.contains(T.one),
                note="1 belongs to 1+1")
    stringent = True
    for x in U:
        for y in U:
            s = sadd(x, y)
            if isinstance(s, Ray) and not s.contains(None):
                stringent = False  # cannot happen: rays contain infinity
    rep.observe("stringent", stringent,
                note="every cell avoiding 0 is a singleton")
    return rep


def pi_delta(x: TropElem, delta: ConvexSubgroup) -> TropElem:
    """Coordinatewise projection T(Z^n) -> T(Z^n / Delta)."""
    return None if x is None else delta.project(x)


def pi_delta_report(rank: int, delta: ConvexSubgroup, bound: int = 3,
                    strict: bool = False) -> ValidationReport:
    """Windowed homomorphism check for the projection along a convex
    subgroup, plus surjectivity onto the target window."""
    if delta.rank != rank:
        raise ValueError("rank mismatch")
    src = TropicalHyperfield(rank, strict)
    dst = TropicalHyperfield(delta.zeros, strict)
    U = src.elements(bound)
    rep = ValidationReport(
        subject=f"projection Z^{rank} -> Z^{delta.zeros} on {src.describe()}",
        mode="bounded verification", window={"bound": bound})

    p = lambda x: pi_delta(x, delta)
    rep.add("HH1", p(src.zero) is None)
    rep.add("HH4", p(src.one) == dst.one)

    w = None
    for x in U:
        for y in U:
            if p(t_mul(x, y)) != t_mul(p(x), p(y)):
                w = (src.elem_json(x), src.elem_json(y))
                break
        if w:
            break
    rep.add("HH2", w is None, w)

    w = None
    for x in U:
        for y in U:
            s = t_add(x, y, strict)
            target = t_add(p(x), p(y), strict)
            zs = [s.elem] if isinstance(s, hs.Singleton) else [u for u in U if s.contains(u)]
            for z in zs:
                img = p(z)
                member = (target.elem == img) if isinstance(target, hs.Singleton) \
                    else target.contains(img)
                if not member:
                    w = (src.elem_json(x), src.elem_json(y), src.elem_json(z))
                    break
            if w:
                break
        if w:
            break
    rep.add("HH3", w is None, w)

    w = None
    for x in U:
        if x is None:
            continue
        if p(t_inv(x)) != t_inv(p(x)):
            w = (src.elem_json(x),)
            break
    rep.add("HH5", w is None, w)

    hit = {p(x) for x in U}
    missing = [y for y in dst.elements(bound) if y not in hit]
    rep.observe("surjective-on-window", not missing,
                [dst.elem_json(y) for y in missing] or None)
    return rep


def valuation_ring_of_pi_delta(delta: ConvexSubgroup):
    """Membership predicate for the valuation ring of the projection:
    infinity, the subgroup itself, and everything above it."""

    def member(x: TropElem) -> bool:
        if x is None:
            return True
        return delta.contains(x) or delta.strictly_above(x)

    return member


def two_element_subhyperfield(rank: int, strict: bool = False) -> FiniteHyperfield:
    """The induced table on {infinity, 0}: the only relational
    subhyperfield of a tropical hyperfield with more than one element."""
    T = TropicalHyperfield(rank, strict)
    S = [None, T.one]
    add = [[None] * 2 for _ in range(2)]
    for i, x in enumerate(S):
        for j, y in enumerate(S):
            s = t_add(x, y, strict)
            cell = [k for k, z in enumerate(S)
                    if (s.elem == z if isinstance(s, hs.Singleton) else s.contains(z))]
            add[i][j] = tuple(cell)
    mul = [[0, 0], [0, 1]]
    return FiniteHyperfield(["0", "1"], mul, add,
                            {"label": f"{{inf,0}} inside Z^{rank} tropical"})
