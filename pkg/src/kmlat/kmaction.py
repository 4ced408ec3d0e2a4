"""Symbolic action of real root letters on labeled edges near the base.

The rank-2 group with Cartan entries -m acts on a (q+1,q+1)-biregular
wall tree; edges near the standard base edge are labeled by coordinate
tuples on the left-hand or right-hand side.  Root letters act on those
labels by explicit rules; where a rule is not available the action raises
UnsupportedActionDomain rather than guessing.

For m = 2 the group is affine SL2 and everything can be cross-checked
against exact matrices on the Bruhat-Tits tree; see crosscheck_affine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (MalformedWord, RadiusExceeded, SpecMismatch,
                     UnsupportedActionDomain)
from .laurent import LaurentPoly
from .serretree import Edge, Mat2, act


@dataclass(frozen=True)
class KMParams:
    """Cartan parameter m >= 2 and the ground field."""
    m: int
    spec: object

    def __post_init__(self):
        if self.m < 2:
            raise SpecMismatch("m must be >= 2")


@dataclass(frozen=True)
class RootIndex:
    """A real root of the standard apartment: side 1 or 2, depth k >= 0.

    Depth 0 on side i is the simple root alpha_i; increasing depth walks
    the root string away from the base edge on that side.
    """
    side: int
    depth: int

    def __post_init__(self):
        if self.side not in (1, 2) or self.depth < 0:
            raise SpecMismatch("bad root index")


@dataclass(frozen=True)
class RootLetter:
    root: RootIndex
    coeff: object  # FieldElement


@dataclass(frozen=True)
class EdgeLabel:
    """region "base", "L" (left side) or "R" (right side); coords label
    the edge at combinatorial distance len(coords) from the base edge."""
    region: str
    coords: tuple

    @classmethod
    def base(cls):
        return cls("base", ())

    @classmethod
    def left(cls, coords):
        return cls("L", tuple(coords))

    @classmethod
    def right(cls, coords):
        return cls("R", tuple(coords))

    def __str__(self):
        if self.region == "base":
            return "base"
        return "%s:%s" % (self.region,
                          ",".join(str(c.code) for c in self.coords))


def _replace(coords, i, value):
    out = list(coords)
    out[i] = value
    return tuple(out)


def apply_letter(params, letter, e, mode="identity_phi"):
    """Act by one root letter on a labeled edge.

    Supported cases: the base edge is fixed by every letter; a same-side
    letter of depth k adds its coefficient to coordinate k+1 (edges shorter
    than k+1 are fixed); a cross-side letter fixes edges of length at most
    depth+1, and on an edge whose first n coordinates vanish with
    length = 2n + 2 + depth it perturbs the last coordinate by phi of the
    coefficient.  mode "identity_phi" takes phi = id; "twisted_phi" takes
    phi(u) = (-l_{n+1})^m * u, exact in the affine case.
    """
    if mode not in ("identity_phi", "twisted_phi"):
        raise SpecMismatch("unknown mode %r" % mode)
    if e.region == "base":
        return e
    k = letter.root.depth
    length = len(e.coords)
    same_side = (letter.root.side == 1) == (e.region == "L")
    if same_side:
        if k <= length - 1:
            return EdgeLabel(e.region,
                             _replace(e.coords, k, e.coords[k] + letter.coeff))
        return e
    # cross-side: short edges sit inside the ball the root group fixes
    if length <= k + 1:
        return e
    n2 = length - 2 - k
    if n2 >= 0 and n2 % 2 == 0:
        n = n2 // 2
        if all(c.is_zero() for c in e.coords[:n]):
            pivot = e.coords[n]
            if pivot.is_zero():
                return e
            if mode == "identity_phi":
                delta = letter.coeff
            else:
                delta = ((-pivot) ** params.m) * letter.coeff
            return EdgeLabel(e.region,
                             _replace(e.coords, length - 1,
                                      e.coords[length - 1] + delta))
    raise UnsupportedActionDomain(
        "no rule for root (%d,%d) on edge %s" % (letter.root.side, k, e))


def apply_word(params, word, e, mode="identity_phi"):
    """Apply a word of letters, rightmost letter first."""
    for letter in reversed(list(word)):
        e = apply_letter(params, letter, e, mode)
    return e


def alternating_word(params, pairs):
    """Build z = x1(t_{1,1}) x2(t_{2,1}) ... from coefficient pairs.

    pairs: sequence of (t1, t2) FieldElements; letters all have depth 0.
    """
    word = []
    for t1, t2 in pairs:
        word.append(RootLetter(RootIndex(1, 0), t1))
        word.append(RootLetter(RootIndex(2, 0), t2))
    return tuple(word)


def _check_alternating(word):
    if not word:
        raise MalformedWord("empty word")
    for i, letter in enumerate(word):
        if letter.root.depth != 0:
            raise MalformedWord("letters must have depth 0")
        want = 1 if i % 2 == 0 else 2
        if letter.root.side != want:
            raise MalformedWord("word must alternate x1, x2, x1, ...")
    if len(word) % 2 != 0:
        raise MalformedWord("word must consist of full x1 x2 pairs")


def zp_fix_test(params, word, mode="identity_phi"):
    """Exhaustive test of whether z^p fixes every length-2 left edge.

    word: alternating x1/x2 letters of depth 0.  Returns (fixes_all, t1,
    t2) where t1, t2 are the coefficient sums of the two sides; z^p fixes
    all left length-2 edges iff t2 = 0 (and all right ones iff t1 = 0).
    """
    _check_alternating(word)
    spec = params.spec
    p = spec.p
    fixes = True
    for c1 in range(spec.q):
        for c2 in range(spec.q):
            e = EdgeLabel.left((spec.element(c1), spec.element(c2)))
            img = e
            for _ in range(p):
                img = apply_word(params, word, img, mode)
            if not (img.region == e.region and img.coords == e.coords):
                fixes = False
    t1 = spec.zero
    t2 = spec.zero
    for letter in word:
        if letter.root.side == 1:
            t1 = t1 + letter.coeff
        else:
            t2 = t2 + letter.coeff
    return fixes, t1, t2


def zp_fixes_ball2(params, word, mode="identity_phi"):
    """Whether z^p fixes every edge at combinatorial distance <= 2."""
    _check_alternating(word)
    spec = params.spec
    p = spec.p
    edges = [EdgeLabel.base()]
    for c in range(spec.q):
        edges.append(EdgeLabel.left((spec.element(c),)))
        edges.append(EdgeLabel.right((spec.element(c),)))
    for c1 in range(spec.q):
        for c2 in range(spec.q):
            edges.append(EdgeLabel.left((spec.element(c1), spec.element(c2))))
            edges.append(EdgeLabel.right((spec.element(c1), spec.element(c2))))
    for e in edges:
        img = e
        for _ in range(p):
            img = apply_word(params, word, img, mode)
        if not (img.region == e.region and img.coords == e.coords):
            return False
    return True


def fixed_ball_certificate(params, root, n=0):
    """Ball fixed by the full root group of `root`, centered on the
    opposite side of the apartment at position n.

    Returns a dict with the center description and the radius n+1+depth.
    """
    if n < 0:
        raise SpecMismatch("position must be >= 0")
    opp = 2 if root.side == 1 else 1
    # apartment vertex at distance n from the base vertex on side opp;
    # parahoric alternates with parity along the apartment
    if opp == 2:
        parahoric = "P2" if n % 2 == 0 else "P1"
    else:
        parahoric = "P1" if n % 2 == 0 else "P2"
    return {
        "root": {"side": root.side, "depth": root.depth},
        "center_side": opp,
        "center_position": n,
        "center_parahoric": parahoric,
        "radius": n + 1 + root.depth,
    }


# --- exact affine (m = 2) realization ------------------------------------

def _x1(spec, u):
    one, zero = LaurentPoly.one(spec), LaurentPoly.zero(spec)
    return Mat2(spec, one, LaurentPoly.const(u), zero, one)


def _x2(spec, u):
    one, zero = LaurentPoly.one(spec), LaurentPoly.zero(spec)
    return Mat2(spec, one, zero, LaurentPoly.monomial(spec, 1, u), one)


def _xm1(spec, u):
    one, zero = LaurentPoly.one(spec), LaurentPoly.zero(spec)
    return Mat2(spec, one, zero, LaurentPoly.const(u), one)


def _xm2(spec, u):
    one, zero = LaurentPoly.one(spec), LaurentPoly.zero(spec)
    return Mat2(spec, one, LaurentPoly.monomial(spec, -1, u), zero, one)


def _w1(spec):
    one = spec.one
    return _x1(spec, one).mul(_xm1(spec, -one)).mul(_x1(spec, one))


def _w2(spec):
    one = spec.one
    return _x2(spec, one).mul(_xm2(spec, -one)).mul(_x2(spec, one))


def letter_matrix(spec, letter):
    """Exact matrix of a depth-0 letter in the affine model."""
    if letter.root.depth != 0:
        raise UnsupportedActionDomain("matrix model covers depth 0 only")
    if letter.root.side == 1:
        return _x1(spec, letter.coeff)
    return _x2(spec, letter.coeff)


def realize_edge(params, e, radius=6):
    """The exact tree edge corresponding to a labeled edge (m = 2 only)."""
    if params.m != 2:
        raise UnsupportedActionDomain("exact realization needs m = 2")
    spec = params.spec
    if e.region != "base" and len(e.coords) > radius:
        raise RadiusExceeded("edge length %d beyond radius %d"
                             % (len(e.coords), radius))
    g = Mat2.identity(spec)
    if e.region != "base":
        first = 1 if e.region == "L" else 2
        for i, c in enumerate(e.coords):
            side = first if i % 2 == 0 else (3 - first)
            if side == 1:
                g = g.mul(_x1(spec, c)).mul(_w1(spec))
            else:
                g = g.mul(_x2(spec, c)).mul(_w2(spec))
    return act(g, Edge.base(spec))


def crosscheck_affine(params, word, e, mode="twisted_phi", radius=6):
    """Compare the symbolic action with the exact affine one (m = 2).

    Returns True when the matrix image of the realized edge equals the
    realization of the symbolic image.  Symbolic failures propagate as
    UnsupportedActionDomain.
    """
    if params.m != 2:
        raise UnsupportedActionDomain("cross-check needs m = 2")
    spec = params.spec
    symbolic = apply_word(params, word, e, mode)
    g = Mat2.identity(spec)
    for letter in word:
        g = g.mul(letter_matrix(spec, letter))
    exact = act(g, realize_edge(params, e, radius))
    return exact == realize_edge(params, symbolic, radius)
