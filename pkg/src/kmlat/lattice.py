"""Edge-of-groups data, lattice verification and the classification table.

The verification side is exact: given finite groups fixing the two base
vertices, lubotzky_check tests neighbor-transitivity and the stabilizer
condition on the actual tree, computes the faithfulness kernel and the
covolume.  The classification side transcribes the case analysis for
cocompact edge-transitive lattices at a given q and center order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (InvalidInput, KindInadmissible, MinUndefined,
                     NotAHomomorphism, WrongFixedVertex)
from .groups import (FiniteGroup, closure, find_subgroup_of_type,
                     nonsplit_torus, torus_normalizer)
from .laurent import LaurentPoly
from .serretree import Edge, Mat2, Vertex, act, membership, neighbors


@dataclass
class EdgeOfGroups:
    """An edge of groups A1 <- A0 -> A2 with injective structure maps.

    alpha1, alpha2: dicts mapping each element of a0 into a1 resp. a2.
    """
    a0: FiniteGroup
    a1: FiniteGroup
    a2: FiniteGroup
    alpha1: dict
    alpha2: dict

    def __post_init__(self):
        for alpha, tgt in ((self.alpha1, self.a1), (self.alpha2, self.a2)):
            if set(alpha) != set(self.a0.elements):
                raise NotAHomomorphism("map not defined on all of A0")
            if len(set(alpha.values())) != self.a0.order:
                raise NotAHomomorphism("structure map is not injective")
            for x in self.a0.elements:
                if alpha[x] not in tgt.elements:
                    raise NotAHomomorphism("image escapes the target group")
                for y in self.a0.elements:
                    if not alpha[x.mul(y)] == alpha[x].mul(alpha[y]):
                        raise NotAHomomorphism("map is not a homomorphism")

    @classmethod
    def by_inclusion(cls, a0, a1, a2):
        ident = {x: x for x in a0.elements}
        return cls(a0, a1, a2, dict(ident), dict(ident))


def _core(ambient, sub_elements):
    """Largest normal subgroup of ambient inside the given element set."""
    core = set(sub_elements)
    for g in ambient.elements:
        gi = g.inv()
        core &= {g.mul(h).mul(gi) for h in sub_elements}
        if len(core) == 1:
            break
    return closure(core, cap=ambient.order + 1)


def faithfulness_kernel(eog):
    """Largest subgroup of A0 whose images are normal in A1 and A2.

    This is the kernel of the action of the amalgam on its tree; iterated
    cores shrink A0 until both images stabilize.
    """
    n = set(eog.a0.elements)
    while True:
        img1 = {eog.alpha1[x] for x in n}
        k1 = _core(eog.a1, img1).elements
        n1 = {x for x in n if eog.alpha1[x] in k1}
        img2 = {eog.alpha2[x] for x in n1}
        k2 = _core(eog.a2, img2).elements
        n2 = {x for x in n1 if eog.alpha2[x] in k2}
        if n2 == n:
            return FiniteGroup(eog.a0.spec, frozenset(n))
        n = n2


def covolume(orders):
    """Exact covolume sum(1/|G_s|) of a finite graph of finite groups."""
    total = Fraction(0)
    for o in orders:
        total += Fraction(1, int(o))
    return total


@dataclass
class VerificationReport:
    q: int
    passes: bool
    orbit_sizes: tuple
    stab_orders: tuple
    intersection_order: int
    kernel_order: int
    covolume: Fraction
    a1_order: int
    a2_order: int
    notes: tuple = ()

    def to_json_dict(self):
        return {
            "q": self.q,
            "passes": self.passes,
            "orbit_sizes": list(self.orbit_sizes),
            "stab_orders": list(self.stab_orders),
            "intersection_order": self.intersection_order,
            "kernel_order": self.kernel_order,
            "covolume": "%d/%d" % (self.covolume.numerator,
                                   self.covolume.denominator),
            "a1_order": self.a1_order,
            "a2_order": self.a2_order,
            "notes": list(self.notes),
        }


def _orbit_size(group, target):
    """Number of distinct images of `target` (a Vertex) under the group."""
    reps = []
    for g in group.elements:
        v = act(g, target)
        if not any(v == u for u in reps):
            reps.append(v)
    return len(reps)


def lubotzky_check(a1, a2, base=None):
    """Edge-transitivity test for the pair (A1, A2) on the tree.

    A1 must fix x1 and A2 must fix x2 (else WrongFixedVertex).  The pair
    generates an edge-transitive lattice iff each A_i is transitive on the
    q+1 neighbors of x_i and the stabilizer of the opposite base vertex in
    each A_i is exactly A1 cap A2.
    """
    spec = a1.spec
    q = spec.q
    x1, x2 = Vertex.x1(spec), Vertex.x2(spec)
    for g in a1.elements:
        if not act(g, x1) == x1:
            raise WrongFixedVertex("A1 does not fix x1")
    for g in a2.elements:
        if not act(g, x2) == x2:
            raise WrongFixedVertex("A2 does not fix x2")
    o1 = _orbit_size(a1, x2)
    o2 = _orbit_size(a2, x1)
    stab1 = frozenset(g for g in a1.elements if act(g, x2) == x2)
    stab2 = frozenset(g for g in a2.elements if act(g, x1) == x1)
    inter = a1.elements & a2.elements
    cond_transitive = (o1 == q + 1 and o2 == q + 1)
    cond_stab = (stab1 == inter and stab2 == inter)
    passes = cond_transitive and cond_stab
    a0 = FiniteGroup(spec, inter)
    kernel = faithfulness_kernel(EdgeOfGroups.by_inclusion(a0, a1, a2))
    notes = []
    if not cond_transitive:
        notes.append("neighbor action not transitive")
    if not cond_stab:
        notes.append("opposite-vertex stabilizer differs from A1 cap A2")
    return VerificationReport(
        q=q, passes=passes, orbit_sizes=(o1, o2),
        stab_orders=(len(stab1), len(stab2)),
        intersection_order=len(inter), kernel_order=kernel.order,
        covolume=covolume([a1.order, a2.order]),
        a1_order=a1.order, a2_order=a2.order, notes=tuple(notes))


def covering_check(eog, rho0, rho1, rho2, delta1, delta2):
    """Test that (rho, delta) realizes the edge of groups on the tree.

    rho_i: dicts A_i -> Mat2 landing in the stabilizer of x_i (rho0 in the
    edge stabilizer); delta_i: Mat2.  Conditions: rho_i(alpha_i(x)) equals
    delta_i rho0(x) delta_i^-1 on A0, and g -> rho_i(g) delta_i induces a
    bijection from A_i / alpha_i(A0) onto the q+1 edges at x_i.
    """
    spec = eog.a0.spec
    for rho, grp, region in ((rho0, eog.a0, "B"), (rho1, eog.a1, "P1"),
                             (rho2, eog.a2, "P2")):
        if set(rho) != set(grp.elements):
            raise NotAHomomorphism("rho not defined on the whole group")
        for x in grp.elements:
            if not membership(rho[x], region):
                raise NotAHomomorphism("rho image escapes %s" % region)
            for y in grp.elements:
                if not rho[x.mul(y)] == rho[x].mul(rho[y]):
                    raise NotAHomomorphism("rho is not a homomorphism")
    for alpha, rho, delta in ((eog.alpha1, rho1, delta1),
                              (eog.alpha2, rho2, delta2)):
        di = delta.inv()
        for x in eog.a0.elements:
            if not rho[alpha[x]] == delta.mul(rho0[x]).mul(di):
                return False
    base = Edge.base(spec)
    for a_i, alpha, rho, delta, vertex in (
            (eog.a1, eog.alpha1, rho1, delta1, Vertex.x1(spec)),
            (eog.a2, eog.alpha2, rho2, delta2, Vertex.x2(spec))):
        img = FiniteGroup(spec, frozenset(alpha[x] for x in eog.a0.elements))
        reps = a_i.cosets(img)
        edges = []
        for g in reps:
            e = act(rho[g].mul(delta), base)
            if not (e.v0 == vertex or e.v1 == vertex):
                return False
            if any(e == f for f in edges):
                return False
            edges.append(e)
        if len(edges) != spec.q + 1:
            return False
    return True


# --- classification -------------------------------------------------------

# q -> list of (type name, |A0| at center order 2) for the sporadic rows
EXCEPTIONAL_TABLE = {
    5: (("SL2(3)", 4),),
    7: (("2S4", 6),),
    11: (("SL2(3)", 2), ("SL2(5)", 10)),
    19: (("SL2(5)", 6),),
    23: (("2S4", 2),),
    29: (("SL2(5)", 4),),
    59: (("SL2(5)", 2),),
}


@dataclass(frozen=True)
class ClassificationInput:
    p: int
    q: int
    levi: str  # "psl" or "pgl"
    z_order: int
    m: int = 2
    qi_in_zg: Optional[bool] = None
    qi0_in_zg: Optional[bool] = None
    qi0_nontrivial: Optional[bool] = None
    zmi_in_zg: Optional[bool] = None

    def validate(self):
        q, p = self.q, self.p
        if p < 2 or q < 2 or self.z_order < 1 or self.m < 2:
            raise InvalidInput("bad numeric parameters")
        qq = q
        while qq % p == 0:
            qq //= p
        if qq != 1:
            raise InvalidInput("q = %d is not a power of p = %d" % (q, p))
        if self.levi not in ("psl", "pgl"):
            raise InvalidInput("levi must be 'psl' or 'pgl'")
        flags = (self.qi_in_zg, self.qi0_in_zg, self.qi0_nontrivial,
                 self.zmi_in_zg)
        if p == 2 or self.levi == "psl":
            if any(f is not None for f in flags):
                raise InvalidInput("center flags only apply to pgl levi, p odd")
            return
        if q % 4 == 1:
            if self.qi_in_zg is None or self.qi0_in_zg is None:
                raise InvalidInput("q = 1 mod 4 needs qi_in_zg and qi0_in_zg")
            if self.zmi_in_zg is not None:
                raise InvalidInput("zmi_in_zg does not apply when q = 1 mod 4")
            if self.qi_in_zg and not self.qi0_in_zg:
                raise InvalidInput("qi_in_zg forces qi0_in_zg")
            if self.qi0_nontrivial is False and self.qi0_in_zg is False:
                raise InvalidInput("trivial Q0 is central")
        else:
            if self.zmi_in_zg is None:
                raise InvalidInput("q = 3 mod 4 needs zmi_in_zg")
            if self.qi_in_zg is not None or self.qi0_in_zg is not None \
                    or self.qi0_nontrivial is not None:
                raise InvalidInput("Q flags do not apply when q = 3 mod 4")


@dataclass(frozen=True)
class LatticeDescriptor:
    q: int
    case: str
    a0_order: int
    vertex_type: str
    covolume: Fraction
    delta0: Optional[int]
    exceptional: bool = False

    def to_json_dict(self):
        return {
            "q": self.q,
            "case": self.case,
            "a0_order": self.a0_order,
            "vertex_type": self.vertex_type,
            "covolume": "%d/%d" % (self.covolume.numerator,
                                   self.covolume.denominator),
            "delta0": self.delta0,
            "exceptional": self.exceptional,
        }


def _row(q, case, a0, vertex, delta0, exceptional=False):
    return LatticeDescriptor(
        q=q, case=case, a0_order=a0, vertex_type=vertex,
        covolume=Fraction(2, (q + 1) * a0), delta0=delta0,
        exceptional=exceptional)


def classify(inp):
    """All cocompact edge-transitive lattice shapes for the given data.

    Returns a list of LatticeDescriptor rows; empty means no such lattice.
    """
    inp.validate()
    q, z = inp.q, inp.z_order
    rows = []
    if inp.p == 2:
        rows.append(_row(q, "char2-cyclic", z,
                         "cyclic C_%d times center" % (q + 1), 1))
        return rows
    if inp.levi == "psl":
        if q % 4 == 3:
            rows.append(_row(q, "psl-q3mod4-normalizer", z,
                             "nonsplit torus normalizer, order %d"
                             % (2 * (q + 1) * z), 1))
        for name, k in EXCEPTIONAL_TABLE.get(q, ()):
            rows.append(_row(q, "exceptional-%s" % name, z * k // 2,
                             name, None, exceptional=True))
        return rows
    # pgl levi, p odd
    if q % 4 == 1:
        if not inp.qi0_in_zg:
            return rows
        delta_a = 2 if inp.qi_in_zg else 4
        rows.append(_row(q, "pgl-q1mod4-sylow", delta_a * z,
                         "Sylow-2 extension of the torus", delta_a))
        if inp.qi_in_zg:
            rows.append(_row(q, "pgl-q1mod4-central-sylow", z,
                             "central Sylow-2 with torus", 1))
        return rows
    delta_a = 2 if inp.zmi_in_zg else 4
    rows.append(_row(q, "pgl-q3mod4-torus-sylow", delta_a * z,
                     "torus with Sylow-2 extension", delta_a))
    if inp.zmi_in_zg:
        rows.append(_row(q, "pgl-q3mod4-central", z,
                         "torus with central 2-part", 1))
        rows.append(_row(q, "pgl-q3mod4-normalizer", z,
                         "nonsplit torus normalizer, order %d"
                         % (2 * (q + 1) * z), 1))
    return rows


def min_covolume(inp):
    """Smallest covolume over the generic classification rows.

    Returns (covolume, delta0).  Exceptional sporadic rows are excluded;
    when only those exist the minimum over them is returned with delta0
    None.  Raises MinUndefined when classify is empty.
    """
    rows = classify(inp)
    if not rows:
        raise MinUndefined("no edge-transitive lattice for this input")
    generic = [r for r in rows if not r.exceptional]
    if not generic:
        best = min(rows, key=lambda r: r.covolume)
        return best.covolume, None
    best = min(generic, key=lambda r: r.covolume)
    return best.covolume, best.delta0


# --- standard pairs -------------------------------------------------------

def _delta(spec):
    return Mat2.diag(spec, LaurentPoly.t(spec), LaurentPoly.one(spec))


def _diagonalizing_conjugator(spec, u):
    """g in SL2(F_q) with g^-1 u g diagonal; u must be a constant matrix
    with distinct eigenvalues in F_q (or already scalar, giving identity)."""
    a = u.a.constant_value()
    b = u.b.constant_value()
    c = u.c.constant_value()
    d = u.d.constant_value()
    if b.is_zero() and c.is_zero():
        return Mat2.identity(spec)
    tr = a + d
    # eigenvalues: roots of x^2 - tr x + 1
    lams = [spec.element(i) for i in range(spec.q)
            if (spec.element(i) * spec.element(i) - tr * spec.element(i)
                + spec.one).is_zero()]
    if len(lams) < 2:
        raise KindInadmissible("element is not split over F_q")
    cols = []
    for lam in lams[:2]:
        # eigenvector of [[a,b],[c,d]] for lam
        if not b.is_zero():
            cols.append((b, lam - a))
        elif not c.is_zero():
            cols.append((lam - d, c))
        else:
            cols.append((spec.one, spec.zero) if (a - lam).is_zero()
                        else (spec.zero, spec.one))
    det = cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]
    if det.is_zero():
        raise KindInadmissible("eigenvectors are dependent")
    s = det.inverse()
    g = Mat2(spec,
             LaurentPoly.const(cols[0][0]), LaurentPoly.const(cols[1][0] * s),
             LaurentPoly.const(cols[0][1]), LaurentPoly.const(cols[1][1] * s))
    return g


def build_standard_lattice(spec, kind):
    """Construct the standard (A1, A2) pair of a given kind.

    kind: "cyclic_p2", "torus_normalizer", "SL2(3)", "SL2(5)" or "2S4".
    Returns (a1, a2, delta, base_edge).  No success assertion is made here;
    run lubotzky_check on the result.
    """
    q = spec.q
    if kind == "cyclic_p2":
        if spec.p != 2:
            raise KindInadmissible("cyclic_p2 needs p = 2")
        a1 = nonsplit_torus(spec)
    elif kind == "torus_normalizer":
        if spec.p == 2:
            raise KindInadmissible("torus_normalizer needs odd p")
        a1 = torus_normalizer(spec)
    elif kind in ("SL2(3)", "SL2(5)", "2S4"):
        if spec.p == 2:
            raise KindInadmissible("exceptional kinds need odd p")
        h = find_subgroup_of_type(spec, kind)
        if h is None:
            raise KindInadmissible("%s does not embed at q = %d" % (kind, q))
        if h.order % (q + 1) != 0:
            raise KindInadmissible("order %d not divisible by q+1" % h.order)
        d0 = h.order // (q + 1)
        # align the copy: make some order-d0 element with F_q eigenvalues
        # diagonal, so the base-vertex stabilizers become diagonal
        pick = None
        for g in sorted(h.elements, key=lambda m: str(m)):
            if h.element_order(g) == d0:
                try:
                    conj = _diagonalizing_conjugator(spec, g)
                except KindInadmissible:
                    continue
                pick = conj
                break
        if pick is None:
            raise KindInadmissible("no split element of order %d" % d0)
        gi = pick.inv()
        a1 = FiniteGroup(spec,
                         frozenset(gi.mul(x).mul(pick) for x in h.elements))
    else:
        raise KindInadmissible("unknown kind %r" % kind)
    delta = _delta(spec)
    di = delta.inv()
    a2 = FiniteGroup(spec,
                     frozenset(delta.mul(x).mul(di) for x in a1.elements))
    return a1, a2, delta, Edge.base(spec)
