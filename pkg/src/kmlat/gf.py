"""Exact arithmetic in small finite fields F_q and their quadratic extensions.

Elements are indexed by integer codes 0..q-1: the code's base-p digits,
least significant first, are the coefficients of the element in the power
basis of the chosen modulus.  All arithmetic goes through lazily built
lookup tables, so operations after warm-up are O(1) dictionary-free lookups.
"""

from __future__ import annotations

from .errors import DegreeTooLarge, DivisionByZero, NonPrime, SpecMismatch

Q_CAP = 512
DEGREE_CAP = 8


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod(coeffs, modulus, p):
    """Reduce a coefficient list modulo the monic polynomial `modulus`."""
    coeffs = list(coeffs)
    a = len(modulus) - 1
    for i in range(len(coeffs) - 1, a - 1, -1):
        top = coeffs[i] % p
        if top:
            for j in range(a + 1):
                coeffs[i - a + j] = (coeffs[i - a + j] - top * modulus[j]) % p
        coeffs[i] = 0
    return [c % p for c in coeffs[:a]] + [0] * max(0, a - len(coeffs))


def _poly_mul(u, v, p):
    out = [0] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            div = [(code // p ** i) % p for i in range(d)] + [1]
            # long division remainder of modulus by div
            rem = list(modulus)
            for i in range(len(rem) - 1, d - 1, -1):
                top = rem[i]
                if top:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - top * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


class FieldSpec:
    """Description of F_{p^a} together with its arithmetic tables."""

    __slots__ = ("p", "a", "modulus", "_add", "_mul", "_inv", "_elems",
                 "_ext_modulus")

    def __init__(self, p, a, modulus):
        self.p = p
        self.a = a
        self.modulus = tuple(modulus)
        self._add = None
        self._mul = None
        self._inv = None
        self._elems = None
        self._ext_modulus = None

    @property
    def q(self):
        return self.p ** self.a

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.a, self.modulus)
                == (other.p, other.a, other.modulus))

    def __hash__(self):
        return hash((self.p, self.a, self.modulus))

    def __repr__(self):
        return "FieldSpec(%s)" % self.short_str()

    def short_str(self):
        return "%d^%d/%s" % (self.p, self.a,
                             ",".join(str(c) for c in self.modulus))

    def _coeffs_of(self, code):
        p = self.p
        return tuple((code // p ** i) % p for i in range(self.a))

    def _code_of(self, coeffs):
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def _build_tables(self):
        q, p = self.q, self.p
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        coeffs = [self._coeffs_of(i) for i in range(q)]
        for i in range(q):
            for j in range(i, q):
                s = tuple((x + y) % p for x, y in zip(coeffs[i], coeffs[j]))
                add[i][j] = add[j][i] = self._code_of(s)
                prod = _poly_mul(list(coeffs[i]), list(coeffs[j]), p)
                prod = _poly_mod(prod, self.modulus, p)
                mul[i][j] = mul[j][i] = self._code_of(prod)
        inv = [0] * q
        for i in range(1, q):
            x = i
            # x^(q-2) by repeated multiplication through the table
            acc = 1  # code of one
            e = q - 2
            base = x
            while e:
                if e & 1:
                    acc = mul[acc][base]
                base = mul[base][base]
                e >>= 1
            inv[i] = acc
        self._add, self._mul, self._inv = add, mul, inv

    def _tables(self):
        if self._add is None:
            self._build_tables()
        return self._add, self._mul, self._inv

    def element(self, code):
        code = int(code) % self.q
        if self._elems is None:
            self._elems = [FieldElement(self, i) for i in range(self.q)]
        return self._elems[code]

    def elements(self):
        return [self.element(i) for i in range(self.q)]

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def ext_modulus(self):
        """x^2 + c1*x + c0, the least irreducible quadratic over this field.

        Returns (c0, c1) as FieldElements.  Ordered by (code(c1), code(c0)).
        A quadratic over F_q is irreducible iff it has no root in F_q.
        """
        if self._ext_modulus is None:
            _, mul, _ = self._tables()
            add = self._add
            found = None
            for c1 in range(self.q):
                for c0 in range(self.q):
                    has_root = False
                    for r in range(self.q):
                        v = add[add[mul[r][r]][mul[c1][r]]][c0]
                        if v == 0:
                            has_root = True
                            break
                    if not has_root:
                        found = (c0, c1)
                        break
                if found:
                    break
            self._ext_modulus = (self.element(found[0]), self.element(found[1]))
        return self._ext_modulus


_FIELD_CACHE = {}


def make_field(p, a=1):
    """Build F_{p^a} with the least monic irreducible modulus."""
    p, a = int(p), int(a)
    if not _is_prime(p):
        raise NonPrime("p = %d is not prime" % p)
    if a < 1 or a > DEGREE_CAP:
        raise DegreeTooLarge("extension degree %d outside 1..%d" % (a, DEGREE_CAP))
    if p ** a > Q_CAP:
        raise DegreeTooLarge("q = %d exceeds cap %d" % (p ** a, Q_CAP))
    key = (p, a)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if a == 1:
        modulus = (0, 1)  # the polynomial x; elements are just residues
    else:
        modulus = None
        for code in range(p ** a):
            cand = [(code // p ** i) % p for i in range(a)] + [1]
            if _is_irreducible(cand, p):
                modulus = tuple(cand)
                break
        assert modulus is not None
    spec = FieldSpec(p, a, modulus)
    _FIELD_CACHE[key] = spec
    return spec


def parse_field(text):
    """Inverse of FieldSpec.short_str, e.g. "2^2/1,1,1"."""
    head, _, tail = text.partition("/")
    p_s, _, a_s = head.partition("^")
    p, a = int(p_s), int(a_s) if a_s else 1
    spec = make_field(p, a)
    if tail:
        want = tuple(int(c) for c in tail.split(","))
        if want != spec.modulus:
            raise SpecMismatch("modulus %s is not the canonical one %s"
                               % (want, spec.modulus))
    return spec


class FieldElement:
    """An element of F_q, identified by its integer code."""

    __slots__ = ("spec", "code")

    def __init__(self, spec, code):
        self.spec = spec
        self.code = code

    @property
    def coeffs(self):
        return self.spec._coeffs_of(self.code)

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatch("elements of different fields")

    def __add__(self, other):
        self._check(other)
        add, _, _ = self.spec._tables()
        return self.spec.element(add[self.code][other.code])

    def __neg__(self):
        p = self.spec.p
        return self.spec.element(
            self.spec._code_of(tuple((-c) % p for c in self.coeffs)))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        _, mul, _ = self.spec._tables()
        return self.spec.element(mul[self.code][other.code])

    def inverse(self):
        if self.code == 0:
            raise DivisionByZero("inverse of zero")
        _, _, inv = self.spec._tables()
        return self.spec.element(inv[self.code])

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        _, mul, _ = self.spec._tables()
        acc, base = 1, self.code
        while e:
            if e & 1:
                acc = mul[acc][base]
            base = mul[base][base]
            e >>= 1
        return self.spec.element(acc)

    def is_zero(self):
        return self.code == 0

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.spec == other.spec and self.code == other.code)

    def __hash__(self):
        return hash((self.code, self.spec.p, self.spec.a))

    def __lt__(self, other):
        self._check(other)
        return self.code < other.code

    def __repr__(self):
        return "fe(%d)" % self.code


class ExtElement:
    """Element x + y*w of F_{q^2}, with w a root of the chosen quadratic."""

    __slots__ = ("spec", "x", "y")

    def __init__(self, spec, x, y):
        self.spec = spec
        self.x = x
        self.y = y

    def __add__(self, other):
        return ExtElement(self.spec, self.x + other.x, self.y + other.y)

    def __neg__(self):
        return ExtElement(self.spec, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # (x1 + y1 w)(x2 + y2 w) with w^2 = -c1 w - c0
        c0, c1 = self.spec.ext_modulus()
        yy = self.y * other.y
        x = self.x * other.x - yy * c0
        y = self.x * other.y + self.y * other.x - yy * c1
        return ExtElement(self.spec, x, y)

    def __pow__(self, e):
        e = int(e)
        acc = ExtElement(self.spec, self.spec.one, self.spec.zero)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_zero(self):
        return self.x.is_zero() and self.y.is_zero()

    def norm(self):
        """z * z^q, an element of the base field."""
        c0, c1 = self.spec.ext_modulus()
        # conj(x + yw) = x + y*(-c1 - w) = (x - y c1) - y w
        return (self.x - self.y * c1) * self.x + self.y * self.y * c0

    def __eq__(self, other):
        return (isinstance(other, ExtElement) and self.spec == other.spec
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash(("ext", self.x.code, self.y.code))

    def __repr__(self):
        return "ext(%d,%d)" % (self.x.code, self.y.code)


def ext_one(spec):
    return ExtElement(spec, spec.one, spec.zero)


def norm1_subgroup(spec):
    """All z in F_{q^2}* with z^(q+1) = 1; the kernel of the norm map.

    Returned in ascending (y, x) code order; always q+1 elements.
    """
    out = []
    one = ext_one(spec)
    for ycode in range(spec.q):
        for xcode in range(spec.q):
            z = ExtElement(spec, spec.element(xcode), spec.element(ycode))
            if z.is_zero():
                continue
            if z ** (spec.q + 1) == one:
                out.append(z)
    return out


def q_mod4(spec):
    """'even' for p = 2, else q mod 4 (1 or 3)."""
    if spec.p == 2:
        return "even"
    return spec.q % 4
