"""Graded polynomial rings over exact fields.

Coefficients live in QQ (`fractions.Fraction`) or a prime field GF(p)
(ints reduced to [0, p)).  Monomials are exponent vectors packed into a
single integer so that integer addition is monomial multiplication and
integer comparison is the ring's term order.  All values are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Field",
    "QQ",
    "GF",
    "DEFAULT_PRIME",
    "MonomialOrder",
    "grevlex",
    "lex",
    "elimination_block",
    "PolynomialRing",
    "Polynomial",
    "ParseError",
    "monomials_of_degree",
    "random_form",
]

DEFAULT_PRIME = 32003  # standard large-prime stand-in for an infinite field

# Exponents and prefix sums are stored in 12-bit fields; total degrees in any
# computation here stay far below 4095.
_BITS = 12
_MASK = (1 << _BITS) - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any sane characteristic
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Exact coefficient field: characteristic 0 means QQ, p means GF(p)."""

    char: int = 0

    def __post_init__(self):
        if self.char and not _is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.char != 0

    def coerce(self, a):
        if self.char:
            return int(a) % self.char
        if isinstance(a, Fraction):
            return a
        return Fraction(a)

    def zero(self):
        return 0 if self.char else Fraction(0)

    def one(self):
        return 1 if self.char else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if self.char:
            if a % self.char == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.char - 2, self.char)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class MonomialOrder:
    """Total order on exponent vectors, realized through packed integers.

    Packings are chosen so that packed(a) + packed(b) = packed(a*b) and the
    plain integer comparison of packed values agrees with the order.
    """

    kind = "abstract"

    def __init__(self, nvars: int):
        self.nvars = nvars

    # -- required interface -------------------------------------------------
    def pack(self, exps) -> int:
        raise NotImplementedError

    def unpack(self, m: int) -> tuple:
        raise NotImplementedError

    def degree(self, m: int) -> int:
        raise NotImplementedError

    # -- shared helpers ------------------------------------------------------
    def one(self) -> int:
        return 0

    def variable(self, i: int) -> int:
        e = [0] * self.nvars
        e[i] = 1
        return self.pack(e)

    def divides(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return all(x <= y for x, y in zip(ea, eb))

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    def gcd(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([min(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class _GrevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    Packed fields, most significant first, are the prefix sums
    e_1, e_1+e_2, ..., e_1+...+e_n; the top field is the total degree.
    Comparing these integers compares degree first, then prefers the
    monomial with the smaller exponent on the last variable, and so on.
    """

    kind = "grevlex"

    def pack(self, exps) -> int:
        m = 0
        s = 0
        shift = 0
        for e in exps:
            s += e
            m |= s << shift
            shift += _BITS
        return m

    def unpack(self, m: int) -> tuple:
        prev = 0
        out = []
        for _ in range(self.nvars):
            s = m & _MASK
            out.append(s - prev)
            prev = s
            m >>= _BITS
        return tuple(out)

    def degree(self, m: int) -> int:
        return (m >> (_BITS * (self.nvars - 1))) & _MASK


class _Lex(MonomialOrder):
    """Lexicographic order with x_1 > x_2 > ... ; a spare low field holds
    the total degree so it stays O(1) to read."""

    kind = "lex"

    def pack(self, exps) -> int:
        # field 0 is reserved for the total degree
        m = 0
        total = 0
        for i, e in enumerate(exps):
            m |= e << (_BITS * (self.nvars - i))
            total += e
        return m | total

    def unpack(self, m: int) -> tuple:
        return tuple((m >> (_BITS * (self.nvars - i))) & _MASK for i in range(self.nvars))

    def degree(self, m: int) -> int:
        return m & _MASK


class _Block(MonomialOrder):
    """Elimination order: grevlex on the first `block` variables dominates,
    ties broken by grevlex on the rest.  Eliminates the first block."""

    kind = "elimination-block"

    def __init__(self, nvars: int, block: int):
        if not 0 < block < nvars:
            raise ValueError("block size must be strictly between 0 and nvars")
        super().__init__(nvars)
        self.block = block

    def pack(self, exps) -> int:
        exps = list(exps)
        k, n = self.block, self.nvars
        m = 0
        # low part: grevlex packing of the tail block
        s = 0
        for i, e in enumerate(exps[k:]):
            s += e
            m |= s << (_BITS * i)
        # high part: grevlex packing of the leading block
        s = 0
        for i, e in enumerate(exps[:k]):
            s += e
            m |= s << (_BITS * (n - k + i))
        return m

    def unpack(self, m: int) -> tuple:
        k, n = self.block, self.nvars
        tail_fields = [(m >> (_BITS * i)) & _MASK for i in range(n - k)]
        head_fields = [(m >> (_BITS * (n - k + i))) & _MASK for i in range(k)]
        out = []
        prev = 0
        for s in head_fields:
            out.append(s - prev)
            prev = s
        prev = 0
        tail = []
        for s in tail_fields:
            tail.append(s - prev)
            prev = s
        return tuple(out + tail)

    def degree(self, m: int) -> int:
        k, n = self.block, self.nvars
        head = (m >> (_BITS * (n - 1))) & _MASK
        tail = (m >> (_BITS * (n - k - 1))) & _MASK if n > k else 0
        return head + tail


def grevlex(nvars: int) -> MonomialOrder:
    return _GrevLex(nvars)


def lex(nvars: int) -> MonomialOrder:
    return _Lex(nvars)


def elimination_block(nvars: int, block: int) -> MonomialOrder:
    return _Block(nvars, block)


_ORDER_FACTORIES = {
    "grevlex": lambda n, b: _GrevLex(n),
    "lex": lambda n, b: _Lex(n),
    "elimination-block": lambda n, b: _Block(n, b),
}


class PolynomialRing:
    """k[x_1,...,x_d] with the standard grading (every variable degree 1)."""

    def __init__(self, variables, field: Field = QQ, order: str = "grevlex",
                 block: int = 0):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if not variables:
            raise ValueError("need at least one variable")
        self.variables = variables
        self.field = field
        self.order_kind = order
        self.block = block
        try:
            self.order = _ORDER_FACTORIES[order](len(variables), block)
        except KeyError:
            raise ValueError(f"unknown monomial order {order!r}") from None
        self._var_index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing)
                and self.variables == other.variables
                and self.field == other.field
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.variables)}] ({self.order_kind})"

    # -- element constructors ------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: self.field.one()})

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {0: c} if c else {})

    def variable(self, name_or_index) -> "Polynomial":
        i = (self._var_index[name_or_index]
             if isinstance(name_or_index, str) else name_or_index)
        return Polynomial(self, {self.order.variable(i): self.field.one()})

    def gens(self) -> tuple:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.field.coerce(coeff)
        if not c:
            return self.zero()
        return Polynomial(self, {self.order.pack(exps): c})

    def from_exponent_dict(self, d) -> "Polynomial":
        terms = {}
        for exps, c in d.items():
            c = self.field.coerce(c)
            if c:
                terms[self.order.pack(exps)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _parse(text, self)

    def with_order(self, order: str, block: int = 0) -> "PolynomialRing":
        return PolynomialRing(self.variables, self.field, order, block)

    def extended(self, extra: str, order: str = "elimination-block") -> "PolynomialRing":
        """Ring with one fresh variable prepended (used for elimination)."""
        if extra in self.variables:
            raise ValueError(f"variable {extra!r} already present")
        return PolynomialRing((extra,) + self.variables, self.field,
                              order, 1 if order == "elimination-block" else 0)


class Polynomial:
    """Sparse polynomial: dict packed-monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> int:
        """Leading monomial (packed) under the ring order."""
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        deg = self.ring.order.degree
        return max(deg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        deg = self.ring.order.degree
        it = iter(self.terms)
        d0 = deg(next(it))
        return all(deg(m) == d0 for m in it)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def sorted_terms(self):
        """(exponent tuple, coefficient) pairs, strictly descending."""
        unpack = self.ring.order.unpack
        return [(unpack(m), c) for m, c in sorted(self.terms.items(), reverse=True)]

    def exponents(self) -> list:
        unpack = self.ring.order.unpack
        return [unpack(m) for m in sorted(self.terms, reverse=True)]

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        self._check(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, 0), c) if m in out else c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            from fractions import Fraction as _F
            if isinstance(other, (int, _F)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        fld = self.ring.field
        p = fld.char
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        if p:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = m1 + m2
                    out[m] = (out.get(m, 0) + c1 * c2) % p
        else:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.field.coerce(c)
        if not c:
            return self.ring.zero()
        mul = self.ring.field.mul
        return Polynomial(self.ring, {m: mul(cc, c) for m, cc in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift_monomial(self, m: int, c=1):
        """Multiply by the packed monomial m and coefficient c."""
        fld = self.ring.field
        c = fld.coerce(c)
        mul = fld.mul
        return Polynomial(self.ring, {mm + m: mul(cc, c) for mm, cc in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def primitive(self):
        """Over QQ: clear denominators and divide by the integer content,
        normalizing the leading coefficient to be positive."""
        if self.ring.field.char or not self.terms:
            return self
        import math
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        if self.lc() < 0:
            scale = -scale
        return self.scale(scale)

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """Exact quotient self/g; raises if g does not divide exactly."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        fld = self.ring.field
        glm, glc = g.lm(), g.lc()
        rem = dict(self.terms)
        quot: dict = {}
        divides = self.ring.order.divides
        while rem:
            m = max(rem)
            if not divides(glm, m):
                raise ValueError("not an exact multiple")
            q = m - glm
            c = fld.div(rem[m], glc)
            quot[q] = c
            for mm, cc in g.terms.items():
                key = mm + q
                s = fld.sub(rem.get(key, fld.zero()), fld.mul(cc, c))
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return Polynomial(self.ring, quot)

    # -- equality / hashing / display ------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        vars_ = self.ring.variables
        unpack = self.ring.order.unpack
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            exps = unpack(m)
            factors = []
            for v, e in zip(vars_, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                coeff = str(c)
            elif c == 1:
                coeff = body
            elif c == -1:
                coeff = f"-{body}"
            else:
                coeff = f"{c}*{body}"
            parts.append(coeff)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.ring = ring
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse_expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.parse_term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.parse_term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            base = base ** int(tok[1])
        return base

    def parse_atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if self.ring.field.char:
                    num = int(value) % self.ring.field.char
                    return self.ring.constant(self.ring.field.div(
                        num, self.ring.field.coerce(int(den[1]))))
                return self.ring.constant(Fraction(int(value), int(den[1])))
            return self.ring.constant(int(value))
        if kind == "name":
            self.take()
            if value not in self.ring._var_index:
                raise ParseError(f"unknown variable {value!r}", pos)
            return self.ring.variable(value)
        if kind == "(":
            self.take()
            inner = self.parse_expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def _parse(text: str, ring: PolynomialRing) -> Polynomial:
    parser = _Parser(_tokenize(text), ring)
    poly = parser.parse_expr()
    parser.take("end")
    return poly


# ---------------------------------------------------------------------------
# monomial enumeration and seeded random forms

def monomials_of_degree(ring: PolynomialRing, d: int) -> list:
    """All packed monomials of total degree d, sorted descending."""
    n = ring.nvars
    pack = ring.order.pack
    out = []
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + n - 2 - prev)
        out.append(pack(exps))
    out.sort(reverse=True)
    return out


def random_form(ring: PolynomialRing, degree: int, seed) -> Polynomial:
    """Homogeneous form of the given degree with coefficients drawn
    uniformly from a prime field; deterministic in (ring, degree, seed)."""
    if not ring.field.is_prime_field:
        raise ValueError("random forms require a prime field "
                         "(rational coefficients would grow without bound)")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    p = ring.field.char
    rng = random.Random(f"{p}|{ring.nvars}|{degree}|{seed}")
    monos = monomials_of_degree(ring, degree)
    while True:
        terms = {}
        for m in monos:
            c = rng.randrange(p)
            if c:
                terms[m] = c
        if terms:
            return Polynomial(ring, terms)
