"""Homogeneous ideals: sums, products, intersections, colons, saturation,
truncation, dimension/height, Hilbert functions, graded pieces.

Each Ideal lazily caches its reduced Groebner basis and the invariants
derived from it; instances are immutable and the caches are idempotent, so
sharing across threads is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .groebner import (GroebnerBasis, groebner_basis, module_groebner,
                       normal_form, reduce_to_minimal_generators)
from .rings import Polynomial, PolynomialRing, monomials_of_degree

__all__ = [
    "Ideal",
    "HilbertData",
    "ideal_sum",
    "ideal_product",
    "ideal_intersection",
    "ideal_quotient",
    "saturate",
    "truncate",
    "krull_dim",
    "height",
    "hilbert",
    "graded_piece_dim",
    "free_module_piece_dim",
]

_ELIM_VAR = "@t"  # cannot clash: parser identifiers never contain '@'


class Ideal:
    """Homogeneous ideal of a graded polynomial ring."""

    def __init__(self, generators, ring: PolynomialRing = None, *,
                 known_height: int = None):
        gens = [g for g in generators if g is not None and not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("empty generating set needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators live in different rings")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.gens = tuple(gens)
        self._gb = None
        self._min_gens = None
        self._dim = None
        self._numerator = None
        if known_height is not None:
            # caller-certified invariant (see hypersurface lifts)
            self._dim = ring.nvars - known_height

    # -- basic structure -------------------------------------------------------
    def groebner_basis(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(list(self.gens), self.ring)
        return self._gb

    def min_gens(self) -> tuple:
        """A minimal homogeneous generating set."""
        if self._min_gens is None:
            self._min_gens = tuple(
                reduce_to_minimal_generators(list(self.groebner_basis()), self.ring))
        return self._min_gens

    def min_gen_degrees(self) -> tuple:
        return tuple(sorted(g.degree() for g in self.min_gens()))

    def is_zero(self) -> bool:
        return len(self.groebner_basis()) == 0

    def is_unit(self) -> bool:
        return self.groebner_basis().is_unit()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.groebner_basis())

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner_basis()).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner_basis())

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return (self.ring == other.ring
                and self.groebner_basis().elements == other.groebner_basis().elements)

    __hash__ = None

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens[:8])
        if len(self.gens) > 8:
            inside += ", ..."
        return f"Ideal({inside})"

    # -- arithmetic --------------------------------------------------------------
    def __add__(self, other):
        other = _as_ideal(other, self.ring)
        _same_ring(self, other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other):
        other = _as_ideal(other, self.ring)
        _same_ring(self, other)
        return Ideal([f * g for f in self.gens for g in other.gens], self.ring)

    __rmul__ = __mul__

    def intersection(self, other: "Ideal") -> "Ideal":
        """I  cap  J, by eliminating t from t*I + (1-t)*J."""
        other = _as_ideal(other, self.ring)
        _same_ring(self, other)
        if self.is_zero() or other.is_zero():
            return Ideal([], self.ring)
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        ext = self.ring.extended(_ELIM_VAR)
        t = ext.variable(0)
        one_minus_t = ext.one() - t
        raised = [t * _lift(f, ext) for f in self.gens]
        raised += [one_minus_t * _lift(g, ext) for g in other.gens]
        gb = groebner_basis(raised, ext)
        comps = []
        for g in gb:
            if all(e[0] == 0 for e in g.exponents()):
                comps.extend(_homogeneous_components(_drop_first_var(g, self.ring)))
        return Ideal(comps, self.ring)

    def quotient(self, other, engine: str = "intersection") -> "Ideal":
        """Colon ideal I : J = {f : f*J inside I}."""
        other = _as_ideal(other, self.ring)
        _same_ring(self, other)
        if other.is_zero():
            raise ValueError("colon by the zero ideal")
        if engine == "intersection":
            parts = []
            for g in other.min_gens():
                meet = self.intersection(Ideal([g], self.ring))
                parts.append(Ideal([h.exact_divide(g) for h in meet.groebner_basis()],
                                   self.ring))
            result = parts[0]
            for p in parts[1:]:
                result = result.intersection(p)
            return result
        if engine == "syzygy":
            return _quotient_syzygy(self, other)
        if engine == "monomial":
            return _quotient_monomial(self, other)
        raise ValueError(f"unknown colon engine {engine!r}")

    def saturation(self, other, engine: str = "intersection") -> "Ideal":
        """Union of the colons I : J^n, by iterating until stable."""
        current = self
        for _ in range(200):
            nxt = current.quotient(other, engine=engine)
            if nxt == current:
                return current
            current = nxt
        raise RuntimeError("saturation did not stabilize")

    def truncate(self, j: int) -> "Ideal":
        """Subideal generated by all forms of degree at most j.

        The degree-e piece of an ideal only involves generators of degree
        at most e, so filtering any generating set by degree is exact.
        """
        if j < 0:
            return Ideal([], self.ring)
        kept = [g for g in self.gens if g.degree() <= j]
        if len(kept) == len(self.gens):
            return self
        return Ideal(kept, self.ring)

    # -- dimension / Hilbert data ---------------------------------------------
    def krull_dim(self) -> int:
        """Krull dimension of S/I (combinatorial, from the initial ideal)."""
        if self._dim is None:
            if self.is_unit():
                raise ValueError("the unit ideal has no dimension")
            supports = [frozenset(i for i, e in enumerate(exps) if e)
                        for exps in self._leading_exponents()]
            n = self.ring.nvars
            self._dim = _max_independent_set(supports, n)
        return self._dim

    def height(self) -> int:
        return self.ring.nvars - self.krull_dim()

    def _leading_exponents(self):
        unpack = self.ring.order.unpack
        return [unpack(g.lm()) for g in self.groebner_basis()]

    def hilbert_numerator(self) -> tuple:
        """Numerator of the Hilbert series of S/I over (1-t)^nvars."""
        if self._numerator is None:
            if self.is_unit():
                self._numerator = (0,)
            else:
                gens = _minimalize_exponents(self._leading_exponents())
                self._numerator = tuple(_kpoly(tuple(sorted(gens))))
        return self._numerator

    def hilbert_function(self, d: int) -> int:
        """dim_k (S/I)_d."""
        if d < 0:
            return 0
        n = self.ring.nvars
        K = self.hilbert_numerator()
        return sum(K[i] * _binom(d - i + n - 1, n - 1)
                   for i in range(min(len(K), d + 1)))

    def hilbert(self, max_degree: int = None) -> "HilbertData":
        return hilbert(self, max_degree)

    def degree(self) -> int:
        """Multiplicity e(S/I) (for Artinian quotients: the k-dimension)."""
        return self.hilbert(0).degree

    def graded_piece_dim(self, d: int) -> int:
        """dim_k I_d, counting degree-d monomials in the initial ideal."""
        if d < 0:
            return 0
        lead = self._leading_exponents()
        count = 0
        unpack = self.ring.order.unpack
        for m in monomials_of_degree(self.ring, d):
            exps = unpack(m)
            if any(all(a <= b for a, b in zip(le, exps)) for le in lead):
                count += 1
        return count

    def graded_piece_basis(self, d: int) -> list:
        """Echelonized vector-space basis of the graded piece I_d."""
        ring = self.ring
        cols = monomials_of_degree(ring, d)
        col_index = {m: i for i, m in enumerate(cols)}
        rows = []
        for g in self.groebner_basis():
            dg = g.degree()
            if dg > d:
                continue
            for m in monomials_of_degree(ring, d - dg):
                rows.append([g.terms.get(c - m, 0) for c in cols])
        if not rows:
            return []
        if ring.field.char:
            red, pivots = linalg.rref_mod_p(rows, ring.field.char)
            red = red.tolist()
        else:
            red, pivots = linalg.rref_fractions(rows)
        basis = []
        for row in red:
            terms = {cols[j]: ring.field.coerce(c) for j, c in enumerate(row) if c}
            if terms:
                basis.append(Polynomial(ring, terms))
        return basis


# ---------------------------------------------------------------------------
# free functions mirroring the operations

def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    return I.intersection(J)


def ideal_quotient(I: Ideal, J, engine: str = "intersection") -> Ideal:
    return I.quotient(J, engine=engine)


def saturate(I: Ideal, J, engine: str = "intersection") -> Ideal:
    return I.saturation(J, engine=engine)


def truncate(I: Ideal, j: int) -> Ideal:
    return I.truncate(j)


def krull_dim(I: Ideal) -> int:
    return I.krull_dim()


def height(I: Ideal) -> int:
    return I.height()


def graded_piece_dim(I: Ideal, d: int) -> int:
    return I.graded_piece_dim(d)


def free_module_piece_dim(shifts, d: int, nvars: int) -> int:
    """dim_k of the degree-d piece of  +_i S(-a_i)  in nvars variables."""
    return sum(_binom(d - a + nvars - 1, nvars - 1) for a in shifts)


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series data of S/I.

    `numerator` is over (1-t)^nvars, `hvector` is the numerator in lowest
    terms, over (1-t)^dimension; for Artinian quotients the h-vector equals
    the Hilbert function.  `degree` is the multiplicity, the h-vector sum.
    """

    dimension: int
    hvector: tuple
    degree: int
    numerator: tuple
    hilbert_function: tuple

    def __str__(self):
        return (f"dim {self.dimension}, degree {self.degree}, "
                f"h-vector {self.hvector}")


def hilbert(I: Ideal, max_degree: int = None) -> HilbertData:
    n = I.ring.nvars
    K = list(I.hilbert_numerator())
    if I.is_unit():
        hf = tuple(0 for _ in range((max_degree or 0) + 1))
        return HilbertData(-1, (), 0, (0,), hf)
    dim = I.krull_dim()
    hvec = K[:]
    for _ in range(n - dim):
        # exact division by (1 - t): partial sums, last must vanish
        sums = list(itertools.accumulate(hvec))
        if sums and sums[-1] != 0:
            raise ArithmeticError("Hilbert numerator not divisible by (1 - t)")
        hvec = sums[:-1] if sums else []
    while hvec and hvec[-1] == 0:
        hvec.pop()
    if max_degree is None:
        max_degree = max(len(K) - 1, len(hvec) - 1, 0)
    hf = tuple(I.hilbert_function(d) for d in range(max_degree + 1))
    return HilbertData(dim, tuple(hvec), sum(hvec), tuple(K), hf)


# ---------------------------------------------------------------------------
# internals

def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError("ideals over different rings")


def _as_ideal(obj, ring) -> Ideal:
    if isinstance(obj, Ideal):
        return obj
    if isinstance(obj, Polynomial):
        return Ideal([obj], ring)
    raise TypeError(f"cannot interpret {obj!r} as an ideal")


def _lift(f: Polynomial, ext: PolynomialRing) -> Polynomial:
    pack, unpack = ext.order.pack, f.ring.order.unpack
    return Polynomial(ext, {pack((0,) + unpack(m)): c for m, c in f.terms.items()})


def _drop_first_var(f: Polynomial, base: PolynomialRing) -> Polynomial:
    pack, unpack = base.order.pack, f.ring.order.unpack
    terms = {}
    for m, c in f.terms.items():
        exps = unpack(m)
        if exps[0] != 0:
            raise ValueError("term still involves the eliminated variable")
        terms[pack(exps[1:])] = base.field.coerce(c)
    return Polynomial(base, terms)


def _homogeneous_components(f: Polynomial) -> list:
    if f.is_zero():
        return []
    deg = f.ring.order.degree
    buckets = {}
    for m, c in f.terms.items():
        buckets.setdefault(deg(m), {})[m] = c
    return [Polynomial(f.ring, terms) for _, terms in sorted(buckets.items())]


def _quotient_syzygy(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the elimination coordinate of a module Groebner basis.

    In S^(r+1) with r = #min gens of J, the submodule generated by
    w0 = sum_i b_i e_i + e_r  and  a e_i for a over a generating set of I
    meets the last coordinate exactly in (I : J) e_r.
    """
    ring = I.ring
    bs = list(J.min_gens())
    r = len(bs)
    D = max(b.degree() for b in bs)
    shifts = [D - b.degree() for b in bs] + [D]
    w0 = {(r, 0): ring.field.one()}
    for i, b in enumerate(bs):
        for m, c in b.terms.items():
            w0[(i, m)] = c
    elements = [w0]
    for a in I.min_gens():
        for i in range(r):
            elements.append({(i, m): c for m, c in a.terms.items()})
    basis = module_groebner(elements, shifts, ring)
    out = []
    for elem in basis:
        if all(k[0] == r for k in elem):
            out.append(Polynomial(ring, {m: c for (_, m), c in elem.items()}))
    return Ideal(out, ring)


def _quotient_monomial(I: Ideal, J: Ideal) -> Ideal:
    """Combinatorial colon for monomial ideals."""
    if not (I.is_monomial() and J.is_monomial()):
        raise ValueError("monomial colon requires monomial ideals")
    ring = I.ring
    unpack, pack = ring.order.unpack, ring.order.pack
    gens_i = [unpack(g.lm()) for g in I.groebner_basis()]
    result = None
    for b in J.groebner_basis():
        eb = unpack(b.lm())
        quotient_gens = [pack([max(a - x, 0) for a, x in zip(m, eb)]) for m in gens_i]
        part = [Polynomial(ring, {m: ring.field.one()}) for m in quotient_gens]
        part_ideal = Ideal(part, ring)
        result = part_ideal if result is None else _monomial_meet(result, part_ideal)
    return result


def _monomial_meet(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    unpack, pack = ring.order.unpack, ring.order.pack
    one = ring.field.one()
    gens = []
    for a in I.groebner_basis():
        ea = unpack(a.lm())
        for b in J.groebner_basis():
            eb = unpack(b.lm())
            gens.append(Polynomial(ring, {pack([max(x, y) for x, y in zip(ea, eb)]): one}))
    return Ideal(gens, ring)


def _max_independent_set(supports, n: int) -> int:
    """Largest Y (set of variables) such that no support is inside Y."""
    if not supports:
        return n
    if any(not s for s in supports):
        raise ValueError("the unit ideal has no dimension")
    for size in range(n, 0, -1):
        for Y in itertools.combinations(range(n), size):
            ys = frozenset(Y)
            if not any(s <= ys for s in supports):
                return size
    return 0


def _minimalize_exponents(exps):
    exps = sorted(set(exps), key=sum)
    minimal = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(m, e)) for m in minimal):
            minimal.append(e)
    return minimal


@lru_cache(maxsize=None)
def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or a < b:
        return 0
    import math
    return math.comb(a, b)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _kpoly(gens: tuple) -> list:
    """Numerator of the Hilbert series of S/(monomial ideal) over (1-t)^n.

    Pivot recursion on the exact sequence
    0 -> S/(M : x_j)(-1) -> S/M -> S/(M + x_j) -> 0.
    """
    if not gens:
        return [1]
    n = len(gens[0])
    supports = [[i for i, e in enumerate(g) if e] for g in gens]
    # base case: pairwise disjoint supports -> product of (1 - t^deg)
    seen = set()
    disjoint = True
    for s in supports:
        for i in s:
            if i in seen:
                disjoint = False
                break
            seen.add(i)
        if not disjoint:
            break
    if disjoint:
        out = [1]
        for g in gens:
            d = sum(g)
            factor = [0] * (d + 1)
            factor[0], factor[d] = 1, -1
            out = _poly_mul(out, factor)
        return out
    counts = [0] * n
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    j = max(range(n), key=lambda i: counts[i])
    # M + (x_j)
    plus = [g for g in gens if g[j] == 0]
    e_j = tuple(1 if i == j else 0 for i in range(n))
    plus.append(e_j)
    plus = _minimalize_exponents(plus)
    # M : x_j
    colon = [tuple(e - 1 if i == j and e else e for i, e in enumerate(g)) for g in gens]
    colon = _minimalize_exponents(colon)
    a = _kpoly(tuple(sorted(plus)))
    b = _kpoly(tuple(sorted(colon)))
    out = [0] * max(len(a), len(b) + 1)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i + 1] += x
    while out and out[-1] == 0:
        out.pop()
    return out
