"""Reduced Groebner bases for ideals and submodules of free modules.

One Buchberger engine serves both the ring case (term keys are packed
monomials) and the module case (term keys are (position, monomial) pairs
under a position-over-term order).  Pairs are managed with the
Gebauer-Moeller criteria; the product criterion is applied only in the
ring case, where it is valid.

For homogeneous input processed degree by degree the engine also reports
which input elements were *not* reducible to zero by earlier ones - for a
homogeneous generating set fed in ascending degree order these survivors
form a minimal generating set (graded Nakayama).
"""

from __future__ import annotations

import heapq

from .rings import Polynomial, PolynomialRing

__all__ = [
    "groebner_basis",
    "normal_form",
    "reduce_to_minimal_generators",
    "module_groebner",
    "module_minimal_generators",
    "spair_check",
    "GroebnerBasis",
]


class _RingOps:
    is_module = False

    def __init__(self, order):
        self.order = order

    def heap_key(self, k):
        return -k

    def from_heap_key(self, hk):
        return -hk

    def sort_key(self, k):
        return k

    def position(self, k):
        return 0

    def monomial(self, k):
        return k

    def with_monomial(self, k, m):
        return m

    def lcm(self, k1, k2):
        return self.order.lcm(k1, k2)

    def coprime(self, k1, k2):
        return self.order.coprime(k1, k2)

    def degree(self, k):
        return self.order.degree(k)


class _ModuleOps:
    is_module = True

    def __init__(self, order, shifts):
        self.order = order
        self.shifts = shifts

    def heap_key(self, k):
        return (k[0], -k[1])

    def from_heap_key(self, hk):
        return (hk[0], -hk[1])

    def sort_key(self, k):
        return (-k[0], k[1])

    def position(self, k):
        return k[0]

    def monomial(self, k):
        return k[1]

    def with_monomial(self, k, m):
        return (k[0], m)

    def lcm(self, k1, k2):
        if k1[0] != k2[0]:
            return None
        return (k1[0], self.order.lcm(k1[1], k2[1]))

    def coprime(self, k1, k2):
        return False  # product criterion is not valid for modules

    def degree(self, k):
        return self.order.degree(k[1]) + self.shifts[k[0]]


def _lt(elem, ops):
    return max(elem, key=ops.sort_key)


class _Engine:
    """Mutable Buchberger state: basis entries with cached leading data
    plus a monotone reducer cache (new elements only ever extend it)."""

    def __init__(self, ops, field):
        self.ops = ops
        self.field = field
        self.unpack = ops.order.unpack
        self.lts = []        # leading keys
        self.lcs = []        # leading coefficients
        self.elems = []      # term dicts
        self.lt_exps = []    # unpacked exponents of the leading monomial
        self.buckets = {}    # position -> basis indices (module case)
        self.cache = {}      # term key -> (reducer index or -1, basis size)

    def add(self, elem, lt=None):
        ops = self.ops
        if lt is None:
            lt = _lt(elem, ops)
        idx = len(self.lts)
        self.lts.append(lt)
        self.lcs.append(elem[lt])
        self.elems.append(elem)
        self.lt_exps.append(self.unpack(ops.monomial(lt)))
        self.buckets.setdefault(ops.position(lt), []).append(idx)
        return idx

    def find_reducer(self, k):
        cached = self.cache.get(k)
        size = len(self.lts)
        if cached is not None:
            idx, upto = cached
            if idx >= 0:
                return idx
            if upto == size:
                return -1
            start = upto
        else:
            start = 0
        ops = self.ops
        bucket = self.buckets.get(ops.position(k))
        found = -1
        if bucket is not None:
            exps = self.unpack(ops.monomial(k))
            lt_exps = self.lt_exps
            for idx in bucket:
                if idx < start:
                    continue
                le = lt_exps[idx]
                hit = True
                for a, b in zip(le, exps):
                    if a > b:
                        hit = False
                        break
                if hit:
                    found = idx
                    break
        self.cache[k] = (found, size)
        return found

    def reduce(self, work):
        """Full normal form of the term dict `work` (consumed) against the
        current basis; returns (remainder, its leading key or None).

        Terms reach the remainder in strictly decreasing order, so the
        first one out is the lead."""
        out = {}
        lead = None
        if not work:
            return out, lead
        ops = self.ops
        p = self.field.char
        heap_key = ops.heap_key
        from_heap_key = ops.from_heap_key
        heappush, heappop = heapq.heappush, heapq.heappop
        heap = [heap_key(k) for k in work]
        heapq.heapify(heap)
        lts, lcs, elems = self.lts, self.lcs, self.elems
        is_module = ops.is_module
        while heap:
            k = from_heap_key(heappop(heap))
            c = work.get(k)
            if not c:
                continue
            ridx = self.find_reducer(k)
            if ridx < 0:
                out[k] = c
                if lead is None:
                    lead = k
                del work[k]
                continue
            lt, lc, elem = lts[ridx], lcs[ridx], elems[ridx]
            if is_module:
                mono = k[1] - lt[1]
                if p:
                    factor = c * pow(lc, p - 2, p) % p
                    for (pos, mm), cc in elem.items():
                        nk = (pos, mm + mono)
                        old = work.get(nk)
                        v = ((old or 0) - cc * factor) % p
                        if v:
                            work[nk] = v
                            if old is None:
                                heappush(heap, (pos, -(mm + mono)))
                        elif old is not None:
                            del work[nk]
                else:
                    factor = c / lc
                    for (pos, mm), cc in elem.items():
                        nk = (pos, mm + mono)
                        old = work.get(nk)
                        v = (old or 0) - cc * factor
                        if v:
                            work[nk] = v
                            if old is None:
                                heappush(heap, (pos, -(mm + mono)))
                        elif old is not None:
                            del work[nk]
            else:
                mono = k - lt
                if p:
                    factor = c * pow(lc, p - 2, p) % p
                    for mm, cc in elem.items():
                        nk = mm + mono
                        old = work.get(nk)
                        v = ((old or 0) - cc * factor) % p
                        if v:
                            work[nk] = v
                            if old is None:
                                heappush(heap, -nk)
                        elif old is not None:
                            del work[nk]
                else:
                    factor = c / lc
                    for mm, cc in elem.items():
                        nk = mm + mono
                        old = work.get(nk)
                        v = (old or 0) - cc * factor
                        if v:
                            work[nk] = v
                            if old is None:
                                heappush(heap, -nk)
                        elif old is not None:
                            del work[nk]
        return out, lead


def _normalize(elem, lt, field):
    """Monic over a prime field, primitive integer over QQ."""
    if not elem:
        return elem
    if field.char:
        lc = elem[lt]
        if lc == 1:
            return elem
        inv = pow(lc, field.char - 2, field.char)
        return {k: c * inv % field.char for k, c in elem.items()}
    import math
    den = 1
    for c in elem.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in elem.values():
        num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
    from fractions import Fraction
    scale = Fraction(den, num)
    if elem[lt] < 0:
        scale = -scale
    return {k: c * scale for k, c in elem.items()}


def _make_monic(elem, lt, field):
    if not elem:
        return elem
    lc = elem[lt]
    if lc == field.one():
        return elem
    inv = field.inv(lc)
    return {k: field.mul(c, inv) for k, c in elem.items()}


# ---------------------------------------------------------------------------
# pair bookkeeping (Gebauer-Moeller)

def _gm_update(engine, pairs, t, ops, events, lcm_exps):
    """Install basis element t into the pair set, pruning with the GM
    criteria.  `lcm_exps` caches unpacked lcm exponents per live pair."""
    lt_t = engine.lts[t]
    exps_t = engine.lt_exps[t]
    pos_t = ops.position(lt_t)
    cand = []
    for i in range(t):
        if ops.position(engine.lts[i]) != pos_t:
            continue
        exps_i = engine.lt_exps[i]
        cand.append((i, tuple(max(a, b) for a, b in zip(exps_i, exps_t))))
    alive = [True] * len(cand)
    coprime = []
    for pos, (i, le) in enumerate(cand):
        cop = (not ops.is_module) and all(
            a == 0 or b == 0 for a, b in zip(engine.lt_exps[i], exps_t))
        coprime.append(cop)
        if cop:
            continue
        for j, (i2, le2) in enumerate(cand):
            if j == pos or not alive[j]:
                continue
            if all(a <= b for a, b in zip(le2, le)):
                alive[pos] = False
                break
    pack = ops.order.pack
    for pos, (i, le) in enumerate(cand):
        if not alive[pos] or coprime[pos]:
            continue
        key = ops.with_monomial(lt_t, pack(le))
        pairs[(i, t)] = key
        lcm_exps[(i, t)] = le
        heapq.heappush(events, (ops.degree(key), 0, i, t))
    # prune old pairs whose lcm factors properly through lt_t
    for (i, j) in list(pairs):
        if j == t:
            continue
        key = pairs[(i, j)]
        if ops.position(key) != pos_t:
            continue
        le = lcm_exps[(i, j)]
        if all(a <= b for a, b in zip(exps_t, le)):
            li = tuple(max(a, b) for a, b in zip(engine.lt_exps[i], exps_t))
            lj = tuple(max(a, b) for a, b in zip(engine.lt_exps[j], exps_t))
            if li != le and lj != le:
                del pairs[(i, j)]
                del lcm_exps[(i, j)]


# ---------------------------------------------------------------------------
# the engine loop

def _buchberger(inputs, ops, field):
    """Returns (basis term dicts, survivors): survivors[i] is True when
    input i did not reduce to zero at the moment it was processed."""
    engine = _Engine(ops, field)
    events = []  # (degree, kind, a, b): pairs (kind 0) run before inputs
    for idx, elem in enumerate(inputs):
        if elem:
            heapq.heappush(events, (ops.degree(_lt(elem, ops)), 1, idx, -1))
    pairs = {}
    lcm_exps = {}
    survivors = [False] * len(inputs)
    p = field.char
    while events:
        deg, kind, a, b = heapq.heappop(events)
        if kind == 1:
            work = dict(inputs[a])
        else:
            if (a, b) not in pairs:
                continue
            l = pairs.pop((a, b))
            del lcm_exps[(a, b)]
            lt_a, lc_a, ea = engine.lts[a], engine.lcs[a], engine.elems[a]
            lt_b, lc_b, eb = engine.lts[b], engine.lcs[b], engine.elems[b]
            ma = ops.monomial(l) - ops.monomial(lt_a)
            mb = ops.monomial(l) - ops.monomial(lt_b)
            work = {}
            if ops.is_module:
                items_a = (((pos, mm + ma), cc) for (pos, mm), cc in ea.items())
                items_b = (((pos, mm + mb), cc) for (pos, mm), cc in eb.items())
            else:
                items_a = ((mm + ma, cc) for mm, cc in ea.items())
                items_b = ((mm + mb, cc) for mm, cc in eb.items())
            if p:
                for nk, cc in items_a:
                    work[nk] = (work.get(nk, 0) + cc * lc_b) % p
                for nk, cc in items_b:
                    work[nk] = (work.get(nk, 0) - cc * lc_a) % p
            else:
                for nk, cc in items_a:
                    work[nk] = work.get(nk, 0) + cc * lc_b
                for nk, cc in items_b:
                    work[nk] = work.get(nk, 0) - cc * lc_a
            work = {k: c for k, c in work.items() if c}
        rem, lead = engine.reduce(work)
        if not rem:
            continue
        if kind == 1:
            survivors[a] = True
        rem = _normalize(rem, lead, field)
        t = engine.add(rem, lead)
        _gm_update(engine, pairs, t, ops, events, lcm_exps)
    return engine.elems, survivors


def _reduced_basis(elements, ops, field):
    """Inter-reduce: minimal leading terms, fully reduced tails, monic."""
    entries = [(_lt(e, ops), e) for e in elements if e]
    entries.sort(key=lambda t: ops.sort_key(t[0]))
    unpack = ops.order.unpack
    kept = []
    for lt, e in entries:
        exps = unpack(ops.monomial(lt))
        pos = ops.position(lt)
        dominated = False
        for lt2, exps2, e2 in kept:
            if ops.position(lt2) == pos and all(a <= b for a, b in zip(exps2, exps)):
                dominated = True
                break
        if dominated:
            continue
        kept = [(lt2, exps2, e2) for lt2, exps2, e2 in kept
                if not (ops.position(lt2) == pos
                        and all(a <= b for a, b in zip(exps, exps2)))]
        kept.append((lt, exps, e))
    kept.sort(key=lambda t: ops.sort_key(t[0]))
    # Tail-reduce against the whole set at once: a term below the leading
    # one is never divisible by it (term orders refine divisibility), so
    # keeping the element's own leading term out of the work dict suffices.
    engine = _Engine(ops, field)
    for lt, exps, e in kept:
        engine.add(e, lt)
    out = []
    for lt, exps, e in kept:
        tail = dict(e)
        del tail[lt]
        red, _ = engine.reduce(tail)
        red[lt] = e[lt]
        out.append((lt, _make_monic(red, lt, field)))
    out.sort(key=lambda t: ops.sort_key(t[0]))
    return [e for _, e in out]


# ---------------------------------------------------------------------------
# polynomial-level API

class GroebnerBasis:
    """Reduced Groebner basis: monic, self-reduced, sorted by leading term."""

    __slots__ = ("ring", "elements")

    def __init__(self, ring: PolynomialRing, elements):
        self.ring = ring
        self.elements = tuple(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis)
                and self.ring == other.ring
                and self.elements == other.elements)

    def __repr__(self):
        return f"GroebnerBasis({list(self.elements)!r})"

    def leading_monomials(self):
        return [g.lm() for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() \
            and not self.elements[0].is_zero()


def _all_monomials(polys) -> bool:
    return all(len(f.terms) == 1 for f in polys)


def _monomial_min_gens(polys, ring) -> list:
    order = ring.order
    monos = sorted({f.lm() for f in polys if f})
    minimal = []
    for m in sorted(monos, key=order.degree):
        if not any(order.divides(g, m) for g in minimal):
            minimal.append(m)
    one = ring.field.one()
    return sorted((Polynomial(ring, {m: one}) for m in minimal),
                  key=lambda f: f.lm())


def groebner_basis(polys, ring: PolynomialRing = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `polys`."""
    polys = [f for f in polys if f is not None and not f.is_zero()]
    if ring is None:
        if not polys:
            raise ValueError("need a ring for the empty generating set")
        ring = polys[0].ring
    if any(f.ring != ring for f in polys):
        raise ValueError("generators live in different rings")
    if not polys:
        return GroebnerBasis(ring, ())
    if _all_monomials(polys):
        return GroebnerBasis(ring, _monomial_min_gens(polys, ring))
    ops = _RingOps(ring.order)
    inputs = sorted((dict(f.terms) for f in polys),
                    key=lambda e: (ops.degree(_lt(e, ops)), _lt(e, ops)))
    raw, _ = _buchberger(inputs, ops, ring.field)
    reduced = _reduced_basis(raw, ops, ring.field)
    return GroebnerBasis(ring, (Polynomial(ring, e) for e in reduced))


def normal_form(f: Polynomial, gb) -> Polynomial:
    """Unique remainder of f modulo a reduced Groebner basis."""
    elements = gb.elements if isinstance(gb, GroebnerBasis) else tuple(gb)
    if elements and f.ring != elements[0].ring:
        raise ValueError("polynomial and basis over different rings")
    ops = _RingOps(f.ring.order)
    engine = _Engine(ops, f.ring.field)
    for g in elements:
        if g and not g.is_zero():
            engine.add(dict(g.terms))
    rem, _ = engine.reduce(dict(f.terms))
    return Polynomial(f.ring, rem)


def reduce_to_minimal_generators(polys, ring: PolynomialRing = None) -> list:
    """Minimal homogeneous generating set selected from `polys`.

    Elements are fed to the engine in ascending degree order; the ones not
    reducible to zero by lower elements survive (graded Nakayama).
    """
    polys = [f for f in polys if f is not None and not f.is_zero()]
    if not polys:
        return []
    if ring is None:
        ring = polys[0].ring
    if not all(f.is_homogeneous() for f in polys):
        raise ValueError("minimal generators are only defined for homogeneous input")
    if _all_monomials(polys):
        return _monomial_min_gens(polys, ring)
    ordered = sorted(polys, key=lambda f: (f.degree(), f.lm()))
    ops = _RingOps(ring.order)
    inputs = [dict(f.terms) for f in ordered]
    _, survivors = _buchberger(inputs, ops, ring.field)
    return [f for f, s in zip(ordered, survivors) if s]


def spair_check(gb: GroebnerBasis) -> bool:
    """Debug pass: every S-polynomial of the basis reduces to zero."""
    ring = gb.ring
    ops = _RingOps(ring.order)
    field = ring.field
    engine = _Engine(ops, field)
    for g in gb.elements:
        engine.add(dict(g.terms))
    n = len(gb.elements)
    for i in range(n):
        for j in range(i + 1, n):
            lt_i, lt_j = engine.lts[i], engine.lts[j]
            l = ring.order.lcm(lt_i, lt_j)
            lc_i, lc_j = engine.lcs[i], engine.lcs[j]
            work = {}
            for mm, cc in engine.elems[i].items():
                nk = mm + (l - lt_i)
                work[nk] = field.add(work.get(nk, field.zero()),
                                     field.mul(cc, lc_j))
            for mm, cc in engine.elems[j].items():
                nk = mm + (l - lt_j)
                work[nk] = field.sub(work.get(nk, field.zero()),
                                     field.mul(cc, lc_i))
            work = {k: c for k, c in work.items() if c}
            if engine.reduce(work)[0]:
                return False
    return True


# ---------------------------------------------------------------------------
# module-level API: elements are dicts {(position, packed monomial): coeff}

def module_groebner(elements, shifts, ring: PolynomialRing, reduced=True):
    """Reduced Groebner basis of the submodule generated by `elements`
    inside the graded free module with the given degree shifts, under the
    position-over-term extension of the ring order."""
    ops = _ModuleOps(ring.order, tuple(shifts))
    inputs = [dict(e) for e in elements if e]
    if not inputs:
        return []
    inputs.sort(key=lambda e: (ops.degree(_lt(e, ops)), ops.sort_key(_lt(e, ops))))
    raw, _ = _buchberger(inputs, ops, ring.field)
    if not reduced:
        return raw
    return _reduced_basis(raw, ops, ring.field)


def module_minimal_generators(elements, shifts, ring: PolynomialRing):
    """Minimal generating subset of homogeneous module elements."""
    ops = _ModuleOps(ring.order, tuple(shifts))
    items = [dict(e) for e in elements if e]
    items.sort(key=lambda e: (ops.degree(_lt(e, ops)), ops.sort_key(_lt(e, ops))))
    _, survivors = _buchberger(items, ops, ring.field)
    return [e for e, s in zip(items, survivors) if s]


def module_element_degree(elem, shifts, ring) -> int:
    ops = _ModuleOps(ring.order, tuple(shifts))
    return ops.degree(_lt(elem, ops))


def module_is_homogeneous(elem, shifts, ring) -> bool:
    ops = _ModuleOps(ring.order, tuple(shifts))
    degs = {ops.degree(k) for k in elem}
    return len(degs) <= 1
