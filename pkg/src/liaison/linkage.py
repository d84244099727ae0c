"""Liaison of homogeneous ideals: direct links through colon ideals,
minimal-degree regular sequences, monomial standard form and double-link
reduction, chain replay, and the socle-degree obstruction for regular
sequences in Cohen-Macaulay ideals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ideals import Ideal
from .resolutions import free_resolution
from .rings import Polynomial

__all__ = [
    "RegularSequenceCert",
    "RegularSequenceError",
    "LinkError",
    "LinkStep",
    "Chain",
    "StandardForm",
    "is_regular_sequence",
    "min_reg_seq_degrees",
    "find_reg_seq",
    "link",
    "is_complete_intersection",
    "standard_form",
    "monomial_double_link",
    "monomial_licci_scan",
    "ScanResult",
    "chain_verify",
    "socle_degree_bound_check",
    "SocleCheck",
]

RETRY_LIMIT = 20  # random draws per element before giving up


class RegularSequenceError(ValueError):
    """Raised when forms fail to be a regular sequence, or a random search
    for one exhausts its retries."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class LinkError(ValueError):
    pass


@dataclass(frozen=True)
class RegularSequenceCert:
    """Forms whose prefixes were verified to raise height by one each."""

    forms: tuple
    degrees: tuple
    verified: bool = True

    def ideal(self) -> Ideal:
        return Ideal(list(self.forms))

    def __len__(self):
        return len(self.forms)


def is_regular_sequence(forms) -> RegularSequenceCert:
    """Certify height((f_1..f_i)) = i for every prefix; raises
    RegularSequenceError at the first failing index."""
    forms = list(forms)
    if not forms:
        raise RegularSequenceError("empty sequence")
    ring = forms[0].ring
    for f in forms:
        if f.ring != ring:
            raise ValueError("forms over different rings")
        if not f.is_homogeneous() or f.is_zero():
            raise RegularSequenceError(f"{f} is not a nonzero form")
    for i in range(1, len(forms) + 1):
        h = Ideal(forms[:i], ring).height()
        if h != i:
            raise RegularSequenceError(
                f"height stalls at element {i}: height {h} != {i}", index=i)
    return RegularSequenceCert(tuple(forms), tuple(f.degree() for f in forms))


def try_regular_sequence(forms):
    try:
        return is_regular_sequence(forms)
    except RegularSequenceError:
        return None


def min_reg_seq_degrees(I: Ideal) -> tuple:
    """Greedy minimal degree tuple: d_i = min{d : height(I_{<=d}) >= i}.

    This is the degree-truncation reading of "regular sequence of smallest
    possible degree"; the i-th threshold is where the truncated ideal first
    reaches height i.
    """
    if not I.is_proper():
        raise ValueError("expected a proper ideal")
    c = I.height()
    gen_degrees = sorted({g.degree() for g in I.gens})
    out = []
    needed = 1
    for d in gen_degrees:
        if needed > c:
            break
        trunc = I.truncate(d)
        h = trunc.height() if trunc.gens else 0
        while needed <= h and needed <= c:
            out.append(d)
            needed += 1
    if len(out) != c:
        raise RuntimeError("truncation heights never reached the height of I")
    return tuple(out)


def find_reg_seq(I: Ideal, degrees, seed) -> RegularSequenceCert:
    """Random homogeneous regular sequence in I with prescribed degrees.

    Element i is a random combination of a vector-space basis of the graded
    piece of that degree, redrawn until the prefix heights check out.
    Deterministic in (I, degrees, seed); exhausting the retries raises.
    """
    degrees = tuple(degrees)
    ring = I.ring
    rng = random.Random(f"find-reg-seq|{ring.field.char}|{degrees}|{seed}")
    bases = {}
    chosen = []
    for i, d in enumerate(degrees):
        if d not in bases:
            bases[d] = I.graded_piece_basis(d)
        basis = bases[d]
        ok = False
        for _ in range(RETRY_LIMIT):
            f = _random_combination(basis, ring, rng)
            if f is None:
                break
            if try_regular_sequence(chosen + [f]):
                chosen.append(f)
                ok = True
                break
        if not ok:
            raise RegularSequenceError(
                f"no regular sequence of degrees {degrees} found in "
                f"{RETRY_LIMIT} draws (stuck at position {i + 1}); the "
                f"degrees are likely infeasible", index=i + 1)
    return RegularSequenceCert(tuple(chosen), degrees)


def _random_combination(basis, ring, rng):
    if not basis:
        return None
    fld = ring.field
    acc = ring.zero()
    if fld.char:
        for b in basis:
            c = rng.randrange(fld.char)
            if c:
                acc = acc + b.scale(c)
    else:
        for b in basis:
            c = rng.randint(-20, 20)
            if c:
                acc = acc + b.scale(c)
    return acc if not acc.is_zero() else None


# ---------------------------------------------------------------------------
# direct links

@dataclass(frozen=True)
class LinkStep:
    """One liaison step J = L : I by a complete intersection L inside I."""

    source: Ideal
    sequence: RegularSequenceCert
    target: Ideal
    minimal: bool
    back_verified: bool
    minimal_degrees: tuple

    def degrees(self) -> tuple:
        return self.sequence.degrees


def link(I: Ideal, L, check_back: bool = True,
         engine: str = "syzygy") -> LinkStep:
    """Link I by the regular sequence L: returns the step with J = L : I.

    With check_back the inverse colon L : J is verified to recover I
    exactly (reduced Groebner basis equality).  Self-links (L = I) are
    rejected instead of silently producing the unit ideal.
    """
    if not isinstance(L, RegularSequenceCert):
        L = is_regular_sequence(L)
    L_ideal = L.ideal()
    for f in L.forms:
        if not I.contains(f):
            raise LinkError(f"sequence element {f} is not in the ideal")
    c = I.height()
    if len(L.forms) != c:
        raise LinkError(f"sequence length {len(L.forms)} != height {c}")
    if L_ideal == I:
        raise LinkError("degenerate self-link: the sequence generates the ideal")
    J = L_ideal.quotient(I, engine=engine)
    back = False
    if check_back:
        back_ideal = L_ideal.quotient(J, engine=engine)
        if back_ideal != I:
            raise LinkError("back-link L : (L : I) differs from I; "
                            "the source is not unmixed for this sequence")
        back = True
    mdeg = min_reg_seq_degrees(I)
    return LinkStep(source=I, sequence=L, target=J,
                    minimal=(tuple(sorted(L.degrees)) == mdeg),
                    back_verified=back, minimal_degrees=mdeg)


def is_complete_intersection(I: Ideal) -> bool:
    gens = I.min_gens()
    if len(gens) != I.height():
        return False
    return try_regular_sequence(list(gens)) is not None


# ---------------------------------------------------------------------------
# monomial standard form and the double-link reduction

@dataclass(frozen=True)
class StandardForm:
    """m-primary monomial ideal split as pure powers plus the sharp part."""

    pure_powers: tuple           # exponents a_1..a_d
    sharp: Ideal                 # remaining minimal generators

    def sharp_exponents(self):
        unpack = self.sharp.ring.order.unpack
        return [unpack(g.lm()) for g in self.sharp.groebner_basis()]


def standard_form(I: Ideal) -> StandardForm:
    if not I.is_monomial():
        raise ValueError("standard form requires a monomial ideal")
    ring = I.ring
    n = ring.nvars
    unpack = ring.order.unpack
    min_exps = [unpack(g.lm()) for g in I.groebner_basis()]
    pure = [None] * n
    sharp = []
    for e in min_exps:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            pure[support[0]] = e[support[0]]
        else:
            sharp.append(e)
    if any(a is None for a in pure):
        missing = ring.variables[pure.index(None)]
        raise ValueError(f"not m-primary: no pure power of {missing}")
    pack = ring.order.pack
    one = ring.field.one()
    sharp_polys = [Polynomial(ring, {pack(e): one}) for e in sharp]
    return StandardForm(tuple(pure), Ideal(sharp_polys, ring))


def monomial_double_link(I: Ideal):
    """One reduction step: strip the common factor of the sharp part.

    For I = (x^a) + x^b * K with K proper this returns
    I' = (x^(a-b)) + K together with the two monomial regular sequences
    (x^a) and (x^(a-b)) realizing I' as a double link of I.
    """
    sf = standard_form(I)
    ring = I.ring
    n = ring.nvars
    sharp_exps = sf.sharp_exponents()
    if not sharp_exps:
        raise ValueError("sharp part is zero: the ideal is already a "
                         "complete intersection of pure powers")
    b = [min(e[i] for e in sharp_exps) for i in range(n)]
    if not any(b):
        raise ValueError("sharp part has unit gcd: no reduction applies")
    if any(all(e[i] == b[i] for i in range(n)) for e in sharp_exps):
        raise ValueError("gcd of the sharp part is one of its generators "
                         "(the cofactor ideal would be the unit ideal)")
    pack = ring.order.pack
    one = ring.field.one()
    new_pure = [Polynomial(ring, {pack(tuple(sf.pure_powers[i] - b[i] if k == i else 0
                                             for k in range(n))): one})
                for i in range(n)]
    cofactor = [Polynomial(ring, {pack(tuple(x - y for x, y in zip(e, b))): one})
                for e in sharp_exps]
    reduced = Ideal(new_pure + cofactor, ring)
    seq_before = [Polynomial(ring, {pack(tuple(sf.pure_powers[i] if k == i else 0
                                               for k in range(n))): one})
                  for i in range(n)]
    return reduced, (is_regular_sequence(seq_before),
                     is_regular_sequence(new_pure))


@dataclass(frozen=True)
class ScanResult:
    verdict: str                 # reduced-to-CI | not-licci | inconclusive
    trace: tuple                 # the reduced ideals, in order
    fixpoint_sharp: Ideal | None
    fixpoint_sharp_height: int | None


def monomial_licci_scan(I: Ideal) -> ScanResult:
    """Iterate the double-link reduction; classify the fixpoint.

    A zero sharp part at the fixpoint means a complete intersection was
    reached; a sharp part of height >= 2 certifies the ideal is not licci;
    anything else is reported inconclusive.
    """
    if not I.is_monomial():
        raise ValueError("monomial scan requires a monomial ideal")
    trace = []
    current = I
    for _ in range(1000):
        sf = standard_form(current)
        sharp_exps = sf.sharp_exponents()
        if not sharp_exps:
            return ScanResult("reduced-to-CI", tuple(trace), None, None)
        n = current.ring.nvars
        b = [min(e[i] for e in sharp_exps) for i in range(n)]
        reducible = any(b) and not any(
            all(e[i] == b[i] for i in range(n)) for e in sharp_exps)
        if not reducible:
            h = sf.sharp.height()
            verdict = "not-licci" if h >= 2 else "inconclusive"
            return ScanResult(verdict, tuple(trace), sf.sharp, h)
        current, _ = monomial_double_link(current)
        trace.append(current)
    raise RuntimeError("monomial reduction did not terminate")


# ---------------------------------------------------------------------------
# chain replay

@dataclass
class Chain:
    steps: list
    terminal: Ideal
    terminal_is_ci: bool

    def all_minimal(self) -> bool:
        return all(s.minimal for s in self.steps)

    def all_back_verified(self) -> bool:
        return all(s.back_verified for s in self.steps)


def chain_verify(start: Ideal, step_sequences, seeds=None,
                 engine: str = "syzygy") -> Chain:
    """Replay a chain of links from `start`.

    `step_sequences` entries are either lists of explicit forms or degree
    tuples (then drawn with find_reg_seq using the matching seed).  Every
    step runs with the back-check on; the terminal ideal is tested for
    being a complete intersection.
    """
    current = start
    steps = []
    for k, spec in enumerate(step_sequences):
        if spec and isinstance(spec[0], Polynomial):
            cert = is_regular_sequence(list(spec))
        else:
            seed = None if seeds is None else seeds[k]
            cert = find_reg_seq(current, tuple(spec), seed)
        step = link(current, cert, check_back=True, engine=engine)
        steps.append(step)
        current = step.target
    return Chain(steps, current, is_complete_intersection(current))


# ---------------------------------------------------------------------------
# socle-degree obstruction

@dataclass(frozen=True)
class SocleCheck:
    passes: bool
    degree_sum: int
    bound: int
    margin: int
    strict_required: bool


def socle_degree_bound_check(I: Ideal, degrees,
                             B=None) -> SocleCheck:
    """Test sum(d_i) >= max{j : b_{c-1,j} != 0} against the last column of
    the minimal Betti table (strictly, unless I itself is a complete
    intersection with exactly these degrees).

    A failing check certifies that no homogeneous regular sequence with
    the given degrees exists inside I.
    """
    degrees = tuple(degrees)
    c = I.height()
    if B is None:
        res = free_resolution(I)
        if res.length() + 1 != c:
            raise ValueError("socle bound requires a Cohen-Macaulay quotient")
        B = res.betti()
    last = B.column_degrees(c - 1)
    bound = max(last)
    total = sum(degrees)
    gen_degrees = I.min_gen_degrees()
    non_strict_ok = (len(gen_degrees) == c
                     and tuple(sorted(degrees)) == gen_degrees)
    strict_required = not non_strict_ok
    passes = total > bound or (total == bound and not strict_required)
    return SocleCheck(passes, total, bound, total - bound, strict_required)
