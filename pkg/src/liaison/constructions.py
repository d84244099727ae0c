"""Families of height-three point-set ideals that are licci but never
reach a complete intersection through minimal-degree links, and the
hypersurface-section lift that pushes the phenomenon up in codimension.

The core construction takes parameters a_1..a_4 and produces
I = L2 * I1 + (F2, F3) where I1 = (L1, F1, F4) is a complete
intersection.  For a_1 = 1 every form is a product of random linear
forms, I is the reduced ideal of a_2*a_3 + a_4 points in P^3, and the
whole double link back to I1 decomposes into known rational points; that
decomposition doubles as a cheap exact certificate for the hypersurface
lift, where degrees get too large for colon computations to be replayed
directly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import linalg
from .groebner import normal_form
from .ideals import Ideal, hilbert, free_module_piece_dim
from .linkage import (Chain, LinkStep, RegularSequenceCert, RegularSequenceError,
                      find_reg_seq, is_regular_sequence, link, min_reg_seq_degrees,
                      try_regular_sequence)
from .resolutions import BettiTable, free_resolution
from .rings import GF, DEFAULT_PRIME, Polynomial, PolynomialRing, random_form

__all__ = [
    "FamilyParams",
    "PointsFamily",
    "build_linked_points",
    "template_table",
    "cancellation_reachable",
    "StarCheck",
    "stable_shape_check",
    "HypersurfaceLift",
    "hypersurface_section",
    "koszul_hilbert_function",
]

_REDRAWS = 20


@dataclass(frozen=True)
class FamilyParams:
    """Degree parameters: 4 <= a1+3 <= a2 < a3 < a4, a1 != 2, and
    a2 + a3 <= min(2, a1) + a4."""

    a1: int
    a2: int
    a3: int
    a4: int

    def __post_init__(self):
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        if not (4 <= a1 + 3 <= a2 < a3 < a4):
            raise ValueError("need 4 <= a1+3 <= a2 < a3 < a4")
        if a1 == 2:
            raise ValueError("a1 = 2 is excluded")
        if a2 + a3 > min(2, a1) + a4:
            raise ValueError("need a2 + a3 <= min(2, a1) + a4")

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.a4)


def template_table(params: FamilyParams) -> BettiTable:
    """The free-resolution shape the family's ideals carry (possibly
    non-minimally): generator degrees 2, a1+1, a2, a3, a4+1, and the two
    top twists a1+a4+2, a2+a3+1."""
    a1, a2, a3, a4 = params.as_tuple()
    entries = {}

    def bump(i, j):
        entries[(i, j)] = entries.get((i, j), 0) + 1

    for j in (2, a1 + 1, a4 + 1, a2, a3):
        bump(0, j)
    for j in (a1 + 2, a4 + 2, a1 + a4 + 1, a2 + a3, a2 + 1, a3 + 1):
        bump(1, j)
    for j in (a1 + a4 + 2, a2 + a3 + 1):
        bump(2, j)
    return BettiTable(entries)


def cancellation_reachable(template: BettiTable, minimal: BettiTable) -> bool:
    """Whether `minimal` arises from `template` by consecutive
    cancellations (decrementing b_{i,j} and b_{i+1,j} in pairs)."""
    imax = max(template.max_index(), minimal.max_index())
    degrees = {j for _, j in template.entries} | {j for _, j in minimal.entries}
    for j in degrees:
        carry = 0
        for i in range(imax + 1):
            x = template[(i, j)] - minimal[(i, j)] - carry
            if x < 0:
                return False
            carry = x
        if carry != 0:
            return False
    return True


@dataclass(frozen=True)
class StarCheck:
    holds: bool
    height_ok: bool
    reg_seq_ok: bool
    shape_ok: bool
    minimal_table: BettiTable


def stable_shape_check(I: Ideal, params: FamilyParams, seed=0,
                       resolution=None) -> StarCheck:
    """The family's persistence condition on an ideal: height three, a
    regular sequence of degrees (2, a2, a4+1), and a minimal Betti table
    reachable from the template by consecutive cancellations."""
    height_ok = I.height() == 3
    reg_seq_ok = False
    if height_ok:
        try:
            find_reg_seq(I, (2, params.a2, params.a4 + 1), seed)
            reg_seq_ok = True
        except RegularSequenceError:
            reg_seq_ok = False
    if resolution is None:
        resolution = free_resolution(I)
    B = resolution.betti()
    shape_ok = cancellation_reachable(template_table(params), B)
    return StarCheck(height_ok and reg_seq_ok and shape_ok,
                     height_ok, reg_seq_ok, shape_ok, B)


# ---------------------------------------------------------------------------
# linear algebra over the coefficient field for linear forms

def _linear_form(ring, coeffs):
    pack = ring.order.pack
    n = ring.nvars
    terms = {}
    for i, c in enumerate(coeffs):
        c = ring.field.coerce(c)
        if c:
            e = [0] * n
            e[i] = 1
            terms[pack(e)] = c
    return Polynomial(ring, terms)


def _linear_coeffs(f, ring):
    n = ring.nvars
    unpack = ring.order.unpack
    out = [ring.field.zero()] * n
    for m, c in f.terms.items():
        e = unpack(m)
        out[e.index(1)] = c
    return out


def _any_four_independent(vectors, p) -> bool:
    for quad in itertools.combinations(range(len(vectors)), 4):
        mat = [vectors[i] for i in quad]
        if linalg.rank_mod_p(mat, p) != 4:
            return False
    return True


def _point_from_forms(forms, ring):
    """Intersection point of codim-many independent linear forms in P^3."""
    p = ring.field.char
    rows = [_linear_coeffs(f, ring) for f in forms]
    red, pivots = linalg.rref_mod_p(rows, p)
    n = ring.nvars
    free = [j for j in range(n) if j not in pivots]
    if len(free) != 1:
        raise ValueError("forms do not cut out a single point")
    j = free[0]
    coords = [0] * n
    coords[j] = 1
    for r, c in enumerate(pivots):
        coords[c] = (-int(red[r][j])) % p
    return _normalize_point(tuple(coords), p)


def _normalize_point(coords, p):
    lead = next(c for c in coords if c)
    inv = pow(lead, p - 2, p)
    return tuple(c * inv % p for c in coords)


def evaluate(f: Polynomial, point) -> int:
    """Evaluate over a prime field at affine coordinates."""
    p = f.ring.field.char
    n = f.ring.nvars
    deg = f.degree()
    powers = [[1] * (deg + 1) for _ in range(n)]
    for i in range(n):
        for e in range(1, deg + 1):
            powers[i][e] = powers[i][e - 1] * point[i] % p
    unpack = f.ring.order.unpack
    total = 0
    for m, c in f.terms.items():
        v = c
        for i, e in enumerate(unpack(m)):
            if e:
                v = v * powers[i][e] % p
        total = (total + v) % p
    return total


def vanishes_at(f: Polynomial, point) -> bool:
    return evaluate(f, point) == 0


# ---------------------------------------------------------------------------
# the construction

@dataclass
class PointsFamily:
    """Constructed ideal with its complete-intersection double link and
    the verified invariants."""

    params: FamilyParams
    seed: object
    ring: PolynomialRing
    I: Ideal
    I1: Ideal
    J: Ideal
    chain: Chain
    hilbert_data: object
    mindegs: tuple
    is_cm: bool
    star: StarCheck
    resolution: object
    # a1 = 1 only: every ideal in the chain as a reduced set of points
    points: dict = field(default_factory=dict)
    ci_forms: dict = field(default_factory=dict)

    def degree(self) -> int:
        return self.hilbert_data.degree

    def invariants(self) -> dict:
        return {
            "height": self.I.height(),
            "degree": self.degree(),
            "min_reg_seq_degrees": self.mindegs,
            "hvector": self.hilbert_data.hvector,
            "betti": dict(self.star.minimal_table.items()),
            "is_cohen_macaulay": self.is_cm,
            "stable_shape": self.star.holds,
        }


def build_linked_points(params: FamilyParams, seed=0, dim: int = 3,
                        prime: int = DEFAULT_PRIME) -> PointsFamily:
    """Build I = L2*I1 + (F2, F3) over GF(prime) in P^dim and verify the
    certificate bundle: height 3, degree a2*a3 + a1*a4, minimal regular
    sequence degrees (2, a2, a4+1), Cohen-Macaulayness, the shape
    condition, and the double link down to the complete intersection I1.
    """
    if dim < 3:
        raise ValueError("need at least four variables")
    a1, a2, a3, a4 = params.as_tuple()
    ring = PolynomialRing([f"x{i}" for i in range(dim + 1)], GF(prime))
    rng = random.Random(f"linked-points|{prime}|{params.as_tuple()}|{dim}|{seed}")
    if a1 == 1:
        pieces = _draw_linear_data(ring, params, rng)
    else:
        pieces = _draw_general_data(ring, params, rng)
    L1, L2, F1, F2, F3, F4, G = (pieces[k] for k in
                                 ("L1", "L2", "F1", "F2", "F3", "F4", "G"))
    I1 = Ideal([L1, F1, F4], ring)
    I = L2 * I1 + Ideal([F2, F3], ring)

    # double link down to the complete intersection I1
    step1 = link(I, is_regular_sequence([G * L2, F2, F3]), check_back=True)
    J = step1.target
    step2 = link(J, is_regular_sequence([G, F2, F3]), check_back=True)
    if step2.target != I1:
        raise RuntimeError("double link failed to return to the complete intersection")
    chain = Chain([step1, step2], I1, True)

    H = hilbert(I)
    mindegs = min_reg_seq_degrees(I)
    res = free_resolution(I)
    is_cm = (res.length() + 1) == I.height()
    star = stable_shape_check(I, params, seed=seed, resolution=res)

    fam = PointsFamily(params=params, seed=seed, ring=ring, I=I, I1=I1, J=J,
                       chain=chain, hilbert_data=H, mindegs=mindegs,
                       is_cm=is_cm, star=star, resolution=res)
    fam.ci_forms = {"step1": (G * L2, F2, F3), "step2": (G, F2, F3)}
    if a1 == 1 and dim == 3:
        _attach_points(fam, pieces)
    expected_degree = a2 * a3 + a1 * a4
    if H.degree != expected_degree:
        raise RuntimeError(f"degree {H.degree} != expected {expected_degree}")
    return fam


def _draw_linear_data(ring, params: FamilyParams, rng) -> dict:
    """a1 = 1: products of linear forms, any four of which (together with
    x0) are linearly independent; verified by rank checks, redrawn on
    failure."""
    a1, a2, a3, a4 = params.as_tuple()
    p = ring.field.char
    n = ring.nvars
    count = (a2 - 1) + (a3 - 1) + a4 + 2
    x0_vec = [1] + [0] * (n - 1)
    for _ in range(_REDRAWS):
        vectors = [[rng.randrange(p) for _ in range(n)] for _ in range(count)]
        if _any_four_independent([x0_vec] + vectors, p):
            break
    else:
        raise RuntimeError("could not draw independent linear forms")
    forms = [_linear_form(ring, v) for v in vectors]
    ls = forms[:a2 - 1]
    ms = forms[a2 - 1:a2 - 1 + a3 - 1]
    ns = forms[a2 - 1 + a3 - 1:a2 - 1 + a3 - 1 + a4]
    L1, L2 = forms[-2], forms[-1]
    x0 = ring.variable(0)
    F1 = x0
    F2 = x0
    for l in ls:
        F2 = F2 * l
    F3 = L1
    for m in ms:
        F3 = F3 * m
    F4 = ring.one()
    for nn in ns:
        F4 = F4 * nn
    return {"L1": L1, "L2": L2, "F1": F1, "F2": F2, "F3": F3, "F4": F4,
            "G": F4, "ls": ls, "ms": ms, "ns": ns, "x0": x0}


def _draw_general_data(ring, params: FamilyParams, rng) -> dict:
    """a1 > 2: random forms F1, F4 and random F2, F3 drawn from graded
    pieces of I1, redrawn until the required regular sequences hold."""
    a1, a2, a3, a4 = params.as_tuple()
    rnd = random.Random(rng.getrandbits(64))

    def draw(attempt_label, producer, checker):
        for k in range(_REDRAWS):
            value = producer(k)
            if value is not None and checker(value):
                return value
        raise RuntimeError(f"redraw limit reached for {attempt_label}")

    def rform(degree):
        return random_form(ring, degree, rnd.getrandbits(64))

    L1 = rform(1)
    F1 = draw("F1", lambda k: rform(a1),
              lambda f: try_regular_sequence([L1, f]) is not None)
    F4 = draw("F4", lambda k: rform(a4),
              lambda f: try_regular_sequence([L1, F1, f]) is not None)
    I1 = Ideal([L1, F1, F4], ring)

    def from_piece(degree):
        basis = I1.graded_piece_basis(degree)
        acc = ring.zero()
        for b in basis:
            c = rnd.randrange(ring.field.char)
            if c:
                acc = acc + b.scale(c)
        return acc if not acc.is_zero() else None

    F2 = draw("F2", lambda k: from_piece(a2),
              lambda f: try_regular_sequence([L1, f]) is not None)
    F3 = draw("F3", lambda k: from_piece(a3),
              lambda f: try_regular_sequence([F2, f]) is not None)
    L2 = draw("L2", lambda k: rform(1),
              lambda f: try_regular_sequence([f, F2, F3]) is not None)
    G = draw("G", lambda k: F4 if k == 0 else from_piece(a4),
             lambda f: try_regular_sequence([f, F2, F3]) is not None)
    return {"L1": L1, "L2": L2, "F1": F1, "F2": F2, "F3": F3, "F4": F4, "G": G}


def _attach_points(fam: PointsFamily, pieces: dict):
    """Decompose every ideal in the double link into rational points.

    The complete intersections are products of linear forms, so their
    points are the triple intersections; the 28 points of I are the ones
    on L2 = 0 or on the line (L1, x0); J gets the complement.  Each
    decomposition is certified in `verify_reduced_points` before use.
    """
    ring = fam.ring
    x0, L1, L2 = pieces["x0"], pieces["L1"], pieces["L2"]
    ls, ms, ns = pieces["ls"], pieces["ms"], pieces["ns"]
    f2_factors = [x0] + ls
    f3_factors = [L1] + ms
    c1_factors = ns + [L2]          # G * L2 with G = n_1 ... n_{a4}
    pts_c1 = {_point_from_forms((a, b, c), ring)
              for a in c1_factors for b in f2_factors for c in f3_factors}
    pts_c2 = {_point_from_forms((a, b, c), ring)
              for a in ns for b in f2_factors for c in f3_factors}
    pts_i = {_point_from_forms((L2, b, c), ring)
             for b in f2_factors for c in f3_factors}
    pts_i |= {_point_from_forms((L1, x0, nn), ring) for nn in ns}
    pts_i1 = {_point_from_forms((L1, x0, nn), ring) for nn in ns}
    fam.points = {
        "I": sorted(pts_i),
        "J": sorted(pts_c1 - pts_i),
        "I1": sorted(pts_i1),
        "C1": sorted(pts_c1),
        "C2": sorted(pts_c2),
    }


def verify_reduced_points(X: Ideal, points, *, unmixed: bool) -> bool:
    """Certify that X is exactly the reduced ideal of the given points:
    X vanishes on them, they are pairwise distinct, deg(S/X) counts them,
    and X is unmixed (supplied by a Cohen-Macaulay or complete-intersection
    certificate).  Then the containment X <= (ideal of points) plus equal
    degree forces equality with all multiplicities one."""
    if not unmixed:
        return False
    pts = list(points)
    if len(set(pts)) != len(pts):
        return False
    for g in X.gens:
        if any(not vanishes_at(g, pt) for pt in pts):
            return False
    return X.degree() == len(pts)


# ---------------------------------------------------------------------------
# Koszul Hilbert functions (complete intersections, no basis needed)

def koszul_numerator(degrees) -> list:
    out = [1]
    for d in degrees:
        nxt = [0] * (len(out) + d)
        for i, c in enumerate(out):
            nxt[i] += c
            nxt[i + d] -= c
        out = nxt
    while out and out[-1] == 0:
        out.pop()
    return out


def koszul_hilbert_function(degrees, nvars: int, d: int) -> int:
    """dim_k (S/(f_1..f_k))_d for a regular sequence of the given degrees."""
    import math
    if d < 0:
        return 0
    K = koszul_numerator(degrees)
    total = 0
    for i, c in enumerate(K):
        if c and d - i >= 0:
            total += c * math.comb(d - i + nvars - 1, nvars - 1)
    return total


# ---------------------------------------------------------------------------
# hypersurface sections

@dataclass
class LiftedStep:
    source: Ideal
    target: Ideal
    sequence_degrees: tuple
    verified: bool
    method: str  # "link" (colon recomputed) or "duality" (certificate)


@dataclass
class HypersurfaceLift:
    base: Ideal
    form: Polynomial
    degree: int
    ideal: Ideal           # (I, F) with height(I) + 1
    steps: list
    mindegs: tuple

    def all_verified(self) -> bool:
        return all(s.verified for s in self.steps)


def hypersurface_section(I: Ideal, chain: Chain, degree: int = None,
                         seed=0, witness: dict = None) -> HypersurfaceLift:
    """Cut a licci ideal with a general hypersurface and lift its chain.

    The form F is drawn at the requested degree (default: the sufficient
    bound height(I) * reg(S/I)), redrawn until it is regular modulo every
    ideal of the chain, and appended to every regular sequence; each
    lifted step is then re-verified.  With a points `witness` (from the
    a1 = 1 construction) regularity is checked by evaluation and the
    lifted colons are certified through Artinian Gorenstein duality;
    without one the colons are recomputed directly, which is only
    practical at small degrees.
    """
    ring = I.ring
    if not ring.field.is_prime_field:
        raise ValueError("hypersurface sections need a prime field")
    res = free_resolution(I)
    reg_quotient = res.betti().quotient_table().regularity()
    c = I.height()
    bound = c * reg_quotient
    if degree is None:
        degree = bound
    if degree < bound:
        raise ValueError(f"degree {degree} below the sufficient bound {bound}")

    ideals = [chain.steps[0].source] + [s.target for s in chain.steps]
    if witness is not None:
        _validate_witness(chain, witness)
        point_sets = [witness["points"][k] for k in witness["ideal_keys"]]
        def regular_mod_all(F):
            return all(all(not vanishes_at(F, pt) for pt in pts)
                       for pts in point_sets)
    else:
        def regular_mod_all(F):
            return all(X.quotient(Ideal([F], ring), engine="syzygy") == X
                       for X in ideals)

    rng = random.Random(f"hyp-section|{ring.field.char}|{degree}|{seed}")
    F = None
    for _ in range(_REDRAWS):
        cand = random_form(ring, degree, rng.getrandbits(64))
        if regular_mod_all(cand):
            F = cand
            break
    if F is None:
        raise RuntimeError("no regular form found; degree too small or "
                           "the chain ideals cover the space")

    lifted_steps = []
    for k, step in enumerate(chain.steps):
        forms = list(step.sequence.forms) + [F]
        A = Ideal(list(step.source.min_gens()) + [F], ring,
                  known_height=step.source.height() + 1)
        B = Ideal(list(step.target.min_gens()) + [F], ring,
                  known_height=step.target.height() + 1)
        if witness is not None:
            ok = _verify_lift_by_duality(step, F, witness, k)
            method = "duality"
        else:
            cert = is_regular_sequence(forms)
            replay = link(A, cert, check_back=True)
            ok = replay.target == B
            method = "link"
        if not ok:
            raise RuntimeError(f"lifted step {k + 1} failed verification")
        lifted_steps.append(LiftedStep(A, B, tuple(f.degree() for f in forms),
                                       ok, method))

    lifted_ideal = lifted_steps[0].source
    mindegs = min_reg_seq_degrees(lifted_ideal)
    return HypersurfaceLift(I, F, degree, lifted_ideal, lifted_steps, mindegs)


def _validate_witness(chain: Chain, witness: dict):
    """Check the witness certifies every chain ideal as reduced points."""
    keys = witness["ideal_keys"]
    ci_keys = witness["ci_keys"]
    pts = witness["points"]
    ideals = [chain.steps[0].source] + [s.target for s in chain.steps]
    if len(keys) != len(ideals) or len(ci_keys) != len(chain.steps):
        raise ValueError("witness does not match the chain shape")
    for X, key, cm in zip(ideals, keys, witness["unmixed"]):
        if not verify_reduced_points(X, pts[key], unmixed=cm):
            raise ValueError(f"witness for {key} failed certification")
    for step, key in zip(chain.steps, ci_keys):
        ci = step.sequence.ideal()
        expected = 1
        for d in step.sequence.degrees:
            expected *= d
        ptsk = pts[key]
        if len(set(ptsk)) != len(ptsk) or len(ptsk) != expected:
            raise ValueError(f"witness for {key} has the wrong point count")
        for g in ci.gens:
            if any(not vanishes_at(g, pt) for pt in ptsk):
                raise ValueError(f"witness for {key} misses a generator")


def _verify_lift_by_duality(step: LinkStep, F: Polynomial, witness: dict,
                            k: int) -> bool:
    """Certify (C, F) : (A, F) = (B, F) and symmetrically, via duality.

    With L = (C, F) an Artinian complete intersection (Gorenstein), the
    colon L : (A, F) has Hilbert function HF(S/L)(d) - HF(S/(A,F))(s - d)
    where s is the socle degree of S/L.  Together with the containment
    (B, F) * (A, F) <= L this pins the colon exactly, so it suffices to
    check the numeric identity degree by degree - no Groebner basis
    involving F is ever needed.
    """
    ring = F.ring
    n = ring.nvars
    D = F.degree()
    A0, B0 = step.source, step.target
    ci = step.sequence.ideal()
    ci_points = witness["points"][witness["ci_keys"][k]]
    keys = witness["ideal_keys"]
    a_points = witness["points"][keys[k]]
    b_points = witness["points"][keys[k + 1]]

    # (C, F) is an Artinian complete intersection: C is reduced (distinct
    # points matching its degree) and F misses every point.
    if any(vanishes_at(F, pt) for pt in ci_points):
        return False
    if any(vanishes_at(F, pt) for pt in a_points + b_points):
        return False

    # containments: C <= B (colon contains its modulus), B*A <= C
    gb_c = ci.groebner_basis()
    for g in ci.gens:
        if not B0.contains(g):
            return False
    for a in A0.min_gens():
        for b in B0.min_gens():
            if not normal_form(a * b, gb_c).is_zero():
                return False

    degrees = tuple(step.sequence.degrees) + (D,)
    s = sum(degrees) - n
    def hf_l(d):
        return koszul_hilbert_function(degrees, n, d)
    def hf_mod_form(X, d):
        return X.hilbert_function(d) - X.hilbert_function(d - D)
    for d in range(s + 1):
        lhs_b = hf_mod_form(B0, d)
        rhs_b = hf_l(d) - hf_mod_form(A0, s - d)
        if lhs_b != rhs_b:
            return False
        lhs_a = hf_mod_form(A0, d)
        rhs_a = hf_l(d) - hf_mod_form(B0, s - d)
        if lhs_a != rhs_a:
            return False
    return True


def family_witness(fam: PointsFamily) -> dict:
    """Points witness for the double-link chain of an a1 = 1 family.

    Unmixedness certificates: I through its own resolution, J through its
    resolution (computed here), I1 because it is a complete intersection.
    """
    if not fam.points:
        raise ValueError("family carries no point decomposition")
    res_j = free_resolution(fam.J)
    j_is_cm = (res_j.length() + 1) == fam.J.height()
    return {
        "points": fam.points,
        "ideal_keys": ["I", "J", "I1"],
        "ci_keys": ["C1", "C2"],
        "unmixed": [fam.is_cm, j_is_cm, True],
    }
