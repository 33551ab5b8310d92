"""Cohomologically graded representations with an involution sign, super
(Koszul-signed) squares and exterior powers, hard-Lefschetz packaging, and
peeling of translation-invariant (constant-shift) content.

A :class:`SignedGradedRep` stores, for each cohomological degree nu, a pair
of virtual representations split by the sign of the involution sigma.  All
arithmetic preserves the splitting; signs multiply under tensor operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lie, repring
from .lie import GroupSpec, IrrepLabel
from .repring import VirtualRep

PLUS, MINUS = 1, -1
SIGNS = (PLUS, MINUS)


class AsymmetricGrading(ValueError):
    """Graded object is not symmetric under nu -> -nu."""


class NegativePeel(ValueError):
    """Hard-Lefschetz monotonicity violated during package decomposition."""


class InconsistentPeel(ValueError):
    """Input was not (perverse core) + (constant shifts)."""


class SignedGradedRep:
    """Map degree -> {sigma sign -> VirtualRep}, finite support."""

    __slots__ = ("group", "data")

    def __init__(self, group: GroupSpec, data=None):
        self.group = group
        clean = {}
        for nu, by_sign in (data or {}).items():
            slot = {}
            for s, rep in by_sign.items():
                if s not in SIGNS:
                    raise ValueError(f"bad sigma sign {s!r}")
                if rep.group != group:
                    raise repring.GroupMismatch("slot rep over the wrong group")
                if rep:
                    slot[s] = rep
            if slot:
                clean[nu] = slot
        self.data = clean

    # -- construction ---------------------------------------------------------

    @staticmethod
    def zero(group: GroupSpec) -> "SignedGradedRep":
        return SignedGradedRep(group, {})

    @staticmethod
    def unit(group: GroupSpec) -> "SignedGradedRep":
        return SignedGradedRep(group, {0: {PLUS: VirtualRep.trivial(group)}})

    @staticmethod
    def single(group: GroupSpec, nu: int, sign: int, rep: VirtualRep) -> "SignedGradedRep":
        return SignedGradedRep(group, {nu: {sign: rep}})

    # -- basic structure --------------------------------------------------------

    def get(self, nu: int, sign: int) -> VirtualRep:
        return self.data.get(nu, {}).get(sign, VirtualRep.zero(self.group))

    def slot(self, nu: int) -> dict:
        return {s: self.get(nu, s) for s in SIGNS}

    def degrees(self):
        return sorted(self.data)

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        return isinstance(other, SignedGradedRep) and self.group == other.group \
            and self.data.keys() == other.data.keys() \
            and all(self.slot(nu) == other.slot(nu) for nu in self.data)

    def __add__(self, other: "SignedGradedRep") -> "SignedGradedRep":
        if self.group != other.group:
            raise repring.GroupMismatch("graded sum over mismatched groups")
        out = {}
        for nu in set(self.data) | set(other.data):
            out[nu] = {s: self.get(nu, s) + other.get(nu, s) for s in SIGNS}
        return SignedGradedRep(self.group, out)

    def __sub__(self, other: "SignedGradedRep") -> "SignedGradedRep":
        return self + other.scale(-1)

    def scale(self, c: int) -> "SignedGradedRep":
        return SignedGradedRep(self.group, {
            nu: {s: rep.scale(c) for s, rep in by_sign.items()}
            for nu, by_sign in self.data.items()
        })

    # -- numerics ----------------------------------------------------------------

    def total_dim(self) -> int:
        return sum(rep.dim() for by in self.data.values() for rep in by.values())

    def euler(self) -> int:
        return sum((-1 if nu % 2 else 1) * rep.dim()
                   for nu, by in self.data.items() for rep in by.values())

    def unsigned_slot(self, nu: int) -> VirtualRep:
        return self.get(nu, PLUS) + self.get(nu, MINUS)

    def is_effective(self) -> bool:
        return all(rep.is_effective() for by in self.data.values() for rep in by.values())

    def is_degree_symmetric(self, signed: bool = True) -> bool:
        for nu in self.data:
            if signed:
                if self.slot(nu) != self.slot(-nu):
                    return False
            elif self.unsigned_slot(nu) != self.unsigned_slot(-nu):
                return False
        return True

    def forget_signs(self) -> dict:
        return {nu: self.unsigned_slot(nu) for nu in self.degrees()}

    def __repr__(self):
        lines = []
        for nu in self.degrees():
            for s in SIGNS:
                rep = self.get(nu, s)
                if rep:
                    lines.append(f"  [{nu:+d}] sigma{'+' if s == PLUS else '-'}: {rep}")
        return "SignedGradedRep(\n" + "\n".join(lines) + "\n)"


@dataclass(frozen=True)
class LefschetzPackage:
    """One representation repeated in degrees n, n-2, ..., -n."""

    base: VirtualRep
    sign: int
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("package level must be >= 0")
        if self.sign not in SIGNS:
            raise ValueError("bad sigma sign")


def expand(packages, group: GroupSpec) -> SignedGradedRep:
    """Sum of package expansions."""
    out = SignedGradedRep.zero(group)
    for pkg in packages:
        for nu in range(-pkg.level, pkg.level + 1, 2):
            out = out + SignedGradedRep.single(group, nu, pkg.sign, pkg.base)
    return out


def package_decompose(g: SignedGradedRep):
    """Unique package list with level-n multiplicity m(n) - m(n+2).

    Requires degree symmetry (else :class:`AsymmetricGrading`) and
    hard-Lefschetz monotonicity (else :class:`NegativePeel`).
    """
    mult = {}
    for nu, by_sign in g.data.items():
        for s, rep in by_sign.items():
            for label, m in rep.terms.items():
                mult.setdefault((label, s), {})[nu] = m
    packages = {}
    for (label, s), m in mult.items():
        for nu, c in m.items():
            if m.get(-nu, 0) != c:
                raise AsymmetricGrading(
                    f"multiplicity of {label} differs in degrees {nu} and {-nu}")
        for n in sorted((nu for nu in m if nu >= 0), reverse=True):
            c = m.get(n, 0) - m.get(n + 2, 0)
            if c < 0:
                raise NegativePeel(
                    f"hard-Lefschetz monotonicity violated for {label} at degree {n}")
            if c:
                packages.setdefault((n, s), {})[label] = c
    out = []
    for (n, s), terms in sorted(packages.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
        out.append(LefschetzPackage(VirtualRep(g.group, terms), s, n))
    return out


def graded_tensor(a: SignedGradedRep, b: SignedGradedRep) -> SignedGradedRep:
    """Degree-wise convolution; sigma signs multiply."""
    if a.group != b.group:
        raise repring.GroupMismatch("graded tensor over mismatched groups")
    out = {}
    for n1, by1 in a.data.items():
        for n2, by2 in b.data.items():
            for s1, r1 in by1.items():
                for s2, r2 in by2.items():
                    prod = repring.tensor(r1, r2)
                    if not prod:
                        continue
                    slot = out.setdefault(n1 + n2, {PLUS: VirtualRep.zero(a.group),
                                                    MINUS: VirtualRep.zero(a.group)})
                    slot[s1 * s2] = slot[s1 * s2] + prod
    return SignedGradedRep(a.group, out)


def _square_within_slot(g, nu, variant):
    """Diagonal contribution of one degree slot to the super square.

    Even degrees contribute sym2/alt2 as labeled; odd degrees contribute
    them swapped (Koszul rule).  The cross term between the two sigma parts
    of the slot lands in both squares with sign minus.
    """
    a = g.get(nu, PLUS)
    b = g.get(nu, MINUS)
    swap = nu % 2 != 0
    use_sym = (variant == "sym") != swap
    sq = repring.sym2 if use_sym else repring.alt2
    plus_part = sq(a) + sq(b) if (a or b) else VirtualRep.zero(g.group)
    minus_part = repring.tensor(a, b) if (a and b) else VirtualRep.zero(g.group)
    return plus_part, minus_part


def _super_square(g: SignedGradedRep, variant: str) -> SignedGradedRep:
    out = SignedGradedRep.zero(g.group)
    degrees = g.degrees()
    # cross-degree pairs: the full tensor product enters each square once
    for i, n1 in enumerate(degrees):
        for n2 in degrees[i + 1:]:
            out = out + graded_tensor(
                SignedGradedRep(g.group, {n1: g.data[n1]}),
                SignedGradedRep(g.group, {n2: g.data[n2]}))
    # diagonal
    for nu in degrees:
        plus_part, minus_part = _square_within_slot(g, nu, variant)
        if plus_part:
            out = out + SignedGradedRep.single(g.group, 2 * nu, PLUS, plus_part)
        if minus_part:
            out = out + SignedGradedRep.single(g.group, 2 * nu, MINUS, minus_part)
    return out


def super_sym2(g: SignedGradedRep) -> SignedGradedRep:
    """Symmetric square in the super sense."""
    return _super_square(g, "sym")


def super_alt2(g: SignedGradedRep) -> SignedGradedRep:
    """Alternating square in the super sense."""
    return _super_square(g, "alt")


def super_ext(a: int, g: SignedGradedRep, swap_pair=None) -> SignedGradedRep:
    """a-th super exterior power: exterior powers on even-degree slots,
    symmetric powers on odd-degree slots, summed over all ways of drawing
    ``a`` factors from the slots.

    ``swap_pair`` names two degrees whose slots are interchanged by the
    involution (the two odd slots of a curve's hypercohomology); each
    matched pair of factors drawn from both slots contributes an extra
    sign -1.  Without it, signs are the plain products of slot signs.
    """
    if a < 0:
        raise ValueError("super_ext wants a >= 0")
    slots = []
    for nu in g.degrees():
        for s in SIGNS:
            rep = g.get(nu, s)
            if rep:
                slots.append((nu, s, rep))
    pair_idx = None
    if swap_pair is not None:
        found = {d: [i for i, (nu, _, _) in enumerate(slots) if nu == d] for d in swap_pair}
        if any(len(v) != 1 for v in found.values()):
            raise ValueError("swap_pair degrees must each name exactly one slot")
        pair_idx = tuple(found[d][0] for d in swap_pair)

    out = SignedGradedRep.zero(g.group)
    if a == 0:
        return SignedGradedRep.unit(g.group)
    for ks in _compositions(a, len(slots)):
        rep = VirtualRep.trivial(g.group)
        deg = 0
        sign = PLUS
        dead = False
        for (nu, s, slot_rep), k in zip(slots, ks):
            if k == 0:
                continue
            part = repring.ext_power(k, slot_rep) if nu % 2 == 0 \
                else repring.sym_power(k, slot_rep)
            if not part:
                dead = True
                break
            rep = repring.tensor(rep, part)
            deg += k * nu
            if s == MINUS and k % 2:
                sign = -sign
        if dead or not rep:
            continue
        if pair_idx is not None:
            if min(ks[pair_idx[0]], ks[pair_idx[1]]) % 2:
                sign = -sign
        out = out + SignedGradedRep.single(g.group, deg, sign, rep)
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# the graded objects the theta-divisor computations start from
# ---------------------------------------------------------------------------

def _standard_rep(group: GroupSpec) -> VirtualRep:
    """Standard rep of the first factor, trivial on the others."""
    weights = []
    for i, (_, rank) in enumerate(group.factors):
        w = [0] * rank
        if i == 0:
            w[0] = 1
        weights.append(tuple(w))
    return VirtualRep.irrep(group, *weights)


_FULL_EXTERIOR_CACHE: dict = {}


def full_exterior(group: GroupSpec, k: int) -> VirtualRep:
    """Full k-th exterior power of the standard rep of the first factor
    (the weight-k cohomology of the underlying abelian variety)."""
    two_g = 2 * group.factors[0][1]
    if k < 0 or k > two_g:
        return VirtualRep.zero(group)
    key = (group, k)
    if key not in _FULL_EXTERIOR_CACHE:
        _FULL_EXTERIOR_CACHE[key] = repring.ext_power(k, _standard_rep(group))
    return _FULL_EXTERIOR_CACHE[key]


def curve_hypercohomology(genus: int) -> SignedGradedRep:
    """Hypercohomology of the curve sheaf inside its Jacobian: trivial in
    degrees -1 and +1, the standard Sp(2g) rep in degree 0.

    The middle slot carries sign minus; the two outer slots are a swapped
    pair (use ``swap_pair=(-1, 1)`` when taking super exterior powers).
    """
    group = lie.sp(2 * genus)
    triv = VirtualRep.trivial(group)
    return SignedGradedRep(group, {
        -1: {PLUS: triv},
        0: {MINUS: _standard_rep(group)},
        1: {PLUS: triv},
    })


def jacobian_theta_hypercohomology(genus: int) -> SignedGradedRep:
    """Closed form of the theta-sheaf hypercohomology on a generic Jacobian:
    degree nu holds the full exterior powers Lambda^{n-2mu} with sign
    (-1)^{n+mu}, where n = genus-1-|nu|."""
    group = lie.sp(2 * genus)
    out = {}
    for nu in range(-(genus - 1), genus):
        n = genus - 1 - abs(nu)
        slot = {PLUS: VirtualRep.zero(group), MINUS: VirtualRep.zero(group)}
        for mu in range(n // 2 + 1):
            sign = PLUS if (n + mu) % 2 == 0 else MINUS
            slot[sign] = slot[sign] + full_exterior(group, n - 2 * mu)
        out[nu] = slot
    return SignedGradedRep(group, out)


def generic_theta_hypercohomology() -> SignedGradedRep:
    """Hypercohomology of the theta sheaf on a generic four-dimensional ppav
    as a representation of Sp(8) x Sp(10), in package form.

    The sign data is configuration: the involution acts by -1 on (1000) and
    (0010), trivially on (0000) and (0100), and trivially on the
    ten-dimensional middle part B (the Sp(10) standard)."""
    group = lie.product(lie.sp(8), lie.sp(10))

    def rep(w8, w10=(0, 0, 0, 0, 0)):
        return VirtualRep.irrep(group, w8, w10)

    packages = [
        LefschetzPackage(rep((0, 0, 0, 0)), PLUS, 3),
        LefschetzPackage(rep((1, 0, 0, 0)), MINUS, 2),
        LefschetzPackage(rep((0, 1, 0, 0)), PLUS, 1),
        LefschetzPackage(rep((0, 0, 1, 0)), MINUS, 0),
        LefschetzPackage(rep((0, 0, 0, 0), (1, 0, 0, 0, 0)), PLUS, 0),
    ]
    return expand(packages, group)


def tau_hypercohomology(genus: int, parity: str) -> SignedGradedRep:
    """Hypercohomology of the translation-invariant part of the (anti)
    symmetric convolution square of the theta sheaf on a smooth ppav:
    the sum over mu (odd for "+", even for "-", |mu| <= genus-2) of
    Lambda^{genus-2-|mu|} tensored with the constant-sheaf pattern shifted
    by mu.  Signs multiply across the tensor factor."""
    if parity not in ("+", "-"):
        raise ValueError("parity must be '+' or '-'")
    if genus < 2:
        raise ValueError("tau_hypercohomology wants genus >= 2")
    group = lie.sp(2 * genus)
    want_odd = parity == "+"
    out = SignedGradedRep.zero(group)
    for mu in range(-(genus - 2), genus - 1):
        if (abs(mu) % 2 == 1) != want_odd:
            continue
        coeff = full_exterior(group, genus - 2 - abs(mu))
        coeff_sign = PLUS if (genus - 2 - abs(mu)) % 2 == 0 else MINUS
        for nu in range(-genus - mu, genus - mu + 1):
            lam = full_exterior(group, nu + mu + genus)
            if not lam:
                continue
            sign = PLUS if (nu + mu + genus) % 2 == 0 else MINUS
            out = out + SignedGradedRep.single(
                group, nu, sign * coeff_sign, repring.tensor(coeff, lam))
    return out


def embed_with_trivial_factors(g: SignedGradedRep, target: GroupSpec) -> SignedGradedRep:
    """View a graded rep of the first factor of ``target`` as a graded rep
    of the whole product, trivial on the remaining factors."""
    if g.group.factors != target.factors[:len(g.group.factors)]:
        raise repring.GroupMismatch("source group is not an initial segment of the target")
    pad = tuple(tuple([0] * rank) for _, rank in target.factors[len(g.group.factors):])
    out = {}
    for nu, by_sign in g.data.items():
        slot = {}
        for s, rep in by_sign.items():
            terms = {IrrepLabel(target, label.weights + pad): m
                     for label, m in rep.terms.items()}
            slot[s] = VirtualRep(target, terms)
        out[nu] = slot
    return SignedGradedRep(target, out)


# ---------------------------------------------------------------------------
# peeling of constant-shift content
# ---------------------------------------------------------------------------

def constant_shift_pattern(group: GroupSpec, genus: int, mu: int,
                           multiplicity: VirtualRep | None = None) -> SignedGradedRep:
    """Hypercohomology of the constant sheaf shifted by mu: degree nu holds
    Lambda^{nu+mu+genus} with sign (-1)^{nu+mu+genus}, optionally tensored
    with a multiplicity representation."""
    out = SignedGradedRep.zero(group)
    for nu in range(-genus - mu, genus - mu + 1):
        lam = full_exterior(group, nu + mu + genus)
        if not lam:
            continue
        if multiplicity is not None:
            lam = repring.tensor(multiplicity, lam)
            if not lam:
                continue
        sign = PLUS if (nu + mu + genus) % 2 == 0 else MINUS
        out = out + SignedGradedRep.single(group, nu, sign, lam)
    return out


@dataclass
class PeelResult:
    core: SignedGradedRep
    #: mu >= 0 -> sigma-signed multiplicity rep {sign: VirtualRep}
    shifts: dict

    def shift_multiplicity(self, mu: int) -> VirtualRep:
        by_sign = self.shifts.get(mu, {})
        out = None
        for rep in by_sign.values():
            out = rep if out is None else out + rep
        return out if out is not None else None


def peel_constants(g: SignedGradedRep, genus: int) -> PeelResult:
    """Greedily remove constant-shift patterns until the残 core vanishes in
    all degrees |nu| >= genus.

    For mu running from (max degree - genus) down to 0 the content at degree
    -genus-mu is forced to be the multiplicity of the full shifted pattern
    (only its bottom Lambda^0 reaches that degree); that multiplicity is
    recorded and the pattern (and its mirror for mu > 0) subtracted.

    Identification and subtraction happen on sigma-collapsed content: the
    involution signs of individual constant summands are construction
    dependent and nothing downstream consumes them.  Core signs are kept
    where the subtraction is forced and resolved largest-first otherwise.
    """
    degrees = g.degrees()
    if not degrees:
        return PeelResult(g, {})
    max_deg = max(abs(d) for d in degrees)
    if max_deg < genus:
        return PeelResult(g, {})

    work = {nu: {s: dict(g.get(nu, s).terms) for s in SIGNS} for nu in degrees}

    def subtract(nu, label, p):
        slot = work.setdefault(nu, {PLUS: {}, MINUS: {}})
        mp = slot[PLUS].get(label, 0)
        mm = slot[MINUS].get(label, 0)
        # forced when only one sign carries the label; otherwise remove from
        # the larger multiplicity first, ties resolved towards sigma+
        if mm == 0:
            take_p, take_m = p, 0
        elif mp == 0:
            take_p, take_m = 0, p
        elif mp >= mm:
            head = min(p, mp - mm)
            rem = p - head
            take_p, take_m = head + (rem + 1) // 2, rem // 2
        else:
            head = min(p, mm - mp)
            rem = p - head
            take_p, take_m = (rem + 1) // 2, head + rem // 2
        for s, take in ((PLUS, take_p), (MINUS, take_m)):
            if take:
                slot[s][label] = slot[s].get(label, 0) - take
                if slot[s][label] == 0:
                    del slot[s][label]

    shifts = {}
    for mu in range(max_deg - genus, -1, -1):
        bottom = -genus - mu
        slot = work.get(bottom, {PLUS: {}, MINUS: {}})
        c_signed = {s: VirtualRep(g.group, dict(slot[s])) for s in SIGNS
                    if any(slot[s].values())}
        if not c_signed:
            continue
        shifts[mu] = c_signed
        c_total = VirtualRep.zero(g.group)
        for rep in c_signed.values():
            c_total = c_total + rep
        mus = (mu,) if mu == 0 else (mu, -mu)
        for m in mus:
            pattern = constant_shift_pattern(g.group, genus, m, c_total)
            for nu in pattern.degrees():
                content = pattern.unsigned_slot(nu)
                for label, p in content.terms.items():
                    subtract(nu, label, p)

    core_data = {}
    for nu, slot in work.items():
        entry = {}
        for s in SIGNS:
            rep = VirtualRep(g.group, slot[s])
            if rep:
                entry[s] = rep
        if entry:
            core_data[nu] = entry
    core = SignedGradedRep(g.group, core_data)

    for nu in core.degrees():
        if abs(nu) >= genus:
            raise InconsistentPeel(
                f"residual content at degree {nu} after peeling: {core.slot(nu)}")
    # negative residue inside the window is legal for virtual input; callers
    # that require effectivity check it themselves
    return PeelResult(core, shifts)
