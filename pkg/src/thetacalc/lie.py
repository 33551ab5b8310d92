"""Root systems, Weyl groups and weight multiplicities for the classical
families A, B, C, D and finite products thereof.

All weights are handled in *doubled orthogonal coordinates*: a weight living
in the span of e_1, ..., e_m is stored as the integer tuple of twice its
coordinates.  Doubling keeps the half-integral spin weights of types B and D
inside Z^m, so every computation below is exact integer arithmetic.  Inner
products pick up a uniform factor of four, which cancels everywhere it is
used (Weyl dimension ratios, Freudenthal's recursion, coroot pairings).

Multi-factor groups are handled factor-wise: a weight of a product is a
tuple of per-factor coordinate tuples, dimensions multiply and weight
diagrams are Cartesian products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = ("A", "B", "C", "D")

#: default guard against accidentally enormous weight-diagram computations
DEFAULT_DIM_CAP = 100_000


class DimensionCapExceeded(RuntimeError):
    """A weight-diagram computation exceeded the configured dimension cap."""


@dataclass(frozen=True)
class GroupSpec:
    """A finite product of classical simple groups.

    ``factors`` is an ordered tuple of (family, rank) pairs; the order is
    significant and preserved in all outputs.  ``isogeny`` is a bookkeeping
    tag (e.g. ``"mu3"`` for a central quotient); it never changes any
    computation because character arithmetic only sees the Lie algebra.
    """

    factors: tuple[tuple[str, int], ...]
    isogeny: str | None = None

    def __post_init__(self):
        if not self.factors:
            raise ValueError("GroupSpec needs at least one factor")
        for fam, rank in self.factors:
            if fam not in FAMILIES:
                raise ValueError(f"unknown family {fam!r}")
            if fam == "D":
                if rank < 2:
                    raise ValueError("family D needs rank >= 2")
            elif rank < 1:
                raise ValueError(f"family {fam} needs rank >= 1")

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    def __str__(self) -> str:
        names = []
        for fam, rank in self.factors:
            if fam == "A":
                names.append(f"SL{rank + 1}")
            elif fam == "B":
                names.append(f"SO{2 * rank + 1}")
            elif fam == "C":
                names.append(f"Sp{2 * rank}")
            else:
                names.append(f"SO{2 * rank}")
        return "x".join(names)


def sp(two_n: int) -> GroupSpec:
    """Sp(2n) as the type-C_n group."""
    if two_n % 2 or two_n < 2:
        raise ValueError("sp() wants a positive even argument")
    return GroupSpec((("C", two_n // 2),))


def so(m: int) -> GroupSpec:
    """SO(m): type B for odd m, type D for even m."""
    if m < 3:
        raise ValueError("so() wants m >= 3")
    if m % 2:
        return GroupSpec((("B", (m - 1) // 2),))
    return GroupSpec((("D", m // 2),))


def sl(n: int, isogeny: str | None = None) -> GroupSpec:
    """SL(n) as the type-A_{n-1} group, with an optional isogeny tag."""
    if n < 2:
        raise ValueError("sl() wants n >= 2")
    return GroupSpec((("A", n - 1),), isogeny)


def product(*specs: GroupSpec) -> GroupSpec:
    factors = tuple(f for s in specs for f in s.factors)
    return GroupSpec(factors)


def parse_group(text: str) -> GroupSpec:
    """Parse a group name such as ``Sp8``, ``SO7``, ``SL6``, ``Sp8xSp10`` or ``C4``."""
    factors = []
    for tok in text.split("x"):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty factor in group name {text!r}")
        head = tok.rstrip("0123456789")
        num = tok[len(head):]
        if not num:
            raise ValueError(f"missing rank in group factor {tok!r}")
        n = int(num)
        head = head.upper()
        if head == "SP":
            factors.append(sp(n))
        elif head == "SO":
            factors.append(so(n))
        elif head == "SL":
            factors.append(sl(n))
        elif head in FAMILIES:
            factors.append(GroupSpec(((head, n),)))
        else:
            raise ValueError(f"unknown group factor {tok!r}")
    return product(*factors)


@dataclass(frozen=True)
class IrrepLabel:
    """An irreducible representation named by per-factor fundamental-weight
    coordinates (non-negative integers, one tuple per factor)."""

    group: GroupSpec
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.weights) != len(self.group.factors):
            raise ValueError("one weight tuple per group factor required")
        for (fam, rank), tup in zip(self.group.factors, self.weights):
            if len(tup) != rank:
                raise ValueError(f"weight tuple {tup} has wrong length for {fam}{rank}")
            if any(a < 0 for a in tup):
                raise ValueError("fundamental-weight coordinates must be >= 0")

    def __str__(self) -> str:
        return "x".join(weight_to_str(w) for w in self.weights)


def weight_to_str(tup: tuple[int, ...]) -> str:
    """Compact digit string ("0010") when possible, comma form otherwise."""
    if all(0 <= a <= 9 for a in tup):
        return "".join(str(a) for a in tup)
    return ",".join(str(a) for a in tup)


def weight_from_str(text: str, rank: int) -> tuple[int, ...]:
    if "," in text:
        parts = text.split(",")
    else:
        parts = list(text)
    try:
        tup = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad weight string {text!r}: {exc}") from None
    if len(tup) != rank:
        raise ValueError(f"weight {text!r} has {len(tup)} entries, expected {rank}")
    if any(a < 0 for a in tup):
        raise ValueError(f"weight {text!r} has negative entries")
    return tup


# ---------------------------------------------------------------------------
# single-factor geometry, all in doubled orthogonal coordinates
# ---------------------------------------------------------------------------

def _dim_of_eps(fam: str, rank: int) -> int:
    # ambient coordinate count
    return rank + 1 if fam == "A" else rank


def fund_to_eps(fam: str, rank: int, a: tuple[int, ...]) -> tuple[int, ...]:
    """Fundamental-weight coordinates -> doubled orthogonal coordinates."""
    if fam in ("A", "C"):
        m = rank + 1 if fam == "A" else rank
        v = [0] * m
        acc = 0
        for i in range(rank - 1, -1, -1):
            acc += a[i]
            v[i] = 2 * acc
        return tuple(v)
    if fam == "B":
        # spin coordinate a_n/2 doubles to a_n on every entry
        v = [a[rank - 1]] * rank
        for i in range(rank - 1):
            v[i] += 2 * sum(a[i:rank - 1])
        return tuple(v)
    # D
    half_sum = a[rank - 2] + a[rank - 1]    # doubled (a_{n-1}+a_n)/2
    half_diff = a[rank - 1] - a[rank - 2]   # doubled (a_n-a_{n-1})/2
    v = [0] * rank
    for i in range(rank - 2):
        v[i] = 2 * sum(a[i:rank - 2]) + half_sum
    v[rank - 2] = half_sum
    v[rank - 1] = half_diff
    return tuple(v)


def eps_to_fund(fam: str, rank: int, v: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse of :func:`fund_to_eps` on dominant vectors; exactness asserted."""
    if fam in ("A", "C"):
        if fam == "A":
            diffs = [v[i] - v[i + 1] for i in range(rank)]
        else:
            diffs = [v[i] - v[i + 1] for i in range(rank - 1)] + [v[rank - 1]]
        out = []
        for d in diffs:
            if d % 2 or d < 0:
                raise ValueError(f"not a dominant integral weight for {fam}{rank}: {v}")
            out.append(d // 2)
        return tuple(out)
    if fam == "B":
        out = []
        for i in range(rank - 1):
            d = v[i] - v[i + 1]
            if d % 2 or d < 0:
                raise ValueError(f"not a dominant integral weight for B{rank}: {v}")
            out.append(d // 2)
        if v[rank - 1] < 0:
            raise ValueError(f"not dominant for B{rank}: {v}")
        out.append(v[rank - 1])
        return tuple(out)
    # D
    out = []
    for i in range(rank - 2):
        d = v[i] - v[i + 1]
        if d % 2 or d < 0:
            raise ValueError(f"not a dominant integral weight for D{rank}: {v}")
        out.append(d // 2)
    s, t = v[rank - 2] + v[rank - 1], v[rank - 2] - v[rank - 1]
    if s % 2 or t % 2 or s < 0 or t < 0:
        raise ValueError(f"not dominant for D{rank}: {v}")
    return tuple(out + [t // 2, s // 2])


@lru_cache(maxsize=None)
def simple_roots(fam: str, rank: int) -> tuple[tuple[int, ...], ...]:
    m = _dim_of_eps(fam, rank)

    def vec(*pairs):
        v = [0] * m
        for idx, val in pairs:
            v[idx] = val
        return tuple(v)

    roots = [vec((i, 2), (i + 1, -2)) for i in range(rank - 1)]
    if fam == "A":
        roots.append(vec((rank - 1, 2), (rank, -2)))
    elif fam == "C":
        roots.append(vec((rank - 1, 4)))
    elif fam == "B":
        roots.append(vec((rank - 1, 2)))
    else:  # D
        roots.append(vec((rank - 2, 2), (rank - 1, 2)))
    return tuple(roots)


@lru_cache(maxsize=None)
def positive_roots(fam: str, rank: int) -> tuple[tuple[int, ...], ...]:
    m = _dim_of_eps(fam, rank)

    def vec(*pairs):
        v = [0] * m
        for idx, val in pairs:
            v[idx] = val
        return tuple(v)

    roots = []
    if fam == "A":
        for i in range(rank + 1):
            for j in range(i + 1, rank + 1):
                roots.append(vec((i, 2), (j, -2)))
        return tuple(roots)
    for i in range(rank):
        for j in range(i + 1, rank):
            roots.append(vec((i, 2), (j, -2)))
            roots.append(vec((i, 2), (j, 2)))
    if fam == "C":
        roots.extend(vec((i, 4)) for i in range(rank))
    elif fam == "B":
        roots.extend(vec((i, 2)) for i in range(rank))
    return tuple(roots)


@lru_cache(maxsize=None)
def rho(fam: str, rank: int) -> tuple[int, ...]:
    if fam == "A":
        return tuple(2 * (rank - i) for i in range(rank + 1))
    if fam == "C":
        return tuple(2 * (rank - i) for i in range(rank))
    if fam == "B":
        return tuple(2 * (rank - i) - 1 for i in range(rank))
    return tuple(2 * (rank - 1 - i) for i in range(rank))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _is_dominant(fam: str, rank: int, v: tuple[int, ...]) -> bool:
    if fam == "A":
        return all(v[i] >= v[i + 1] for i in range(rank))
    if fam in ("B", "C"):
        return all(v[i] >= v[i + 1] for i in range(rank - 1)) and v[rank - 1] >= 0
    # D: v_1 >= ... >= v_{n-1} >= |v_n|
    return all(v[i] >= v[i + 1] for i in range(rank - 2)) and v[rank - 2] >= abs(v[rank - 1])


def _dominant_rep(fam: str, rank: int, v: tuple[int, ...]) -> tuple[int, ...]:
    if fam == "A":
        return tuple(sorted(v, reverse=True))
    if fam in ("B", "C"):
        return tuple(sorted((abs(c) for c in v), reverse=True))
    mags = sorted((abs(c) for c in v), reverse=True)
    negs = sum(1 for c in v if c < 0)
    if negs % 2 and all(c != 0 for c in v):
        mags[-1] = -mags[-1]
    return tuple(mags)


def _orbit(fam: str, rank: int, v: tuple[int, ...]) -> set[tuple[int, ...]]:
    if fam == "A":
        return set(itertools.permutations(v))
    mags = tuple(abs(c) for c in v)
    out = set()
    for perm in set(itertools.permutations(mags)):
        nonzero = [i for i, c in enumerate(perm) if c]
        has_zero = len(nonzero) < rank
        for signs in itertools.product((1, -1), repeat=len(nonzero)):
            if fam == "D" and not has_zero and signs.count(-1) % 2:
                continue
            w = list(perm)
            for i, s in zip(nonzero, signs):
                w[i] = s * w[i]
            out.add(tuple(w))
    return out


@lru_cache(maxsize=None)
def _factor_weyl_dim(fam: str, rank: int, a: tuple[int, ...]) -> int:
    lam = fund_to_eps(fam, rank, a)
    r = rho(fam, rank)
    lam_rho = tuple(x + y for x, y in zip(lam, r))
    dim = Fraction(1)
    for alpha in positive_roots(fam, rank):
        dim *= Fraction(_dot(lam_rho, alpha), _dot(r, alpha))
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def _coroot_pairing(w, alpha) -> int:
    num = 2 * _dot(w, alpha)
    den = _dot(alpha, alpha)
    q, r = divmod(num, den)
    if r:
        raise ValueError(f"non-integral coroot pairing for weight {w}")
    return q


def _weight_closure(fam, rank, lam):
    """All weights of the irrep with highest weight ``lam`` (saturated set)."""
    simples = simple_roots(fam, rank)
    seen = {lam}
    stack = [lam]
    while stack:
        w = stack.pop()
        for alpha in simples:
            m = _coroot_pairing(w, alpha)
            for k in range(1, m + 1):
                nxt = tuple(c - k * a for c, a in zip(w, alpha))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return seen


@lru_cache(maxsize=None)
def _factor_weight_mults(fam: str, rank: int, a: tuple[int, ...]) -> dict:
    """Weight diagram of a single-factor irrep via Freudenthal's recursion."""
    lam = fund_to_eps(fam, rank, a)
    r = rho(fam, rank)
    pos = positive_roots(fam, rank)

    weights = _weight_closure(fam, rank, lam)
    dominants = [w for w in weights if _is_dominant(fam, rank, w)]

    def norm_rho(w):
        s = tuple(x + y for x, y in zip(w, r))
        return _dot(s, s)

    dominants.sort(key=lambda w: (norm_rho(w), w), reverse=True)
    assert dominants[0] == lam

    top = norm_rho(lam)
    mult = {lam: 1}
    for mu in dominants[1:]:
        num = 0
        for alpha in pos:
            k = 1
            while True:
                w = tuple(c + k * al for c, al in zip(mu, alpha))
                if w not in weights:
                    break
                num += mult[_dominant_rep(fam, rank, w)] * _dot(w, alpha)
                k += 1
        den = top - norm_rho(mu)
        assert den > 0, "Freudenthal denominator must be positive"
        q, rem = divmod(2 * num, den)
        assert rem == 0 and q > 0, "Freudenthal recursion must be exact"
        mult[mu] = q

    full = {}
    for mu, m in mult.items():
        for w in _orbit(fam, rank, mu):
            full[w] = m
    return full


# ---------------------------------------------------------------------------
# public, product-group operations
# ---------------------------------------------------------------------------

def weyl_dim(label: IrrepLabel) -> int:
    """Dimension by the Weyl product formula, factor dimensions multiplied."""
    dim = 1
    for (fam, rank), a in zip(label.group.factors, label.weights):
        dim *= _factor_weyl_dim(fam, rank, a)
    return dim


def weight_multiplicities(label: IrrepLabel, dim_cap: int | None = DEFAULT_DIM_CAP) -> dict:
    """Full weight diagram {weight -> multiplicity}.

    Weights are tuples of per-factor doubled orthogonal coordinate tuples.
    Raises :class:`DimensionCapExceeded` above the cap (pass ``None`` to
    disable the guard).
    """
    d = weyl_dim(label)
    if dim_cap is not None and d > dim_cap:
        raise DimensionCapExceeded(
            f"irrep {label} has dimension {d} > cap {dim_cap}")
    factor_diagrams = [
        _factor_weight_mults(fam, rank, a)
        for (fam, rank), a in zip(label.group.factors, label.weights)
    ]
    out = {}
    for combo in itertools.product(*(d.items() for d in factor_diagrams)):
        w = tuple(item[0] for item in combo)
        m = 1
        for item in combo:
            m *= item[1]
        out[w] = m
    assert sum(out.values()) == d
    return out


def weyl_orbit(group: GroupSpec, weight: tuple[tuple[int, ...], ...]) -> set:
    """Weyl-group orbit of a weight (doubled orthogonal coordinates)."""
    factor_orbits = [
        _orbit(fam, rank, w) for (fam, rank), w in zip(group.factors, weight)
    ]
    return set(itertools.product(*factor_orbits))


def dominant_representative(group: GroupSpec, weight) -> tuple:
    return tuple(
        _dominant_rep(fam, rank, w) for (fam, rank), w in zip(group.factors, weight)
    )


def is_dominant(group: GroupSpec, weight) -> bool:
    return all(
        _is_dominant(fam, rank, w) for (fam, rank), w in zip(group.factors, weight)
    )


def label_from_eps(group: GroupSpec, weight) -> IrrepLabel:
    """Dominant doubled-orthogonal weight -> IrrepLabel (exact, checked)."""
    return IrrepLabel(group, tuple(
        eps_to_fund(fam, rank, w) for (fam, rank), w in zip(group.factors, weight)
    ))


def eps_of_label(label: IrrepLabel) -> tuple:
    return tuple(
        fund_to_eps(fam, rank, a)
        for (fam, rank), a in zip(label.group.factors, label.weights)
    )


def norm_key(group: GroupSpec, weight) -> int:
    """|w + rho|^2 summed over factors; strictly maximal at the highest
    weight among the weights of an irrep, which drives the peeling order."""
    total = 0
    for (fam, rank), w in zip(group.factors, weight):
        s = tuple(x + y for x, y in zip(w, rho(fam, rank)))
        total += _dot(s, s)
    return total
