"""Formal convolution calculus on the degenerate (Jacobian) fiber in genus
four: simple-object square tables, filtration-diagram squares, the
hypercohomology functor into graded Sp(8)-representations, and the
Littlewood-Richardson difference rule for the constituents delta_{a,b}.

The genus is fixed to four here: every product table below is a genus-four
fact.  Simple objects are labels; products outside the tables are kept as
opaque convolution terms whose hypercohomology is computed by Kunneth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import lie, repring, graded
from .graded import SignedGradedRep, PLUS, MINUS

GENUS = 4
SP8 = lie.sp(8)

DELTA_THETA_S = "delta_theta_s"
SKY_PM_E = "sky_pm_e"
SKY_PM_2E = "sky_pm_2e"
SKY_SIGMA_PLUS = "sky_sigma_plus"
SKY_SIGMA_MINUS = "sky_sigma_minus"
UNIT = "unit"
DELTA_AB = "delta_ab"
DELTA_X_SHIFT = "delta_x_shift"

_SIMPLE_NAMES = {DELTA_THETA_S, SKY_PM_E, SKY_PM_2E, SKY_SIGMA_PLUS,
                 SKY_SIGMA_MINUS, UNIT, DELTA_AB, DELTA_X_SHIFT}


class UnknownLabel(ValueError):
    """A simple label outside the calculus."""


class UnsupportedSquare(ValueError):
    """square_simple is a table lookup; this label is not in the table."""


class NegativeResult(ValueError):
    """A difference that must be effective came out virtual."""


@dataclass(frozen=True)
class Simple:
    """A simple object label, with integer parameters where the kind
    needs them (delta_ab: the pair (a, b); delta_x_shift: the shift)."""

    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in _SIMPLE_NAMES:
            raise UnknownLabel(f"unknown simple label {self.name!r}")
        if self.name == DELTA_AB:
            a, b = self.params
            if not (a >= b >= 0 and a + b <= 2 * (GENUS - 1)):
                raise ValueError(f"delta_ab parameters out of range: {self.params}")
        elif self.name == DELTA_X_SHIFT:
            if len(self.params) != 1:
                raise ValueError("delta_x_shift takes one shift parameter")
        elif self.params:
            raise ValueError(f"{self.name} takes no parameters")

    def __str__(self):
        if self.name == DELTA_AB:
            return f"delta_ab_{self.params[0]}_{self.params[1]}"
        if self.name == DELTA_X_SHIFT:
            return f"delta_x_shift_{self.params[0]}"
        return self.name


def delta_ab(a: int, b: int) -> Simple:
    return Simple(DELTA_AB, (a, b))


@dataclass(frozen=True)
class Term:
    """A (possibly opaque convolution) product of simple labels with a
    Tate twist; single-factor terms are the simple objects themselves."""

    simples: tuple[Simple, ...]
    twist: int = 0

    def __post_init__(self):
        if not self.simples:
            raise ValueError("empty term")
        object.__setattr__(self, "simples", tuple(sorted(self.simples, key=str)))

    def label(self) -> str:
        if len(self.simples) == 1:
            return str(self.simples[0])
        return "conv(" + ",".join(str(s) for s in self.simples) + ")"

    def twisted(self, extra: int) -> "Term":
        return Term(self.simples, self.twist + extra)


class FormalObject:
    """Multiset of terms with positive multiplicities."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for t, m in (terms or {}).items():
            if m < 0:
                raise ValueError("formal objects have non-negative multiplicities")
            if m:
                clean[t] = clean.get(t, 0) + m
        self.terms = clean

    @staticmethod
    def of(*simples_twists) -> "FormalObject":
        terms = {}
        for simple, twist in simples_twists:
            t = Term((simple,), twist)
            terms[t] = terms.get(t, 0) + 1
        return FormalObject(terms)

    def __add__(self, other: "FormalObject") -> "FormalObject":
        out = dict(self.terms)
        for t, m in other.terms.items():
            out[t] = out.get(t, 0) + m
        return FormalObject(out)

    def scale(self, c: int) -> "FormalObject":
        return FormalObject({t: c * m for t, m in self.terms.items()})

    def twisted(self, extra: int) -> "FormalObject":
        return FormalObject({t.twisted(extra): m for t, m in self.terms.items()})

    def remove(self, term: "Term", count: int = 1) -> "FormalObject":
        out = dict(self.terms)
        if out.get(term, 0) < count:
            raise ValueError(f"cannot remove {count} x {term.label()}")
        out[term] -= count
        return FormalObject(out)

    def __eq__(self, other):
        return isinstance(other, FormalObject) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].label(), kv[0].twist))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for t, m in self.sorted_terms():
            s = t.label()
            if t.twist:
                s += f"({t.twist})"
            if m != 1:
                s += f"^{m}"
            bits.append(s)
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# square tables (genus-four facts)
# ---------------------------------------------------------------------------

_SYM_TABLE = {
    SKY_PM_E: ((Simple(SKY_PM_2E), 0), (Simple(SKY_SIGMA_PLUS), 0)),
    DELTA_THETA_S: ((delta_ab(3, 3), 0), (delta_ab(5, 1), 0)),
}
_ALT_TABLE = {
    SKY_PM_E: ((Simple(SKY_SIGMA_MINUS), 0),),
    DELTA_THETA_S: ((delta_ab(4, 2), 0), (delta_ab(6, 0), 0)),
}


def square_simple(simple: Simple, variant: str) -> FormalObject:
    """Table lookup for the symmetric/alternating square of a simple object."""
    table = {"sym": _SYM_TABLE, "alt": _ALT_TABLE}.get(variant)
    if table is None:
        raise ValueError("variant must be 'sym' or 'alt'")
    if simple.name not in table:
        raise UnsupportedSquare(f"no square table entry for {simple}")
    return FormalObject.of(*table[simple.name])


def _product_terms(t1: Term, t2: Term) -> FormalObject:
    """Convolution of two single-simple terms.  Unit is neutral; the square
    table expands a product of two copies of the same tabled simple; other
    products stay opaque."""
    twist = t1.twist + t2.twist
    s1, = t1.simples
    s2, = t2.simples
    if s1.name == UNIT:
        return FormalObject({Term(t2.simples, twist): 1})
    if s2.name == UNIT:
        return FormalObject({Term(t1.simples, twist): 1})
    if s1 == s2 and s1.name in _SYM_TABLE:
        return (square_simple(s1, "sym") + square_simple(s1, "alt")).twisted(twist)
    return FormalObject({Term(t1.simples + t2.simples, twist): 1})


def _cross_product(a: FormalObject, b: FormalObject) -> FormalObject:
    out = FormalObject()
    for t1, m1 in a.terms.items():
        if len(t1.simples) != 1:
            raise UnknownLabel(f"cannot convolve opaque term {t1.label()}")
        for t2, m2 in b.terms.items():
            if len(t2.simples) != 1:
                raise UnknownLabel(f"cannot convolve opaque term {t2.label()}")
            out = out + _product_terms(t1, t2).scale(m1 * m2)
    return out


def _square_object(obj: FormalObject, variant: str) -> FormalObject:
    """Symmetric/alternating square of a whole formal object: pairwise
    products of distinct terms plus per-term squares, with the multiplicity
    combinatorics of a direct sum."""
    out = FormalObject()
    items = obj.sorted_terms()
    for i, (t1, m1) in enumerate(items):
        # distinct unordered pairs
        for t2, m2 in items[i + 1:]:
            out = out + _product_terms(t1, t2).scale(m1 * m2)
        # the square of m copies of t1: the matched-variant square enters
        # m(m+1)/2 times, the opposite variant m(m-1)/2 times
        matched = m1 * (m1 + 1) // 2
        opposite = m1 * (m1 - 1) // 2
        other = "alt" if variant == "sym" else "sym"
        s1, = t1.simples
        if matched:
            out = out + square_simple(s1, variant).twisted(2 * t1.twist).scale(matched)
        if opposite:
            out = out + square_simple(s1, other).twisted(2 * t1.twist).scale(opposite)
    return out


# ---------------------------------------------------------------------------
# filtration diagrams
# ---------------------------------------------------------------------------

@dataclass
class FiltrationDiagram:
    """Monodromy-filtration rows Gr_i, each a formal object; row i is pure
    of weight base_weight + i."""

    rows: dict[int, FormalObject]
    base_weight: int

    def weight_of(self, i: int) -> int:
        return self.base_weight + i

    def row(self, i: int) -> FormalObject:
        return self.rows.get(i, FormalObject())

    def indices(self):
        return sorted(self.rows)

    def check_symmetry(self):
        """Numerical Gr_i ~ Gr_{-i} (the N^i isomorphism on Euler counts)."""
        for i in self.indices():
            if euler_check(self.row(i)) != euler_check(self.row(-i)):
                raise graded.AsymmetricGrading(f"chi(Gr_{i}) != chi(Gr_{-i})")

    def __eq__(self, other):
        return isinstance(other, FiltrationDiagram) \
            and self.base_weight == other.base_weight \
            and {i: r for i, r in self.rows.items() if r} == \
                {i: r for i, r in other.rows.items() if r}

    def render(self, title: str = "") -> str:
        lines = []
        if title:
            lines.append(f"{title}  (base weight {self.base_weight})")
        idx = self.indices()
        width = max((len(f"Gr_{i:+d}") for i in idx), default=4)
        for i in sorted(idx, reverse=True):
            row = self.row(i)
            pad = "    " * (max(idx) - abs(i)) if idx else ""
            label = f"Gr_{i:+d}".ljust(width)
            lines.append(f"  {label}  w={self.weight_of(i)}  {pad}{row!r}")
        return "\n".join(lines)


def psi1_delta_diagram() -> FiltrationDiagram:
    """The three-row monodromy diagram of the degenerating theta sheaf:
    twisted two-point skyscrapers above and below the theta sheaf of the
    Jacobian."""
    return FiltrationDiagram(
        rows={
            1: FormalObject.of((Simple(SKY_PM_E), -2)),
            0: FormalObject.of((Simple(DELTA_THETA_S), 0)),
            -1: FormalObject.of((Simple(SKY_PM_E), -1)),
        },
        base_weight=3,
    )


def diagram_square(d: FiltrationDiagram, variant: str,
                   interesting_only: bool = True) -> FiltrationDiagram:
    """Row-graded symmetric/alternating square of a filtration diagram:
    output row i collects products of input rows i1 * i2 over i1 + i2 = i,
    with the square tables on the diagonal; weights add.

    With ``interesting_only`` the unit constituent is removed from the
    variant that carries it (the alternating square in even genus): the
    delta_{6,0} term produced by the table is that unit constituent.
    """
    if variant not in ("sym", "alt"):
        raise ValueError("variant must be 'sym' or 'alt'")
    idx = d.indices()
    rows: dict[int, FormalObject] = {}

    def add(i, obj):
        if obj:
            rows[i] = rows.get(i, FormalObject()) + obj

    for a_pos, i1 in enumerate(idx):
        for i2 in idx[a_pos + 1:]:
            add(i1 + i2, _cross_product(d.row(i1), d.row(i2)))
        add(2 * i1, _square_object(d.row(i1), variant))

    out = FiltrationDiagram(rows=rows, base_weight=2 * d.base_weight)
    if interesting_only and variant == "alt":
        unit_term = Term((delta_ab(6, 0),), 0)
        for i in out.indices():
            if unit_term in out.row(i).terms:
                out.rows[i] = out.row(i).remove(unit_term)
        out.rows = {i: r for i, r in out.rows.items() if r}
    return out


def diagram_full_square(d: FiltrationDiagram) -> FiltrationDiagram:
    """Full tensor square of the diagram (ordered pairs), for checking that
    the symmetric and alternating squares exhaust it row-wise."""
    idx = d.indices()
    rows: dict[int, FormalObject] = {}
    for i1 in idx:
        for i2 in idx:
            if i1 < i2:
                prod = _cross_product(d.row(i1), d.row(i2)).scale(2)
            elif i1 == i2:
                prod = _square_object(d.row(i1), "sym") + _square_object(d.row(i1), "alt")
            else:
                continue
            if prod:
                rows[i1 + i2] = rows.get(i1 + i2, FormalObject()) + prod
    return FiltrationDiagram(rows=rows, base_weight=2 * d.base_weight)


def psi1_delta_pm_diagrams():
    """The two squared diagrams (symmetric, alternating), unit removed."""
    base = psi1_delta_diagram()
    return diagram_square(base, "sym"), diagram_square(base, "alt")


# ---------------------------------------------------------------------------
# hypercohomology and the LR difference rule
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def theta_power_core(c: int) -> SignedGradedRep:
    """Peeled core of the c-th super exterior power of the curve sheaf's
    hypercohomology: the graded representation attached to the c-th
    convolution-power constituent delta_c."""
    if c < 0:
        raise ValueError("power must be >= 0")
    se = graded.super_ext(c, graded.curve_hypercohomology(GENUS), swap_pair=(-1, 1))
    return graded.peel_constants(se, GENUS).core


@lru_cache(maxsize=None)
def lr_delta_ab(a: int, b: int) -> SignedGradedRep:
    """Hypercohomology of delta_{a,b} by the difference rule: the Kunneth
    product for (a, b) minus the one for (a+1, b-1), constants peeled.
    The result must be effective and degree-symmetric."""
    if not (a >= b > 0 and a + b <= 2 * (GENUS - 1)):
        raise ValueError(f"lr_delta_ab wants a >= b > 0, a+b <= {2*(GENUS-1)}; got {(a, b)}")
    diff = graded.graded_tensor(theta_power_core(a), theta_power_core(b)) \
        - graded.graded_tensor(theta_power_core(a + 1), theta_power_core(b - 1))
    core = graded.peel_constants(diff, GENUS).core
    if not core.is_effective():
        raise NegativeResult(f"delta_{{{a},{b}}} came out virtual")
    if not core.is_degree_symmetric(signed=False):
        raise graded.AsymmetricGrading(f"delta_{{{a},{b}}} is not degree-symmetric")
    return core


def _hyper_simple(simple: Simple) -> SignedGradedRep:
    triv = repring.VirtualRep.trivial(SP8)
    if simple.name == UNIT:
        return SignedGradedRep.unit(SP8)
    if simple.name in (SKY_SIGMA_PLUS,):
        return SignedGradedRep.single(SP8, 0, PLUS, triv)
    if simple.name == SKY_SIGMA_MINUS:
        return SignedGradedRep.single(SP8, 0, MINUS, triv)
    if simple.name in (SKY_PM_E, SKY_PM_2E):
        # two swapped points: the regular representation of the swap
        return SignedGradedRep(SP8, {0: {PLUS: triv, MINUS: triv}})
    if simple.name == DELTA_THETA_S:
        return graded.jacobian_theta_hypercohomology(GENUS)
    if simple.name == DELTA_AB:
        a, b = simple.params
        if b == 0:
            return theta_power_core(a)
        return lr_delta_ab(a, b)
    if simple.name == DELTA_X_SHIFT:
        return graded.constant_shift_pattern(SP8, GENUS, simple.params[0])
    raise UnknownLabel(str(simple))


def hyper(obj: FormalObject) -> SignedGradedRep:
    """Hypercohomology of a formal object as a graded Sp(8)-representation:
    additive over terms, Kunneth-multiplicative over convolution factors.
    Tate twists are weight bookkeeping and do not appear here."""
    out = SignedGradedRep.zero(SP8)
    for term, mult in obj.terms.items():
        acc = None
        for simple in term.simples:
            h = _hyper_simple(simple)
            acc = h if acc is None else graded.graded_tensor(acc, h)
        out = out + acc.scale(mult)
    return out


def euler_check(obj: FormalObject) -> int:
    """Euler characteristic of the hypercohomology; additive over sums and
    multiplicative under convolution."""
    return hyper(obj).euler()
