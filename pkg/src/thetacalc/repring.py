"""Arithmetic in the representation ring of a classical group: tensor
products with decomposition into irreducibles, Adams operations, symmetric
and alternating squares, and exterior/symmetric powers of virtual characters.

Tensor products are computed by full character convolution followed by
highest-weight peeling.  That is the simplest correct algorithm at the scale
this package runs at; a Brauer-Klimyk route could be swapped in behind the
same contract later.
"""

from __future__ import annotations

from . import lie
from .lie import GroupSpec, IrrepLabel

#: hard stop for the peeling loop; valid Weyl-invariant input terminates long
#: before this, so hitting it means the character was not invariant.
PEEL_ITERATION_BOUND = 100_000


class GroupMismatch(ValueError):
    """Operands live over different groups."""


class NonInvariantCharacter(ValueError):
    """A character map was not Weyl-invariant, so peeling cannot finish."""


class VirtualRep:
    """Integer-multiplicity linear combination of irreducible labels.

    Multiplicities may be negative (virtual intermediates are normal during
    difference constructions); zero multiplicities are never stored.
    """

    __slots__ = ("group", "terms")

    def __init__(self, group: GroupSpec, terms=None):
        self.group = group
        clean = {}
        for label, mult in (terms or {}).items():
            if label.group != group:
                raise GroupMismatch(f"label {label} not over {group}")
            if mult:
                clean[label] = clean.get(label, 0) + mult
        self.terms = {k: v for k, v in clean.items() if v}

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def zero(group: GroupSpec) -> "VirtualRep":
        return VirtualRep(group, {})

    @staticmethod
    def irrep(group: GroupSpec, *weights) -> "VirtualRep":
        label = IrrepLabel(group, tuple(tuple(w) for w in weights))
        return VirtualRep(group, {label: 1})

    @staticmethod
    def trivial(group: GroupSpec) -> "VirtualRep":
        return VirtualRep.irrep(group, *(tuple([0] * r) for _, r in group.factors))

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "VirtualRep"):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return VirtualRep(self.group, out)

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.group, {k: -v for k, v in self.terms.items()})

    def scale(self, c: int) -> "VirtualRep":
        return VirtualRep(self.group, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "VirtualRep") -> "VirtualRep":
        return tensor(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualRep) and self.group == other.group \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.terms.items(), key=_label_key))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ---------------------------------------------------------------

    def dim(self) -> int:
        return sum(m * lie.weyl_dim(label) for label, m in self.terms.items())

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def multiplicity(self, label: IrrepLabel) -> int:
        return self.terms.get(label, 0)

    def character(self, dim_cap=lie.DEFAULT_DIM_CAP) -> dict:
        char = {}
        for label, mult in self.terms.items():
            for w, m in lie.weight_multiplicities(label, dim_cap).items():
                char[w] = char.get(w, 0) + mult * m
        return {w: m for w, m in char.items() if m}

    def sorted_terms(self):
        """Terms in the canonical (lexicographic weight-tuple) order."""
        return sorted(self.terms.items(), key=_label_key)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for label, m in self.sorted_terms():
            s = f"({label})"
            if m != 1:
                s += f"^{m}"
            bits.append(s)
        return " + ".join(bits)


def _label_key(item):
    label = item[0] if isinstance(item, tuple) else item
    return label.weights


def decompose(group: GroupSpec, char: dict, dim_cap=lie.DEFAULT_DIM_CAP) -> VirtualRep:
    """Expand a Weyl-invariant character {weight -> multiplicity} in
    irreducible characters by repeated highest-dominant-weight peeling."""
    work = {w: m for w, m in char.items() if m}
    out = {}
    for _ in range(PEEL_ITERATION_BOUND):
        if not work:
            return VirtualRep(group, out)
        best = None
        best_key = None
        for w in work:
            if lie.is_dominant(group, w):
                key = (lie.norm_key(group, w), w)
                if best_key is None or key > best_key:
                    best, best_key = w, key
        if best is None:
            raise NonInvariantCharacter(
                "residual character has no dominant support; input was not Weyl-invariant")
        label = lie.label_from_eps(group, best)
        c = work[best]
        out[label] = out.get(label, 0) + c
        for w, m in lie.weight_multiplicities(label, dim_cap).items():
            nm = work.get(w, 0) - c * m
            if nm:
                work[w] = nm
            else:
                work.pop(w, None)
    raise NonInvariantCharacter("peeling iteration bound exceeded")


def tensor(a: VirtualRep, b: VirtualRep, dim_cap=lie.DEFAULT_DIM_CAP) -> VirtualRep:
    """Decomposition of a (x) b into irreducibles; bilinear, dimension-preserving."""
    a._check(b)
    ca = a.character(dim_cap)
    cb = b.character(dim_cap)
    conv = {}
    for wa, ma in ca.items():
        for wb, mb in cb.items():
            w = tuple(tuple(x + y for x, y in zip(fa, fb)) for fa, fb in zip(wa, wb))
            conv[w] = conv.get(w, 0) + ma * mb
    return decompose(a.group, conv, dim_cap)


def adams(k: int, v: VirtualRep, dim_cap=lie.DEFAULT_DIM_CAP) -> VirtualRep:
    """Adams operation psi_k: scale every weight by k, re-decompose."""
    if k < 1:
        raise ValueError("adams wants k >= 1")
    if k == 1:
        return v
    char = v.character(dim_cap)
    scaled = {}
    for w, m in char.items():
        sw = tuple(tuple(k * c for c in f) for f in w)
        scaled[sw] = scaled.get(sw, 0) + m
    return decompose(v.group, scaled, dim_cap)


def _halve(v: VirtualRep) -> VirtualRep:
    out = {}
    for label, m in v.terms.items():
        if m % 2:
            raise ArithmeticError(f"multiplicity of {label} not even; internal bug")
        out[label] = m // 2
    return VirtualRep(v.group, out)


def sym2(v: VirtualRep) -> VirtualRep:
    """Symmetric square (v*v + psi_2 v)/2."""
    return _halve(tensor(v, v) + adams(2, v))


def alt2(v: VirtualRep) -> VirtualRep:
    """Alternating square (v*v - psi_2 v)/2."""
    return _halve(tensor(v, v) - adams(2, v))


def ext_power(k: int, v: VirtualRep) -> VirtualRep:
    """k-th exterior power of a virtual character (Newton's identity
    k e_k = sum_i (-1)^{i-1} psi_i e_{k-i})."""
    if k < 0:
        raise ValueError("ext_power wants k >= 0")
    powers = [VirtualRep.trivial(v.group)]
    psis = {}
    for n in range(1, k + 1):
        acc = VirtualRep.zero(v.group)
        for i in range(1, n + 1):
            if i not in psis:
                psis[i] = adams(i, v)
            term = tensor(psis[i], powers[n - i])
            acc = acc + (term if i % 2 else -term)
        powers.append(_divide(acc, n))
    return powers[k]


def sym_power(k: int, v: VirtualRep) -> VirtualRep:
    """k-th symmetric power (Newton's identity k h_k = sum_i psi_i h_{k-i})."""
    if k < 0:
        raise ValueError("sym_power wants k >= 0")
    powers = [VirtualRep.trivial(v.group)]
    psis = {}
    for n in range(1, k + 1):
        acc = VirtualRep.zero(v.group)
        for i in range(1, n + 1):
            if i not in psis:
                psis[i] = adams(i, v)
            acc = acc + tensor(psis[i], powers[n - i])
        powers.append(_divide(acc, n))
    return powers[k]


def _divide(v: VirtualRep, n: int) -> VirtualRep:
    out = {}
    for label, m in v.terms.items():
        q, r = divmod(m, n)
        if r:
            raise ArithmeticError(f"multiplicity of {label} not divisible by {n}; internal bug")
        out[label] = q
    return VirtualRep(v.group, out)
