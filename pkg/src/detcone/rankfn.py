"""Set functions on the subset lattice: rank functions and linear functionals.

A rank function assigns a real value (in bits; all logarithms here are base
2) to every subset of {1..n}, with the empty set pinned to 0. Entropy
vectors, log-determinant vectors and subspace-rank vectors all live in this
space. A linear functional is a rational coefficient vector over the
nonempty subsets; it encodes one candidate inequality

    sum_a c_a g(a) >= 0,

equivalently the determinant inequality  prod_a |K_a|**c_a >= 1  when g is
the log-determinant vector of an SPD matrix K.

Coefficients are exact `fractions.Fraction`; rank-function values are
floats except where a caller stores exact entries (extreme rays do).
Everything is immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .subsets import (
    GroundSet,
    check_ground,
    full_mask,
    indices_of,
    mask_of,
    parse_subset_key,
    popcount,
    subset_key,
)

Number = Union[int, float, Fraction]

__all__ = [
    "GroundSet",
    "RankFunction",
    "LinearFunctional",
    "IngletonForm",
    "as_fraction",
    "evaluate",
    "phi",
    "scale_shift",
    "add",
    "balance_profile",
    "hadamard",
    "szasz",
    "han",
    "ingleton",
    "ingleton_forms",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, floats and strings like "-1/3" to Fraction.

    Floats convert exactly (binary value, no rounding). Unicode minus is
    accepted in strings.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.replace("−", "-").strip())
    return Fraction(value)


@dataclass(frozen=True)
class RankFunction:
    """Vector indexed by subset masks; value at the empty set is exactly 0."""

    n: int
    values: tuple

    def __post_init__(self):
        check_ground(self.n)
        if len(self.values) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} values for n={self.n}, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError("rank function must vanish on the empty set")

    @classmethod
    def from_dict(cls, n: int, entries: Mapping[int, Number]) -> "RankFunction":
        """Build from a mask -> value mapping; missing masks default to 0."""
        vals = [0] * (1 << n)
        for mask, v in entries.items():
            if not 0 <= mask < (1 << n):
                raise ValueError(f"mask {mask} out of range for n={n}")
            vals[mask] = v
        if vals[0] != 0:
            raise ValueError("rank function must vanish on the empty set")
        return cls(n, tuple(vals))

    @classmethod
    def zero(cls, n: int) -> "RankFunction":
        return cls(n, (0,) * (1 << n))

    def __getitem__(self, mask: int):
        return self.values[mask]

    def value_at(self, indices: Iterable[int]):
        return self.values[mask_of(indices, self.n)]

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values)

    def to_json(self) -> str:
        vals = {}
        for mask in range(1, 1 << self.n):
            v = self.values[mask]
            if v == 0:
                continue
            vals[subset_key(mask)] = str(v) if isinstance(v, Fraction) else v
        return json.dumps({"n": self.n, "values": vals})

    @classmethod
    def from_json(cls, text: str) -> "RankFunction":
        doc = json.loads(text)
        n = check_ground(doc["n"])
        vals = [0] * (1 << n)
        for key, v in doc.get("values", {}).items():
            mask = parse_subset_key(key, n)
            vals[mask] = as_fraction(v) if isinstance(v, str) else v
        if vals[0] != 0:
            raise ValueError("empty set must carry value 0")
        return cls(n, tuple(vals))


@dataclass(frozen=True)
class LinearFunctional:
    """Exact rational coefficients over nonempty subsets.

    Zero coefficients are dropped at construction, so equality of
    functionals is equality of the maps. The empty set never carries a
    coefficient (g(empty) = 0 makes it vacuous).
    """

    n: int
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        check_ground(self.n)
        clean = {}
        for mask, c in self.coeffs.items():
            if not 1 <= mask < (1 << self.n):
                raise ValueError(f"subset mask {mask} out of range for n={self.n}")
            c = as_fraction(c)
            if c != 0:
                clean[mask] = c
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearFunctional)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def scaled(self, factor) -> "LinearFunctional":
        factor = as_fraction(factor)
        return LinearFunctional(self.n, {m: c * factor for m, c in self.coeffs.items()})

    def negated(self) -> "LinearFunctional":
        return self.scaled(-1)

    def plus(self, other: "LinearFunctional") -> "LinearFunctional":
        if self.n != other.n:
            raise ValueError("ground-set size mismatch")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return LinearFunctional(self.n, out)

    def to_json(self) -> str:
        vals = {subset_key(m): str(c) for m, c in sorted(self.coeffs.items())}
        return json.dumps({"n": self.n, "values": vals})

    @classmethod
    def from_json(cls, text: str) -> "LinearFunctional":
        doc = json.loads(text)
        n = check_ground(doc["n"])
        coeffs = {parse_subset_key(k, n): as_fraction(v) for k, v in doc.get("values", {}).items()}
        return cls(n, coeffs)


def evaluate(f: LinearFunctional, g: RankFunction):
    """sum_a c_a g(a) in bits; exact when both sides are exact."""
    if f.n != g.n:
        raise ValueError(f"ground-set size mismatch: functional n={f.n}, rank function n={g.n}")
    total = 0
    for mask, c in f.coeffs.items():
        total = total + c * g.values[mask]
    return total


def phi(n: int, i: int) -> RankFunction:
    """Scaling direction for index i: -1 on subsets containing i, else 0.

    These generate the directions in which differential entropy vectors can
    be pushed by shrinking one coordinate; they are the extra generators
    the continuous cone has over the discrete one.
    """
    check_ground(n)
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    bit = 1 << (i - 1)
    return RankFunction(n, tuple(-1 if mask & bit else 0 for mask in range(1 << n)))


def scale_shift(g: RankFunction, s: Sequence[Number]) -> RankFunction:
    """g'(a) = g(a) + sum_{i in a} s_i.

    This is the rank-function image of rescaling variable i by 2**(s_i/2)
    (equivalently, of conjugating a covariance by a diagonal matrix). The
    shifts are signed; callers pick the direction convention.
    """
    if len(s) != g.n:
        raise ValueError(f"need {g.n} shifts, got {len(s)}")
    vals = list(g.values)
    for mask in range(1, 1 << g.n):
        shift = 0
        for i in indices_of(mask):
            shift = shift + s[i - 1]
        vals[mask] = vals[mask] + shift
    return RankFunction(g.n, tuple(vals))


def add(g1: RankFunction, g2: RankFunction) -> RankFunction:
    """Pointwise sum; realized on the Gaussian side by independent pairing."""
    if g1.n != g2.n:
        raise ValueError("ground-set size mismatch")
    return RankFunction(g1.n, tuple(a + b for a, b in zip(g1.values, g2.values)))


def balance_profile(f: LinearFunctional) -> tuple[Fraction, ...]:
    """b_i = sum over subsets containing i of c_a, for each index i.

    A functional is balanced when every b_i is 0. The scaling directions
    phi(n, i) see exactly these sums: evaluate(f, phi(n, i)) == -b_i.
    """
    profile = [Fraction(0)] * f.n
    for mask, c in f.coeffs.items():
        for i in indices_of(mask):
            profile[i - 1] += c
    return tuple(profile)


def hadamard(n: int) -> LinearFunctional:
    """prod |K_i| >= |K|: +1 on singletons, -1 on the full set.

    For n = 1 the two coefficients cancel and the functional collapses to
    zero.
    """
    check_ground(n)
    coeffs: dict[int, Fraction] = {}
    for i in range(n):
        coeffs[1 << i] = coeffs.get(1 << i, Fraction(0)) + 1
    top = full_mask(n)
    coeffs[top] = coeffs.get(top, Fraction(0)) - 1
    return LinearFunctional(n, coeffs)


def szasz(n: int, l: int) -> LinearFunctional:
    """Level-l against level-(l+1) geometric means of principal minors.

    Coefficients: +1/C(n-1, l-1) on size-l subsets, -1/C(n-1, l) on
    size-(l+1) subsets. szasz(2, 1) coincides with hadamard(2).
    """
    check_ground(n)
    if not 1 <= l < n:
        raise ValueError(f"level must satisfy 1 <= l < n, got l={l}, n={n}")
    plus = Fraction(1, comb(n - 1, l - 1))
    minus = Fraction(-1, comb(n - 1, l))
    coeffs = {}
    for mask in range(1, 1 << n):
        size = popcount(mask)
        if size == l:
            coeffs[mask] = plus
        elif size == l + 1:
            coeffs[mask] = minus
    return LinearFunctional(n, coeffs)


def han(n: int, l: int) -> LinearFunctional:
    """Han's per-element averaged subset inequality at level l.

    Coefficients: +1/(C(n,l)*l) on size-l subsets, -1/(C(n,l+1)*(l+1)) on
    size-(l+1) subsets.
    """
    check_ground(n)
    if not 1 <= l < n:
        raise ValueError(f"level must satisfy 1 <= l < n, got l={l}, n={n}")
    plus = Fraction(1, comb(n, l) * l)
    minus = Fraction(-1, comb(n, l + 1) * (l + 1))
    coeffs = {}
    for mask in range(1, 1 << n):
        size = popcount(mask)
        if size == l:
            coeffs[mask] = plus
        elif size == l + 1:
            coeffs[mask] = minus
    return LinearFunctional(n, coeffs)


@dataclass(frozen=True)
class IngletonForm:
    """Ordered quadruple (i, j, k, l) of distinct indices.

    The associated inequality is symmetric under swapping i with j and
    under swapping k with l, but not under swapping the pair (i,j) with
    (k,l); a fixed 4-element index set therefore carries six distinct
    forms, two per partition into pairs.
    """

    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        quad = (self.i, self.j, self.k, self.l)
        if len(set(quad)) != 4:
            raise ValueError(f"indices must be distinct, got {quad}")
        if min(quad) < 1:
            raise ValueError(f"indices must be >= 1, got {quad}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.k, self.l)


def ingleton(form: IngletonForm, n: int) -> LinearFunctional:
    """The 10-term Ingleton functional for the quadruple (i, j, k, l):

        g(ik)+g(il)+g(jk)+g(jl)+g(kl) - g(ij) - g(k) - g(l) - g(ikl) - g(jkl)

    Nonnegative on every subspace-rank function; violated by some Gaussian
    entropy vectors once n >= 4.
    """
    check_ground(n)
    i, j, k, l = form.as_tuple()
    if max(i, j, k, l) > n:
        raise ValueError(f"quadruple {form.as_tuple()} exceeds ground set of size {n}")
    m = lambda *idx: mask_of(idx, n)
    coeffs: dict[int, Fraction] = {}

    def bump(mask, delta):
        coeffs[mask] = coeffs.get(mask, Fraction(0)) + delta

    for mask in (m(i, k), m(i, l), m(j, k), m(j, l), m(k, l)):
        bump(mask, Fraction(1))
    for mask in (m(i, j), m(k), m(l), m(i, k, l), m(j, k, l)):
        bump(mask, Fraction(-1))
    return LinearFunctional(n, coeffs)


def ingleton_forms(n: int, indices: tuple[int, int, int, int] = (1, 2, 3, 4)) -> tuple[IngletonForm, ...]:
    """All quadruple orderings of `indices` giving distinct functionals.

    Six forms: three partitions of the quadruple into pairs, two orderings
    of the pairs each.
    """
    if len(set(indices)) != 4:
        raise ValueError("need four distinct indices")
    seen = {}
    import itertools

    for perm in itertools.permutations(indices):
        form = IngletonForm(*perm)
        fn = ingleton(form, n)
        key = tuple(sorted(fn.coeffs.items()))
        if key not in seen:
            seen[key] = form
    return tuple(seen.values())
