"""Exact multivariate graded polynomials over arbitrary-precision integers.

Every ring element in this package (Chern/Pontryagin/Euler class
expressions, Euler roots, Schubert representatives) is carried by
:class:`GradedPolynomial`.  A polynomial lives in a :class:`PolyRing`
which fixes the variable names and a weight vector: the degree of a
monomial is the weighted sum of its exponents.  Chern-class variables
have weight 1, Euler roots weight 2, Pontryagin variables weight 4.

Monomials are exponent tuples with trailing zeros stripped, so equal
monomials are equal as tuples.  Coefficients are plain Python ints
(several results in this package have 30+ digits, so nothing here may
ever truncate).  No floating point is used anywhere.
"""

from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Mapping, Union

Monomial = tuple  # exponent tuple, trailing zeros stripped
Scalar = int


def strip_monomial(exps: Iterable[int]) -> Monomial:
    """Canonical monomial key: drop trailing zero exponents."""
    t = tuple(exps)
    n = len(t)
    while n and t[n - 1] == 0:
        n -= 1
    return t[:n]


def merge_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not b:
        return a
    if not a:
        return b
    return tuple(x + y for x, y in zip_longest(a, b, fillvalue=0))


class PolyRing:
    """A polynomial ring ZZ[names] with a per-variable degree weight."""

    def __init__(self, names, weights=1):
        self.names = tuple(names)
        if isinstance(weights, int):
            weights = (weights,) * len(self.names)
        self.weights = tuple(weights)
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, weights={list(self.weights)})"

    def zero(self) -> "GradedPolynomial":
        return GradedPolynomial(self, {})

    def one(self) -> "GradedPolynomial":
        return self.constant(1)

    def constant(self, c: int) -> "GradedPolynomial":
        return GradedPolynomial(self, {(): int(c)} if c else {})

    def var(self, name_or_index) -> "GradedPolynomial":
        i = (
            name_or_index
            if isinstance(name_or_index, int)
            else self._index[name_or_index]
        )
        return self.monomial([0] * i + [1])

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> "GradedPolynomial":
        key = strip_monomial(exps)
        if len(key) > self.nvars:
            raise ValueError("monomial has more exponents than ring variables")
        return GradedPolynomial(self, {key: int(coeff)} if coeff else {})

    def from_terms(self, terms: Mapping[tuple, int]) -> "GradedPolynomial":
        out = {}
        for exps, c in terms.items():
            if c:
                key = strip_monomial(exps)
                if len(key) > self.nvars:
                    raise ValueError("monomial has more exponents than ring variables")
                out[key] = out.get(key, 0) + int(c)
        return GradedPolynomial(self, {k: c for k, c in out.items() if c})

    def monomial_degree(self, mon: Monomial) -> int:
        w = self.weights
        return sum(e * w[i] for i, e in enumerate(mon))

    def monomials_of_degree(self, d: int):
        """All exponent tuples of weighted degree exactly d (graded-lex desc)."""
        w = self.weights
        out = []

        def rec(i, rem, acc):
            if i == len(w) - 1:
                if rem % w[i] == 0:
                    out.append(strip_monomial(acc + [rem // w[i]]))
                return
            for e in range(rem // w[i], -1, -1):
                rec(i + 1, rem - e * w[i], acc + [e])

        if self.nvars == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        return out


class GradedPolynomial:
    """Immutable-by-convention exact polynomial; terms map monomial -> int."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_of(self, exps) -> int:
        """Exact coefficient of the given monomial; 0 if absent."""
        return self.terms.get(strip_monomial(exps), 0)

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def degree(self) -> int:
        """Maximal weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        md = self.ring.monomial_degree
        return max(md(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        md = self.ring.monomial_degree
        degs = {md(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "GradedPolynomial":
        """Sum of the terms of weighted degree exactly d."""
        md = self.ring.monomial_degree
        return GradedPolynomial(
            self.ring, {m: c for m, c in self.terms.items() if md(m) == d}
        )

    def homogeneous_degrees(self):
        md = self.ring.monomial_degree
        return sorted({md(m) for m in self.terms})

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return sorted(used)

    # -- arithmetic ----------------------------------------------------

    def _check_ring(self, other: "GradedPolynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings (weights/names)")

    def __add__(self, other) -> "GradedPolynomial":
        other = self._coerce(other)
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return GradedPolynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other) -> "GradedPolynomial":
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero()
            return GradedPolynomial(
                self.ring, {m: c * other for m, c in self.terms.items()}
            )
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for m1, c1 in a.items():
            n1 = len(m1)
            for m2, c2 in b.items():
                if n1 <= len(m2):
                    key = tuple(
                        (m2[i] + m1[i]) if i < n1 else m2[i] for i in range(len(m2))
                    )
                else:
                    key = tuple(
                        (m1[i] + m2[i]) if i < len(m2) else m1[i]
                        for i in range(n1)
                    )
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return GradedPolynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "GradedPolynomial":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(): other} if other else {})
        return (
            isinstance(other, GradedPolynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        raise TypeError(f"cannot coerce {type(other)!r} into {self.ring!r}")

    # -- substitution --------------------------------------------------

    def substitute(self, bindings: Mapping[str, Union["GradedPolynomial", int]]):
        """Exact composition; every variable occurring in self must be bound."""
        used = self.variables_used()
        for i in used:
            if self.ring.names[i] not in bindings:
                raise ValueError(f"unbound variable {self.ring.names[i]!r}")
        target = None
        for v in bindings.values():
            if isinstance(v, GradedPolynomial):
                target = v.ring
                break
        if target is None:
            target = self.ring
        images = {}
        for i in used:
            v = bindings[self.ring.names[i]]
            images[i] = (
                v if isinstance(v, GradedPolynomial) else target.constant(v)
            )
        result = target.zero()
        pow_cache: dict = {}
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in pow_cache:
                        pow_cache[key] = images[i] ** e
                    term = term * pow_cache[key]
            result = result + term
        return result

    # -- printing ------------------------------------------------------

    def _sort_key(self, mon: Monomial):
        padded = mon + (0,) * (self.ring.nvars - len(mon))
        return (self.ring.monomial_degree(mon), padded)

    def sorted_terms(self):
        """Terms in graded-lex order, largest first."""
        return sorted(self.terms.items(), key=lambda t: self._sort_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon, c in self.sorted_terms():
            factors = [
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(mon)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"<GradedPolynomial {self}>"


def exact_div(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    """Exact division p/q; raises ArithmeticError when the remainder is nonzero.

    Standard graded-lex leading-term elimination: if p = f*q then at every
    step the leading term of the running remainder is divisible by the
    leading term of q, and the quotient accumulates f.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_ring(q)
    ring = p.ring
    qt = q.sorted_terms()
    lead_mon, lead_coeff = qt[0]
    nl = len(lead_mon)
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        mon = max(rem, key=lambda m: p._sort_key(m))
        c = rem[mon]
        if len(mon) < nl or any(mon[i] < lead_mon[i] for i in range(nl)):
            raise ArithmeticError("non-exact polynomial division (monomial)")
        fc, r = divmod(c, lead_coeff)
        if r:
            raise ArithmeticError("non-exact polynomial division (coefficient)")
        fmon = strip_monomial(
            tuple(
                mon[i] - (lead_mon[i] if i < nl else 0) for i in range(len(mon))
            )
        )
        quot[fmon] = quot.get(fmon, 0) + fc
        for m2, c2 in qt:
            key = merge_monomials(fmon, m2)
            s = rem.get(key, 0) - fc * c2
            if s:
                rem[key] = s
            elif key in rem:
                del rem[key]
    return ring.from_terms(quot)
