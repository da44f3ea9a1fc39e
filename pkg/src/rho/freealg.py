"""Free graded-commutative algebras: generators, monomials, Koszul signs.

A monomial is a tuple of (generator_index, exponent) pairs sorted by the
generator's canonical key (total degree, declaration order).  Odd generators
never carry an exponent above 1; an odd square is the zero product.  Signs
come from counting transpositions of odd factors while merging, which equals
the product of (-1)^{|a||b|} over the adjacent swaps that sort the word.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Generator:
    name: str
    p: int
    q: int
    index: int  # declaration order

    @property
    def degree(self) -> int:
        return self.p + self.q

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class FreeAlgebra:
    """Free graded-commutative algebra on named (bi)graded generators."""

    def __init__(self, field, generators, cap=None):
        """generators: iterable of (name, p) or (name, p, q) with p+q >= 1."""
        self.field = field
        self.cap = cap
        gens = []
        seen = set()
        for k, spec in enumerate(generators):
            if len(spec) == 2:
                name, p = spec
                q = 0
            else:
                name, p, q = spec
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            if p + q < 1:
                raise ValueError(f"generator {name!r} must have total degree >= 1")
            seen.add(name)
            gens.append(Generator(name, p, q, k))
        self.generators = tuple(gens)
        self.by_name = {g.name: g for g in gens}
        # canonical order: (total degree, declaration order)
        self._order = sorted(range(len(gens)), key=lambda k: (gens[k].degree, k))
        self._rank_of = {gi: r for r, gi in enumerate(self._order)}
        self._basis_cache: dict[int, list[tuple]] = {}

    def key(self, gen_index: int) -> int:
        return self._rank_of[gen_index]

    # -- monomials ----------------------------------------------------------

    def monomial(self, factors) -> tuple:
        """Canonical monomial from (generator index, exponent) pairs.

        Raises on odd squares; returns () for the empty product (the unit).
        """
        merged: dict[int, int] = {}
        for gi, e in factors:
            if e < 0:
                raise ValueError("negative exponent")
            if e == 0:
                continue
            merged[gi] = merged.get(gi, 0) + e
        for gi, e in merged.items():
            if self.generators[gi].odd and e > 1:
                raise ValueError("odd generator squared")
        items = sorted(merged.items(), key=lambda it: self.key(it[0]))
        mono = tuple(items)
        if self.cap is not None and self.mono_degree(mono) > self.cap:
            raise ValueError("monomial exceeds the degree cap")
        return mono

    def mono_degree(self, mono) -> int:
        return sum(self.generators[gi].degree * e for gi, e in mono)

    def mono_bidegree(self, mono) -> tuple[int, int]:
        p = sum(self.generators[gi].p * e for gi, e in mono)
        q = sum(self.generators[gi].q * e for gi, e in mono)
        return p, q

    def mono_flat(self, mono):
        flat = []
        for gi, e in mono:
            flat.extend([gi] * e)
        return flat

    def mono_length(self, mono) -> int:
        return sum(e for _, e in mono)

    def mul_monomials(self, m1, m2):
        """Product with Koszul sign: returns (sign, monomial) or (0, None)."""
        flat1 = self.mono_flat(m1)
        flat2 = self.mono_flat(m2)
        odd1 = [self.key(gi) for gi in flat1 if self.generators[gi].odd]
        swaps = 0
        for gi in flat2:
            g = self.generators[gi]
            if g.odd:
                k = self.key(gi)
                if k in odd1:
                    return 0, None  # odd square
                swaps += sum(1 for k1 in odd1 if k1 > k)
        merged: dict[int, int] = {}
        for gi in flat1 + flat2:
            merged[gi] = merged.get(gi, 0) + 1
        mono = tuple(sorted(merged.items(), key=lambda it: self.key(it[0])))
        return (-1) ** swaps, mono

    def mono_str(self, mono) -> str:
        if not mono:
            return "1"
        parts = []
        for gi, e in mono:
            nm = self.generators[gi].name
            parts.append(nm if e == 1 else f"{nm}^{e}")
        return "*".join(parts)

    # -- degreewise bases -----------------------------------------------------

    def basis_in_degree(self, n: int):
        """Complete canonically ordered monomial basis of total degree n."""
        if self.cap is not None and n > self.cap:
            raise ValueError(f"degree {n} exceeds cap {self.cap}")
        if n < 0:
            return []
        if n in self._basis_cache:
            return self._basis_cache[n]
        order = self._order
        out = []

        def rec(pos, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if pos == len(order):
                return
            gi = order[pos]
            g = self.generators[gi]
            max_e = 1 if g.odd else remaining // g.degree
            # skip this generator first so exponent vectors come out in a
            # stable graded order, then raise its exponent
            for e in range(0, max_e + 1):
                if e * g.degree > remaining:
                    break
                if e:
                    acc.append((gi, e))
                rec(pos + 1, remaining - e * g.degree, acc)
                if e:
                    acc.pop()

        rec(0, n, [])
        out.sort(key=lambda m: self._mono_sort_key(m))
        self._basis_cache[n] = out
        return out

    def _mono_sort_key(self, mono):
        expvec = [0] * len(self.generators)
        for gi, e in mono:
            expvec[self.key(gi)] = -e
        return tuple(expvec)

    def basis_in_bidegree(self, p: int, q: int):
        return [m for m in self.basis_in_degree(p + q) if self.mono_bidegree(m) == (p, q)]


class Polynomial:
    """Finite linear combination of monomials of one FreeAlgebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        clean = {}
        for mono, c in (terms or {}).items():
            c = algebra.field.coerce(c)
            if c:
                clean[mono] = clean.get(mono, algebra.field.zero) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {})

    @classmethod
    def unit(cls, algebra):
        return cls(algebra, {(): algebra.field.one})

    @classmethod
    def gen(cls, algebra, name):
        g = algebra.by_name[name]
        return cls(algebra, {algebra.monomial([(g.index, 1)]): algebra.field.one})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, self.algebra.field.zero) + c
        return Polynomial(self.algebra, t)

    def __sub__(self, other):
        return self + other.scale(-self.algebra.field.one)

    def scale(self, c):
        c = self.algebra.field.coerce(c)
        return Polynomial(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        self._check(other)
        alg = self.algebra
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = alg.mul_monomials(m1, m2)
                if sign == 0:
                    continue
                c = c1 * c2 * sign
                t[m] = t.get(m, alg.field.zero) + c
        return Polynomial(alg, t)

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("polynomials over different algebras")

    def degrees(self):
        return sorted({self.algebra.mono_degree(m) for m in self.terms})

    def homogeneous_part(self, n):
        return Polynomial(
            self.algebra,
            {m: c for m, c in self.terms.items() if self.algebra.mono_degree(m) == n},
        )

    def min_length(self):
        """Smallest number of generator factors among the terms (inf for 0)."""
        if not self.terms:
            return float("inf")
        return min(self.algebra.mono_length(m) for m in self.terms)

    def __str__(self):
        from .grammar import format_poly

        alg = self.algebra
        monos = sorted(
            self.terms,
            key=lambda m: (alg.mono_degree(m), alg._mono_sort_key(m)),
        )
        return format_poly(
            alg.field,
            [(self.terms[m], alg.mono_str(m) if m else "") for m in monos],
        )

    __repr__ = __str__
