"""Finite groups as Cayley tables, with conjugacy-class data.

Groups are accepted either as an explicit multiplication table (0-indexed,
element 0 the identity) or as a list of permutation generators, which are
expanded by orbit closure.  Class data includes the structure constants of
the class algebra, the input for the character-table computation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import lcm

__all__ = ["FiniteGroup", "ConjugacyClassData", "InvalidGroup", "CLOSURE_CAP"]

CLOSURE_CAP = 10000


class InvalidGroup(ValueError):
    """The supplied table or generators do not define a group."""


class FiniteGroup:
    """Group on elements 0..n-1 with 0 the identity."""

    def __init__(self, table, name: str = "G", validate: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name
        if validate:
            self._validate()
        self.inverse = self._inverses()
        self.element_order = tuple(self._element_order(g) for g in range(self.order))
        self.exponent = lcm(*self.element_order) if self.order else 1

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_permutations(generators, name: str = "G") -> "FiniteGroup":
        """Expand permutation generators (images, 0-indexed) by closure."""
        gens = [tuple(g) for g in generators]
        if not gens:
            gens = [(0,)]
        npts = len(gens[0])
        for g in gens:
            if len(g) != npts or sorted(g) != list(range(npts)):
                raise InvalidGroup(f"not a permutation of {npts} points: {g}")
        ident = tuple(range(npts))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                prod = tuple(g[cur[i]] for i in range(npts))
                if prod not in index:
                    if len(elements) >= CLOSURE_CAP:
                        raise InvalidGroup("closure exceeds the element cap")
                    index[prod] = len(elements)
                    elements.append(prod)
                    frontier.append(prod)
        n = len(elements)
        table = [[0] * n for _ in range(n)]
        for i, p in enumerate(elements):
            for j, q in enumerate(elements):
                prod = tuple(p[q[k]] for k in range(npts))
                table[i][j] = index[prod]
        group = FiniteGroup(table, name=name)
        group.permutations = tuple(elements)
        return group

    # -- validation -------------------------------------------------------

    def _validate(self):
        n = self.order
        if n == 0:
            raise InvalidGroup("empty table")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise InvalidGroup("table is not square")
            if sorted(row) != list(range(n)):
                raise InvalidGroup(f"row {i} is not a permutation")
        for j in range(n):
            col = [self.table[i][j] for i in range(n)]
            if sorted(col) != list(range(n)):
                raise InvalidGroup(f"column {j} is not a permutation")
        if any(self.table[0][j] != j for j in range(n)) or any(
                self.table[i][0] != i for i in range(n)):
            raise InvalidGroup("element 0 is not the identity")
        for i in range(n):
            if all(self.table[i][j] != 0 for j in range(n)):
                raise InvalidGroup(f"element {i} has no inverse")
        if n <= 64:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0xA550C1)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for a, b, c in triples:
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InvalidGroup(f"associativity fails at ({a},{b},{c})")

    def _inverses(self):
        inv = [0] * self.order
        for g in range(self.order):
            inv[g] = next(h for h in range(self.order) if self.table[g][h] == 0)
        return tuple(inv)

    def _element_order(self, g: int) -> int:
        k, cur = 1, g
        while cur != 0:
            cur = self.table[cur][g]
            k += 1
        return k

    # -- basics -------------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, g: int, k: int) -> int:
        k %= self.element_order[g]
        cur = 0
        for _ in range(k):
            cur = self.table[cur][g]
        return cur

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- conjugacy classes ----------------------------------------------

    def conjugacy_classes(self) -> "ConjugacyClassData":
        n = self.order
        seen = [False] * n
        classes = []
        for g in range(n):
            if seen[g]:
                continue
            orbit = sorted({self.conjugate(g, h) for h in range(n)})
            for x in orbit:
                seen[x] = True
            classes.append(tuple(orbit))
        # canonical order: size, then element order, then smallest member
        classes.sort(key=lambda c: (len(c), self.element_order[c[0]], c[0]))
        membership = [0] * n
        for idx, cls in enumerate(classes):
            for x in cls:
                membership[x] = idx
        d = len(classes)
        reps = tuple(cls[0] for cls in classes)
        sizes = tuple(len(cls) for cls in classes)
        # structure constants a[i][j][k]: #{(x,y) in C_i x C_j : xy = rep_k}
        coeffs = [[[0] * d for _ in range(d)] for _ in range(d)]
        rep_of = {rep: k for k, rep in enumerate(reps)}
        for i, ci in enumerate(classes):
            for x in ci:
                row = self.table[x]
                for j, cj in enumerate(classes):
                    for y in cj:
                        k = rep_of.get(row[y])
                        if k is not None:
                            coeffs[i][j][k] += 1
        return ConjugacyClassData(
            group=self,
            classes=tuple(classes),
            membership=tuple(membership),
            sizes=sizes,
            representatives=reps,
            coefficients=tuple(tuple(tuple(r) for r in m) for m in coeffs),
        )


@dataclass(frozen=True)
class ConjugacyClassData:
    """Classes in canonical order with class-algebra structure constants."""

    group: FiniteGroup
    classes: tuple
    membership: tuple
    sizes: tuple
    representatives: tuple
    coefficients: tuple  # a[i][j][k]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_matrix(self, i: int):
        """Integer matrix M_i with (M_i)[j][k] = a_{i j k}, so that central
        character vectors w = (omega_k) satisfy M_i w = omega_i w."""
        d = self.count
        return [[self.coefficients[i][j][k] for k in range(d)] for j in range(d)]

    def inverse_class(self, i: int) -> int:
        g = self.representatives[i]
        return self.membership[self.group.inverse[g]]

    def power_class(self, i: int, k: int) -> int:
        return self.membership[self.group.power(self.representatives[i], k)]

    def verify_central(self) -> bool:
        """Spot-check that class sums commute with everything (on the class
        algebra: a_{ijk} = a_{jik} would be commutativity of the algebra)."""
        d = self.count
        return all(
            self.coefficients[i][j][k] == self.coefficients[j][i][k]
            for i in range(d) for j in range(d) for k in range(d))
