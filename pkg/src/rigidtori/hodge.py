"""Weight-1 rational Hodge structures with a finite group action.

Three independent rigidity pathways are provided and cross-checked:

* the character formula dim Hom_G(V^{0,1}, V^{1,0}) = (1/|G|) sum chi10(g)^2,
* the centre criterion tau(j) * tau(conj j) = 0 on character spaces,
* a brute-force intertwiner solve over an explicit exact splitting
  V (x) K = U + conj(U).

Exact splittings are carried as `ExactHodgeStructure` (a cyclotomic basis of
U); numeric complex structures enter through `hodge_character_from_numeric`,
which rounds eigenvalue multiplicities to exact cyclotomic integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .characters import (CharacterTable, GaloisOrbitDecomposition,
                         centre_decomposition, galois_orbits)
from .cyclotomic import CyclotomicField, CyclotomicNumber
from .groups import FiniteGroup

__all__ = [
    "IntegralRepresentation",
    "HodgeCharacter",
    "SymbolicHodgeSpec",
    "SummandType",
    "ExactHodgeStructure",
    "RigidityReport",
    "InvalidRepresentation",
    "InconsistentCharacter",
    "HSViolation",
    "RoundingFailure",
    "hodge_character_from_numeric",
    "hodge_character_from_exact",
    "rigidity_by_character",
    "rigidity_by_centre",
    "brute_force_hom_dimension",
    "isotypic_split",
    "f_module_basis",
    "enumerate_rigid_types",
    "spec_from_character",
    "exact_structure_from_spec",
    "BRUTE_FORCE_RANK_CAP",
]

BRUTE_FORCE_RANK_CAP = 64


class InvalidRepresentation(ValueError):
    pass


class InconsistentCharacter(ValueError):
    """chi10 fails to decompose with nonnegative integer multiplicities."""


class HSViolation(ValueError):
    """A symbolic Hodge type violates Hodge symmetry."""


class RoundingFailure(ValueError):
    """Numeric data too far from an exact cyclotomic integer."""


class IntegralRepresentation:
    """An exact integer representation of a finite group of rank 2n."""

    def __init__(self, group: FiniteGroup, matrices, validate: bool = True):
        self.group = group
        self.matrices = tuple(
            tuple(tuple(int(x) for x in row) for row in m) for m in matrices)
        if len(self.matrices) != group.order:
            raise InvalidRepresentation("need one matrix per group element")
        self.rank = len(self.matrices[0])
        if validate:
            self._validate()

    @staticmethod
    def from_generators(group: FiniteGroup, generator_indices, generator_matrices,
                        validate: bool = True) -> "IntegralRepresentation":
        """Expand matrices given on generators by multiplicative closure."""
        n = len(generator_matrices[0]) if generator_matrices else 0
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        mats = {0: ident}
        frontier = [0]
        gen = list(zip(generator_indices, generator_matrices))
        while frontier:
            x = frontier.pop()
            for g_idx, g_mat in gen:
                y = group.table[x][g_idx]
                if y not in mats:
                    mats[y] = _int_mat_mul(mats[x], g_mat)
                    frontier.append(y)
        if len(mats) != group.order:
            raise InvalidRepresentation("generators do not generate the group")
        return IntegralRepresentation(
            group, [mats[g] for g in range(group.order)], validate=validate)

    def _validate(self):
        g = self.group
        n = self.rank
        for m in self.matrices:
            if len(m) != n or any(len(row) != n for row in m):
                raise InvalidRepresentation("ragged matrix")
        for a in range(g.order):
            for b in range(g.order):
                if _int_mat_mul(self.matrices[a], self.matrices[b]) != \
                        [list(r) for r in self.matrices[g.table[a][b]]]:
                    raise InvalidRepresentation(
                        f"not a homomorphism at pair ({a},{b})")
        for idx, m in enumerate(self.matrices):
            d = linalg.det([[Fraction(x) for x in row] for row in m])
            if d not in (1, -1):
                raise InvalidRepresentation(f"det rho({idx}) = {d}, not a unit")

    def matrix(self, g: int):
        return self.matrices[g]

    def trace(self, g: int) -> int:
        return sum(self.matrices[g][i][i] for i in range(self.rank))

    def generator_indices(self):
        """A small generating set: greedy closure over element indices."""
        g = self.group
        gens = []
        closed = {0}
        for x in range(1, g.order):
            if x in closed:
                continue
            gens.append(x)
            frontier = list(closed | {x})
            new = set(frontier)
            while frontier:
                a = frontier.pop()
                for b in list(new):
                    for c in (g.table[a][b], g.table[b][a]):
                        if c not in new:
                            new.add(c)
                            frontier.append(c)
            closed = new
            if len(closed) == g.order:
                break
        return gens or [0]

    def __repr__(self):
        return (f"IntegralRepresentation({self.group.name}, "
                f"rank={self.rank})")


def _int_mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


# -- Hodge characters -------------------------------------------------------


@dataclass(frozen=True)
class HodgeCharacter:
    """The trace function of the group action on V^{1,0}, one exact
    cyclotomic value per conjugacy class (canonical class order)."""

    table: CharacterTable
    values: tuple  # CyclotomicNumber per class

    @property
    def n(self) -> int:
        v = self.values[0].as_rational()
        return int(v)

    def value_at_element(self, g: int) -> CyclotomicNumber:
        return self.values[self.table.classes.membership[g]]

    def check_hodge_symmetry(self, rep: IntegralRepresentation):
        """chi10(g) + conj(chi10(g)) must equal tr rho(g), exactly."""
        for k, g in enumerate(self.table.classes.representatives):
            total = self.values[k] + self.values[k].conjugate()
            if total.as_rational() != Fraction(rep.trace(g)):
                raise InconsistentCharacter(
                    f"Hodge symmetry fails on class {k}")


def hodge_character_from_numeric(rep: IntegralRepresentation, j_matrix,
                                 tol: float = 1e-6,
                                 commute_tol: float = 1e-10) -> HodgeCharacter:
    """Round the numeric trace data of (rho, J) to an exact HodgeCharacter.

    For g of order e, the multiplicity of the eigenvalue exp(2 pi i k/e) of
    rho(g) on V^{1,0} is the discrete Fourier transform of
    chi10(g^j) = (tr rho(g^j) - i tr(rho(g^j) J)) / 2 over j; each
    multiplicity must sit within `tol` of a nonnegative integer.
    """
    from .characters import character_table  # noqa: F401  (type only)

    J = np.asarray(j_matrix, dtype=float)
    n2 = rep.rank
    if J.shape != (n2, n2):
        raise InvalidRepresentation("J matrix has wrong shape")
    if np.linalg.norm(J @ J + np.eye(n2)) > commute_tol * max(1.0, np.linalg.norm(J) ** 2):
        raise RoundingFailure("J^2 + I exceeds tolerance")
    for g in range(rep.group.order):
        R = np.asarray(rep.matrices[g], dtype=float)
        if np.linalg.norm(J @ R - R @ J) > commute_tol * max(1.0, np.linalg.norm(R)):
            raise RoundingFailure(f"J does not commute with rho({g})")

    table = _table_of(rep)
    field = table.field
    m = field.m
    values = []
    for k, g in enumerate(table.classes.representatives):
        e = rep.group.element_order[g]
        chi_num = []
        h = 0
        for _ in range(e):
            R = np.asarray(rep.matrices[h], dtype=float)
            chi_num.append((np.trace(R) - 1j * np.trace(R @ J)) / 2.0)
            h = rep.group.table[h][g]
        exps = {}
        for j in range(e):
            mult = sum(chi_num[t] * np.exp(-2j * np.pi * j * t / e)
                       for t in range(e)) / e
            nearest = round(mult.real)
            if abs(mult - nearest) > tol or nearest < 0:
                raise RoundingFailure(
                    f"eigenvalue multiplicity {mult} at class {k} "
                    "is not a nonnegative integer")
            if nearest:
                exps[(m // e) * j] = nearest
        values.append(field.from_exponent_dict(exps))
    chi = HodgeCharacter(table=table, values=tuple(values))
    chi.check_hodge_symmetry(rep)
    return chi


_TABLE_CACHE = {}


def _table_of(rep: IntegralRepresentation) -> CharacterTable:
    key = rep.group.table  # content key: id() could alias after collection
    tab = _TABLE_CACHE.get(key)
    if tab is None:
        from .characters import character_table
        tab = character_table(rep.group)
        _TABLE_CACHE[key] = tab
    return tab


# -- symbolic Hodge types ----------------------------------------------------


@dataclass(frozen=True)
class SummandType:
    """Hodge data on one centre field F_j: multiplicity and tau values."""

    orbit_index: int
    multiplicity: int
    tau: tuple  # sorted pairs (coset representative, tau value)

    def tau_dict(self):
        return dict(self.tau)


@dataclass(frozen=True)
class SymbolicHodgeSpec:
    """Hodge type of an action through the centre decomposition."""

    decomposition: GaloisOrbitDecomposition
    summands: tuple  # SummandType, one per orbit

    def validate_hs(self):
        """Hodge symmetry (HS); raises HSViolation."""
        for s in self.summands:
            orbit = self.decomposition.orbits[s.orbit_index]
            spec = orbit.field_spec
            tau = s.tau_dict()
            if set(tau) != set(spec.coset_reps()):
                raise HSViolation("tau must be defined on every embedding")
            for a in spec.coset_reps():
                abar = spec.conjugate_coset(a)
                if tau[a] + tau[abar] != s.multiplicity:
                    raise HSViolation(
                        f"tau({a}) + tau({abar}) != multiplicity "
                        f"on orbit {s.orbit_index}")
                if abar == a and 2 * tau[a] != s.multiplicity:
                    raise HSViolation(
                        f"real embedding {a} needs tau = multiplicity/2")

    def total_dim(self) -> int:
        return sum(s.multiplicity * self.decomposition.orbits[s.orbit_index]
                   .field_spec.degree for s in self.summands)

    def active_summands(self):
        return [s for s in self.summands if s.multiplicity > 0]


# -- rigidity reports -------------------------------------------------------


@dataclass(frozen=True)
class RigidityReport:
    hom_dimension: int | None    # None when only the centre verdict ran
    is_rigid: bool
    tau_rows: tuple              # (orbit, coset, tau, tau_conj, product)
    methods: tuple               # (name, hom_dimension or None, is_rigid)
    agree: bool

    def method_names(self):
        return tuple(name for name, _, _ in self.methods)


def rigidity_by_character(chi10: HodgeCharacter,
                          table: CharacterTable | None = None) -> RigidityReport:
    """Hom dimension by Schur orthogonality; validates chi10 first."""
    table = table or chi10.table
    mults = _validated_multiplicities(chi10, table)
    g_order = table.group.order
    acc = table.field.zero()
    for k, size in enumerate(table.classes.sizes):
        acc = acc + chi10.values[k] * chi10.values[k] * size
    acc = acc * Fraction(1, g_order)
    dim = acc.as_rational()
    if dim is None or dim.denominator != 1 or dim < 0:
        raise InconsistentCharacter(f"hom dimension came out as {acc}")
    dim = int(dim)
    tau_rows = _tau_rows_from_mults(table, mults)
    return RigidityReport(
        hom_dimension=dim,
        is_rigid=(dim == 0),
        tau_rows=tau_rows,
        methods=(("character", dim, dim == 0),),
        agree=True,
    )


def _validated_multiplicities(chi10: HodgeCharacter, table: CharacterTable):
    mults = []
    for r, ip in enumerate(table.decompose(chi10.values)):
        q = ip.as_rational()
        if q is None or q.denominator != 1 or q < 0:
            raise InconsistentCharacter(
                f"multiplicity of row {r} is {ip}, not a nonnegative integer")
        mults.append(int(q))
    total = sum(m * table.degrees[r] for r, m in enumerate(mults))
    if Fraction(total) != chi10.values[0].as_rational():
        raise InconsistentCharacter("chi10(1) does not match its decomposition")
    return mults


def _tau_rows_from_mults(table: CharacterTable, mults):
    decomp = galois_orbits(table)
    rows = []
    for j, orbit in enumerate(decomp.orbits):
        coset_to_row = dict(orbit.coset_to_row)
        spec = orbit.field_spec
        for a in spec.coset_reps():
            r = coset_to_row[a]
            rbar = coset_to_row[spec.conjugate_coset(a)]
            tau = table.degrees[r] * mults[r]
            tau_bar = table.degrees[rbar] * mults[rbar]
            rows.append((j, a, tau, tau_bar, tau * tau_bar))
    return tuple(rows)


def rigidity_by_centre(spec: SymbolicHodgeSpec) -> RigidityReport:
    """(R): tau(j) * tau(conj j) = 0 at every active embedding."""
    spec.validate_hs()
    rows = []
    rigid = True
    for s in spec.summands:
        orbit = spec.decomposition.orbits[s.orbit_index]
        fs = orbit.field_spec
        tau = s.tau_dict()
        for a in fs.coset_reps():
            abar = fs.conjugate_coset(a)
            prod = tau[a] * tau[abar]
            rows.append((s.orbit_index, a, tau[a], tau[abar], prod))
            if s.multiplicity > 0 and prod != 0:
                rigid = False
    return RigidityReport(
        hom_dimension=None,
        is_rigid=rigid,
        tau_rows=tuple(rows),
        methods=(("centre", None, rigid),),
        agree=True,
    )


# -- exact Hodge structures and the brute-force oracle ----------------------


class ExactHodgeStructure:
    """An exact basis of U = V^{1,0} inside V (x) K, K a cyclotomic field
    containing Q(zeta_exponent).  The authoritative object for the
    brute-force pathway; conj(U) is computed coefficientwise."""

    def __init__(self, rep: IntegralRepresentation, field, u_columns):
        self.rep = rep
        self.field = field
        self.u_columns = [list(col) for col in u_columns]
        n2 = rep.rank
        if len(self.u_columns) * 2 != n2:
            raise InvalidRepresentation("U must have half the rank")
        full = [list(col) for col in self.u_columns]
        full += [[c.conjugate() for c in col] for col in self.u_columns]
        mat = [[full[j][i] for j in range(n2)] for i in range(n2)]
        if linalg.rank(mat) != n2:
            raise InvalidRepresentation("U + conj(U) does not span")
        self._basis_matrix = mat  # columns: u_1..u_n, conj(u_1)..conj(u_n)

    @property
    def n(self) -> int:
        return len(self.u_columns)

    def restricted_action(self, g: int):
        """(A_g, B_g): matrices of rho(g) on U and on conj(U); errors if the
        subspaces are not invariant."""
        K = self.field
        n2 = self.rep.rank
        rho = self.rep.matrices[g]
        n = self.n
        rho_k = [[K.from_rational(rho[i][j]) for j in range(n2)] for i in range(n2)]
        images = linalg.mat_mul(rho_k, self._basis_matrix)
        sol = linalg.solve_many(self._basis_matrix, images)
        if sol is None:
            raise InvalidRepresentation("rho(g) does not preserve U")
        zero = K.zero()
        for i in range(n):
            for j in range(n):
                if not (sol[n + i][j].is_zero() and sol[i][n + j].is_zero()):
                    raise InvalidRepresentation("rho(g) mixes U and conj(U)")
        a = [[sol[i][j] for j in range(n)] for i in range(n)]
        b = [[sol[n + i][n + j] for j in range(n)] for i in range(n)]
        return a, b

    def hodge_character(self) -> HodgeCharacter:
        table = _table_of(self.rep)
        small = table.field
        values = []
        for g in table.classes.representatives:
            a, _ = self.restricted_action(g)
            tr = a[0][0]
            for i in range(1, self.n):
                tr = tr + a[i][i]
            values.append(_coerce_to_subcyclotomic(tr, small))
        return HodgeCharacter(table=table, values=tuple(values))

    def j_matrix_float(self):
        """Float image of the exact multiplication-by-i operator."""
        n2 = self.rep.rank
        cols = []
        for col in self._basis_matrix_columns_complex():
            cols.append(col)
        P = np.array(cols, dtype=complex).T
        D = np.diag([1j] * self.n + [-1j] * self.n)
        J = P @ D @ np.linalg.inv(P)
        if np.max(np.abs(J.imag)) > 1e-8:
            raise AssertionError("J failed to come out real")
        return J.real

    def _basis_matrix_columns_complex(self):
        m = self.field.m
        out = []
        for j in range(2 * self.n):
            col = []
            for i in range(self.rep.rank):
                x = self._basis_matrix[i][j]
                col.append(sum(float(c) * np.exp(2j * np.pi * t / m)
                               for t, c in enumerate(x.coeffs) if c))
            out.append(col)
        return out


def _coerce_to_subcyclotomic(x: CyclotomicNumber, small) -> CyclotomicNumber:
    """Rewrite x in a cyclotomic subfield Q(zeta_m') of Q(zeta_M), m' | M."""
    if x.field.m == small.m:
        return x
    big = x.field
    ratio = big.m // small.m
    if small.m * ratio != big.m:
        raise ValueError("not a subfield")
    cols = []
    for t in range(small.degree):
        emb = big.zeta(ratio * t) if t else big.one()
        cols.append(list(emb.coeffs))
    from .cyclotomic import _solve_columns
    coords = _solve_columns(cols, list(x.coeffs))
    if coords is None:
        raise ValueError("value leaves the smaller cyclotomic field")
    return small.from_coeffs(coords)


def hodge_character_from_exact(structure: ExactHodgeStructure) -> HodgeCharacter:
    return structure.hodge_character()


def brute_force_hom_dimension(rep: IntegralRepresentation,
                              structure: ExactHodgeStructure,
                              chi10: HodgeCharacter | None = None) -> int:
    """Exact dimension of {phi : conj(U) -> U, phi rho(g) = rho(g) phi}.

    Solves the intertwiner system over the cyclotomic field carried by the
    structure; independent of the character formula.  If chi10 is supplied,
    the structure's own character is cross-checked against it first.
    """
    if rep.rank > BRUTE_FORCE_RANK_CAP:
        raise InvalidRepresentation(
            f"rank {rep.rank} exceeds the brute-force cap {BRUTE_FORCE_RANK_CAP}")
    if chi10 is not None:
        own = structure.hodge_character()
        if tuple(own.values) != tuple(chi10.values):
            raise InconsistentCharacter(
                "supplied chi10 disagrees with the exact structure")
    n = structure.n
    K = structure.field
    gens = rep.generator_indices()
    restricted = [structure.restricted_action(g) for g in gens]
    # unknown F (n x n over K), equations A_g F - F B_g = 0 per generator
    zero = K.zero()
    rows = []
    for a, b in restricted:
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for t in range(n):
                    row[t * n + j] = row[t * n + j] + a[i][t]
                    row[i * n + t] = row[i * n + t] - b[t][j]
                rows.append(row)
    if not rows:  # trivial group
        return n * n
    kernel = linalg.nullspace(rows)
    return len(kernel)


# -- isotypic pieces ---------------------------------------------------------


def isotypic_split(rep: IntegralRepresentation,
                   decomposition: GaloisOrbitDecomposition):
    """Rational projectors P_j from the orbit idempotents through rho.

    Returns a list of (projector matrix, image basis rows); the projectors
    satisfy P_j^2 = P_j, P_i P_j = 0 and sum to the identity, exactly.
    """
    n2 = rep.rank
    out = []
    for orbit in decomposition.orbits:
        p = [[Fraction(0)] * n2 for _ in range(n2)]
        for g, c in enumerate(orbit.idempotent):
            if c:
                mat = rep.matrices[g]
                for i in range(n2):
                    for j in range(n2):
                        if mat[i][j]:
                            p[i][j] += c * mat[i][j]
        image = linalg.row_space_basis([list(col) for col in zip(*p)])
        out.append((p, image))
    return out


def f_module_basis(summand_image, centre_matrices):
    """Vectors v_1..v_n whose F-orbits (under the centre action restricted
    to the summand) form a Q-basis of the summand; greedy construction."""
    if not summand_image:
        return [], []
    spanned = []
    gens = []
    orbits = []
    for cand in summand_image:
        if linalg.in_span(spanned, cand):
            continue
        orbit_vectors = [linalg.mat_vec(mat, cand) for mat in centre_matrices]
        orbit = linalg.row_space_basis(orbit_vectors)
        gens.append(list(cand))
        orbits.append(orbit)
        spanned = linalg.row_space_basis(spanned + orbit)
        if len(spanned) == len(summand_image):
            break
    if len(spanned) != len(summand_image):
        raise InvalidRepresentation("greedy F-module basis failed to span")
    return gens, orbits


def centre_action_matrices(rep: IntegralRepresentation):
    """Rational matrices of the class sums through rho, canonical order."""
    classes = rep.group.conjugacy_classes()
    n2 = rep.rank
    out = []
    for cls in classes.classes:
        acc = [[Fraction(0)] * n2 for _ in range(n2)]
        for g in cls:
            mat = rep.matrices[g]
            for i in range(n2):
                for j in range(n2):
                    if mat[i][j]:
                        acc[i][j] += mat[i][j]
        out.append(acc)
    return out


# -- enumeration of rigid types ---------------------------------------------


def enumerate_rigid_types(decomposition: GaloisOrbitDecomposition,
                          multiplicities):
    """All Hodge types satisfying (HS) and (R) for the given multiplicities.

    Empty when an active field is totally real; otherwise each active CM
    field contributes a free choice of one embedding per conjugate pair, so
    the count is the product of 2^(degree/2) over active summands.  Rigid
    tau values are forced into {0, multiplicity}.
    """
    orbits = decomposition.orbits
    if len(multiplicities) != len(orbits):
        raise ValueError("need one multiplicity per centre summand")
    for j, orbit in enumerate(orbits):
        if multiplicities[j] > 0 and orbit.tag == "TotallyReal":
            return []
    per_summand = []
    for j, orbit in enumerate(orbits):
        spec = orbit.field_spec
        reps = spec.coset_reps()
        if multiplicities[j] == 0:
            per_summand.append([tuple(sorted((a, 0) for a in reps))])
            continue
        pairs = []
        seen = set()
        for a in reps:
            if a in seen:
                continue
            abar = spec.conjugate_coset(a)
            seen.add(a)
            seen.add(abar)
            pairs.append((a, abar))
        choices = []
        n_j = multiplicities[j]
        for picks in itertools.product(*[[0, 1]] * len(pairs)):
            tau = {}
            for (a, abar), pick in zip(pairs, picks):
                tau[a] = n_j if pick == 0 else 0
                tau[abar] = n_j - tau[a]
            choices.append(tuple(sorted(tau.items())))
        per_summand.append(choices)
    specs = []
    for combo in itertools.product(*per_summand):
        summands = tuple(
            SummandType(orbit_index=j, multiplicity=multiplicities[j],
                        tau=combo[j])
            for j in range(len(orbits)))
        spec = SymbolicHodgeSpec(decomposition=decomposition, summands=summands)
        spec.validate_hs()
        specs.append(spec)
    return specs


def spec_from_character(chi10: HodgeCharacter) -> SymbolicHodgeSpec:
    """Hodge type through the centre, extracted from a Hodge character."""
    table = chi10.table
    mults = _validated_multiplicities(chi10, table)
    decomp = galois_orbits(table)
    summands = []
    for j, orbit in enumerate(decomp.orbits):
        coset_to_row = dict(orbit.coset_to_row)
        spec = orbit.field_spec
        rep_row = orbit.representative
        deg = table.degrees[rep_row]
        total = None
        tau = {}
        for a in spec.coset_reps():
            r = coset_to_row[a]
            rbar = coset_to_row[spec.conjugate_coset(a)]
            tau[a] = deg * mults[r]
            pair_total = deg * (mults[r] + mults[rbar])
            if total is None:
                total = pair_total
            elif total != pair_total:
                raise InconsistentCharacter(
                    "character multiplicities are not Galois-constant")
        summands.append(SummandType(
            orbit_index=j,
            multiplicity=total if total is not None else 0,
            tau=tuple(sorted(tau.items()))))
    out = SymbolicHodgeSpec(decomposition=decomp, summands=tuple(summands))
    out.validate_hs()
    return out


# -- realizing symbolic specs exactly ----------------------------------------


def exact_structure_from_spec(rep: IntegralRepresentation,
                              spec: SymbolicHodgeSpec) -> ExactHodgeStructure:
    """Build an exact U-basis realizing a one-sided (tau in {0, n_j}) spec.

    Character spaces are cut out of each isotypic piece with Lagrange
    projectors built from a primitive centre element; for real character
    fields with even multiplicity the duplicated copies are paired by the
    graph construction v -> (v, mu v) with mu a fixed non-real cyclotomic.
    """
    spec.validate_hs()
    table = spec.decomposition.table
    m = table.field.m
    K = CyclotomicField(m if m > 2 else 4)
    mu = K.zeta()  # non-real by the choice of K
    if mu == mu.conjugate():
        raise AssertionError("mu must be non-real")
    pieces = isotypic_split(rep, spec.decomposition)
    centre_mats = centre_action_matrices(rep)
    u_cols = []
    for s, (proj, image) in zip(spec.summands, pieces):
        if s.multiplicity == 0:
            if image:
                raise InvalidRepresentation(
                    "spec multiplicity 0 but isotypic piece is nonzero")
            continue
        orbit = spec.decomposition.orbits[s.orbit_index]
        fs = orbit.field_spec
        if len(image) != s.multiplicity * fs.degree:
            raise InvalidRepresentation(
                "spec multiplicity disagrees with the isotypic rank")
        tau = s.tau_dict()
        if orbit.tag == "CM":
            sides = [a for a in fs.coset_reps() if tau[a] == s.multiplicity]
            if sorted(tau.values()) != sorted(
                    [s.multiplicity] * len(sides) + [0] * len(sides)):
                raise HSViolation("CM tau values must be one-sided")
            gens, _ = f_module_basis(image, centre_mats)
            theta, theta_mat = _primitive_centre_element(
                table, spec.decomposition, s.orbit_index, centre_mats, K)
            for v in gens:
                vk = [K.from_rational(x) for x in v]
                for a in sides:
                    u_cols.append(_lagrange_project(
                        theta_mat, theta, fs, a, vk, K))
        else:
            # totally real field: tau = n/2 on each embedding; pair copies.
            # Only rational scalar pieces are realizable here: for a real
            # character of degree > 1 the graph pairing of module copies is
            # centre-invariant but not G-invariant.
            rep_row = orbit.representative
            if orbit.field_spec.degree != 1 or \
                    spec.decomposition.table.degrees[rep_row] != 1:
                raise InvalidRepresentation(
                    "cannot realize an exact complex structure on a "
                    "totally real summand of character degree > 1 or "
                    "field degree > 1; only rational scalar pieces are "
                    "supported")
            n_j = s.multiplicity
            if n_j % 2:
                raise HSViolation(
                    "real summand with odd multiplicity cannot carry "
                    "a Hodge structure")
            gens, orbits = f_module_basis(image, centre_mats)
            for i in range(0, n_j, 2):
                for w1, w2 in zip(orbits[i], orbits[i + 1]):
                    col = [K.from_rational(x) + mu * Fraction(y)
                           for x, y in zip(w1, w2)]
                    u_cols.append(col)
    structure = ExactHodgeStructure(rep, K, u_cols)
    return structure


def _primitive_centre_element(table, decomposition, orbit_index, centre_mats, K):
    """A centre combination whose F_j-image separates the embeddings,
    with its rational action matrix; deterministic search."""
    orbit = decomposition.orbits[orbit_index]
    fs = orbit.field_spec
    rep_row = orbit.representative
    d = table.size
    deg = table.degrees[rep_row]
    for attempt in range(1, 200):
        weights = [pow(attempt, k, 10 ** 6) % 7 - 3 for k in range(d)]
        theta = table.field.zero()
        for k in range(d):
            if weights[k]:
                omega = table.rows[rep_row][k] * Fraction(
                    table.classes.sizes[k] * weights[k], deg)
                theta = theta + omega
        images = [theta.galois(a) for a in fs.coset_reps()]
        if len({tuple(x.coeffs) for x in images}) == len(images):
            n2 = len(centre_mats[0])
            acc = [[Fraction(0)] * n2 for _ in range(n2)]
            for k in range(d):
                if weights[k]:
                    for i in range(n2):
                        for j in range(n2):
                            acc[i][j] += weights[k] * centre_mats[k][i][j]
            return theta, acc
    raise AssertionError("failed to find a primitive centre element")


def _lagrange_project(theta_mat, theta, field_spec, coset, vector, K):
    """Project a vector onto the sigma_coset eigenline of its F-orbit."""
    m_big = K.m
    m_small = theta.field.m
    ratio = m_big // m_small

    def lift(x):
        return K.from_exponent_dict(
            {ratio * t: c for t, c in enumerate(x.coeffs) if c})

    target = lift(theta.galois(coset))
    out = list(vector)
    n2 = len(vector)
    for a in field_spec.coset_reps():
        if a == coset:
            continue
        other = lift(theta.galois(a))
        denom = (target - other).inverse()
        nxt = [K.zero()] * n2
        for i in range(n2):
            acc = K.zero()
            for j in range(n2):
                if theta_mat[i][j]:
                    acc = acc + out[j] * theta_mat[i][j]
            nxt[i] = (acc - other * out[i]) * denom
        out = nxt
    if all(x.is_zero() for x in out):
        raise AssertionError("Lagrange projection collapsed to zero")
    return out
