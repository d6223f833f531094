"""Rational polarizations for rigid actions, with certified verification.

The construction follows the CM trace form: on each active centre field F
(necessarily CM when the action is rigid), pick an imaginary element zeta
with certified-positive imaginary part at the embeddings designated
V^{1,0}, and take E(x, y) = Tr_{F/Q}(zeta * x * conj(y)) on each F-module
copy.  Verification checks both bilinear relations, the Rosati property on
the centre, and optionally exact G-invariance; the symbolic pathway is
tolerance-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from . import linalg
from .cyclotomic import CyclotomicNumber, SubfieldSpec
from .hodge import (ExactHodgeStructure, IntegralRepresentation,
                    SymbolicHodgeSpec, centre_action_matrices,
                    exact_structure_from_spec, f_module_basis, isotypic_split,
                    rigidity_by_centre, spec_from_character)
from .polyfields import PolynomialField, RealEmbeddingPresent

__all__ = [
    "ImaginaryElement",
    "PolarizationForm",
    "PolarizationCertificate",
    "ExistenceCertificate",
    "NotRigid",
    "NonCMFieldActive",
    "NotCMField",
    "RelationIFails",
    "NotPositiveDefinite",
    "RosatiFails",
    "imaginary_subspace",
    "find_zeta",
    "trace_form",
    "assemble_polarization",
    "verify_polarization",
    "polarization_exists",
    "RELATION_I_TOL",
    "MIN_EIGENVALUE_BOUND",
]

RELATION_I_TOL = 1e-8
MIN_EIGENVALUE_BOUND = 1e-6


class NotRigid(ValueError):
    pass


class NonCMFieldActive(ValueError):
    pass


class NotCMField(ValueError):
    pass


class _RelationError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RelationIFails(_RelationError):
    pass


class NotPositiveDefinite(_RelationError):
    pass


class RosatiFails(_RelationError):
    pass


# -- imaginary elements ------------------------------------------------------


@dataclass(frozen=True)
class ImaginaryElement:
    """zeta with conj(zeta) = -zeta and a certified sign table per coset."""

    field_spec: SubfieldSpec
    element: CyclotomicNumber
    sign_table: tuple  # pairs (coset representative, sign of Im sigma_a)


def imaginary_subspace(field_spec: SubfieldSpec):
    """Q-basis of {x in F : conj(x) = -x}; errors on totally real fields."""
    if field_spec.is_totally_real():
        raise RealEmbeddingPresent(
            "field is totally real; it has no imaginary elements")
    k = field_spec.degree
    rows = []
    for t in range(k):
        conj_coords = field_spec.coordinates(field_spec.basis[t].conjugate())
        if conj_coords is None:
            raise ValueError("subfield is not conjugation-stable")
        rows.append([conj_coords[s] + (1 if s == t else 0) for s in range(k)])
    # kernel of (C + I) where C is conjugation in the subfield basis
    mat = [[rows[t][s] for t in range(k)] for s in range(k)]
    kernel = linalg.nullspace(mat)
    return [field_spec.element(vec) for vec in kernel]


def find_zeta(field_spec: SubfieldSpec, designated, seed: int = 0,
              max_denominator: int = 2 ** 20) -> ImaginaryElement:
    """An imaginary zeta with certified Im sigma_a(zeta) > 0 for a in the
    designated set (one coset per conjugate pair).

    A Chebyshev-centre LP over float embeddings proposes candidates, which
    are rationalized with doubling denominator bounds and certified with the
    exact sign machinery.  The feasible cone is open and nonempty for CM
    fields, so this terminates.
    """
    designated = sorted({field_spec._coset_rep(a) for a in designated})
    _validate_designated(field_spec, designated)
    basis = imaginary_subspace(field_spec)
    if not basis:
        raise NotCMField("imaginary subspace is zero")
    dim = len(basis)
    prec = 128
    for _round in range(12):
        w = np.array([[float(b.embed(a, prec).imag_mid) for b in basis]
                      for a in designated])
        # maximize delta st w q >= delta, -1 <= q <= 1
        c = np.zeros(dim + 1)
        c[-1] = -1.0
        a_ub = np.hstack([-w, np.ones((len(designated), 1))])
        bounds = [(-1, 1)] * dim + [(0, 1)]
        res = linprog(c, A_ub=a_ub, b_ub=np.zeros(len(designated)),
                      bounds=bounds, method="highs")
        if res.status == 0 and -res.fun > 1e-12:
            q = res.x[:dim]
            denom = 16
            while denom <= max_denominator:
                coords = [Fraction(x).limit_denominator(denom) for x in q]
                if any(coords):
                    zeta = _combine(basis, coords)
                    signs = _certify_signs(field_spec, zeta, designated)
                    if signs is not None:
                        return ImaginaryElement(
                            field_spec=field_spec, element=zeta,
                            sign_table=tuple(signs))
                denom *= 2
        prec *= 2
    raise NotCMField(
        "no certified zeta found; the sign cone appears empty "
        f"for designated cosets {designated}")


def _validate_designated(field_spec, designated):
    reps = field_spec.coset_reps()
    pairs = set()
    for a in reps:
        pairs.add(frozenset((a, field_spec.conjugate_coset(a))))
    if any(len(p) == 1 for p in pairs):
        raise RealEmbeddingPresent("field has a real embedding")
    chosen = set(designated)
    for p in pairs:
        if len(chosen & p) != 1:
            raise ValueError(
                "designated set must pick exactly one embedding from each "
                f"conjugate pair; got {sorted(chosen)} against pair {sorted(p)}")
    if len(chosen) != len(pairs):
        raise ValueError("designated set has extraneous cosets")


def _combine(basis, coords):
    acc = basis[0].field.zero()
    for b, c in zip(basis, coords):
        acc = acc + b * c
    return acc


def _certify_signs(field_spec, zeta, designated):
    if zeta.conjugate() != -zeta:
        return None
    signs = []
    for a in field_spec.coset_reps():
        s = zeta.sign_imag(a)
        if a in designated and s != 1:
            return None
        signs.append((a, s))
    return signs


# -- trace forms -------------------------------------------------------------


def trace_form(field_spec: SubfieldSpec, zeta: ImaginaryElement, basis):
    """Exact matrix of (x, y) -> Tr_{F/Q}(zeta x conj(y)) in the given
    Q-basis of one F-module copy."""
    z = zeta.element if isinstance(zeta, ImaginaryElement) else zeta
    if z.conjugate() != -z:
        raise ValueError("zeta is not imaginary")
    k = len(basis)
    out = [[Fraction(0)] * k for _ in range(k)]
    for s in range(k):
        for t in range(k):
            out[s][t] = field_spec.field_trace(z * basis[s] * basis[t].conjugate())
    return out


# -- assembly ----------------------------------------------------------------


@dataclass(frozen=True)
class PolarizationForm:
    rank: int
    matrix: tuple                 # 2n x 2n exact rational, primitive integral
    provenance: tuple             # per summand:
                                  # (orbit, copies, zeta coords, sign table)
    certificate: "PolarizationCertificate"

    def as_fraction_rows(self):
        return [list(row) for row in self.matrix]


@dataclass(frozen=True)
class PolarizationCertificate:
    relation_i: dict
    relation_ii: dict
    rosati: dict
    g_invariant: dict
    mode: str  # "symbolic" or "numeric"


def assemble_polarization(rep: IntegralRepresentation,
                          spec: SymbolicHodgeSpec | None = None,
                          chi10=None,
                          j_matrix=None,
                          g_invariant: bool = False,
                          seed: int = 0) -> PolarizationForm:
    """Block trace-form polarization for a rigid action.

    Input is a symbolic Hodge type, a Hodge character, or a numeric (rho, J)
    pair (converted via the character bridge).  Raises NotRigid when the
    action is not rigid.
    """
    if spec is None:
        if chi10 is None:
            if j_matrix is None:
                raise ValueError("need a symbolic spec, a chi10, or a J matrix")
            from .hodge import hodge_character_from_numeric
            chi10 = hodge_character_from_numeric(rep, j_matrix)
        spec = spec_from_character(chi10)
    centre_report = rigidity_by_centre(spec)
    if not centre_report.is_rigid:
        raise NotRigid(
            "action is not rigid; violating embeddings: "
            f"{[row for row in centre_report.tau_rows if row[4] != 0]}")
    decomp = spec.decomposition
    for s in spec.summands:
        if s.multiplicity > 0 and decomp.orbits[s.orbit_index].tag != "CM":
            raise NonCMFieldActive(
                f"active summand {s.orbit_index} is not CM")
    pieces = isotypic_split(rep, decomp)
    centre_mats = centre_action_matrices(rep)
    n2 = rep.rank
    columns = []          # 2n column vectors over Q
    blocks = []           # per copy: exact block matrix
    provenance = []
    for s, (proj, image) in zip(spec.summands, pieces):
        if s.multiplicity == 0:
            if image:
                raise NonCMFieldActive(
                    "isotypic piece nonzero for a zero-multiplicity summand")
            continue
        orbit = decomp.orbits[s.orbit_index]
        fspec = orbit.field_spec
        tau = s.tau_dict()
        designated = [a for a in fspec.coset_reps() if tau[a] > 0]
        zeta = find_zeta(fspec, designated, seed=seed)
        gens, _ = f_module_basis(image, centre_mats)
        basis_mats = _subfield_action_matrices(rep, decomp, s.orbit_index,
                                               centre_mats)
        block = trace_form(fspec, zeta, list(fspec.basis))
        for v in gens:
            for mat in basis_mats:
                columns.append(linalg.mat_vec(
                    [[Fraction(x) for x in row] for row in mat], list(map(Fraction, v))))
            blocks.append(block)
        provenance.append((s.orbit_index, len(gens),
                           tuple(fspec.coordinates(zeta.element)),
                           zeta.sign_table))
    w = [[columns[j][i] for j in range(len(columns))] for i in range(n2)]
    if len(columns) != n2 or linalg.rank(w) != n2:
        raise NonCMFieldActive("assembled basis does not span the lattice")
    w_inv = linalg.inverse(w)
    big = _block_diag(blocks)
    e_mat = linalg.mat_mul(linalg.transpose(w_inv), linalg.mat_mul(big, w_inv))
    if g_invariant:
        e_mat = _g_average(rep, e_mat)
    e_mat = _primitive_integral(e_mat)
    structure = exact_structure_from_spec(rep, spec)
    cert = verify_polarization(e_mat, structure=structure, rep=rep,
                               check_g_invariance=True)
    return PolarizationForm(
        rank=n2,
        matrix=tuple(tuple(row) for row in e_mat),
        provenance=tuple(provenance),
        certificate=cert)


def _subfield_action_matrices(rep, decomp, orbit_index, centre_mats):
    """Rational action matrices of the subfield basis elements of F_j."""
    from .characters import centre_decomposition
    summands = centre_decomposition(decomp.table, decomp)
    summand = summands[orbit_index]
    k = summand.field_spec.degree
    d = decomp.table.size
    # solve for class combinations mapping to each basis vector
    comp = [[summand.class_components[c][t] for c in range(d)] for t in range(k)]
    mats = []
    n2 = len(centre_mats[0])
    for t in range(k):
        target = [Fraction(1) if s == t else Fraction(0) for s in range(k)]
        combo = linalg.solve(comp, target)
        if combo is None:
            raise NonCMFieldActive("centre does not surject onto its summand")
        acc = [[Fraction(0)] * n2 for _ in range(n2)]
        for c, q in enumerate(combo):
            if q:
                for i in range(n2):
                    for jj in range(n2):
                        acc[i][jj] += q * centre_mats[c][i][jj]
        mats.append(acc)
    return mats


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = Fraction(x)
        off += len(b)
    return out


def _g_average(rep, e_mat):
    n2 = rep.rank
    acc = [[Fraction(0)] * n2 for _ in range(n2)]
    for g in range(rep.group.order):
        rho = [[Fraction(x) for x in row] for row in rep.matrices[g]]
        term = linalg.mat_mul(linalg.transpose(rho), linalg.mat_mul(e_mat, rho))
        acc = linalg.mat_add(acc, term)
    return linalg.mat_scale(acc, Fraction(1, rep.group.order))


def _primitive_integral(e_mat):
    den = 1
    for row in e_mat:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    num_gcd = 0
    ints = [[int(x * den) for x in row] for row in e_mat]
    for row in ints:
        for x in row:
            num_gcd = _gcd(num_gcd, x)
    if num_gcd == 0:
        raise ValueError("zero form")
    return [[Fraction(x, num_gcd) for x in row] for row in ints]


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# -- verification -------------------------------------------------------------


def verify_polarization(e_mat, structure: ExactHodgeStructure | None = None,
                        rep: IntegralRepresentation | None = None,
                        j_matrix=None,
                        relation_i_tol: float = RELATION_I_TOL,
                        min_eigenvalue_bound: float = MIN_EIGENVALUE_BOUND,
                        check_g_invariance: bool = False) -> PolarizationCertificate:
    """Certify both bilinear relations and the Rosati property.

    Symbolic pathway (exact structure): all checks exact, zero tolerance.
    Numeric pathway (float J): relation I as a residual bound, relation II
    as an exact rational lower bound on the minimum eigenvalue of the
    rationalized Gram matrix.
    """
    e_rows = [[Fraction(x) for x in row] for row in e_mat]
    n2 = len(e_rows)
    for i in range(n2):
        for j in range(n2):
            if e_rows[i][j] != -e_rows[j][i]:
                raise RelationIFails("matrix is not alternating",
                                     witness=(i, j))
    if structure is not None:
        rel1, rel2 = _verify_symbolic(e_rows, structure)
        mode = "symbolic"
        rep = rep or structure.rep
    elif rep is not None and j_matrix is not None:
        rel1, rel2 = _verify_numeric(e_rows, j_matrix,
                                     relation_i_tol, min_eigenvalue_bound)
        mode = "numeric"
    else:
        raise ValueError("need an exact structure or a (rep, J) pair")
    rosati = _verify_rosati(e_rows, rep)
    ginv = _verify_g_invariance(e_rows, rep) if check_g_invariance else {
        "checked": False}
    return PolarizationCertificate(
        relation_i=rel1, relation_ii=rel2, rosati=rosati,
        g_invariant=ginv, mode=mode)


def _verify_symbolic(e_rows, structure: ExactHodgeStructure):
    K = structure.field
    n = structure.n
    n2 = structure.rep.rank
    e_k = [[K.from_rational(x) for x in row] for row in e_rows]
    u_cols = structure.u_columns
    # relation I: E_C(U, U) = 0 exactly
    for a in range(n):
        ea = linalg.mat_vec(e_k, u_cols[a])
        for b in range(n):
            acc = K.zero()
            for x, y in zip(u_cols[b], ea):
                acc = acc + x * y
            if not acc.is_zero():
                raise RelationIFails(
                    "E_C does not vanish on V^{1,0} x V^{1,0}",
                    witness={
                        "pair": (b, a),
                        "value": acc.as_string(),
                        "vectors": (
                            tuple(x.as_string() for x in u_cols[b]),
                            tuple(x.as_string() for x in u_cols[a])),
                    })
    # relation II: exact LDL pivots of the Hermitian form -i E_C(u, conj u);
    # the pivots are purely imaginary elements of K before the -i twist, so
    # each sign is decided by the certified machinery.
    m = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = K.zero()
            ebar = [x.conjugate() for x in u_cols[b]]
            ev = linalg.mat_vec(e_k, ebar)
            for x, y in zip(u_cols[a], ev):
                acc = acc + x * y
            m[a][b] = acc
    for a in range(n):
        for b in range(n):
            if m[a][b].conjugate() != -m[b][a]:
                raise NotPositiveDefinite(
                    "Hermitian Gram matrix is not Hermitian", witness=(a, b))
    witness = _hermitian_nonpositive_witness(m, K, structure)
    if witness is not None:
        raise NotPositiveDefinite(
            "the Hermitian form -i E_C(v, conj v) is not positive definite",
            witness=witness)
    return ({"mode": "exact", "ok": True},
            {"mode": "exact", "ok": True, "pivots_positive": n})


def _rotated_positive_sign(d: CyclotomicNumber) -> int:
    """Exact sign of the real number -i*d (d purely imaginary or zero)."""
    if d.is_zero():
        return 0
    if d.conjugate() != -d:
        raise NotPositiveDefinite(
            "Hermitian pivot is not purely imaginary", witness=d.as_string())
    return d.sign_imag()


def _hermitian_nonpositive_witness(m, K, structure):
    """None when the form c -> -i sum c_a M_ab conj(c_b) is positive
    definite; otherwise a concrete nonpositive vector in V (x) K.

    Runs the Hermitian LDL elimination exactly; the pivots of -iM are real
    cyclotomics whose signs are certified.  At the first nonpositive pivot
    the accumulated row transform gives the witness combination of the
    V^{1,0} basis columns."""
    n = len(m)
    h = [[m[a][b] for b in range(n)] for a in range(n)]  # -i deferred
    trans = [[K.one() if i == j else K.zero() for j in range(n)]
             for i in range(n)]
    for k in range(n):
        sign = _rotated_positive_sign(h[k][k])
        if sign <= 0:
            combo = trans[k]
            vec = [K.zero()] * structure.rep.rank
            for a, c in enumerate(combo):
                if not c.is_zero():
                    col = structure.u_columns[a]
                    vec = [v + c * x for v, x in zip(vec, col)]
            return {
                "conductor": K.m,
                "vector": tuple(tuple(str(q) for q in x.coeffs) for x in vec),
                "display": tuple(x.as_string() for x in vec),
            }
        pivot_inv = h[k][k].inverse()
        for i in range(k + 1, n):
            f = h[i][k] * pivot_inv
            if f.is_zero():
                continue
            fbar = f.conjugate()
            h[i] = [x - f * y for x, y in zip(h[i], h[k])]
            for r in range(n):
                h[r][i] = h[r][i] - fbar * h[r][k]
            trans[i] = [x - f * y for x, y in zip(trans[i], trans[k])]
    return None


def _verify_numeric(e_rows, j_matrix, relation_i_tol, min_eigenvalue_bound):
    e_np = np.array([[float(x) for x in row] for row in e_rows])
    J = np.asarray(j_matrix, dtype=float)
    n2 = len(e_rows)
    vals, vecs = np.linalg.eig(J)
    u_cols = vecs[:, np.isclose(vals.imag, 1.0, atol=1e-6)]
    res = np.max(np.abs(u_cols.T @ e_np @ u_cols)) if u_cols.size else 0.0
    if res > relation_i_tol:
        raise RelationIFails(f"relation I residual {res:.3e} exceeds "
                             f"{relation_i_tol}", witness=res)
    gram_float = e_np @ J
    sym_defect = np.max(np.abs(gram_float - gram_float.T))
    if sym_defect > relation_i_tol:
        raise NotPositiveDefinite(
            f"E(x, Jy) is not symmetric within tolerance ({sym_defect:.3e})",
            witness=sym_defect)
    gram = [[Fraction(gram_float[i][j]) for j in range(n2)] for i in range(n2)]
    gram = [[(gram[i][j] + gram[j][i]) / 2 for j in range(n2)] for i in range(n2)]
    bound = _exact_min_eigenvalue_bound(gram)
    if bound <= Fraction(min_eigenvalue_bound).limit_denominator(10 ** 12):
        witness = _negative_witness(gram)
        raise NotPositiveDefinite(
            f"minimum-eigenvalue bound {float(bound):.3e} below "
            f"{min_eigenvalue_bound}", witness=witness)
    return ({"mode": "numeric", "residual": res, "ok": True},
            {"mode": "numeric", "min_eigenvalue_lower_bound": bound, "ok": True})


def _exact_min_eigenvalue_bound(gram):
    """Largest lambda from a halving search with gram - lambda I positive
    definite, decided by exact rational LDL."""
    n = len(gram)
    if not _is_pd(gram):
        return Fraction(0)
    hi = Fraction(1)
    while _is_pd(_shift(gram, hi)) and hi < 2 ** 40:
        hi *= 2
    lo = Fraction(0)
    for _ in range(40):
        midpoint = (lo + hi) / 2
        if _is_pd(_shift(gram, midpoint)):
            lo = midpoint
        else:
            hi = midpoint
    return lo


def _shift(gram, lam):
    n = len(gram)
    return [[gram[i][j] - (lam if i == j else 0) for j in range(n)]
            for i in range(n)]


def _is_pd(mat):
    """Exact positive-definiteness by LDL^T pivots."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def _negative_witness(gram):
    """A vector with x^T gram x <= 0, from the failing LDL pivot."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    trans = linalg.identity(n)
    for k in range(n):
        if a[k][k] <= 0:
            return tuple(trans[k])
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(n):
                a[i][j] -= f * a[k][j]
                trans[i][j] -= f * trans[k][j]
    return None


def _verify_rosati(e_rows, rep: IntegralRepresentation):
    """E(z v, w) = E(v, conj(z) w) for the class sums z; conj sends a class
    to the class of inverses.  Exact."""
    classes = rep.group.conjugacy_classes()
    mats = centre_action_matrices(rep)
    for idx in range(classes.count):
        t = mats[idx]
        t_conj = mats[classes.inverse_class(idx)]
        left = linalg.mat_mul(linalg.transpose(t), e_rows)
        right = linalg.mat_mul(e_rows, t_conj)
        if left != right:
            witness = next((i, j) for i in range(len(left))
                           for j in range(len(left)) if left[i][j] != right[i][j])
            raise RosatiFails(
                f"Rosati identity fails on class {idx}", witness=witness)
    return {"ok": True, "classes_checked": classes.count}


def _verify_g_invariance(e_rows, rep: IntegralRepresentation):
    for g in range(rep.group.order):
        rho = [[Fraction(x) for x in row] for row in rep.matrices[g]]
        img = linalg.mat_mul(linalg.transpose(rho), linalg.mat_mul(e_rows, rho))
        if img != e_rows:
            return {"checked": True, "invariant": False, "witness": g}
    return {"checked": True, "invariant": True}


# -- the existence decision ---------------------------------------------------


@dataclass(frozen=True)
class ExistenceCertificate:
    verdict: str                       # "exists-with-witness" or "infeasible"
    witness: tuple | None              # coefficient vector of zeta, power basis
    witness_signs: tuple | None        # per root index: certified sign of Im
    obstruction: dict | None

    @property
    def exists(self) -> bool:
        return self.verdict == "exists-with-witness"


def polarization_exists(poly_coefficients, designated,
                        max_denominator: int = 2 ** 16) -> ExistenceCertificate:
    """Exact feasibility of the polarization sign cone for a standalone
    totally imaginary field Q[t]/f.

    Feasible: returns zeta purely imaginary under every embedding (exact)
    with certified positive imaginary part at the designated roots.
    Infeasible: returns an exact obstruction; when the purely-imaginary
    subspace is zero, the obstruction is the full-rank linear system itself.
    """
    F = PolynomialField(poly_coefficients)
    designated = sorted(set(designated))
    _validate_poly_designated(F, designated)
    basis = F.imaginary_subspace()
    if not basis:
        pair = F.pairs[0]
        return ExistenceCertificate(
            verdict="infeasible", witness=None, witness_signs=None,
            obstruction={
                "reason": "imaginary-constraint space is zero",
                "pair": pair,
                "constraint_rank": F.degree,
                "identity": "Im sigma_j(x) = 0 for all j forces x = 0",
            })
    dim = len(basis)
    if dim == 1:
        return _decide_dim_one(F, basis[0], designated)
    prec = 64
    for _round in range(8):
        w = []
        for i in designated:
            row = []
            for b in basis:
                _, im, _ = F.evaluate_box(b, i, prec)
                row.append(float(im))
            w.append(row)
        w = np.array(w)
        c = np.zeros(dim + 1)
        c[-1] = -1.0
        a_ub = np.hstack([-w, np.ones((len(designated), 1))])
        res = linprog(c, A_ub=a_ub, b_ub=np.zeros(len(designated)),
                      bounds=[(-1, 1)] * dim + [(0, 1)], method="highs")
        if res.status == 0 and -res.fun > 1e-12:
            denom = 16
            while denom <= max_denominator:
                coords = [Fraction(x).limit_denominator(denom)
                          for x in res.x[:dim]]
                if any(coords):
                    zeta = [sum(Fraction(b[t]) * c0 for b, c0 in zip(basis, coords))
                            for t in range(F.degree)]
                    signs = _certify_poly_signs(F, zeta, designated)
                    if signs is not None:
                        return ExistenceCertificate(
                            verdict="exists-with-witness",
                            witness=tuple(zeta),
                            witness_signs=tuple(signs),
                            obstruction=None)
                denom *= 2
        prec *= 2
    raise NotCMField(
        "sign-cone feasibility undecided: the imaginary subspace has "
        f"dimension {dim} >= 2 but the LP failed to certify a witness; "
        "this configuration is outside the supported decision surface")


def _validate_poly_designated(F: PolynomialField, designated):
    chosen = set(designated)
    for i, ibar in F.pairs:
        if len(chosen & {i, ibar}) != 1:
            raise ValueError(
                "designated set must pick exactly one root from each "
                f"conjugate pair; offending pair ({i},{ibar})")
    if len(chosen) != len(F.pairs):
        raise ValueError("designated set has extraneous roots")


def _certify_poly_signs(F, zeta, designated):
    signs = []
    for i in range(F.degree):
        s = F.sign_imag(zeta, i)
        if i in designated and s != 1:
            return None
        signs.append(s)
    return signs


def _decide_dim_one(F, gen, designated):
    signs = [F.sign_imag(gen, i) for i in range(F.degree)]
    plus_ok = all(signs[i] == 1 for i in designated)
    minus_ok = all(signs[i] == -1 for i in designated)
    if plus_ok or minus_ok:
        zeta = [q if plus_ok else -q for q in gen]
        certified = [s if plus_ok else -s for s in signs]
        return ExistenceCertificate(
            verdict="exists-with-witness",
            witness=tuple(zeta),
            witness_signs=tuple(certified),
            obstruction=None)
    bad = [(i, j) for i in designated for j in designated
           if signs[i] != signs[j]]
    return ExistenceCertificate(
        verdict="infeasible", witness=None, witness_signs=None,
        obstruction={
            "reason": "one-dimensional imaginary subspace with mixed "
                      "required signs",
            "pair": bad[0] if bad else None,
            "generator": tuple(gen),
            "generator_signs": tuple(signs),
            "identity": "every imaginary element is a rational multiple "
                        "of the generator",
        })
