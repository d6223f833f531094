import itertools
import random
from fractions import Fraction

import pytest

from rigidtori.characters import character_table, galois_orbits
from rigidtori.cyclotomic import CyclotomicField, SubfieldSpec
from rigidtori.fixtures import (NON_CM_QUARTIC, cyclic, eisenstein_action,
                                gaussian_action, trivial_action)
from rigidtori.hodge import (IntegralRepresentation, enumerate_rigid_types,
                             exact_structure_from_spec, isotypic_split)
from rigidtori.polarize import (ExistenceCertificate, NotPositiveDefinite,
                                NotRigid, RelationIFails, RosatiFails,
                                assemble_polarization, find_zeta,
                                imaginary_subspace, polarization_exists,
                                trace_form, verify_polarization)
from rigidtori.polyfields import RealEmbeddingPresent, ReduciblePolynomial
from rigidtori import linalg


def cm_subfield(m, subgroup=(1,)):
    return SubfieldSpec(CyclotomicField(m), subgroup)


def test_imaginary_subspace_qi():
    S = cm_subfield(4)
    basis = imaginary_subspace(S)
    assert len(basis) == 1
    z = CyclotomicField(4).zeta()
    assert linalg.rank([list(basis[0].coeffs), list(z.coeffs)]) == 1


def test_imaginary_subspace_q5():
    S = cm_subfield(5)
    basis = imaginary_subspace(S)
    assert len(basis) == 2
    F = CyclotomicField(5)
    z = F.zeta()
    named = [z - z ** 4, z ** 2 - z ** 3]
    combined = [list(b.coeffs) for b in basis] + [list(v.coeffs) for v in named]
    assert linalg.rank(combined) == 2
    for b in basis:
        assert b.conjugate() == -b


def test_imaginary_subspace_rejects_totally_real():
    with pytest.raises(RealEmbeddingPresent):
        imaginary_subspace(cm_subfield(5, (1, 4)))
    with pytest.raises(RealEmbeddingPresent):
        imaginary_subspace(cm_subfield(1))


def test_find_zeta_qi():
    S = cm_subfield(4)
    zeta = find_zeta(S, [1])
    assert zeta.element.conjugate() == -zeta.element
    assert dict(zeta.sign_table)[1] == 1
    # any certified zeta here is a positive rational multiple of i
    z = CyclotomicField(4).zeta()
    ratio = zeta.element / z
    assert ratio.as_rational() is not None and ratio.as_rational() > 0


def test_find_zeta_q3():
    S = cm_subfield(3)
    zeta = find_zeta(S, [1])
    assert dict(zeta.sign_table)[1] == 1
    # the classical witness has the same certified signs
    F = CyclotomicField(3)
    z = F.zeta()
    classical = z - z * z
    assert classical.sign_imag(1) == 1


def test_find_zeta_q5_both_signs_certified():
    S = cm_subfield(5)
    reps = S.coset_reps()
    designated = [1, 2]
    zeta = find_zeta(S, designated)
    table = dict(zeta.sign_table)
    for a in designated:
        assert table[a] == 1
        assert table[S.conjugate_coset(a)] == -1


def test_find_zeta_validates_designation():
    S = cm_subfield(5)
    with pytest.raises(ValueError):
        find_zeta(S, [1, 4])  # both from one conjugate pair
    with pytest.raises(ValueError):
        find_zeta(S, [1])     # missing the other pair


def test_trace_form_golden_qi():
    S = cm_subfield(4)
    zeta = find_zeta(S, [1])
    F = CyclotomicField(4)
    basis = [F.one(), F.zeta()]
    m = trace_form(S, zeta.element, basis)
    q = m[0][1] / 2
    assert q > 0
    assert m == [[Fraction(0), 2 * q], [-2 * q, Fraction(0)]]


def test_trace_form_brute_force_2x2():
    # E(x, y) = Tr(i x conj(y)) on Q(i) equals 2(ad - bc) for x = a+bi, y = c+di
    S = cm_subfield(4)
    F = CyclotomicField(4)
    i = F.zeta()
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        x = F.from_rational(a) + i * b
        y = F.from_rational(c) + i * d
        val = S.field_trace(i * x * y.conjugate())
        assert val == 2 * (a * d - b * c)


def test_trace_form_always_alternating():
    rng = random.Random(23)
    S = cm_subfield(5)
    basis_im = imaginary_subspace(S)
    for _ in range(4):
        zeta = basis_im[0] * rng.randint(1, 5) + basis_im[1] * rng.randint(-5, 5)
        if zeta.is_zero():
            continue
        m = trace_form(S, zeta, list(S.basis))
        for i in range(len(m)):
            for j in range(len(m)):
                assert m[i][j] == -m[j][i]


def test_trace_form_scaling():
    S = cm_subfield(4)
    F = CyclotomicField(4)
    i = F.zeta()
    base = trace_form(S, i, [F.one(), i])
    scaled = trace_form(S, i * Fraction(3, 7), [F.one(), i])
    assert scaled == [[x * Fraction(3, 7) for x in row] for row in base]


def test_assemble_gaussian_golden():
    rep = gaussian_action()
    form = assemble_polarization(rep, j_matrix=[[0, -1], [1, 0]])
    assert [list(r) for r in form.matrix] == [[0, 1], [-1, 0]]
    cert = form.certificate
    assert cert.mode == "symbolic"
    assert cert.relation_i["ok"] and cert.relation_ii["ok"]
    assert cert.rosati["ok"]
    assert cert.g_invariant["invariant"]


def test_assemble_not_rigid():
    with pytest.raises(NotRigid):
        assemble_polarization(trivial_action(2),
                              j_matrix=[[0.0, -1.0], [1.0, 0.0]])


def test_assemble_direct_sum_of_gaussians():
    rep0 = gaussian_action()
    mats = []
    for m in rep0.matrices:
        big = [[0] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                big[i][j] = m[i][j]
                big[2 + i][2 + j] = m[i][j]
        mats.append(big)
    rep = IntegralRepresentation(rep0.group, mats)
    j = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    form = assemble_polarization(rep, j_matrix=j)
    e = [list(r) for r in form.matrix]
    # block-diagonal with the rank-2 golden block in each slot
    assert e[0][1] == -e[1][0] != 0
    assert e[2][3] == -e[3][2] != 0
    for i, jj in [(0, 2), (0, 3), (1, 2), (1, 3)]:
        assert e[i][jj] == 0 and e[jj][i] == 0


def test_g_averaged_form_is_invariant_and_verifies():
    rep = eisenstein_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    spec = enumerate_rigid_types(decomp, mults)[0]
    form = assemble_polarization(rep, spec=spec, g_invariant=True)
    assert form.certificate.g_invariant["invariant"]
    e = [list(r) for r in form.matrix]
    for m in rep.matrices:
        rho = [[Fraction(x) for x in row] for row in m]
        assert linalg.mat_mul(linalg.transpose(rho),
                              linalg.mat_mul(e, rho)) == e


def test_scaling_preserves_verdicts():
    rep = gaussian_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    spec = enumerate_rigid_types(decomp, mults)[0]
    st = exact_structure_from_spec(rep, spec)
    form = assemble_polarization(rep, spec=spec)
    e = [list(r) for r in form.matrix]
    for q in (Fraction(3), Fraction(5, 7)):
        scaled = [[x * q for x in row] for row in e]
        cert = verify_polarization(scaled, structure=st, rep=rep)
        assert cert.relation_i["ok"] and cert.relation_ii["ok"]


def test_verify_rejects_sign_flip():
    rep = gaussian_action()
    form = assemble_polarization(rep, j_matrix=[[0, -1], [1, 0]])
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    from rigidtori.hodge import hodge_character_from_numeric, spec_from_character
    chi = hodge_character_from_numeric(rep, [[0.0, -1.0], [1.0, 0.0]])
    st = exact_structure_from_spec(rep, spec_from_character(chi))
    flipped = [[-x for x in row] for row in form.matrix]
    with pytest.raises(NotPositiveDefinite) as err:
        verify_polarization(flipped, structure=st, rep=rep)
    witness = err.value.witness
    assert witness is not None
    # the witness vector really has nonpositive Hermitian norm for -E
    import numpy as np
    m = witness["conductor"]
    vec = np.array([sum(float(Fraction(c)) * np.exp(2j * np.pi * t / m)
                        for t, c in enumerate(comp))
                    for comp in witness["vector"]])
    e_np = np.array([[float(x) for x in row] for row in flipped])
    val = -1j * (vec @ e_np @ np.conj(vec))
    assert abs(val.imag) < 1e-9
    assert val.real <= 1e-9


def test_verify_rejects_non_alternating():
    rep = gaussian_action()
    with pytest.raises(RelationIFails):
        verify_polarization([[1, 0], [0, 1]], rep=rep,
                            j_matrix=[[0.0, -1.0], [1.0, 0.0]])


def test_verify_rejects_rosati_violation():
    # Z4 acting as J (+) identity; pair the blocks to break the centre
    g = cyclic(4)
    gen = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    gen_idx = next(x for x in range(4) if g.element_order[x] == 4)
    rep = IntegralRepresentation.from_generators(g, [gen_idx], [gen])
    e = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    j = [[0.0, -1.0, 0, 0], [1.0, 0.0, 0, 0], [0, 0, 0.0, -1.0], [0, 0, 1.0, 0.0]]
    with pytest.raises((RosatiFails, NotPositiveDefinite, RelationIFails)):
        verify_polarization(e, rep=rep, j_matrix=j)


def test_numeric_verification_pathway():
    rep = gaussian_action()
    cert = verify_polarization([[0, 1], [-1, 0]], rep=rep,
                               j_matrix=[[0.0, -1.0], [1.0, 0.0]])
    assert cert.mode == "numeric"
    assert cert.relation_i["residual"] <= 1e-8
    assert cert.relation_ii["min_eigenvalue_lower_bound"] > Fraction(1, 10 ** 6)


def test_basis_independence_of_assembly():
    # a different greedy order for the F-module basis produces a different
    # lattice form that still passes the full certificate
    from rigidtori.fixtures import gaussian_action as _ga
    from rigidtori.hodge import centre_action_matrices, f_module_basis
    from rigidtori.polarize import _subfield_action_matrices, find_zeta, \
        _block_diag, _primitive_integral
    from rigidtori import linalg as la

    rep0 = _ga()
    mats = []
    for m in rep0.matrices:
        big = [[0] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                big[i][j] = m[i][j]
                big[2 + i][2 + j] = m[i][j]
        mats.append(big)
    rep = IntegralRepresentation(rep0.group, mats)
    table = character_table(rep.group)
    decomp = galois_orbits(table)
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    spec = enumerate_rigid_types(decomp, mults)[0]
    st = exact_structure_from_spec(rep, spec)
    centre_mats = centre_action_matrices(rep)
    active = next(i for i, s in enumerate(spec.summands)
                  if s.multiplicity > 0)
    s = spec.summands[active]
    orbit = decomp.orbits[active]
    image = pieces[active][1]
    tau = s.tau_dict()
    designated = [a for a in orbit.field_spec.coset_reps() if tau[a] > 0]
    zeta = find_zeta(orbit.field_spec, designated)
    basis_mats = _subfield_action_matrices(rep, decomp, active, centre_mats)
    block = trace_form(orbit.field_spec, zeta, list(orbit.field_spec.basis))
    mixed = [[a + 2 * b for a, b in zip(image[0], image[2])],
             image[1], image[2], image[3]]
    forms = []
    for ordering in (list(image), mixed):
        gens, _ = f_module_basis(ordering, centre_mats)
        columns = []
        blocks = []
        for v in gens:
            for mat in basis_mats:
                columns.append(la.mat_vec(
                    [[Fraction(x) for x in row] for row in mat],
                    list(map(Fraction, v))))
            blocks.append(block)
        w = [[columns[j][i] for j in range(4)] for i in range(4)]
        w_inv = la.inverse(w)
        e = la.mat_mul(la.transpose(w_inv),
                       la.mat_mul(_block_diag(blocks), w_inv))
        e = _primitive_integral(e)
        cert = verify_polarization(e, structure=st, rep=rep)
        assert cert.relation_i["ok"] and cert.relation_ii["ok"]
        forms.append(tuple(tuple(row) for row in e))
    assert forms[0] != forms[1]  # the greedy order genuinely changed E


def test_symbolic_positivity_matches_float_eigenvalues():
    # the exact Hermitian-pivot verdict agrees with a floating eigenvalue
    # computation of -i U^T E conj(U) on random rigid fixtures
    import numpy as np
    import random as _random
    from rigidtori.fixtures import random_hodge_fixture, small_groups
    from rigidtori.hodge import rigidity_by_character, spec_from_character
    rng = _random.Random(31337)
    groups = small_groups()
    checked = 0
    while checked < 4:
        rep, st = random_hodge_fixture(rng, groups=groups)
        chi = st.hodge_character()
        if not rigidity_by_character(chi, chi.table).is_rigid:
            continue
        form = assemble_polarization(rep, spec=spec_from_character(chi))
        e_np = np.array([[float(x) for x in row] for row in form.matrix])
        m = st.field.m
        cols = [[sum(float(c) * np.exp(2j * np.pi * t / m)
                     for t, c in enumerate(x.coeffs)) for x in col]
                for col in st.u_columns]
        u = np.array(cols).T
        herm = -1j * (u.T @ e_np @ np.conj(u))
        herm = (herm + np.conj(herm.T)) / 2
        assert float(np.min(np.linalg.eigvalsh(herm))) > 1e-9
        with pytest.raises(NotPositiveDefinite):
            verify_polarization([[-x for x in row] for row in form.matrix],
                                structure=st, rep=rep)
        checked += 1


def test_polarization_exists_qi():
    cert = polarization_exists((1, 0, 1), (0,))
    assert cert.exists
    # the witness is a positive multiple of i at the designated root
    assert cert.witness_signs[0] == 1


def test_polarization_exists_phi5():
    F_coeffs = (1, 1, 1, 1, 1)
    from rigidtori.polyfields import PolynomialField
    F = PolynomialField(F_coeffs)
    designated = tuple(p[0] for p in F.pairs)
    cert = polarization_exists(F_coeffs, designated)
    assert cert.exists
    for i in designated:
        assert cert.witness_signs[i] == 1


def test_polarization_exists_non_cm_quartic():
    from rigidtori.polyfields import PolynomialField
    F = PolynomialField(NON_CM_QUARTIC)
    for designated in itertools.product(*[p for p in F.pairs]):
        cert = polarization_exists(NON_CM_QUARTIC, designated)
        assert cert.verdict == "infeasible"
        assert cert.obstruction["reason"] == "imaginary-constraint space is zero"
        assert cert.obstruction["constraint_rank"] == 4


def test_polarization_exists_x4_plus_2():
    # non-CM field with a CM subfield: feasibility depends on the alignment
    # of the designated set with the subfield's conjugate pairs
    from rigidtori.polyfields import PolynomialField
    F = PolynomialField((2, 0, 0, 0, 1))
    verdicts = {}
    for designated in itertools.product(*[p for p in F.pairs]):
        cert = polarization_exists((2, 0, 0, 0, 1), designated)
        verdicts[designated] = cert.exists
    assert sorted(verdicts.values()) == [False, False, True, True]


def test_polarization_exists_rejects_bad_inputs():
    with pytest.raises(ReduciblePolynomial):
        polarization_exists((1, 2, 1), (0,))  # (x+1)^2
    with pytest.raises(RealEmbeddingPresent):
        polarization_exists((-2, 0, 1), (0,))  # x^2 - 2
    with pytest.raises(ValueError):
        polarization_exists((1, 0, 1), (0, 1))  # both roots designated
