import random
from fractions import Fraction

import numpy as np
import pytest

from rigidtori.characters import character_table, galois_orbits
from rigidtori.cyclotomic import CyclotomicField
from rigidtori.fixtures import (cyclic, eisenstein_action, gaussian_action,
                                integral_model, quaternion_8,
                                random_hodge_fixture, regular_representation,
                                small_groups, symmetric_3, trivial_action)
from rigidtori.hodge import (BRUTE_FORCE_RANK_CAP, ExactHodgeStructure,
                             HSViolation, InconsistentCharacter,
                             IntegralRepresentation, InvalidRepresentation,
                             RoundingFailure, SummandType, SymbolicHodgeSpec,
                             brute_force_hom_dimension, centre_action_matrices,
                             enumerate_rigid_types, exact_structure_from_spec,
                             f_module_basis, hodge_character_from_numeric,
                             isotypic_split, rigidity_by_centre,
                             rigidity_by_character, spec_from_character)
from rigidtori import linalg


def full_hodge_spec(rep, tau_builder):
    table = character_table(rep.group)
    decomp = galois_orbits(table)
    pieces = isotypic_split(rep, decomp)
    summands = []
    for j, orbit in enumerate(decomp.orbits):
        fs = orbit.field_spec
        mult = len(pieces[j][1]) // fs.degree
        summands.append(SummandType(j, mult, tau_builder(j, orbit, mult)))
    return SymbolicHodgeSpec(decomposition=decomp, summands=tuple(summands))


def test_representation_validation():
    g = cyclic(2)
    with pytest.raises(InvalidRepresentation):
        IntegralRepresentation(g, [[[1, 0], [0, 1]], [[1, 1], [0, 1]]])
    with pytest.raises(InvalidRepresentation):
        IntegralRepresentation(g, [[[1, 0], [0, 1]], [[2, 0], [0, 1]]])


def test_generator_expansion_matches_elements():
    rep = gaussian_action()
    g = rep.group
    j = [[0, -1], [1, 0]]
    gen = next(x for x in range(4) if g.element_order[x] == 4
               and rep.matrices[x] == tuple(map(tuple, j)))
    assert rep.matrices[0] == ((1, 0), (0, 1))


def test_hodge_character_trivial_group():
    rep = trivial_action(4)
    chi = hodge_character_from_numeric(
        rep, [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert chi.values[0].as_rational() == 2
    assert chi.n == 2


def test_hodge_character_gaussian_bridge():
    rep = gaussian_action()
    j = [[0.0, -1.0], [1.0, 0.0]]
    chi = hodge_character_from_numeric(rep, j)
    table = chi.table
    z = table.field.zeta()
    # with J = rho(g), the group acts on V^{1,0} as multiplication by i
    gen = next(x for x in range(4) if rep.group.element_order[x] == 4
               and rep.matrices[x] == ((0, -1), (1, 0)))
    assert chi.value_at_element(gen) == z
    chi.check_hodge_symmetry(rep)


def test_hodge_symmetry_on_random_fixtures():
    rng = random.Random(11)
    groups = small_groups()
    for _ in range(5):
        rep, st = random_hodge_fixture(rng, groups=groups)
        chi = st.hodge_character()
        chi.check_hodge_symmetry(rep)


def test_rounding_failure_on_noninvariant_j():
    rep = gaussian_action()
    bad_j = [[0.0, -1.0], [1.0, 0.3]]
    with pytest.raises(RoundingFailure):
        hodge_character_from_numeric(rep, bad_j)


def test_rigidity_trivial_group_is_n_squared():
    for n in (1, 2, 3):
        rep = trivial_action(2 * n)
        table = character_table(rep.group)
        F = table.field
        chi_vals = (F.from_rational(n),)
        from rigidtori.hodge import HodgeCharacter
        chi = HodgeCharacter(table=table, values=chi_vals)
        report = rigidity_by_character(chi, table)
        assert report.hom_dimension == n * n
        assert not report.is_rigid


def test_rigidity_gaussian_is_rigid():
    rep = gaussian_action()
    chi = hodge_character_from_numeric(rep, [[0.0, -1.0], [1.0, 0.0]])
    report = rigidity_by_character(chi)
    assert report.hom_dimension == 0
    assert report.is_rigid
    assert all(row[4] == 0 for row in report.tau_rows)


def test_rigidity_z2_minus_one():
    g = cyclic(2)
    rep = IntegralRepresentation(g, [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]])
    table = character_table(g)
    from rigidtori.hodge import HodgeCharacter
    F = table.field
    # chi10(e) = 1, chi10(g) = -1
    vals = tuple(F.from_rational(1 if table.classes.representatives[k] == 0
                                 else -1)
                 for k in range(table.size))
    chi = HodgeCharacter(table=table, values=vals)
    report = rigidity_by_character(chi, table)
    assert report.hom_dimension == 1
    assert not report.is_rigid


def test_inconsistent_character_rejected():
    table = character_table(cyclic(2))
    F = table.field
    from rigidtori.hodge import HodgeCharacter
    vals = tuple(F.from_rational(Fraction(1, 2)) for _ in range(2))
    with pytest.raises(InconsistentCharacter):
        rigidity_by_character(HodgeCharacter(table=table, values=vals), table)


def test_rigidity_by_centre_examples():
    # Q(i) with one-sided tau is rigid
    rep = gaussian_action()
    spec = full_hodge_spec(rep, lambda j, orbit, mult: tuple(
        (a, (mult if i == 0 else 0))
        for i, a in enumerate(orbit.field_spec.coset_reps())))
    report = rigidity_by_centre(spec)
    assert report.is_rigid
    # totally real active is never rigid
    rep2 = trivial_action(2)
    spec2 = full_hodge_spec(rep2, lambda j, orbit, mult: tuple(
        (a, mult // 2) for a in orbit.field_spec.coset_reps()))
    assert not rigidity_by_centre(spec2).is_rigid


def test_hs_violation_detected():
    rep = gaussian_action()
    with pytest.raises(HSViolation):
        spec = full_hodge_spec(rep, lambda j, orbit, mult: tuple(
            (a, mult) for a in orbit.field_spec.coset_reps()))
        rigidity_by_centre(spec)


def test_isotypic_projectors_properties():
    for build in (gaussian_action, eisenstein_action,
                  lambda: regular_representation(cyclic(3)),
                  lambda: regular_representation(symmetric_3())):
        rep = build()
        table = character_table(rep.group)
        decomp = galois_orbits(table)
        pieces = isotypic_split(rep, decomp)
        n2 = rep.rank
        total = [[Fraction(0)] * n2 for _ in range(n2)]
        for idx, (p, image) in enumerate(pieces):
            assert linalg.mat_mul(p, p) == p
            assert len(image) == linalg.rank(p)
            total = linalg.mat_add(total, p)
            for p2, _ in pieces[idx + 1:]:
                prod = linalg.mat_mul(p, p2)
                assert all(all(x == 0 for x in row) for row in prod)
        assert total == linalg.identity(n2)


def test_isotypic_split_gaussian_single_summand():
    rep = gaussian_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    ranks = {decomp.orbits[j].tag: len(img)
             for j, (p, img) in enumerate(pieces) if img}
    assert ranks == {"CM": 2}


def test_isotypic_split_regular_z3():
    rep = regular_representation(cyclic(3))
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    by_tag = sorted((decomp.orbits[j].tag, len(img))
                    for j, (p, img) in enumerate(pieces))
    assert by_tag == [("CM", 2), ("TotallyReal", 1)]


def test_f_module_basis_dimensions():
    # regular rep of Z4: CM summand has rank 2 over Q, one copy over Q(i)
    rep = regular_representation(cyclic(4))
    table = character_table(rep.group)
    decomp = galois_orbits(table)
    pieces = isotypic_split(rep, decomp)
    centre_mats = centre_action_matrices(rep)
    cm_index = next(j for j, o in enumerate(decomp.orbits) if o.tag == "CM")
    gens, orbits = f_module_basis(pieces[cm_index][1], centre_mats)
    assert len(gens) == 1
    assert len(orbits[0]) == 2
    # doubled copy: two generators with independent orbits
    from rigidtori.fixtures import _double_rep
    rep2 = _double_rep(rep)
    pieces2 = isotypic_split(rep2, decomp)
    centre2 = centre_action_matrices(rep2)
    gens2, orbits2 = f_module_basis(pieces2[cm_index][1], centre2)
    assert len(gens2) == 2
    combined = [v for orb in orbits2 for v in orb]
    assert linalg.rank(combined) == 4


def test_enumerate_rigid_types_counts():
    # Q(i), multiplicity 1 -> 2 types
    rep = gaussian_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    assert len(enumerate_rigid_types(decomp, mults)) == 2
    # Q(zeta5), multiplicity 1 -> 4 types
    reg5 = regular_representation(cyclic(5))
    decomp5 = galois_orbits(character_table(cyclic(5)))
    pieces5 = isotypic_split(reg5, decomp5)
    cm = next(j for j, o in enumerate(decomp5.orbits) if o.tag == "CM")
    model, _ = integral_model(reg5, pieces5[cm][1])
    pieces_model = isotypic_split(model, decomp5)
    mults5 = [len(img) // o.field_spec.degree
              for (p, img), o in zip(pieces_model, decomp5.orbits)]
    assert mults5[cm] == 1 and sum(mults5) == 1
    assert len(enumerate_rigid_types(decomp5, mults5)) == 4
    # any active totally real field -> no rigid types
    decomp_s3 = galois_orbits(character_table(symmetric_3()))
    assert enumerate_rigid_types(decomp_s3, [1, 0, 0]) == []


def test_enumerate_validates_all_types():
    decomp = galois_orbits(character_table(cyclic(8)))
    mults = [1 if o.tag == "CM" else 0 for o in decomp.orbits]
    specs = enumerate_rigid_types(decomp, mults)
    for sp in specs:
        assert rigidity_by_centre(sp).is_rigid
    expected = 1
    for o, m in zip(decomp.orbits, mults):
        if m:
            expected *= 2 ** (o.field_spec.degree // 2)
    assert len(specs) == expected


def test_brute_force_trivial_rank2():
    rep = trivial_action(2)
    spec = full_hodge_spec(rep, lambda j, orbit, mult: tuple(
        (a, mult // 2) for a in orbit.field_spec.coset_reps()))
    st = exact_structure_from_spec(rep, spec)
    assert brute_force_hom_dimension(rep, st) == 1


def test_brute_force_z3_rotation_rigid():
    rep = eisenstein_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    spec = enumerate_rigid_types(decomp, mults)[0]
    st = exact_structure_from_spec(rep, spec)
    assert brute_force_hom_dimension(rep, st) == 0


def test_brute_force_rank_cap():
    g = cyclic(1)
    n = BRUTE_FORCE_RANK_CAP + 2
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rep = IntegralRepresentation(g, [ident], validate=False)
    K = CyclotomicField(4)
    z = K.zeta()
    cols = []
    for k in range(n // 2):
        col = [K.zero()] * n
        col[k] = K.one()
        col[n // 2 + k] = z
        cols.append(col)
    st = ExactHodgeStructure(rep, K, cols)
    with pytest.raises(InvalidRepresentation):
        brute_force_hom_dimension(rep, st)


def test_brute_force_cross_checks_chi10():
    rep = gaussian_action()
    decomp = galois_orbits(character_table(rep.group))
    pieces = isotypic_split(rep, decomp)
    mults = [len(img) // o.field_spec.degree
             for (p, img), o in zip(pieces, decomp.orbits)]
    specs = enumerate_rigid_types(decomp, mults)
    st0 = exact_structure_from_spec(rep, specs[0])
    st1 = exact_structure_from_spec(rep, specs[1])
    chi0 = st0.hodge_character()
    with pytest.raises(InconsistentCharacter):
        brute_force_hom_dimension(rep, st1, chi0)


def test_exact_structure_matches_numeric_character():
    rng = random.Random(13)
    groups = small_groups()
    for _ in range(4):
        rep, st = random_hodge_fixture(rng, groups=groups)
        chi_exact = st.hodge_character()
        j = st.j_matrix_float()
        chi_num = hodge_character_from_numeric(rep, j)
        assert tuple(chi_num.values) == tuple(chi_exact.values)


def test_spec_from_character_roundtrip():
    rep = gaussian_action()
    chi = hodge_character_from_numeric(rep, [[0.0, -1.0], [1.0, 0.0]])
    spec = spec_from_character(chi)
    spec.validate_hs()
    assert rigidity_by_centre(spec).is_rigid
    st = exact_structure_from_spec(rep, spec)
    assert tuple(st.hodge_character().values) == tuple(chi.values)


def test_oracle_agreement_small_sample():
    rng = random.Random(17)
    groups = small_groups()
    for _ in range(10):
        rep, st = random_hodge_fixture(rng, groups=groups)
        chi = st.hodge_character()
        r1 = rigidity_by_character(chi, chi.table)
        r2 = rigidity_by_centre(spec_from_character(chi))
        d3 = brute_force_hom_dimension(rep, st, chi)
        assert r1.is_rigid == r2.is_rigid == (d3 == 0)
        assert r1.hom_dimension == d3
