import pytest

from nbalab import core
from nbalab.ideals import (
    Congruence,
    Multideal,
    all_congruences,
    all_homs_onto_generator,
    all_proper_multideals,
    all_ultramultideals,
    boolean_ideal_filter_view,
    congruence_generated,
    diagonal_congruence,
    extend_to_ultra,
    hom_of_ultra,
    ideal_closure,
    is_hom_onto_generator,
    is_prime,
    join_congruences,
    multideal_of,
    stone_embed,
    theta_of,
    total_congruence,
    ultra_of_hom,
    validate_multideal,
)

A32 = core.power_algebra(3, 2)
A23 = core.power_algebra(2, 3)


def idx(alg, el):
    return alg.index(el)


def test_congruence_canonical_blocks():
    c1 = Congruence(A32, (5, 5, 2, 2, 2, 9, 9, 9, 9))
    c2 = Congruence(A32, (0, 0, 1, 1, 1, 2, 2, 2, 2))
    assert c1 == c2
    assert c1.num_blocks == 3
    assert c1.block_of(0) == frozenset({0, 1})


def test_congruence_generated_principal():
    # merging two elements that differ at one point collapses that point
    th = congruence_generated(A32, [(idx(A32, (1, 1)), idx(A32, (2, 1)))])
    for a in range(9):
        for b in range(9):
            ea, eb = A32.elements()[a], A32.elements()[b]
            assert th.related(a, b) == (ea[1] == eb[1])
    assert th.is_compatible()


def test_congruence_counts():
    assert len(all_congruences(A32)) == 4
    assert len(all_congruences(A23)) == 8
    assert len(all_congruences(core.generator(3))) == 2


def test_congruence_lattice_structure():
    cons = all_congruences(A32)
    assert cons[0] == diagonal_congruence(A32)
    assert cons[-1] == total_congruence(A32)
    for th in cons:
        assert th.is_compatible()
    # the two point-kernels join to the total congruence
    mids = [th for th in cons if 1 < th.num_blocks < 9]
    assert len(mids) == 2
    assert join_congruences(A32, mids[0], mids[1]) == total_congruence(A32)


def test_multideal_of_congruence():
    th = congruence_generated(A32, [(idx(A32, (1, 1)), idx(A32, (2, 1)))])
    md = multideal_of(th)
    assert not md.degenerate
    # component k = class of e_k: elements with value k at the surviving point
    for k in range(1, 4):
        comp = {A32.elements()[x] for x in md.components[k - 1]}
        assert comp == {e for e in A32.elements() if e[1] == k}
    assert md.is_ultra  # the classes cover all of 3^2


def test_multideal_of_total_is_degenerate():
    md = multideal_of(total_congruence(A32))
    assert md.degenerate and md.warning == "total congruence"


def test_validate_multideal_proper():
    md = multideal_of(theta_of(multideal_of(
        congruence_generated(A32, [(idx(A32, (1, 1)), idx(A32, (2, 1)))]))))
    res = validate_multideal(A32, [sorted(c) for c in md.components])
    assert res.status == "proper"


def test_validate_multideal_minimum():
    comps = [[idx(A32, A32.constant(k))] for k in (1, 2, 3)]
    assert validate_multideal(A32, comps).status == "proper"


def test_validate_multideal_degenerate():
    comps = [[idx(A32, A32.constant(1)), idx(A32, A32.constant(2))],
             [idx(A32, A32.constant(2))], [idx(A32, A32.constant(3))]]
    res = validate_multideal(A32, comps)
    assert res.status == "degenerate"


def test_validate_multideal_m1_and_m2_failures():
    res = validate_multideal(A32, [[], [idx(A32, A32.constant(2))],
                                   [idx(A32, A32.constant(3))]])
    assert res.status == "invalid" and res.clause == "m1"
    # closing under m2 requires more than just the constants plus one element
    comps = [[idx(A32, A32.constant(1)), idx(A32, (1, 2))],
             [idx(A32, A32.constant(2))], [idx(A32, A32.constant(3))]]
    res = validate_multideal(A32, comps)
    assert res.status == "invalid" and res.clause in ("m2", "m3")
    assert res.witness is not None


def test_ideal_closure_matches_congruence_classes():
    seed = [[(1, 2)], [], []]
    md = ideal_closure(A32, seed)
    th = congruence_generated(A32, [(idx(A32, (1, 2)), idx(A32, (1, 1)))])
    assert md == multideal_of(th)
    assert validate_multideal(A32, [sorted(c) for c in md.components])


def test_ideal_closure_degenerate_seed():
    md = ideal_closure(A32, [[(2, 2)], [], []])  # e_2 into component 1
    assert md.degenerate


def test_bijection_round_trips():
    for alg in (A32, A23):
        for th in all_congruences(alg):
            if th.is_total:
                continue
            assert theta_of(multideal_of(th)) == th
        for md in all_proper_multideals(alg):
            assert multideal_of(theta_of(md)) == md


def test_ultramultideal_counts():
    assert len(all_ultramultideals(A32)) == 2
    assert len(all_ultramultideals(A23)) == 3
    assert len(all_ultramultideals(core.power_algebra(3, 3))) == 3
    assert len(all_ultramultideals(core.power_algebra(4, 2))) == 2


def test_ultra_hom_bijection():
    ultras = all_ultramultideals(A32)
    homs = all_homs_onto_generator(A32)
    assert len(ultras) == len(homs)
    assert sorted(hom_of_ultra(u) for u in ultras) == sorted(homs)
    for h in homs:
        u = ultra_of_hom(A32, h)
        assert u.is_ultra and hom_of_ultra(u) == h


def test_homs_are_the_point_evaluations():
    homs = all_homs_onto_generator(A32)
    expected = {tuple(e[p] for e in A32.elements()) for p in range(2)}
    assert set(homs) == expected
    for h in homs:
        assert is_hom_onto_generator(A32, h)
    assert not is_hom_onto_generator(A32, tuple([1] * 9))


def test_prime_iff_ultra():
    for md in all_proper_multideals(A32):
        assert is_prime(A32, md) == md.is_ultra


def test_extend_to_ultra():
    for md in all_proper_multideals(A32):
        u = extend_to_ultra(A32, md)
        assert u.is_ultra
        for k in range(3):
            assert md.components[k] <= u.components[k]


def test_stone_embedding_isomorphism():
    for alg in (A32, A23):
        emb = stone_embed(alg)
        assert emb.injective and emb.preserves_q() and emb.is_isomorphism
        assert emb.target.points == len(all_ultramultideals(alg))


def test_stone_embedding_on_proper_subalgebra():
    diag = core.subalgebra_closure(A32, [])
    emb = stone_embed(diag)
    assert emb.injective and emb.preserves_q()


def test_boolean_view_on_2_3():
    for md in all_proper_multideals(A23):
        i2, i1 = boolean_ideal_filter_view(A23, md)
        assert idx(A23, A23.constant(2)) in i2
        assert idx(A23, A23.constant(1)) in i1
    with pytest.raises(core.DimensionError):
        boolean_ideal_filter_view(A32, all_proper_multideals(A32)[0])
