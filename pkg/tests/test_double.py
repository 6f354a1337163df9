import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from lietriad import linalg as la
from lietriad.classify import triad_system
from lietriad.double import (
    DoubleSatakeDiagram,
    DoubleSigmaSystem,
    canonical_diagram,
    class_order,
    class_rank,
    conjugate,
    core_data,
    double_satake,
    double_satake_isomorphic,
    equivalent,
    from_double_satake,
    is_canonical_wrt,
    make_double,
    quasi_canonicalize,
    weyl_max_rank,
)
from lietriad.rootsys import (
    CartanType,
    OrthoMap,
    WeylCapExceeded,
    build_root_system,
    compose,
    diagram_permutation,
)
from lietriad.sigma import NotSigmaFundamental, SatakeDiagram, fixed_space

from helpers import random_twist, random_weyl

D4 = CartanType("D", 4)


def ortho(rows):
    return OrthoMap(la.as_matrix(rows))


BDI_1_7 = ortho([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
DIII = ortho([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_worked_example_rank_and_order():
    rs = build_root_system("D4")
    ds = make_double(rs, BDI_1_7, DIII)
    assert class_rank(ds) == 0
    assert class_order(ds) == 4
    assert weyl_max_rank(ds) == 0
    dd = canonical_diagram(ds)
    assert dd.s1 == SatakeDiagram(D4, (1, 2, 3))
    assert dd.s2.black == (0, 2) or dd.s2.black == (0, 3)


def test_longest_element_makes_a_pair_conjugate():
    rs = build_root_system("D4")
    # -1 is in W(D4), so σ and w0 σ w0 agree and the order collapses to 1
    w0 = tuple(rs.neg[i] for i in range(len(rs.roots)))
    ss = make_double(rs, BDI_1_7, BDI_1_7).sigma1
    ds = DoubleSigmaSystem(rs, ss, conjugate(ss, w0))
    can, pi, w = quasi_canonicalize(ds)
    assert can.sigma2 == can.sigma1
    assert is_canonical_wrt(can, pi)
    assert class_order(ds) == 1
    assert class_rank(ds) == 1


def test_quasi_canonical_output_is_jointly_fundamental():
    rs = build_root_system("D4")
    rng = random.Random(5)
    ds = make_double(rs, BDI_1_7, DIII)
    ds = DoubleSigmaSystem(rs, ds.sigma1, conjugate(ds.sigma2, random_weyl(rs, rng)))
    can, pi, w = quasi_canonicalize(ds)
    assert is_canonical_wrt(can, pi)
    assert can.sigma2.sigma == w @ ds.sigma2.sigma @ w.inverse()
    assert can.sigma1 == ds.sigma1


def test_double_satake_requires_a_joint_basis():
    rs = build_root_system("D4")
    ds = make_double(rs, BDI_1_7, DIII)
    candidates = [tuple(rs.word_permutation([k])[i] for i in rs.simple) for k in range(4)]
    bad = [b for b in candidates if not is_canonical_wrt(ds, b)]
    assert bad
    with pytest.raises(NotSigmaFundamental):
        double_satake(ds, bad[0])


def test_core_of_triality_twisted_pair():
    ds = triad_system("so8", "so3+so5", "so3+so5", "kappa")
    assert class_rank(ds) == 2 and class_order(ds) == 3
    core = core_data(ds)
    assert core.rank == 2
    assert core.pi0 == ()
    assert core.core == (1, 2)
    assert core.independent
    # pr(α3) = (α1 + α3 + α4)/3 on the jointly fundamental system
    assert core.pr_coords[2] == (Q(1, 3), 0, Q(1, 3), Q(1, 3))


def test_core_covers_the_complement_of_pi0():
    for twist in ("id", "kappa"):
        ds = triad_system("so8", "so3+so5", "so3+so5", twist)
        core = core_data(ds)
        dd = canonical_diagram(ds)
        rest = {i for i in range(4) if i not in core.pi0}
        covered = {x for i in core.core for x in (i, dd.s1.p[i], dd.s2.p[i])}
        assert covered >= rest
        assert all(la.is_zero(core.pr_coords[i]) for i in core.pi0)


def test_weyl_max_rank_of_twisted_pair():
    ds = triad_system("so8", "so3+so5", "so3+so5", "kappa")
    assert weyl_max_rank(ds) == 2
    with pytest.raises(WeylCapExceeded):
        weyl_max_rank(ds, cap=100)


def test_double_diagram_json_round_trip():
    dd = DoubleSatakeDiagram(SatakeDiagram(D4, (1, 2, 3)), SatakeDiagram(D4, (0, 2)))
    data = dd.to_json()
    assert data == {"type": "D", "rank": 4, "s1": {"black": [1, 2, 3], "arrows": []},
                    "s2": {"black": [0, 2], "arrows": []}}
    assert DoubleSatakeDiagram.from_json(data) == dd
    with pytest.raises(ValueError):
        DoubleSatakeDiagram(SatakeDiagram(D4, ()), SatakeDiagram(CartanType("A", 4), ()))


def test_from_double_satake_round_trip():
    dd = DoubleSatakeDiagram(SatakeDiagram(D4, (), ((2, 3),)), SatakeDiagram(D4, (), ((0, 2),)))
    ds = from_double_satake(dd)
    assert is_canonical_wrt(ds, ds.rs.simple)
    assert double_satake(ds, ds.rs.simple) == dd
    assert double_satake_isomorphic(canonical_diagram(ds), dd) is not None


def test_twisted_and_untwisted_pairs_differ():
    a = triad_system("so8", "so3+so5", "so3+so5", "id")
    b = triad_system("so8", "so3+so5", "so3+so5", "kappa")
    assert not equivalent(a, b)
    # κ² lands in the same class as κ
    s = SatakeDiagram(D4, (), ((2, 3),))
    c = from_double_satake(DoubleSatakeDiagram(s, s.act((2, 1, 3, 0))))
    assert equivalent(b, c)
    assert not equivalent(a, c)


# -- properties ---------------------------------------------------------------------

CASES = [
    ("so8", "so3+so5", "so3+so5", "kappa"),
    ("so8", "so2+so6", "so3+so5", "kappa"),
    ("so8", "so1+so7", "u4", "id"),
    ("su5", "so5", "s(u2+u3)", "id"),
    ("so12", "u6", "u6", "tau"),
    ("e6", "sp4", "su6+su2", "id"),
    ("f4", "sp3+su2", "so9", "id"),
    ("g2", "su2+su2", "su2+su2", "id"),
]


@given(st.sampled_from(CASES), st.integers(0, 10**6))
def test_invariants_survive_random_twists(case, seed):
    ds = triad_system(*case)
    other = random_twist(ds, random.Random(seed))
    assert equivalent(ds, other)
    assert class_rank(other) == class_rank(ds)
    assert class_order(other) == class_order(ds)


@given(st.sampled_from(CASES[:5]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_equivalence_is_symmetric_and_transitive(case, s1, s2):
    ds = triad_system(*case)
    a = random_twist(ds, random.Random(s1))
    b = random_twist(a, random.Random(s2))
    assert equivalent(a, ds) and equivalent(ds, a)
    assert equivalent(ds, b)


@given(st.integers(0, 10**6))
def test_diagram_twist_alone_preserves_class(seed):
    ds = triad_system("so8", "so3+so5", "so3+so5", "kappa")
    rs = ds.rs
    rng = random.Random(seed)
    phi = compose(random_weyl(rs, rng), diagram_permutation(rs, (0, 1, 3, 2)))
    moved = DoubleSigmaSystem(rs, conjugate(ds.sigma1, phi), conjugate(ds.sigma2, phi))
    assert equivalent(ds, moved)
    assert len(fixed_space(moved.sigma1)) == len(fixed_space(ds.sigma1))
