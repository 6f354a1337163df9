import itertools
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from lietriad import linalg as la
from lietriad.rootsys import CartanType, OrthoMap, build_root_system, reflection
from lietriad.sigma import (
    InadmissibleDiagram,
    NotInvolutive,
    NotIsometric,
    NotNormal,
    NotRootPreserving,
    NotSigmaFundamental,
    SatakeDiagram,
    classify_root_set,
    delta0,
    find_sigma_fundamental,
    is_admissible,
    is_normal,
    is_sigma_fundamental,
    make_sigma,
    normality_witness,
    reconstruct_sigma,
    restricted_roots,
    satake_diagram,
    satake_isomorphic,
    sigma_rank,
)

from helpers import random_weyl
from lietriad.double import conjugate

D4 = CartanType("D", 4)


def diag(*xs):
    n = len(xs)
    return OrthoMap(tuple(tuple(Q(xs[i]) if i == j else Q(0) for j in range(n)) for i in range(n)))


def test_validation_errors_are_distinct():
    a2 = build_root_system("A2")
    s1 = reflection(a2, a2.roots[0])
    s2 = reflection(a2, a2.roots[1])
    with pytest.raises(NotInvolutive):
        make_sigma(a2, s1 @ s2)  # rotation of order 3
    b2 = build_root_system("B2")
    with pytest.raises(NotIsometric):
        make_sigma(b2, OrthoMap(la.as_matrix([[1, 1], [0, -1]])))
    # reflection in the line through (2, 1) is an involutive isometry
    r = OrthoMap(tuple(tuple(Q(int(i == j)) - Q(2 * a * b, 5) for j, b in enumerate((2, 1)))
                       for i, a in enumerate((2, 1))))
    with pytest.raises(NotRootPreserving):
        make_sigma(b2, r)


def test_minus_identity_is_a_sigma_system():
    a2 = build_root_system("A2")
    ss = make_sigma(a2, diag(-1, -1, -1))
    assert is_normal(ss)
    assert len(delta0(ss)) == 6


def test_non_normal_witness():
    """For σ = w_{α1} on A2, σ(α2) − α2 = α1 is a root."""
    a2 = build_root_system("A2")
    ss = make_sigma(a2, reflection(a2, a2.roots[0]))
    assert not is_normal(ss)
    assert normality_witness(ss) == 1
    with pytest.raises(NotNormal):
        find_sigma_fundamental(ss)


def test_non_normal_search_in_small_automorphism_groups():
    # in a simply laced system of rank >= 2 every root has a neighbour at 120 degrees,
    # so a root reflection is never normal
    for t in ("A3", "D4", "E6"):
        rs = build_root_system(t)
        for k in range(rs.npos):
            ss = make_sigma(rs, reflection(rs, rs.roots[k]))
            assert not is_normal(ss)
    b2 = build_root_system("B2")
    short = b2.root_index(tuple(map(Q, (0, 1))))
    assert is_normal(make_sigma(b2, reflection(b2, b2.roots[short])))


def test_bdi_1_7_in_d4():
    rs = build_root_system("D4")
    ss = make_sigma(rs, diag(1, -1, -1, -1))
    assert is_normal(ss)
    assert len(delta0(ss)) == 12  # roots ±e_i±e_j with i, j >= 2
    pi = find_sigma_fundamental(ss)
    assert is_sigma_fundamental(ss, pi) and is_sigma_fundamental(ss, rs.simple)
    sd = satake_diagram(ss, pi)
    assert sd.black == (1, 2, 3) and sd.arrows == ()
    rr = restricted_roots(ss)
    assert rr.type == "A1" and rr.multiplicities == (6, 6)


def test_bdi_3_5_in_d4():
    rs = build_root_system("D4")
    ss = make_sigma(rs, diag(1, 1, 1, -1))
    sd = satake_diagram(ss, rs.simple)
    assert sd == SatakeDiagram(D4, (), ((2, 3),))
    rr = restricted_roots(ss)
    assert rr.type == "B3"
    assert rr.multiplicity((1, 0, 0, 0)) == 2  # short, from e1 ± e4
    assert rr.multiplicity((1, 1, 0, 0)) == 1
    assert reconstruct_sigma(sd).sigma == ss.sigma


def test_diii_in_d4_keeps_its_diagram():
    sd = SatakeDiagram(D4, (0, 2))
    ss = reconstruct_sigma(sd)
    # σ swaps e1 <-> e2 and e3 <-> e4
    assert ss.sigma.matrix == la.as_matrix(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    pi = find_sigma_fundamental(ss)
    assert satake_diagram(ss, pi) == sd


def test_non_reduced_restricted_roots():
    rs = build_root_system("A4")
    # s(u(1)+u(4)): arrow alpha_1 <-> alpha_4, black middle
    ss = reconstruct_sigma(SatakeDiagram(rs.ctype, (1, 2), ((0, 3),)))
    assert restricted_roots(ss).type == "BC1"


def test_satake_diagram_needs_sigma_fundamental_basis():
    rs = build_root_system("D4")
    ss = make_sigma(rs, diag(1, -1, -1, -1))
    other = tuple(rs.neg[i] for i in rs.simple)
    # -Π is a fundamental system but the positivity flips for roots outside Δ₀
    assert not is_sigma_fundamental(ss, other) or satake_diagram(ss, other)
    bad = rs.word_permutation([0])
    basis = tuple(bad[i] for i in rs.simple)
    if not is_sigma_fundamental(ss, basis):
        with pytest.raises(NotSigmaFundamental):
            satake_diagram(ss, basis)


def test_inadmissible_diagrams():
    assert not is_admissible(SatakeDiagram(D4, (3,)))
    assert not is_admissible(SatakeDiagram(D4, (0,)))
    with pytest.raises(InadmissibleDiagram):
        reconstruct_sigma(SatakeDiagram(CartanType("A", 3), (0,)))
    with pytest.raises(InadmissibleDiagram):
        SatakeDiagram(D4, (2,), ((2, 3),))
    with pytest.raises(InadmissibleDiagram):
        SatakeDiagram(D4, (), ((0, 1), (1, 2)))
    with pytest.raises(InadmissibleDiagram):
        SatakeDiagram(D4, (7,))


def test_satake_json_round_trip():
    sd = SatakeDiagram(D4, (1, 0), ((3, 2),))
    assert sd.black == (0, 1) and sd.arrows == ((2, 3),)
    data = sd.to_json()
    assert data == {"type": "D", "rank": 4, "black": [0, 1], "arrows": [[2, 3]]}
    assert SatakeDiagram.from_json(data) == sd


def test_cross_type_isomorphism():
    a3 = CartanType("A", 3)
    d3 = CartanType("D", 3)
    # sp(2) in su(4) and so(1)+so(5) in so(6)
    assert satake_isomorphic(SatakeDiagram(a3, (0, 2)), SatakeDiagram(d3, (1, 2))) is not None
    assert satake_isomorphic(SatakeDiagram(a3, (0, 2)), SatakeDiagram(d3, (0,))) is None
    b2, c2 = CartanType("B", 2), CartanType("C", 2)
    # long root of B2 is alpha_1, of C2 alpha_2
    assert satake_isomorphic(SatakeDiagram(b2, (1,)), SatakeDiagram(c2, (0,))) == (1, 0)
    assert satake_isomorphic(SatakeDiagram(b2, (1,)), SatakeDiagram(c2, (1,))) is None


def test_restricted_root_classifier():
    e = [tuple(Q(int(i == j)) for j in range(3)) for i in range(3)]
    bc = []
    for x in e:
        bc += [x, la.scale(-1, x), la.scale(2, x), la.scale(-2, x)]
    for a, b in itertools.combinations(e, 2):
        for s in (1, -1):
            for t in (1, -1):
                bc.append(la.add(la.scale(s, a), la.scale(t, b)))
    assert classify_root_set(bc) == "BC3"
    assert classify_root_set([]) == "0"


# -- properties ---------------------------------------------------------------------

def all_diagrams(ct):
    l = ct.rank
    for k in range(l + 1):
        for black in itertools.combinations(range(l), k):
            white = [i for i in range(l) if i not in black]
            yield SatakeDiagram(ct, black)
            for i, j in itertools.combinations(white, 2):
                yield SatakeDiagram(ct, black, ((i, j),))


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_reconstruction_round_trips_or_rejects(t):
    ct = CartanType.parse(t)
    admissible = 0
    for sd in all_diagrams(ct):
        try:
            ss = reconstruct_sigma(sd)
        except InadmissibleDiagram:
            continue
        admissible += 1
        assert is_normal(ss)
        assert satake_diagram(ss, find_sigma_fundamental(ss)) == sd
        assert sigma_rank(ss) == sd.real_rank()
    assert admissible > 0


@given(st.sampled_from([(D4, (1, 2, 3), ()), (D4, (0, 2), ()), (D4, (), ((2, 3),)),
                        (CartanType("E", 6), (2, 3, 4), ((0, 5),)),
                        (CartanType("A", 5), (0, 2, 4), ())]),
       st.integers(0, 10**6))
def test_diagram_is_invariant_under_weyl_conjugation(case, seed):
    ct, black, arrows = case
    sd = SatakeDiagram(ct, black, arrows)
    ss = reconstruct_sigma(sd)
    w = random_weyl(ss.rs, random.Random(seed))
    conj = conjugate(ss, w)
    assert is_normal(conj)
    pi = find_sigma_fundamental(conj)
    assert satake_diagram(conj, pi) == sd
    assert sigma_rank(conj) == sigma_rank(ss)
