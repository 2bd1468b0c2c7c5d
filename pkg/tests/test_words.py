import random
from itertools import product

import pytest

from coxweight.builtin_systems import builtin_system
from coxweight.errors import BudgetExceededError, FormatError
from coxweight.words import INF, CoxeterSystem, Element, parse_system


# --- independent oracles -----------------------------------------------------

def sym_perm_oracle(word, transpositions, n):
    """Multiply adjacent transpositions in the symmetric group S_n."""
    perm = list(range(n))
    for s in word:
        i = transpositions[s]
        # right multiplication by the transposition (i, i+1)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def dinf_oracle(word):
    """D-infinity as affine maps x -> a*x + b with s: -x and t: 2-x."""
    a, b = 1, 0
    for letter in word:
        if letter == "s":
            ra, rb = -1, 0
        else:
            ra, rb = -1, 2
        # compose: apply the new reflection after the accumulated map
        a, b = ra * a, ra * b + rb
    return a, b


# --- construction and validation ---------------------------------------------

def test_parse_dinf_description():
    system = parse_system(
        '{"generators": ["s", "t"],'
        ' "matrix": [[1, "inf"], ["inf", 1]]}')
    assert system.m("s", "t") == INF
    assert len(set(system.classes.values())) == 2


def test_parse_single_generator():
    system = parse_system({"generators": ["s"], "matrix": [[1]]})
    assert system.class_labels == ("t",)


def test_odd_edge_forces_conjugacy():
    with pytest.raises(FormatError, match="conjugate"):
        CoxeterSystem(["s", "t"], [[1, 3], [3, 1]],
                      {"s": "a", "t": "b"})


def test_matrix_validation():
    with pytest.raises(FormatError):
        CoxeterSystem(["s"], [[2]])
    with pytest.raises(FormatError):
        CoxeterSystem(["s", "t"], [[1, 3], [4, 1]])
    with pytest.raises(FormatError):
        CoxeterSystem(["s", "t"], [[1, 1], [1, 1]])


def test_b2_has_two_classes_a2_has_one():
    assert len(set(builtin_system("a2").classes.values())) == 1
    assert len(set(builtin_system("b2").classes.values())) == 2


# --- normal forms --------------------------------------------------------------

def test_involution_cancels():
    a2 = builtin_system("a2")
    assert a2.normal_form("s s") == Element(())


def test_braid_relation_identifies_words():
    a2 = builtin_system("a2")
    assert a2.normal_form("s t s") == a2.normal_form("t s t")


def test_a2_stst_reduces_to_ts():
    # oracle: multiply in S_3 and compare against all short words
    a2 = builtin_system("a2")
    trans = {"s": 0, "t": 1}
    target = sym_perm_oracle(["s", "t", "s", "t"], trans, 3)
    matches = [w for length in range(3)
               for w in product("st", repeat=length)
               if sym_perm_oracle(w, trans, 3) == target]
    shortest = min(matches, key=len)
    assert len(shortest) == 2
    e = a2.normal_form("s t s t")
    assert e.length == 2
    assert sym_perm_oracle(e.word, trans, 3) == target
    assert e.word == ("t", "s")


def test_normal_form_idempotent():
    h3 = builtin_system("h3")
    rng = random.Random(5)
    for _ in range(20):
        word = [rng.choice(h3.generators) for _ in range(rng.randint(0, 8))]
        e = h3.normal_form(word)
        assert h3.normal_form(e.word) == e


def test_normal_form_is_congruence():
    for name in ("a2", "b2", "h3", "dihedral-infinite", "pentagon"):
        system = builtin_system(name)
        rng = random.Random(hash(name) & 0xFFFF)
        for _ in range(12):
            u = [rng.choice(system.generators)
                 for _ in range(rng.randint(0, 8))]
            v = [rng.choice(system.generators)
                 for _ in range(rng.randint(0, 8))]
            eu, ev = system.normal_form(u), system.normal_form(v)
            assert system.normal_form(list(u) + list(v)) \
                == system.multiply(eu, ev)


def test_length_changes_by_one():
    for name in ("a2", "b3", "dihedral-infinite", "triangle-(3,3,3)"):
        system = builtin_system(name)
        rng = random.Random(17)
        for _ in range(15):
            w = system.normal_form(
                [rng.choice(system.generators)
                 for _ in range(rng.randint(0, 7))])
            for s in system.generators:
                ws = system.multiply(w, Element((s,)))
                assert abs(ws.length - w.length) == 1


# --- descent sets ----------------------------------------------------------------

def test_descents_identity_empty():
    assert builtin_system("a2").descent_set(Element(())) == frozenset()


def test_descents_longest_element_everything():
    a2 = builtin_system("a2")
    w0 = a2.normal_form("s t s")
    assert a2.descent_set(w0) == {"s", "t"}


def test_descents_dinf_st():
    # oracle: lengths of st, s, t, sts ... computed in the affine model
    dinf = builtin_system("dihedral-infinite")
    st = dinf.normal_form("s t")
    # l(st . t) = l(s) = 1 < 2, l(st . s) = l(sts) = 3 > 2
    by_len = {}
    for length in range(4):
        for w in product("st", repeat=length):
            key = dinf_oracle(w)
            by_len.setdefault(key, len(w))
    assert by_len[dinf_oracle("st")] == 2
    assert by_len[dinf_oracle("s")] == 1
    assert by_len[dinf_oracle("sts")] == 3
    assert dinf.descent_set(st) == {"t"}


def test_descents_always_spherical():
    battery = ("a2", "b3", "dihedral-infinite", "pentagon",
               "triangle-(3,3,3)")
    for name in battery:
        system = builtin_system(name)
        ball = system.enumerate_ball(6 if name != "pentagon" else 5)
        for level in ball.elements:
            for e in level:
                assert system.is_spherical(system.descent_set(e))


# --- enumeration -------------------------------------------------------------------

def test_ball_a2_exhaustive():
    a2 = builtin_system("a2")
    ball = a2.enumerate_ball(10)
    assert ball.histogram == (1, 2, 2, 1)
    assert ball.complete
    # cross-check with the permutation model
    trans = {"s": 0, "t": 1}
    seen = {}
    for length in range(8):
        for w in product("st", repeat=length):
            key = sym_perm_oracle(w, trans, 3)
            seen.setdefault(key, length)
    hist = [0, 0, 0, 0]
    for v in seen.values():
        hist[v] += 1
    assert tuple(hist) == ball.histogram


def test_ball_dinf():
    dinf = builtin_system("dihedral-infinite")
    ball = dinf.enumerate_ball(3)
    assert ball.histogram == (1, 2, 2, 2)
    assert not ball.complete
    seen = {}
    for length in range(6):
        for w in product("st", repeat=length):
            seen.setdefault(dinf_oracle(w), length)
    hist = [0] * 4
    for v in seen.values():
        if v <= 3:
            hist[v] += 1
    assert tuple(hist) == ball.histogram


def test_ball_radius_zero():
    assert builtin_system("h3").enumerate_ball(0).histogram == (1,)


def test_ball_histogram_independent_of_generator_order():
    base = CoxeterSystem(["a", "b", "c"],
                         [[1, 4, 2], [4, 1, 3], [2, 3, 1]])
    flipped = CoxeterSystem(["c", "b", "a"],
                            [[1, 3, 2], [3, 1, 4], [2, 4, 1]])
    assert base.enumerate_ball(9).histogram \
        == flipped.enumerate_ball(9).histogram


def test_budget_exceeded_carries_partial():
    dinf = builtin_system("dihedral-infinite")
    with pytest.raises(BudgetExceededError) as info:
        dinf.enumerate_ball(50, max_elements=8)
    err = info.value
    assert err.histogram[0] == 1
    assert err.completed_lengths >= 1
    assert err.histogram == tuple(
        len(level) for level in err.elements)


def test_finite_orders_match_classification_table():
    expected = {
        "a2": 6, "a3": 24, "b2": 8, "b3": 48, "h3": 120, "a1xa1": 4,
    }
    for name, order in expected.items():
        system = builtin_system(name)
        assert system.finite_order(system.generators) == order
        ball = system.enumerate_all()
        assert sum(ball.histogram) == order
        assert ball.complete


# --- spherical subsets ----------------------------------------------------------

def test_is_spherical_examples():
    a2 = builtin_system("a2")
    assert a2.is_spherical({"s", "t"})
    dinf = builtin_system("dihedral-infinite")
    assert not dinf.is_spherical({"s", "t"})
    h3 = builtin_system("h3")
    assert h3.is_spherical(h3.generators)
    assert sum(h3.enumerate_all().histogram) == 120


def test_affine_and_cycles_are_infinite():
    tri = builtin_system("triangle-(3,3,3)")
    assert not tri.is_spherical(tri.generators)
    # affine C2: 4-3-labelled path of length 3 is finite (B3), but 4-4 is not
    c2aff = CoxeterSystem(["a", "b", "c"],
                          [[1, 4, 2], [4, 1, 4], [2, 4, 1]])
    assert not c2aff.is_spherical({"a", "b", "c"})


def test_spherical_poset_dinf():
    dinf = builtin_system("dihedral-infinite")
    poset = dinf.spherical_subsets()
    assert sorted(tuple(sorted(T)) for T in poset) \
        == [(), ("s",), ("t",)]


def test_spherical_poset_a2():
    a2 = builtin_system("a2")
    assert len(a2.spherical_subsets()) == 4


def test_spherical_poset_product_dihedral():
    sq = builtin_system("product-dihedral-2")
    poset = sq.spherical_subsets()
    # empty set, 4 singletons, 4 commuting pairs
    assert len(poset) == 9
    assert len(poset.stratum(1)) == 4
    assert len(poset.stratum(2)) == 4


def test_dodecahedral_nerve_counts():
    system = builtin_system("dodecahedral")
    poset = system.spherical_subsets()
    assert [len(poset.stratum(i)) for i in range(4)] == [1, 12, 30, 20]
