"""Words, presentations, Heisenberg normal forms and integer linear algebra."""
import math
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from liftobs.heisenberg import (HeisenbergElement, X, Y, Z, heisenberg_multiply,
                                heisenberg_normal_form, word_matrix)
from liftobs.intmat import (IntMatrix, NotCoprimeError, SingularMatrixError, bezout_pair,
                            generator_change_matrix, matrix_commutator, smith_normal_form)
from liftobs.plane import RP3_A, RP3_B, RP3_C
from liftobs.words import (InvalidWordError, PresentationParseError, Word, abelianization,
                           baumslag_solitar, commutator, free_abelian_presentation,
                           parse_presentation, parse_word, reduce_word, surface_group)

letters = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3).filter(bool)), max_size=12)
heis = st.builds(HeisenbergElement, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
small_matrix = st.lists(st.lists(st.integers(-10, 10), min_size=4, max_size=4), min_size=4, max_size=4)


def expand(raw):
    out = []
    for g, e in raw:
        out += [(g, 1 if e > 0 else -1)] * abs(e)
    return out


# -- reduce_word --------------------------------------------------------------------

def test_reduce_cancels_to_empty():
    assert reduce_word([(0, 1), (0, -1)]) == Word()


def test_reduce_nested_cancellation():
    assert reduce_word([(0, 1), (1, 2), (1, -2), (0, 1)]).letters == ((0, 2),)


def test_reduce_keeps_reduced_word():
    assert reduce_word([(0, 1), (1, 1)]).letters == ((0, 1), (1, 1))


def test_unreduced_word_is_rejected():
    with pytest.raises(InvalidWordError):
        Word(((0, 1), (0, 1)))
    with pytest.raises(InvalidWordError):
        Word(((0, 0),))


@given(letters)
def test_reduced_form_invariants(raw):
    w = reduce_word(raw)
    assert all(e != 0 for _, e in w.letters)
    assert all(a[0] != b[0] for a, b in zip(w.letters, w.letters[1:]))
    assert reduce_word(w.letters) == w


@given(letters)
def test_reduction_preserves_the_group_element(raw):
    # the letter-by-letter stack reduction is an independent route
    stack = []
    for g, e in expand(raw):
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    assert reduce_word(raw).expand() == stack


@given(letters, letters)
def test_inverse_and_product(u_raw, v_raw):
    u, v = reduce_word(u_raw), reduce_word(v_raw)
    assert u * u.inverse() == Word()
    assert (u * v).inverse() == v.inverse() * u.inverse()


def test_parse_word_and_commutator_sugar():
    assert parse_word("[a,b]", ["a", "b"]) == commutator(Word.gen(0), Word.gen(1))
    assert parse_word("ab^-2a^3", ["a", "b"]).letters == ((0, 1), (1, -2), (0, 3))


def test_parse_error_reports_position():
    with pytest.raises(PresentationParseError) as err:
        parse_presentation("a,b; ab^x")
    assert err.value.position is not None


# -- Heisenberg ------------------------------------------------------------------------

def test_commutator_of_x_and_y_is_z():
    assert heisenberg_normal_form(parse_word("XYX^-1Y^-1", "XYZ")) == Z


def test_empty_word_is_identity():
    assert heisenberg_normal_form(Word()) == HeisenbergElement()


def test_yx_normal_form():
    # frozen from the matrix product Y·X, read back as X^a Y^b Z^c
    w = parse_word("YX", "XYZ")
    assert word_matrix(w) == IntMatrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert heisenberg_normal_form(w).as_tuple() == (1, 1, -1)


def test_multiply_examples():
    assert X * Y == HeisenbergElement(1, 1, 0)
    assert Y * X == HeisenbergElement(1, 1, -1)
    p = HeisenbergElement(2, -3, 5)
    assert p * HeisenbergElement() == p


def test_generator_index_out_of_range():
    with pytest.raises(InvalidWordError):
        heisenberg_normal_form(Word(((3, 1),)))


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([-1, 1])), max_size=12))
def test_normal_form_matches_matrix_oracle(raw):
    w = reduce_word(raw)
    assert heisenberg_normal_form(w).to_matrix() == word_matrix(w)


@given(heis, heis, heis)
def test_multiplication_is_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(heis, heis)
def test_multiplication_matches_matrices(p, q):
    assert (p * q).to_matrix() == p.to_matrix() @ q.to_matrix()


def test_inverse_law_exhaustive():
    r = range(-3, 4)
    for a in r:
        for b in r:
            for c in r:
                p = HeisenbergElement(a, b, c)
                inv = HeisenbergElement(-a, -b, -c - a * b)
                assert p * inv == HeisenbergElement() == inv * p
                assert p.inverse() == inv


# -- Smith normal form -----------------------------------------------------------------

def check_snf(m: IntMatrix):
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    diag = d.diagonal()
    assert d.is_diagonal() and all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return diag


def test_snf_reorders_for_divisibility():
    assert check_snf(IntMatrix.diag([3, 1])) == [1, 3]


def test_snf_two_by_two():
    m = IntMatrix([[2, 4], [6, 8]])
    assert check_snf(m) == [2, 4]
    # oracle values: |det| = 8 and the gcd of entries is 2
    assert abs(m.det()) == 8 and math.gcd(2, 4, 6, 8) == 2


def test_snf_zero_matrix():
    d, u, v = smith_normal_form(IntMatrix.zeros(2, 3))
    assert d == IntMatrix.zeros(2, 3)
    assert u == IntMatrix.identity(2) and v == IntMatrix.identity(3)


@given(small_matrix)
def test_snf_soundness(rows):
    check_snf(IntMatrix(rows))


@given(st.lists(st.lists(st.integers(-10, 10), min_size=3, max_size=3), min_size=2, max_size=4))
def test_snf_agrees_with_sympy(rows):
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    diag = check_snf(IntMatrix(rows))
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert sorted(diag) == sorted(ref_diag)


# -- abelianization --------------------------------------------------------------------

def test_abelianization_of_z2():
    ab = abelianization(parse_presentation("a,b; [a,b]"))
    assert (ab.free_rank, ab.torsion_coefficients) == (2, ())


def test_abelianization_of_bs13():
    ab = abelianization(parse_presentation("a,b; aba^-1b^-3"))
    assert (ab.free_rank, ab.torsion_coefficients) == (1, (2,))
    assert abelianization(baumslag_solitar(1, 3)) == ab


def test_abelianization_of_genus_two_surface_group():
    p = surface_group(2)
    assert p.exponent_matrix() == IntMatrix.zeros(1, 4)
    ab = abelianization(p)
    assert (ab.free_rank, ab.torsion_coefficients) == (4, ())


def test_abelianization_without_relators():
    assert abelianization(free_abelian_presentation(3)).free_rank == 3


relator = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3).filter(bool)), min_size=1, max_size=6)


@given(st.lists(relator, min_size=1, max_size=3), st.integers(0, 2), st.integers(0, 2), st.sampled_from([-1, 1]))
def test_abelianization_invariant_under_conjugation(rels, which, g, e):
    words = [reduce_word(r) for r in rels]
    words = [w for w in words if w] or [Word.gen(0, 2)]
    which %= len(words)
    from liftobs.words import GroupPresentation
    base = GroupPresentation(3, tuple(words))
    conj = list(words)
    conj[which] = Word.gen(g, e) * conj[which] * Word.gen(g, -e)
    ab1, ab2 = abelianization(base), abelianization(GroupPresentation(3, tuple(conj)))
    assert (ab1.free_rank, ab1.torsion_coefficients) == (ab2.free_rank, ab2.torsion_coefficients)
    # free reduction of raw relators does not matter either: unreduced input is reduced on entry
    padded = GroupPresentation(3, tuple(reduce_word([(g, 1), (g, -1)] + list(w.letters)) for w in words))
    ab3 = abelianization(padded)
    assert (ab1.free_rank, ab1.torsion_coefficients) == (ab3.free_rank, ab3.torsion_coefficients)


@given(st.lists(relator, min_size=1, max_size=4))
def test_abelianization_result_invariants(rels):
    from liftobs.words import GroupPresentation
    words = tuple(w for w in (reduce_word(r) for r in rels) if w) or (Word.gen(1),)
    ab = abelianization(GroupPresentation(3, words))
    t = ab.torsion_coefficients
    assert all(x >= 2 for x in t)
    assert all(b % a == 0 for a, b in zip(t, t[1:]))
    assert ab.free_rank + len(t) <= 3


# -- generator change and commutators -----------------------------------------------------

@pytest.mark.parametrize("m,n,expected", [
    (1, 0, [[1, 0], [0, 1]]),
    (2, 3, [[2, 3], [1, 2]]),
    (3, 5, [[3, 5], [1, 2]]),
])
def test_generator_change_examples(m, n, expected):
    assert generator_change_matrix(m, n).tolist() == expected


def test_generator_change_bezout_oracle():
    for m, n in [(2, 3), (3, 5)]:
        a, b = bezout_pair(m, n)
        assert a * m + b * n == 1
        s, t, g = sympy.gcdex(m, n)
        assert s * m + t * n == 1 == g


def test_generator_change_rejects_common_factor():
    with pytest.raises(NotCoprimeError, match="2"):
        generator_change_matrix(4, 6)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_generator_change_has_determinant_one(m, n):
    if math.gcd(m, n) != 1:
        return
    c = generator_change_matrix(m, n)
    assert c.det() == 1
    assert c.row(0) == (m, n)


def test_rp3_commutator():
    i4 = IntMatrix.identity(4)
    assert RP3_A @ RP3_A == i4 and RP3_B @ RP3_B == i4
    assert RP3_C == -i4
    assert matrix_commutator(RP3_A, RP3_B) == RP3_C


def test_heisenberg_matrix_commutator():
    assert matrix_commutator(X.to_matrix(), Y.to_matrix()) == Z.to_matrix()


def test_commuting_diagonal_pair():
    p, q = IntMatrix.diag([1, -1, 1]), IntMatrix.diag([-1, -1, 1])
    assert matrix_commutator(p, q) == IntMatrix.identity(3)


def test_commutator_of_singular_matrix():
    with pytest.raises(SingularMatrixError):
        matrix_commutator(IntMatrix([[1, 1], [1, 1]]), IntMatrix.identity(2))


def test_random_snf_batch_is_reproducible():
    rng = random.Random(7)
    for _ in range(20):
        check_snf(IntMatrix([[rng.randint(-10, 10) for _ in range(4)] for _ in range(4)]))
