"""Tests for the finite Pauli groups and their canonical form."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcsgames.errors import (
    DimensionMismatchError,
    ParseError,
    SizeCapError,
    ValidationError,
)
from lcsgames.pauli import (
    PauliElement,
    canonical_form,
    enumerate_group,
    generator_names,
    identity,
    j_element,
    pauli_inverse,
    pauli_mul,
    pauli_power,
    pauli_to_word,
    x_element,
    z_element,
)
from lcsgames.words import FreeWord

dims = st.sampled_from([(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (1, 5)])


@st.composite
def elements(draw, nd=dims):
    n, d = draw(nd)
    phase = draw(st.integers(0, d - 1))
    xExp = tuple(draw(st.integers(0, d - 1)) for _ in range(n))
    zExp = tuple(draw(st.integers(0, d - 1)) for _ in range(n))
    return PauliElement(n, d, phase, xExp, zExp)


@st.composite
def element_triples(draw):
    n, d = draw(dims)
    fixed = st.just((n, d))
    return (
        draw(elements(fixed)),
        draw(elements(fixed)),
        draw(elements(fixed)),
    )


@st.composite
def random_words(draw, count: int = 1):
    n, d = draw(dims)
    alphabet = generator_names(n)
    out = []
    for _ in range(count):
        length = draw(st.integers(0, 20))
        letters = [
            (draw(st.sampled_from(alphabet)), draw(st.sampled_from([1, -1])))
            for _ in range(length)
        ]
        out.append(FreeWord.make(letters, draw(st.integers(-3, 3))))
    return (*out, n, d)


def rewrite_oracle(w: FreeWord, n: int, d: int) -> PauliElement:
    """Sort letters by bubble swaps, tracking J from z-past-x moves.

    Independent of pauli_mul: uses only the defining relation
    z_i x_i = J x_i z_i (other pairs commute) and exponent reduction mod d.
    """
    def key(letter):
        name, _ = letter
        kind = name[0]
        index = int(name[1:]) if len(name) > 1 else 1
        return (index, 0 if kind == "x" else 1)

    letters = list(w.letters)
    jPower = w.jPower
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if key(a) > key(b):
                # swapping (z_i^e, x_i^f) -> (x_i^f, z_i^e) costs J^(e*f)
                if key(a)[0] == key(b)[0]:
                    jPower += a[1] * b[1]
                letters[i], letters[i + 1] = b, a
                changed = True
    xExp = [0] * n
    zExp = [0] * n
    for name, exp in letters:
        kind = name[0]
        index = (int(name[1:]) if len(name) > 1 else 1) - 1
        if kind == "x":
            xExp[index] = (xExp[index] + exp) % d
        else:
            zExp[index] = (zExp[index] + exp) % d
    return PauliElement(n, d, jPower % d, tuple(xExp), tuple(zExp))


class TestConstruction:
    def test_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            PauliElement(1, 2, 2, (0,), (0,))
        with pytest.raises(ValidationError):
            PauliElement(1, 2, 0, (2,), (0,))
        with pytest.raises(DimensionMismatchError):
            PauliElement(2, 2, 0, (0,), (0, 0))

    def test_generator_names(self):
        assert generator_names(1) == ("x", "z")
        assert generator_names(2) == ("x1", "x2", "z1", "z2")

    def test_basic_elements(self):
        assert identity(2, 3) == PauliElement(2, 3, 0, (0, 0), (0, 0))
        assert j_element(1, 3, 2).phase == 2
        assert x_element(1, 2, 3).xExp == (1, 0)
        assert z_element(2, 2, 3).zExp == (0, 1)


class TestGroupLaws:
    @given(element_triples())
    @settings(max_examples=1000, deadline=None)
    def test_associative(self, triple):
        p, q, r = triple
        assert pauli_mul(pauli_mul(p, q), r) == pauli_mul(p, pauli_mul(q, r))

    @given(elements())
    @settings(max_examples=1000, deadline=None)
    def test_inverse(self, p):
        e = identity(p.n, p.d)
        assert pauli_mul(p, pauli_inverse(p)) == e
        assert pauli_mul(pauli_inverse(p), p) == e

    @given(elements())
    def test_identity_neutral(self, p):
        e = identity(p.n, p.d)
        assert pauli_mul(p, e) == p
        assert pauli_mul(e, p) == p

    @given(elements())
    def test_j_central(self, p):
        j = j_element(p.n, p.d)
        assert pauli_mul(p, j) == pauli_mul(j, p)

    @given(elements(), st.integers(-4, 4))
    def test_power_matches_repeated_product(self, p, k):
        expected = identity(p.n, p.d)
        base = p if k >= 0 else pauli_inverse(p)
        for _ in range(abs(k)):
            expected = pauli_mul(expected, base)
        assert pauli_power(p, k) == expected

    @given(elements())
    def test_dth_power_is_central(self, p):
        result = pauli_power(p, p.d)
        assert result.xExp == (0,) * p.n
        assert result.zExp == (0,) * p.n


class TestCanonicalForm:
    def test_defining_relation(self):
        # z x = J x z, so the word "z x" picks up one J against "x z"
        assert canonical_form("z x", 1, 3) == PauliElement(1, 3, 1, (1,), (1,))
        assert canonical_form("x z", 1, 3) == PauliElement(1, 3, 0, (1,), (1,))

    def test_xz_cubed_is_trivial_mod_3(self):
        w = FreeWord.from_string("x z x z x z")
        assert canonical_form(w, 1, 3) == identity(1, 3)

    @pytest.mark.parametrize(
        "text,n,d,expected",
        [
            ("J", 1, 2, (1, (0,), (0,))),
            ("x^2", 1, 2, (0, (0,), (0,))),
            ("z1 x1", 2, 2, (1, (1, 0), (1, 0))),
            ("z1 x2", 2, 2, (0, (0, 1), (1, 0))),
            ("x^-1", 1, 3, (0, (2,), (0,))),
            ("z^-1 x^-1 J^-1", 1, 3, (0, (2,), (2,))),
        ],
    )
    def test_examples(self, text, n, d, expected):
        phase, xExp, zExp = expected
        assert canonical_form(text, n, d) == PauliElement(n, d, phase, xExp, zExp)

    def test_unknown_generator_rejected(self):
        with pytest.raises(ParseError):
            canonical_form("x3", 2, 2)
        with pytest.raises(ParseError):
            canonical_form("q", 1, 2)

    @given(random_words())
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_rewriting_oracle(self, data):
        w, n, d = data
        assert canonical_form(w, n, d) == rewrite_oracle(w, n, d)

    @given(random_words(count=2))
    @settings(max_examples=300, deadline=None)
    def test_homomorphism_on_words(self, data):
        u, v, n, d = data
        assert canonical_form(u * v, n, d) == pauli_mul(
            canonical_form(u, n, d), canonical_form(v, n, d)
        )

    @given(elements())
    @settings(max_examples=500, deadline=None)
    def test_round_trip_through_words(self, p):
        assert canonical_form(pauli_to_word(p), p.n, p.d) == p

    def test_j_times_element_shifts_phase(self):
        p = canonical_form("x z", 1, 5)
        shifted = canonical_form("J x z", 1, 5)
        assert shifted == pauli_mul(j_element(1, 5), p)


class TestEnumeration:
    @pytest.mark.parametrize("n,d", [(1, 2), (1, 3), (2, 2)])
    def test_order(self, n, d):
        group = enumerate_group(n, d)
        assert len(group) == d ** (2 * n + 1)
        assert len(set(group)) == len(group)

    def test_cap(self):
        with pytest.raises(SizeCapError):
            enumerate_group(3, 5, cap=100)

    def test_deterministic_order(self):
        assert enumerate_group(1, 2) == enumerate_group(1, 2)
