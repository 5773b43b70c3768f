import random
from fractions import Fraction

import pytest

from cvstab.code import builtin, builtin_names
from cvstab.errors import CvstabError, DimensionMismatch, DimensionParity, NonIsotropic, NotInComplement
from cvstab.symplectic import (
    SWAP,
    SYMPLECTIC,
    HeisenbergWeylOp,
    PauliVector,
    commutation_phase,
    fourier_conjugate,
    format_scalar,
    gram_matrix,
    is_isotropic,
    multiply,
    nullspace,
    power,
    rank,
    rref,
    span,
    standard_gram,
    symplectic_complement,
    symplectic_form,
    symplectic_gram_schmidt,
)
from tests.unit import oracle


def vec(text: str) -> PauliVector:
    s, t = text.split("|")
    return PauliVector(tuple(s.split()), tuple(t.split()))


def random_vector(rng: random.Random, n: int) -> PauliVector:
    return PauliVector.from_coords([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2 * n)])


class TestPauliVector:
    """Test suite for the vector type"""

    def test_entries_are_exact(self):
        """Test that entries are coerced to Fractions"""
        v = vec("1/2 0 | -3 1")
        assert v.s == (Fraction(1, 2), Fraction(0))
        assert all(isinstance(x, Fraction) for x in v.coords)

    def test_mismatched_parts_rejected(self):
        """Test that s and t must have the same length"""
        with pytest.raises(DimensionMismatch):
            PauliVector((1, 0), (1,))

    def test_arithmetic(self):
        """Test addition, negation and scaling"""
        v = vec("1 2 | 3 4")
        w = vec("1 1 | 1 1")
        assert v + w == vec("2 3 | 4 5")
        assert v - v == PauliVector.zero(2)
        assert (-v).scale("1/2") == vec("-1/2 -1 | -3/2 -2")

    def test_rendering(self):
        """Test string rendering and scalar formatting"""
        assert str(vec("1 0 | 0 1/2")) == "(1,0|0,1/2)"
        assert format_scalar(Fraction(-3, 2)) == "-3/2"
        assert format_scalar(Fraction(4)) == "4"

    def test_unit_vectors(self):
        """Test that unit indexes the 2n coordinates"""
        assert PauliVector.unit(2, 3) == vec("0 0 | 0 1")


class TestHeisenbergWeyl:
    """Test suite for operators and the commutation phase"""

    def test_conjugate_pair_phase(self):
        """Test that X and Z on one mode pick up the phase omega = 1"""
        x = HeisenbergWeylOp.X(0, 1, 1)
        z = HeisenbergWeylOp.Z(0, 1, 1)
        assert symplectic_form(x.vector, z.vector) == 1
        assert commutation_phase(x, z) == 1
        assert commutation_phase(x, x) == 0

    def test_multiply_phase(self):
        """Test that products carry half the symplectic form as phase"""
        x = HeisenbergWeylOp.X(0, 1, 1)
        z = HeisenbergWeylOp.Z(0, 1, 1)
        xz = multiply(x, z)
        zx = multiply(z, x)
        assert xz.vector == zx.vector == vec("1 | 1")
        assert xz.phase == Fraction(1, 2)
        assert zx.phase == Fraction(3, 2)

    def test_power(self):
        """Test that powers scale the vector and the phase"""
        op = HeisenbergWeylOp(vec("1 0 | 0 2"), Fraction(1, 2))
        squared = power(op, 2)
        assert squared.vector == vec("2 0 | 0 4")
        assert squared.phase == 1

    def test_constructors_use_zero_based_modes(self):
        """Test that X and Z place their amount on the right slot"""
        assert HeisenbergWeylOp.X(1, 3, 3).vector == vec("0 3 0 | 0 0 0")
        assert HeisenbergWeylOp.Z(2, -1, 3).vector == vec("0 0 0 | 0 0 -1")

    def test_form_rejects_mismatched_modes(self):
        """Test that omega needs equal mode counts"""
        with pytest.raises(DimensionMismatch):
            symplectic_form(vec("1 | 0"), vec("1 0 | 0 0"))


class TestFormProperties:
    """Test suite for algebraic identities of the form and the operator product"""

    def test_antisymmetric(self):
        """Test omega(v, w) = -omega(w, v) and omega(v, v) = 0 on random rationals"""
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(1, 4)
            v, w = random_vector(rng, n), random_vector(rng, n)
            assert symplectic_form(v, w) == -symplectic_form(w, v)
            assert symplectic_form(v, v) == 0
            assert symplectic_form(v, w) == oracle.omega(v.coords, w.coords)

    def test_bilinear(self):
        """Test linearity in the first argument on random rationals"""
        rng = random.Random(12)
        for _ in range(50):
            n = rng.randint(1, 4)
            u, v, w = random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)
            a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            combined = u.scale(a) + v.scale(b)
            assert symplectic_form(combined, w) == a * symplectic_form(u, w) + b * symplectic_form(v, w)
            assert symplectic_form(w, combined) == a * symplectic_form(w, u) + b * symplectic_form(w, v)

    def test_multiply_associative(self):
        """Test (ab)c = a(bc) including the phase"""
        rng = random.Random(13)
        for _ in range(30):
            n = rng.randint(1, 3)
            a, b, c = (HeisenbergWeylOp(random_vector(rng, n), Fraction(rng.randint(0, 7), 4)) for _ in range(3))
            assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))

    def test_inverse_is_negated_vector(self):
        """Test that U(v) U(-v) is the identity"""
        rng = random.Random(14)
        for _ in range(20):
            n = rng.randint(1, 4)
            v = random_vector(rng, n)
            product = multiply(HeisenbergWeylOp(v), HeisenbergWeylOp(-v))
            assert product == HeisenbergWeylOp(PauliVector.zero(n))

    def test_span_of_multiples_has_rank_one(self):
        """Test that v and 2v span a line"""
        v = vec("1 -2 | 3/2 0")
        w = span([v, v.scale(2)])
        assert w.dim == 1
        assert w == span([v])
        assert w.contains(v.scale(Fraction(-7, 3)))


class TestRowReduction:
    """Test suite for exact row reduction"""

    def test_rref_normalizes_pivots(self):
        """Test that pivots are 1 with zeros above and below"""
        rows, pivots = rref([[2, 4, 0], [1, 3, 1]], 3)
        assert pivots == [0, 1]
        assert rows == [[1, 0, -2], [0, 1, 1]]

    def test_rank_and_nullspace_agree_with_sympy(self):
        """Test nullspace and rank against the sympy oracle"""
        rng = random.Random(7)
        for _ in range(20):
            rows = [[Fraction(rng.randint(-2, 2)) for _ in range(5)] for _ in range(rng.randint(1, 4))]
            kernel = nullspace(rows, 5)
            assert len(kernel) == len(oracle.nullspace(rows, 5))
            assert rank(rows, 5) == oracle.matrix_rank(rows)
            for v in kernel:
                assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)

    def test_empty_span_needs_mode_count(self):
        """Test that span of nothing requires n"""
        with pytest.raises(CvstabError):
            span([])
        assert span([], 3).dim == 0


class TestComplement:
    """Test suite for the symplectic complement"""

    @pytest.mark.parametrize("name", builtin_names())
    def test_builtin_complement_dimension(self, name):
        """Test dim W^omega = 2n - k on every builtin and against sympy"""
        code, _ = builtin(name)
        w_omega = code.normalizer_space()
        assert w_omega.dim == 2 * code.n - code.k
        assert w_omega.dim == oracle.complement_dimension([u.coords for u in code.generators], code.n)
        for v in w_omega.basis:
            assert all(symplectic_form(v, u) == 0 for u in code.generators)

    def test_random_codes_match_oracle(self):
        """Test the complement on random isotropic codes with n <= 4"""
        rng = random.Random(2024)
        for _ in range(50):
            n = rng.randint(1, 4)
            rows = oracle.random_isotropic_code(rng, n)
            w_omega = symplectic_complement(span(rows, n))
            assert w_omega.dim == oracle.complement_dimension([u.coords for u in rows], n)
            assert all(oracle.omega(v.coords, u.coords) == 0 for v in w_omega.basis for u in rows)

    def test_empty_subspace_complement_is_everything(self):
        """Test that the complement of {0} is the whole space"""
        assert symplectic_complement(span([], 2)).dim == 4

    def test_complement_is_an_involution(self):
        """Test (W^omega)^omega = W on random rational subspaces"""
        rng = random.Random(15)
        for _ in range(30):
            n = rng.randint(1, 4)
            w = span((random_vector(rng, n) for _ in range(rng.randint(0, 2 * n))), n)
            assert symplectic_complement(symplectic_complement(w)) == w

    @pytest.mark.parametrize("name", ["three-mode-q", "eight-mode-gottesman"])
    def test_builtin_stabilizers_are_isotropic(self, name):
        """Test that builtin stabilizer spaces are isotropic"""
        code, _ = builtin(name)
        assert is_isotropic(code.stabilizer_space())

    def test_conjugate_pair_is_not_isotropic(self):
        """Test that (1|0) and (0|1) together are not isotropic"""
        assert not is_isotropic(span([vec("1 | 0"), vec("0 | 1")]))
        assert is_isotropic(span([vec("1 | 0")]))


class TestGramSchmidt:
    """Test suite for the hyperbolic basis construction"""

    def test_whole_space(self):
        """Test a hyperbolic basis of Q^4 with no stabilizer"""
        w = span([], 2)
        pairs = symplectic_gram_schmidt(symplectic_complement(w), w)
        vectors = [v for pair in pairs for v in pair]
        assert len(pairs) == 2
        assert gram_matrix(vectors) == standard_gram(2)

    def test_non_isotropic_input(self):
        """Test that a non-isotropic w is rejected with 1-based rows"""
        w = span([vec("1 | 0"), vec("0 | 1")])
        with pytest.raises(NonIsotropic) as info:
            symplectic_gram_schmidt(span([], 1), w)
        assert (info.value.i, info.value.j) == (1, 2)

    def test_w_outside_complement(self):
        """Test that w must lie inside w_omega"""
        with pytest.raises(NotInComplement):
            symplectic_gram_schmidt(span([vec("0 | 1")]), span([vec("1 | 0")]))

    def test_odd_gap(self):
        """Test that an odd quotient dimension is rejected"""
        with pytest.raises(DimensionParity):
            symplectic_gram_schmidt(span([vec("1 0 | 0 0")]), span([], 2))


class TestFourier:
    """Test suite for the Fourier conjugate"""

    def test_symplectic_convention_preserves_form(self):
        """Test that (s|t) -> (-t|s) preserves omega"""
        v, w = vec("1 2 | 0 1"), vec("0 1 | 3 -1")
        assert fourier_conjugate(v, SYMPLECTIC) == vec("0 -1 | 1 2")
        assert symplectic_form(fourier_conjugate(v), fourier_conjugate(w)) == symplectic_form(v, w)

    def test_swap_convention_negates_form(self):
        """Test that (s|t) -> (t|s) negates omega"""
        v, w = vec("1 2 | 0 1"), vec("0 1 | 3 -1")
        assert fourier_conjugate(v, SWAP) == vec("0 1 | 1 2")
        assert symplectic_form(fourier_conjugate(v, SWAP), fourier_conjugate(w, SWAP)) == -symplectic_form(v, w)

    def test_position_code_maps_to_momentum_code(self):
        """Test that conjugating three-mode-q spans the three-mode-p stabilizer"""
        q_code, _ = builtin("three-mode-q")
        p_code, _ = builtin("three-mode-p")
        conjugated = span([fourier_conjugate(u) for u in q_code.generators])
        assert conjugated == p_code.stabilizer_space()

    def test_unknown_convention(self):
        """Test that an unknown convention is rejected"""
        with pytest.raises(CvstabError):
            fourier_conjugate(vec("1 | 0"), "rotate")
