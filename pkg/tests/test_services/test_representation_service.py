import pytest

from app.core.exceptions import ConstructionUnsound
from app.models.algebra import AtomStructure
from app.models.representation import Representation
from app.services.geometry_service import build_pg2
from app.services.representation_service import (
    build_affine_representation,
    complete_graph_representation,
    dump_representation,
    pairs_per_point,
    represented_algebra,
    verify_representation,
)


@pytest.fixture(scope="module")
def rep3():
    return build_affine_representation(build_pg2(3))


class TestAffineRepresentation:
    """Tests de la representación por direcciones del plano afín"""

    def test_target_and_base(self, rep3):
        assert rep3.target.name == "E5"
        assert rep3.base_size == 9

    def test_relation_sizes(self, rep3):
        """Cada dirección tiene q²(q−1) pares; cada punto tiene q−1 vecinos por dirección"""
        for atom in rep3.target.atom_names[1:]:
            assert len(rep3.relations[atom]) == 18
            assert set(pairs_per_point(rep3, atom)) == {2}
        assert len(rep3.relations["1'"]) == 9

    def test_verifies(self, rep3):
        assert verify_representation(rep3).passed

    def test_represented_algebra_is_lyndon(self, rep3, e5):
        assert represented_algebra(rep3).same_structure(e5)

    @pytest.mark.parametrize("q", [4, 5])
    def test_larger_orders(self, q, lyndon):
        rep = build_affine_representation(build_pg2(q))
        assert verify_representation(rep).passed
        assert represented_algebra(rep).same_structure(lyndon(q + 1))

    def test_order_two_refused(self):
        with pytest.raises(ConstructionUnsound):
            build_affine_representation(build_pg2(2))

    def test_order_two_fails_composition(self):
        """Con q = 2 las direcciones son emparejamientos y a1;a1 = 1'"""
        rep = build_affine_representation(build_pg2(2), force=True)
        result = verify_representation(rep)
        assert not result.passed
        assert result.check == "composition"
        assert result.witness["a"] == "a1"
        assert result.witness["b"] == "a1"
        assert result.witness["in_composition"] is False
        assert result.witness["expected"] is True

    def test_moved_pair_breaks_converse(self, rep3):
        pair = min(rep3.relations["a1"])
        broken = rep3.moved(pair, "a1", "a2")
        result = verify_representation(broken)
        assert not result.passed
        assert result.check == "converse"
        assert result.witness["pair"] == list(pair)

    def test_moved_diagonal_breaks_identity(self, rep3):
        broken = rep3.moved((0, 0), "1'", "a1")
        result = verify_representation(broken)
        assert result.check == "identity_diagonal"
        assert result.witness["pair"] == [0, 0]

    def test_dump_is_sorted(self, rep3):
        doc = dump_representation(rep3)
        assert doc.base == 9
        assert list(doc.relations) == ["1'", "a1", "a2", "a3", "a4"]
        for pairs in doc.relations.values():
            assert pairs == sorted(pairs)


class TestCompleteGraph:
    """Tests de la representación de E2 sobre tres puntos"""

    def test_e2_on_three_points(self, e2):
        rep = complete_graph_representation(e2)
        assert verify_representation(rep).passed
        assert represented_algebra(rep).same_structure(e2)

    def test_two_points_are_not_enough(self, e2):
        rep = complete_graph_representation(e2, base_size=2)
        result = verify_representation(rep)
        assert result.check == "composition"


class TestDiagonalRepresentation:
    """Álgebra de un solo átomo representada por la diagonal"""

    @pytest.fixture(scope="class")
    def one_atom(self):
        return AtomStructure("E1", ["1'"], 0, [0], [[1]])

    def test_single_point_passes(self, one_atom):
        rep = Representation(one_atom, 1, {"1'": [(0, 0)]})
        assert verify_representation(rep).passed

    def test_larger_base_is_not_covered(self, one_atom):
        """Con más de un punto la diagonal no cubre base × base"""
        rep = Representation(one_atom, 3, {"1'": [(i, i) for i in range(3)]})
        result = verify_representation(rep)
        assert not result.passed
        assert result.check == "covering"
        assert result.witness == {"pair": [0, 1]}
