import pytest

from app.core.exceptions import CapacityError, DomainError
from app.schemas.lyndon import NonReprReason, ReprKind
from app.services.lyndon_service import build_lyndon, representability_status


def expected_composition(i, j, n):
    """Tabla de E_{n+1} escrita directamente desde la definición"""
    diversity = {f"a{k}" for k in range(1, n + 1)}
    if i == "1'":
        return {j}
    if j == "1'":
        return {i}
    if i == j:
        return {"1'", i}
    return diversity - {i, j}


class TestBuildLyndon:
    """Tests del constructor de álgebras de Lyndon"""

    @pytest.mark.parametrize("n", range(1, 11))
    def test_table_fidelity(self, n):
        alg = build_lyndon(n)
        assert alg.name == f"E{n + 1}"
        assert alg.atom_names[0] == "1'"
        for i in alg.atom_names:
            for j in alg.atom_names:
                composed = alg.atom(i).compose(alg.atom(j))
                assert set(composed.names()) == expected_composition(i, j, n)

    def test_atoms_are_symmetric(self):
        alg = build_lyndon(6)
        assert alg.converse_perm == tuple(range(7))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            build_lyndon(64)
        assert build_lyndon(63).n_atoms == 64

    def test_invalid_n(self):
        with pytest.raises(DomainError):
            build_lyndon(0)


class TestRepresentabilityStatus:
    """Tests del estado de representabilidad"""

    def test_e2_complete_graph(self):
        status = representability_status(1)
        assert status.status == ReprKind.REPRESENTABLE
        assert status.base_size == 3

    @pytest.mark.parametrize("n", [2, 3])
    def test_not_relation_algebras(self, n):
        status = representability_status(n)
        assert status.status == ReprKind.NON_REPRESENTABLE
        assert status.reason == NonReprReason.NOT_RELATION_ALGEBRA
        assert status.axiom_witness["a"] == "a1"
        assert status.axiom_witness["c"] == "a2"

    @pytest.mark.parametrize("n, base", [(4, 9), (5, 16), (6, 25)])
    def test_representable_from_planes(self, n, base):
        status = representability_status(n)
        assert status.status == ReprKind.REPRESENTABLE
        assert status.plane_order == n - 1
        assert status.base_size == base
        assert status.representation is not None

    def test_bruck_ryser_rules_out_order_six(self):
        status = representability_status(7)
        assert status.status == ReprKind.NON_REPRESENTABLE
        assert status.reason == NonReprReason.BRUCK_RYSER
        assert status.ruled_out_order == 6

    def test_order_ten_unknown(self):
        status = representability_status(11)
        assert status.status == ReprKind.UNKNOWN
        assert status.plane_order == 10

    def test_prime_power_above_ceiling(self):
        status = representability_status(18, ceiling=16)
        assert status.status == ReprKind.UNKNOWN
        assert status.plane_order == 17
        assert "16" in status.note

    def test_representation_not_serialized(self):
        dumped = representability_status(4).model_dump()
        assert "representation" not in dumped
