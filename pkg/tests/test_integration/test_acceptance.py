"""
Flujos completos: plano → representación → álgebra representada,
y chequeos exhaustivos de tamaño realista.
"""

import pytest

from app.schemas.lyndon import ReprKind
from app.services.algebra_service import check_axioms
from app.services.bounds_service import k_max, verify_chain
from app.services.equation_parser import parse_equation
from app.services.equation_service import holds
from app.services.geometry_service import build_pg2, validate_plane
from app.services.lyndon_service import representability_status
from app.services.representation_service import (
    build_affine_representation,
    represented_algebra,
    verify_representation,
)
from app.services.subalgebra_service import generate, is_proper


@pytest.mark.integration
@pytest.mark.slow
class TestPlaneToAlgebra:
    """Del plano PG(2, q) al álgebra de Lyndon E_(q+2)"""

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
    def test_represented_algebra_is_lyndon(self, lyndon, q):
        plane = build_pg2(q)
        assert validate_plane(plane).passed
        rep = build_affine_representation(plane)
        assert verify_representation(rep).passed
        algebra = represented_algebra(rep)
        assert algebra.same_structure(lyndon(q + 1))
        assert check_axioms(algebra).passed

    def test_status_table(self):
        """Estados para n = 1..12 con el techo de cuerpos por defecto"""
        expected = {
            1: ReprKind.REPRESENTABLE,
            2: ReprKind.NON_REPRESENTABLE,
            3: ReprKind.NON_REPRESENTABLE,
            4: ReprKind.REPRESENTABLE,
            5: ReprKind.REPRESENTABLE,
            6: ReprKind.REPRESENTABLE,
            7: ReprKind.NON_REPRESENTABLE,
            8: ReprKind.REPRESENTABLE,
            9: ReprKind.REPRESENTABLE,
            10: ReprKind.REPRESENTABLE,
            11: ReprKind.UNKNOWN,
            12: ReprKind.REPRESENTABLE,
        }
        assert {n: representability_status(n).status for n in expected} == expected


@pytest.mark.integration
class TestCountingArgument:
    """Una ecuación con pocas variables no distingue a E_(M+1) de sus subálgebras"""

    def test_single_generators_of_e8_are_proper(self, e8):
        sizes = set()
        for element in e8.elements():
            sub = generate(e8, [element])
            assert is_proper(sub)
            sizes.add(sub.size)
        assert max(sizes) <= 2 ** (2 ** 2)

    def test_counting_bound_below_atom_count(self):
        for n in range(1, 6):
            assert 2 ** (k_max(n) + 1) <= 2 * 3 ** (2 * n + 1)
            assert verify_chain(n).passed


@pytest.mark.performance
@pytest.mark.slow
class TestPerformance:
    """Chequeo exhaustivo de tres variables en E9"""

    def test_three_variable_equation_in_e9(self, lyndon, performance_tracker):
        alg = lyndon(8)
        eq = parse_equation("(x + y) . z = x . z + y . z")
        performance_tracker.start("E9 distributividad")
        result = holds(eq, alg)
        duration = performance_tracker.end("E9 distributividad")
        assert result.holds
        assert result.assignments_checked == 512 ** 3
        assert duration < 60

    def test_composition_heavy_equation_in_e9(self, lyndon):
        alg = lyndon(8)
        result = holds(parse_equation("x ; (y ; z) = (x ; y) ; z"), alg)
        assert result.holds
