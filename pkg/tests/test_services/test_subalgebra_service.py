import itertools
import random

import pytest

from app.core.exceptions import StructuralError
from app.services.algebra_service import check_axioms
from app.services.subalgebra_service import (
    boolean_closure,
    closure_by_elements,
    dump_subalgebra,
    enumerate_subalgebras,
    generate,
    is_proper,
    subalgebra_report,
)

LYNDON_RANGE = [4, 5, 6, pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]


class TestGenerate:
    """Tests de la subálgebra generada"""

    def test_empty_generators(self, e5):
        sub = generate(e5, [])
        assert sub.size == 4
        assert sub.block_names() == ["1'", "a1+a2+a3+a4"]

    def test_single_atom(self, e5):
        sub = generate(e5, [e5.atom("a1")])
        assert sub.size == 8
        assert sub.block_names() == ["1'", "a1", "a2+a3+a4"]
        assert is_proper(sub)

    def test_all_atoms(self, e5):
        atoms = [e5.atom(name) for name in e5.atom_names]
        sub = generate(e5, atoms)
        assert sub.size == 32
        assert not is_proper(sub)

    def test_e2_has_no_proper_subalgebra(self, e2):
        assert not is_proper(generate(e2, []))

    def test_closed_under_operations(self, e6):
        sub = generate(e6, [e6.element(["a1", "a2"])])
        masks = set(sub.masks())
        for x in masks:
            assert e6.full_mask ^ x in masks
            assert e6.converse_mask(x) in masks
            for y in masks:
                assert x | y in masks
                assert e6.compose_masks(x, y) in masks

    def test_foreign_generator_rejected(self, e5, e6):
        with pytest.raises(StructuralError):
            generate(e5, [e6.atom("a1")])

    def test_induced_structure_is_relation_algebra(self, e6):
        sub = generate(e6, [e6.atom("a1"), e6.atom("a2")])
        structure = sub.as_structure()
        assert structure.name == "E6/sub16"
        assert check_axioms(structure).passed


class TestBooleanClosure:
    """Tests de la clausura booleana"""

    def test_sizes(self, e5):
        assert len(boolean_closure(e5, [])) == 4
        assert len(boolean_closure(e5, [e5.atom("a1")])) == 8
        assert len(boolean_closure(e5, [e5.element(["1'", "a1"])])) == 8
        assert len(boolean_closure(e5, [e5.atom("a1"), e5.element(["a1", "a2"])])) == 16

    def test_ascending_order(self, e5):
        masks = [e.mask for e in boolean_closure(e5, [e5.atom("a2")])]
        assert masks == sorted(masks)

    @pytest.mark.parametrize("n", LYNDON_RANGE)
    def test_lyndon_subalgebras_are_boolean(self, lyndon, n):
        """En E_{n+1} toda partición de la diversidad es cerrada y cabe en 2^(2^(k+1))"""
        alg = lyndon(n)
        masks = range(alg.size)
        for k in (0, 1, 2):
            for gens in itertools.combinations(masks, k):
                elements = [alg.from_mask(m) for m in gens]
                sub = generate(alg, elements)
                assert sub.elements() == boolean_closure(alg, elements)
                assert sub.size <= 2 ** (2 ** (k + 1))

    @pytest.mark.parametrize("n", LYNDON_RANGE)
    def test_random_three_generators(self, lyndon, n):
        """Tres generadores al azar: a lo sumo 2^16 elementos, igual a la clausura booleana"""
        alg = lyndon(n)
        rng = random.Random(n)
        for _ in range(50):
            elements = [alg.from_mask(m) for m in rng.sample(range(alg.size), 3)]
            sub = generate(alg, elements)
            assert sub.elements() == boolean_closure(alg, elements)
            assert sub.size <= 2 ** 16


class TestClosureReference:
    """Comparación con la clausura elemento por elemento"""

    def test_agrees_with_generate_on_lyndon(self, e5):
        for m in range(e5.size):
            gens = [e5.from_mask(m)]
            assert closure_by_elements(e5, gens) == set(generate(e5, gens).masks())

    def test_agrees_with_generate_on_group_algebra(self, s3):
        """En S3 la clausura no es sólo booleana"""
        gens = [s3.atom("(12)")]
        sub = generate(s3, gens)
        assert closure_by_elements(s3, gens) == set(sub.masks())
        assert sub.block_names() == ["e", "(12)", "(13)+(23)+(123)+(132)"]
        assert len(boolean_closure(s3, [s3.atom("(123)")])) < generate(s3, [s3.atom("(123)")]).size


class TestEnumerate:
    """Tests de la enumeración de subálgebras"""

    def test_e6_subalgebras(self, e6):
        """Particiones de 5 átomos de diversidad: número de Bell B5 = 52"""
        subs = enumerate_subalgebras(e6)
        assert len(subs) == 52
        assert sum(1 for s in subs if is_proper(s)) == 51
        assert subs[0].size == 4
        assert subs[-1].size == 64

    def test_sorted_by_size(self, e5):
        sizes = [s.size for s in enumerate_subalgebras(e5)]
        assert sizes == sorted(sizes)
        assert len(sizes) == 15


class TestDocuments:
    """Tests del documento de subálgebra"""

    def test_dump(self, e5):
        doc = dump_subalgebra(generate(e5, [e5.atom("a1")]))
        assert doc.parent == "E5"
        assert doc.elements[0] == []
        assert doc.elements[1] == ["1'"]
        assert doc.elements[2] == ["a1"]
        assert doc.elements[-1] == ["1'", "a1", "a2", "a3", "a4"]

    def test_report(self, e5):
        report = subalgebra_report(generate(e5, [e5.atom("a1")]))
        assert report.size == 8
        assert report.proper
        assert report.atoms == ["1'", "a1", "a2+a3+a4"]
        assert len(report.elements) == 8
