import pytest
from pydantic import ValidationError

from app.core.config import Settings, resolve_threads, settings
from app.core.exceptions import (
    CapacityError,
    DomainError,
    StructuralError,
    UnassignedVariable,
    WorkbenchError,
)
from app.core.workers import first_hit


class TestSettings:
    """Tests de configuración"""

    def test_defaults(self):
        config = Settings(_env_file=None)
        assert config.MAX_ATOMS == 64
        assert config.FIELD_CEILING == 16
        assert config.WORKER_THREADS == 1

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("FIELD_CEILING", "32")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        config = Settings(_env_file=None)
        assert config.FIELD_CEILING == 32
        assert config.LOG_LEVEL == "DEBUG"

    @pytest.mark.parametrize(
        "field, value",
        [("WORKER_THREADS", 0), ("MAX_ATOMS", 65), ("VECTOR_BLOCK", -1), ("LOG_LEVEL", "LOUD")],
    )
    def test_invalid_values(self, field, value):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, **{field: value})

    def test_resolve_threads(self, monkeypatch):
        monkeypatch.setattr(settings, "WORKER_THREADS", 3)
        assert resolve_threads(None) == 3
        assert resolve_threads(0) == 1
        assert resolve_threads(8) == 8


class TestExceptions:
    """Tests de la jerarquía de errores"""

    def test_hierarchy(self):
        assert issubclass(CapacityError, StructuralError)
        assert issubclass(DomainError, ValueError)
        assert issubclass(UnassignedVariable, KeyError)
        assert issubclass(UnassignedVariable, WorkbenchError)

    def test_unassigned_message(self):
        assert str(UnassignedVariable("x")) == "variable sin asignar: x"


class TestFirstHit:
    """Tests del despacho por rondas"""

    @staticmethod
    def hit_on_multiples(divisor):
        def check(value):
            return value * 10 if value and value % divisor == 0 else None

        return check

    @pytest.mark.parametrize("threads", [1, 2, 4, 7])
    def test_first_hit_is_least_position(self, threads):
        result = first_hit(self.hit_on_multiples(13), range(1, 200), threads=threads)
        assert result == (12, 130)

    @pytest.mark.parametrize("threads", [1, 3])
    def test_no_hit(self, threads):
        assert first_hit(self.hit_on_multiples(1000), range(1, 200), threads=threads) is None

    def test_generator_input(self):
        items = (i for i in range(50))
        assert first_hit(self.hit_on_multiples(7), items, threads=2) == (7, 70)

    def test_empty_input(self):
        assert first_hit(self.hit_on_multiples(2), [], threads=4) is None
