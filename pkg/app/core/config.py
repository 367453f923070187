from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración del workbench de álgebras de relaciones.

    Todas las variables se pueden sobreescribir por entorno o por `.env`.
    """
    PROJECT_NAME: str = "LyndonWorkbench"

    # ÁLGEBRAS
    MAX_ATOMS: int = 64
    LYNDON_TEST_CEILING: int = 12

    # GEOMETRÍA
    FIELD_CEILING: int = 16

    # CHEQUEO DE ECUACIONES
    WORKER_THREADS: int = 1
    VECTOR_BLOCK: int = 1 << 20
    COMPOSE_TABLE_LIMIT: int = 1024

    # SUBÁLGEBRAS Y EMBEDDINGS
    EMBED_NODE_BUDGET: int = 2_000_000
    UNIVERSAL_CHECK_LIMIT: int = 32

    # COTAS
    FLOAT_TOLERANCE: float = 1e-9

    # LOGGING
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None
    LOG_JSON: bool = True

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator(
        "LYNDON_TEST_CEILING", "FIELD_CEILING", "WORKER_THREADS", "VECTOR_BLOCK",
        "COMPOSE_TABLE_LIMIT", "EMBED_NODE_BUDGET", "UNIVERSAL_CHECK_LIMIT",
    )
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("debe ser un entero positivo")
        return value

    @field_validator("MAX_ATOMS")
    @classmethod
    def _atom_capacity(cls, value: int) -> int:
        # los kernels vectorizados trabajan con máscaras de 64 bits
        if not 1 <= value <= 64:
            raise ValueError("MAX_ATOMS debe estar entre 1 y 64")
        return value

    @field_validator("LOG_LEVEL")
    @classmethod
    def _log_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"nivel de log desconocido: {value}")
        return value


settings = Settings()


def resolve_threads(threads: Optional[int]) -> int:
    """Número de workers efectivo (argumento explícito o configuración)."""
    if threads is None:
        return settings.WORKER_THREADS
    return max(1, int(threads))
