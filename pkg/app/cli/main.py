import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from tabulate import tabulate

from app.cli import commands
from app.cli.commands import CommandResult
from app.core.config import settings
from app.core.exceptions import (
    ConstructionUnsound,
    DocumentError,
    DomainError,
    EquationSyntaxError,
    NotPrimePower,
    StructuralError,
)
from app.core.logging import get_logger, setup_logging

logger = get_logger(__name__)

# errores de dominio de la entrada: se reportan como error de uso
USAGE_ERRORS = (NotPrimePower, StructuralError, ConstructionUnsound, DomainError, EquationSyntaxError)


class UsageError(Exception):
    pass


class WorkbenchParser(argparse.ArgumentParser):
    """ArgumentParser que no termina el proceso: `run` decide el código de salida."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> WorkbenchParser:
    parser = WorkbenchParser(
        prog="lyndon-workbench",
        description=f"{settings.PROJECT_NAME}: álgebras de relaciones finitas, planos proyectivos y cotas",
    )
    parser.add_argument("--threads", type=int, default=None, help="Workers para los chequeos exhaustivos")
    parser.add_argument("--log-level", default=None, help="Nivel de log (DEBUG, INFO, ...)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lyndon", help="Álgebra de Lyndon E_(n+1) en JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(handler=commands.cmd_lyndon)

    p = sub.add_parser("axioms", help="Axiomas de álgebra de relaciones")
    p.add_argument("--algebra", required=True)
    p.add_argument("--universal", action="store_true", help="Agrega el chequeo elemento a elemento")
    p.set_defaults(handler=commands.cmd_axioms)

    p = sub.add_parser("plane", help="Plano proyectivo PG(2, q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--validate", action="store_true")
    p.set_defaults(handler=commands.cmd_plane)

    p = sub.add_parser("br", help="Criterio de Bruck–Ryser")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(handler=commands.cmd_br)

    p = sub.add_parser("repr", help="Representación afín de E_(q+2)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--force", action="store_true", help="Construir aunque q = 2")
    p.add_argument("--out")
    p.set_defaults(handler=commands.cmd_repr)

    p = sub.add_parser("status", help="Estado de representabilidad de E_(n+1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--include-witness", action="store_true")
    p.set_defaults(handler=commands.cmd_status)

    eq = sub.add_parser("eq", help="Ecuaciones").add_subparsers(dest="eq_command", required=True)
    p = eq.add_parser("check")
    p.add_argument("--algebra", required=True)
    p.add_argument("--equation", required=True)
    p.add_argument("--restrict")
    p.set_defaults(handler=commands.cmd_eq_check)
    p = eq.add_parser("length")
    p.add_argument("--equation", required=True)
    p.set_defaults(handler=commands.cmd_eq_length)
    p = eq.add_parser("parse")
    p.add_argument("--equation", required=True)
    p.set_defaults(handler=commands.cmd_eq_parse)

    p = sub.add_parser("subalg", help="Subálgebra generada")
    p.add_argument("--algebra", required=True)
    p.add_argument("--generators", required=True, help="p.ej. 'a1+a2,a3'; '0' es el elemento vacío")
    p.set_defaults(handler=commands.cmd_subalg)

    p = sub.add_parser("embed", help="Búsqueda de embedding")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--source-generators")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(handler=commands.cmd_embed)

    p = sub.add_parser("bounds", help="Tabla de cotas")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(handler=commands.cmd_bounds)

    p = sub.add_parser("chain", help="Verificación de la cadena de desigualdades")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=commands.cmd_chain)

    return parser


def _render(result: CommandResult) -> str:
    if result.raw:
        return result.payload
    return json.dumps(result.payload, indent=2, ensure_ascii=False) + "\n"


def _emit(result: CommandResult, out: Optional[str]) -> None:
    text = _render(result)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if result.summary:
        sys.stderr.write(tabulate(result.summary, tablefmt="plain") + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Ejecuta un subcomando y devuelve el código de salida."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return commands.EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    setup_logging(level=args.log_level)

    if args.threads is not None and args.threads < 1:
        sys.stderr.write("--threads debe ser ≥ 1\n")
        return commands.EXIT_USAGE

    try:
        result = args.handler(args)
        _emit(result, getattr(args, "out", None))
    except DocumentError as e:
        logger.error("❌ documento inválido", error=str(e))
        sys.stderr.write(f"{e}\n")
        return commands.EXIT_NO_INPUT
    except OSError as e:
        logger.error("❌ error de archivo", error=str(e))
        sys.stderr.write(f"{e}\n")
        return commands.EXIT_NO_INPUT
    except USAGE_ERRORS as e:
        logger.error("❌ argumento fuera de dominio", error=str(e), kind=type(e).__name__)
        sys.stderr.write(f"{e}\n")
        return commands.EXIT_USAGE
    return result.exit_code


def main() -> None:
    sys.exit(run())
