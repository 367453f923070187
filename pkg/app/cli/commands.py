"""
Subcomandos del workbench.

Cada comando recibe los argumentos ya parseados y devuelve un
`CommandResult`; la escritura de la salida y los códigos de error de
operación quedan en `app.cli.main`.
"""

import argparse
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from app.core.exceptions import DocumentError, StructuralError
from app.core.logging import get_logger
from app.models.algebra import AtomStructure, Element
from app.schemas.equation import EquationInfo
from app.schemas.subalgebra import EmbeddingKind
from app.services import (
    algebra_service,
    bounds_service,
    embedding_service,
    equation_parser,
    equation_service,
    geometry_service,
    lyndon_service,
    representation_service,
    subalgebra_service,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_EXHAUSTED = 3
EXIT_USAGE = 64
EXIT_NO_INPUT = 66


@dataclass
class CommandResult:
    """JSON (o texto) para stdout, resumen legible para stderr y código de salida."""

    payload: Any
    exit_code: int = EXIT_OK
    summary: List[Sequence[Any]] = field(default_factory=list)
    raw: bool = False


def _dump(model) -> Any:
    return model.model_dump(mode="json")


# ===== ÁLGEBRAS =====

def cmd_lyndon(args: argparse.Namespace) -> CommandResult:
    alg = lyndon_service.build_lyndon(args.n)
    return CommandResult(
        algebra_service.dump_algebra(alg),
        summary=[("álgebra", alg.name), ("átomos", alg.n_atoms), ("elementos", alg.size)],
    )


def cmd_axioms(args: argparse.Namespace) -> CommandResult:
    alg = algebra_service.load_algebra(args.algebra)
    report = algebra_service.check_axioms(alg, threads=args.threads)
    summary = [(r.axiom, "✅" if r.passed else "❌") for r in report.results]
    if not args.universal:
        return CommandResult(_dump(report), EXIT_OK if report.passed else EXIT_FAILED, summary)

    universal = algebra_service.check_axioms_universal(alg)
    passed = report.passed and universal.passed
    return CommandResult(
        {"atoms": _dump(report), "elements": _dump(universal)},
        EXIT_OK if passed else EXIT_FAILED,
        summary + [("universal", "✅" if universal.passed else "❌")],
    )


# ===== GEOMETRÍA Y REPRESENTACIONES =====

def cmd_plane(args: argparse.Namespace) -> CommandResult:
    plane = geometry_service.build_pg2(args.q)
    payload = _dump(geometry_service.dump_plane(plane))
    summary = [("q", plane.order), ("puntos", len(plane.points)), ("módulo", plane.field.modulus_text())]
    exit_code = EXIT_OK
    if args.validate:
        result = geometry_service.validate_plane(plane)
        payload["validation"] = _dump(result)
        summary.append(("validación", "✅" if result.passed else f"❌ {result.check}"))
        exit_code = EXIT_OK if result.passed else EXIT_FAILED
    return CommandResult(payload, exit_code, summary)


def cmd_br(args: argparse.Namespace) -> CommandResult:
    verdict = geometry_service.bruck_ryser(args.order)
    return CommandResult(
        _dump(verdict),
        EXIT_FAILED if verdict.rules_out else EXIT_OK,
        [("orden", verdict.order), ("veredicto", verdict.verdict.value)],
    )


def cmd_repr(args: argparse.Namespace) -> CommandResult:
    plane = geometry_service.build_pg2(args.q)
    rep = representation_service.build_affine_representation(plane, force=args.force)
    payload = _dump(representation_service.dump_representation(rep))
    summary = [("álgebra", rep.target.name), ("base", rep.base_size)]
    exit_code = EXIT_OK
    if args.verify:
        result = representation_service.verify_representation(rep)
        payload["verification"] = _dump(result)
        summary.append(("verificación", "✅" if result.passed else f"❌ {result.check}"))
        exit_code = EXIT_OK if result.passed else EXIT_FAILED
    return CommandResult(payload, exit_code, summary)


def cmd_status(args: argparse.Namespace) -> CommandResult:
    status = lyndon_service.representability_status(args.n)
    payload = _dump(status)
    if args.include_witness and status.representation is not None:
        payload["representation"] = _dump(
            representation_service.dump_representation(status.representation)
        )
    summary = [("álgebra", status.algebra), ("estado", status.status.value)]
    if status.reason:
        summary.append(("motivo", status.reason.value))
    return CommandResult(payload, summary=summary)


# ===== ECUACIONES =====

def _restricted_domain(alg: AtomStructure, path: Optional[str]) -> Optional[List[Element]]:
    if path is None:
        return None
    data = algebra_service.read_document(path)
    elements = data.get("elements")
    if not isinstance(elements, list):
        raise DocumentError(f"{path} debe tener una lista 'elements'")
    try:
        return [alg.element(names) for names in elements]
    except (TypeError, StructuralError) as e:
        raise DocumentError(f"{path}: elemento inválido ({e})") from e


def cmd_eq_check(args: argparse.Namespace) -> CommandResult:
    alg = algebra_service.load_algebra(args.algebra)
    eq = equation_parser.parse_equation(args.equation)
    restrict = _restricted_domain(alg, args.restrict)
    result = equation_service.holds(eq, alg, restrict_to=restrict, threads=args.threads)
    summary = [("ecuación", result.equation), ("álgebra", alg.name), ("resultado", result.result.value)]
    if result.witness is not None:
        summary += [(name, "+".join(value) or "0") for name, value in result.witness.items()]
    return CommandResult(_dump(result), EXIT_OK if result.holds else EXIT_FAILED, summary)


def cmd_eq_length(args: argparse.Namespace) -> CommandResult:
    eq = equation_parser.parse_equation(args.equation)
    return CommandResult(equation_service.length(eq))


def cmd_eq_parse(args: argparse.Namespace) -> CommandResult:
    eq = equation_parser.parse_equation(args.equation)
    names = equation_service.variables(eq)
    info = EquationInfo(
        equation=equation_parser.format_equation(eq),
        length=equation_service.length(eq),
        variables=names,
        num_variables=len(names),
    )
    return CommandResult(_dump(info), summary=[("canónica", info.equation), ("largo", info.length)])


# ===== SUBÁLGEBRAS Y EMBEDDINGS =====

def cmd_subalg(args: argparse.Namespace) -> CommandResult:
    alg = algebra_service.load_algebra(args.algebra)
    gens = algebra_service.parse_element_list(alg, args.generators)
    sub = subalgebra_service.generate(alg, gens)
    report = subalgebra_service.subalgebra_report(sub)
    return CommandResult(
        _dump(report),
        summary=[("álgebra", alg.name), ("tamaño", report.size), ("propia", report.proper)],
    )


def cmd_embed(args: argparse.Namespace) -> CommandResult:
    source = algebra_service.load_algebra(args.source)
    target = algebra_service.load_algebra(args.target)
    if args.source_generators is not None:
        gens = algebra_service.parse_element_list(source, args.source_generators)
        source = subalgebra_service.generate(source, gens)
    outcome = embedding_service.find_embedding(source, target, budget=args.budget)
    document = outcome.document()
    exit_code = {
        EmbeddingKind.FOUND: EXIT_OK,
        EmbeddingKind.NONE: EXIT_FAILED,
        EmbeddingKind.EXHAUSTED: EXIT_EXHAUSTED,
    }[outcome.kind]
    return CommandResult(
        _dump(document) if document is not None else None,
        exit_code,
        [("resultado", outcome.kind.value), ("nodos", outcome.nodes)],
    )


# ===== COTAS =====

def cmd_bounds(args: argparse.Namespace) -> CommandResult:
    table = bounds_service.emit_table(args.n_max, fmt=args.format)
    return CommandResult(table, raw=args.format == "csv", summary=[("filas", args.n_max + 1)])


def cmd_chain(args: argparse.Namespace) -> CommandResult:
    report = bounds_service.verify_chain(args.n)
    summary = [(f"{c.name} [{c.endpoint}]", "✅" if c.passed else "❌") for c in report.checks]
    return CommandResult(_dump(report), EXIT_OK if report.passed else EXIT_FAILED, summary)
