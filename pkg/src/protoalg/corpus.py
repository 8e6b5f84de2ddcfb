"""Bundled example definitions and loading helpers."""
from __future__ import annotations

from importlib import resources

from .errors import ProtoAlgError
from .execution import ProtoAlgorithm
from .frontend.parser import Document, parse_or_raise
from .graph import AlgorithmGraph

FIXTURES = (
    "cd",
    "cd_renamed",
    "cyc_a",
    "cyc_b",
    "diamond_a",
    "diamond_b",
    "minimal",
    "swap_a",
    "swap_b",
)


def fixture_text(name: str) -> str:
    path = resources.files("protoalg").joinpath("fixtures", f"{name}.palg")
    return path.read_text(encoding="utf-8")


def document_to_algorithm(doc: Document) -> ProtoAlgorithm:
    """Validated proto-algorithm from a parsed document with GRAPH and INTERP."""
    if doc.alphabet is None or doc.graph is None or doc.interp is None:
        raise ProtoAlgError("document needs ALPHABET, GRAPH, and INTERP sections")
    graph = AlgorithmGraph.checked(doc.alphabet, doc.graph)
    return ProtoAlgorithm.checked(doc.alphabet, graph, doc.interp)


def load_fixture(name: str) -> ProtoAlgorithm:
    return document_to_algorithm(parse_or_raise(fixture_text(name)))
