"""Shared fixtures: the genus-2 Penner example, a symmetric genus-3 system and random systems."""

from __future__ import annotations

from pathlib import Path

import pytest

from hfrank import carrying as cy
from hfrank import documents as doc
from hfrank import penner as pn

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def genus2_system() -> pn.PennerCurveSystem:
    cs, _ = doc.parse_system(doc.load_json(FIXTURES / "genus2_system.json"))
    return cs


@pytest.fixture(scope="session")
def genus2_word(genus2_system) -> pn.TwistWord:
    return pn.canonical_word(genus2_system)


@pytest.fixture(scope="session")
def genus2_track(genus2_system):
    return pn.build_track(genus2_system)


@pytest.fixture(scope="session")
def genus2_carrying(genus2_system, genus2_word) -> cy.CarryingMap:
    return pn.word_carrying(genus2_system, genus2_word)


@pytest.fixture(scope="session")
def symmetric_system() -> pn.PennerCurveSystem:
    """Genus-3 system with a reflection symmetry fixing one crossing."""
    cs, _ = doc.parse_system(doc.load_json(FIXTURES / "genus3_symmetric_system.json"))
    return cs


@pytest.fixture(scope="session")
def reflection(symmetric_system) -> cy.CarryingMap:
    return pn.symmetry_carrying(symmetric_system, {f"x{i}": f"x{(3 - i) % 5}" for i in range(5)})


@pytest.fixture(scope="session")
def random_systems() -> list[pn.PennerCurveSystem]:
    return list(pn.random_filling_systems(seed=20240601, count=24, max_crossings=8, max_curves=3))


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
