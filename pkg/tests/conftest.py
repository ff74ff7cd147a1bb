import pathlib

import pytest

from newtonmaps import enumerate_newton, label_atlas, make_map, parse

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def n2():
    return parse(fixture_text("n2.map"))


@pytest.fixture(scope="session")
def case1():
    return parse(fixture_text("case1.map"))


@pytest.fixture(scope="session")
def case3():
    return parse(fixture_text("case3.map"))


@pytest.fixture(scope="session")
def atlas2():
    return enumerate_newton(2)


@pytest.fixture(scope="session")
def atlas3():
    return label_atlas(enumerate_newton(3))


def build_sphere_n2():
    # same four parallel edges as the torus model, one rotation reversed
    return make_map(
        [("a", ("v1", "v2")), ("b", ("v1", "v2")), ("c", ("v1", "v2")), ("d", ("v1", "v2"))],
        {"v1": ["a", "b", "c", "d"], "v2": ["a", "d", "c", "b"]},
    )


def build_efail_n2():
    # toroidal counts but one facial walk repeats edge a
    return make_map(
        [("a", ("v1", "v2")), ("b", ("v1", "v2")), ("c", ("v1", "v2")), ("d", ("v1", "v2"))],
        {"v1": ["a", "b", "c", "d"], "v2": ["a", "c", "b", "d"]},
    )


def build_chiral():
    """Order-3 class with delta = delta* = (5,5,2), reflectively but not
    orientation-preservingly self-dual."""
    return make_map(
        [
            ("a", ("v1", "v2")),
            ("b", ("v1", "v3")),
            ("c", ("v2", "v3")),
            ("d", ("v2", "v3")),
            ("e", ("v2", "v3")),
            ("f", ("v2", "v3")),
        ],
        {
            "v1": ["a", "b"],
            "v2": ["a", "c", "d", "e", "f"],
            "v3": ["b", "c", "d", "f", "e"],
        },
    )


def build_grid4():
    """Quadrangulated torus on four vertices: passes every filter at
    order 4 but the A-property is out of reach there."""
    edges = []
    rot = {}
    for i in range(2):
        for j in range(2):
            edges.append((f"E{i}{j}", (f"v{i}{j}", f"v{(i + 1) % 2}{j}")))
            edges.append((f"N{i}{j}", (f"v{i}{j}", f"v{i}{(j + 1) % 2}")))
    for i in range(2):
        for j in range(2):
            rot[f"v{i}{j}"] = [
                f"E{i}{j}",
                f"N{i}{j}",
                f"E{(i + 1) % 2}{j}",
                f"N{i}{(j + 1) % 2}",
            ]
    return make_map(edges, rot)


def build_loop_map():
    return parse(
        "order 2\n"
        "edge a w w\n"
        "edge b w x\n"
        "edge c w x\n"
        "rot w a.0 a.1 b c\n"
        "rot x b c\n"
    )
