from pathlib import Path

import numpy as np
import pytest

from nlab.algebroid import BracketKind, BracketVariant, SignExponent
from nlab.calculus import exterior_derivative
from nlab.dsl import parse_scene
from nlab.exterior import interior_product

SCENES = Path(__file__).resolve().parent.parent / "scenes"

IBANEZ = BracketVariant(BracketKind.IBANEZ, SignExponent.DIMENSION)
IBANEZ_ORDER = BracketVariant(BracketKind.IBANEZ, SignExponent.ORDER)
HAGIWARA = BracketVariant(BracketKind.HAGIWARA)


class WrongSignVariant(BracketVariant):
    """Ibanez bracket with the pairing term's sign flipped"""

    def ibanez_sign(self, structure):
        return -super().ibanez_sign(structure)


class NonLeibnizVariant(BracketVariant):
    """Bracket perturbed by i_{Pi(a)} db, which breaks the Leibniz rule"""

    def assemble(self, structure, alpha, beta, anchor_alpha):
        result = super().assemble(structure, alpha, beta, anchor_alpha)
        return result + interior_product(anchor_alpha, exterior_derivative(beta))


def scene_path(name):
    return str(SCENES / f"{name}.nlab")


def load_scene(name):
    return parse_scene((SCENES / f"{name}.nlab").read_text(encoding="utf-8"))


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture(scope="session")
def canonical_r3():
    return load_scene("canonical_r3")


@pytest.fixture(scope="session")
def poisson_r2():
    return load_scene("poisson_r2")


@pytest.fixture(scope="session")
def poisson_r4():
    return load_scene("poisson_r4")


@pytest.fixture(scope="session")
def symplectic_r4():
    return load_scene("symplectic_r4")


@pytest.fixture(scope="session")
def nambu_x1_r4():
    return load_scene("nambu_x1_r4")


@pytest.fixture(scope="session")
def bad_r6():
    return load_scene("bad_r6")
