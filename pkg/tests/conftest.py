import itertools
import json
import pathlib
import random

import pytest

from rzeta.f2linalg import MatF2, VecF2
from rzeta.group import AffineAut, DiagZ2Group, validate

ROOT = pathlib.Path(__file__).resolve().parents[1]
INSTANCES = ROOT / "instances"

FIB = [[1, 1], [1, 0]]
CAT = [[2, 1], [1, 1]]


@pytest.fixture
def rng():
    return random.Random(20241018)


@pytest.fixture
def fibonacci():
    return validate(DiagZ2Group(2, 2), AffineAut.of(FIB, [0, 0]))


def all_vectors(n):
    for bits in itertools.product((0, 1), repeat=n):
        yield list(bits)


def brute_count(a_rows, b):
    """Solutions of a x = b over GF(2) by plain list arithmetic."""
    cols = len(a_rows[0]) if a_rows else 0
    hits = 0
    for x in all_vectors(cols):
        if all(sum(r[j] * x[j] for j in range(cols)) % 2 == bi for r, bi in zip(a_rows, b)):
            hits += 1
    return hits


def curated_instances():
    for path in sorted(INSTANCES.glob("*.json")):
        yield path, json.loads(path.read_text())


def mat(rows):
    return MatF2.from_rows(rows)


def vec(entries):
    return VecF2.from_list(entries)
