"""Shared builders for the reference systems and frameworks."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from flexcert import fileio, quadsys, rigidity
from flexcert.corpus import corpus_path
from flexcert.ratlinalg import vector


def load_corpus_system(name):
    sys_, base = fileio.load_system(corpus_path(name))
    assert base is not None
    return sys_, base


def load_corpus_framework(name):
    fw, auto = fileio.load_framework(corpus_path(name))
    return fw, auto


@pytest.fixture
def hyperboloid_line():
    """Quadric plus two planes meeting in a line through (5,5,7)."""
    return load_corpus_system("example1.json")


@pytest.fixture
def cusp_system():
    """x1^3 = x2^2 rewritten with the auxiliary x3 = x1^2, base at origin."""
    return load_corpus_system("example2.json")


@pytest.fixture
def viviani_system():
    """Sphere of radius 2 with a tangent cylinder of radius 1, base (2,0,0)."""
    return load_corpus_system("example3.json")


@pytest.fixture
def tangent_sphere_cylinder():
    """Sphere, cylinder touching it at (2,0,0) only, and the plane x2 = 0."""
    return load_corpus_system("example4.json")


@pytest.fixture
def circle_system():
    return load_corpus_system("circle.json")


SYSTEM_CORPUS = [
    "example1.json",
    "example2.json",
    "example3.json",
    "example4.json",
    "circle.json",
]

FRAMEWORK_CORPUS = [
    "triangle.json",
    "square.json",
    "cross_braced_square.json",
    "k4.json",
    "bricard_octahedron.json",
]
