"""Shared fixtures: lattices, standard regions and synthetic statistics."""

import math

import numpy as np
import pytest

from src.lattice.bipartition import Bipartition, region_stats, synthetic_stats
from src.lattice.colex import build_torus_colex, build_triangular_colex
from src.lattice.regions import parse_region_spec

LN2 = math.log(2.0)


@pytest.fixture(scope="session")
def torus33():
    return build_torus_colex(3, 3)


@pytest.fixture(scope="session")
def torus99():
    return build_torus_colex(9, 9)


@pytest.fixture(scope="session")
def steane():
    return build_triangular_colex(1)


@pytest.fixture(scope="session")
def triangular6():
    return build_triangular_colex(6)


@pytest.fixture(scope="session")
def hexagon_region(torus33):
    bp = Bipartition(torus33, torus33.plaquette_support(0), "hexagon:0")
    return bp, region_stats(torus33, bp)


@pytest.fixture(scope="session")
def torus_topo_stats(torus99):
    return parse_region_spec(torus99, "levinwen:2,1").geometry.stats


@pytest.fixture(scope="session")
def planar_topo_stats(triangular6):
    return parse_region_spec(triangular6, "levinwen:2,1").geometry.stats


def synthetic_topo_stats(n, sigma_a, cut_2, cut_3, inner, sigma_ab_1, ab_extra_2, ab_extra_3):
    """
    Four torus statistics obeying the component-count and sum-rule relations.

    All per-color arguments are length-3 sequences (red, blue, green).
    """
    sigma_a = np.asarray(sigma_a)
    cut_2, cut_3, inner = np.asarray(cut_2), np.asarray(cut_3), np.asarray(inner)
    ab_1 = np.asarray(sigma_ab_1)
    ab_2 = ab_1 + np.asarray(ab_extra_2)
    ab_3 = ab_1 + np.asarray(ab_extra_3)
    ab_4 = ab_2 + ab_3 - ab_1
    a_1, a_2, a_3 = sigma_a, sigma_a - cut_2, sigma_a - cut_3
    a_4 = a_2 + a_3 - a_1
    return [
        synthetic_stats(a_1, [inner, n - a_1 - inner], ab_1, m_a=1, label="s1"),
        synthetic_stats(a_2, [n - a_2], ab_2, m_a=1, label="s2"),
        synthetic_stats(a_3, [n - a_3], ab_3, m_a=1, label="s3"),
        synthetic_stats(a_4, [n - a_4], ab_4, m_a=2, label="s4"),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
