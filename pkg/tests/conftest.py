import numpy as np
import pytest

import orliczkit as ok


@pytest.fixture(scope="session")
def family_power_affine():
    return ok.power_family(ok.ExponentField.affine(2.0, 1.0))


@pytest.fixture(scope="session")
def family_power_p2():
    return ok.power_family(ok.ExponentField.constant(2.0))


@pytest.fixture(scope="session")
def family_power_p4():
    return ok.power_family(ok.ExponentField.constant(4.0))


@pytest.fixture(scope="session")
def family_logquot_affine():
    return ok.log_quotient_family(ok.ExponentField.affine(3.0, 1.0))


@pytest.fixture(scope="session")
def family_logquot_p3():
    return ok.log_quotient_family(ok.ExponentField.constant(3.0))


@pytest.fixture(scope="session")
def family_logweight():
    return ok.log_weight_family(ok.ExponentField.affine(2.0, 1.0), 1.0)


@pytest.fixture(scope="session")
def family_logweight_p2():
    return ok.log_weight_family(ok.ExponentField.constant(2.0), 1.0)


@pytest.fixture(scope="session")
def all_families(family_power_affine, family_logquot_affine, family_logweight):
    return [family_power_affine, family_logquot_affine, family_logweight]


@pytest.fixture(scope="session")
def grid_1d():
    return ok.make_grid(1, [(0.0, 1.0)], [101])


@pytest.fixture(scope="session")
def grid_2d():
    return ok.make_grid(2, [(0.0, 1.0), (0.0, 1.0)], [33, 33])


@pytest.fixture(scope="session")
def reaction_q2():
    return ok.power_reaction(ok.ExponentField.constant(2.0))


@pytest.fixture(scope="session")
def all_reactions():
    return [ok.power_reaction(ok.ExponentField.constant(2.0)),
            ok.power_log_reaction(ok.ExponentField.constant(4.0)),
            ok.power_sin_reaction(ok.ExponentField.constant(3.0))]


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
