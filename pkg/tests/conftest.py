"""Shared fixtures.

The five demo instances double as the acceptance-suite corpus, so they are
built once per session from the same JSON configs the CLI uses.  Everything
here is deterministic: fixed seeds, fixed configs.
"""

from pathlib import Path

import numpy as np
import pytest

from sqcodes import cli, gensets, ltc

CONFIG_DIR = Path(__file__).resolve().parent.parent / "scripts" / "configs"

INSTANCE_CONFIGS = {
    "z8": "z8_rep2.json",
    "z12": "z12_par3_rep2.json",
    "z16": "z16_par4.json",
    "z18": "z18_ldpc.json",
    "psl16": "psl16_morgenstern.json",
}


def load_config(name: str) -> dict:
    return cli.load_config(str(CONFIG_DIR / name))


def _build(name: str) -> ltc.SquareCodeInstance:
    inst, _, _ = cli.build_instance(load_config(INSTANCE_CONFIGS[name]))
    return inst


@pytest.fixture(scope="session")
def z8_inst():
    return _build("z8")


@pytest.fixture(scope="session")
def z12_inst():
    return _build("z12")


@pytest.fixture(scope="session")
def z16_inst():
    return _build("z16")


@pytest.fixture(scope="session")
def z18_inst():
    return _build("z18")


@pytest.fixture(scope="session")
def psl16_inst():
    return _build("psl16")


@pytest.fixture(scope="session")
def small_instances(z8_inst, z12_inst, z16_inst, z18_inst):
    return [z8_inst, z12_inst, z16_inst, z18_inst]


@pytest.fixture(scope="session")
def all_instances(small_instances, psl16_inst):
    return small_instances + [psl16_inst]


@pytest.fixture(scope="session")
def psl16_pair():
    """Morgenstern generators over GF(2) lifted to PSL2(16)."""
    return gensets.morgenstern_pair(2, 4, variant="a_prime")


@pytest.fixture(scope="session")
def q4_pair():
    """Morgenstern generators over GF(4) lifted to PSL2(16): nontrivial
    unit-graph bounds and the degree-reduction target live here."""
    return gensets.morgenstern_pair(4, 2, variant="a_prime")


def corrupt(inst: ltc.SquareCodeInstance, seed: int, weight: int) -> np.ndarray:
    """Codeword plus `weight` distinct bit flips, reproducibly."""
    rng = np.random.default_rng(seed)
    f = ltc.random_codeword(inst, int(rng.integers(2**31)))
    if weight:
        for j in rng.choice(inst.n_bits, size=min(weight, inst.n_bits), replace=False):
            f[j] ^= 1
    return f
