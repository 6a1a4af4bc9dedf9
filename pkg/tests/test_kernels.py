import os
import subprocess
import sys

import numpy as np
import pytest

from vaguespace import kernels
from vaguespace.algebra import (
    AlgebraTriple,
    Negation,
    TConorm,
    TNorm,
    fold_tconorm,
    fold_tnorm,
    negation_eval,
    residuum,
    tconorm_eval,
    tnorm_eval,
)
from vaguespace.space import MembershipSpace, check_axioms

BACKENDS = [b for b in (kernels.numpy_backend, kernels.numba_backend) if b is not None]


@pytest.fixture(scope="module")
def samples():
    rng = np.random.default_rng(11)
    x = rng.uniform(size=400)
    y = rng.uniform(size=400)
    # include the boundary values the closed forms branch on
    x[:6] = [0.0, 1.0, 1.0, 0.0, 0.5, 1.0]
    y[:6] = [0.0, 1.0, 0.0, 1.0, 0.5, 0.3]
    return x, y


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
@pytest.mark.parametrize("family", list(TNorm))
def test_tnorm_matches_scalar(backend, family, samples):
    x, y = samples
    got = backend.tnorm(family.code, x, y)
    want = [tnorm_eval(family, a, b) for a, b in zip(x, y)]
    np.testing.assert_array_equal(got, want)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
@pytest.mark.parametrize("family", list(TConorm))
def test_tconorm_matches_scalar(backend, family, samples):
    x, y = samples
    got = backend.tconorm(family.code, x, y)
    want = [tconorm_eval(family, a, b) for a, b in zip(x, y)]
    np.testing.assert_array_equal(got, want)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
@pytest.mark.parametrize("kind", list(Negation))
def test_negation_matches_scalar(backend, kind, samples):
    x, _ = samples
    np.testing.assert_array_equal(backend.negation(kind.code, x), [negation_eval(kind, a) for a in x])


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
@pytest.mark.parametrize("family", list(TNorm))
def test_residuum_matches_scalar_and_oracle(backend, family, samples):
    x, y = samples
    got = backend.residuum(family.code, x, y)
    np.testing.assert_allclose(got, [residuum(family, a, b) for a, b in zip(x, y)], rtol=0, atol=1e-15)
    np.testing.assert_allclose(backend.residuum_oracle(family.code, x, y), got, rtol=0, atol=1e-6)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
def test_folds_match_scalar(backend):
    rng = np.random.default_rng(3)
    m = rng.uniform(size=(50, 5))
    for t in TNorm:
        np.testing.assert_array_equal(backend.fold_tnorm(t.code, m), [fold_tnorm(t, r) for r in m])
    for s in TConorm:
        np.testing.assert_array_equal(backend.fold_tconorm(s.code, m), [fold_tconorm(s, r) for r in m])
    np.testing.assert_array_equal(backend.fold_tnorm(0, np.empty((3, 0))), np.ones(3))
    np.testing.assert_array_equal(backend.fold_tconorm(0, np.empty((3, 0))), np.zeros(3))


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
@pytest.mark.parametrize("tnorm", list(TNorm))
def test_axiom_flags_match_scalar_checker(backend, tnorm):
    rng = np.random.default_rng(5)
    alg = AlgebraTriple(tnorm)
    deg = rng.dirichlet(np.ones(4), size=300) * rng.uniform(0.0, 1.3, size=(300, 1))
    deg = np.clip(deg, 0.0, 1.0)
    deg[:3] = [[0, 0, 0, 0], [1, 0, 0, 0], [1, 0.2, 0, 0]]
    neg = 1.0 - deg
    neg[::7] *= 0.9  # some non-regular rows
    flags = backend.axiom_flags(alg.tnorm.code, alg.tconorm.code, alg.negation.code, deg, neg, 1e-9)
    names = ("a", "b", "c", "d")
    for i in range(len(deg)):
        space = MembershipSpace.from_values(names, deg[i], alg, negation_overrides=dict(zip(names, neg[i])))
        rep = check_axioms(space, require_v_prime=True)
        want = [rep.verdicts[k].passed for k in ("I", "III", "V", "V_prime")]
        assert list(flags[:, i]) == want, i


def test_env_flag_selects_numpy():
    code = "from vaguespace import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, VAGUESPACE_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["VAGUESPACE_NO_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("numba" if kernels.numba_backend is not None else "numpy")
