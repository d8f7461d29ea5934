import numpy as np
import pytest

from schmidt_kit.errors import DimensionMismatch, InvalidCertificate, NotAState, NotSupported
from schmidt_kit.mixed import (
    DensityMatrix,
    exact_gram_schmidt,
    make_uniform_state,
    maximally_mixed,
    mixture,
    pure_density,
    schmidt_number_lower_bound,
    schmidt_number_upper_bound,
    support_basis,
    supported_on,
)
from schmidt_kit.states import PureState, schmidt_rank
from schmidt_kit.subspace import RankCertificate, build_basis, certify

_CERTS = {}


def cert_for(m, n):
    if (m, n) not in _CERTS:
        _CERTS[(m, n)] = certify(m, n, trials=200, seed=11)
    return _CERTS[(m, n)]


def bell_density():
    v = np.zeros(4)
    v[0] = v[3] = 1
    return pure_density(v, 2, 2)


def basis_vec(m, n, idx=0):
    return build_basis(m, n).elements[idx].vector.to_pure()


def test_density_validation():
    maximally_mixed(3, 3).validate()
    with pytest.raises(NotAState):
        DensityMatrix(2, 2, np.diag([1.0, 1.0, 0, 0])).validate()
    with pytest.raises(NotAState):
        DensityMatrix(2, 2, np.diag([1.5, -0.5, 0, 0])).validate()
    bad = np.zeros((4, 4), dtype=complex)
    bad[0, 0] = 1
    bad[0, 1] = 0.5j
    with pytest.raises(NotAState):
        DensityMatrix(2, 2, bad).validate()
    with pytest.raises(DimensionMismatch):
        DensityMatrix(2, 2, np.eye(3) / 3)


def test_support_of_pure_state(rng):
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    sup = support_basis(pure_density(v, 2, 3))
    assert sup.shape == (6, 1)
    overlap = abs(np.vdot(sup[:, 0], v / np.linalg.norm(v)))
    assert np.isclose(overlap, 1.0)


def test_support_of_diagonal_mixture():
    rho = DensityMatrix(2, 2, np.diag([0.5, 0, 0, 0.5]))
    sup = support_basis(rho)
    assert sup.shape[1] == 2
    # both vectors live on span{e0e0, e1e1}
    np.testing.assert_allclose(np.abs(sup[[1, 2], :]), 0, atol=1e-14)


def test_support_of_uniform_3x4():
    assert support_basis(make_uniform_state(build_basis(3, 4))).shape[1] == 2


def test_supported_on_examples():
    assert supported_on(pure_density(basis_vec(3, 3)), build_basis(3, 3))
    assert not supported_on(maximally_mixed(3, 3), build_basis(3, 3))
    assert supported_on(make_uniform_state(build_basis(4, 4)), build_basis(4, 4))
    with pytest.raises(DimensionMismatch):
        supported_on(maximally_mixed(3, 4), build_basis(3, 3))


def test_lower_bound_examples():
    for m, n in [(3, 3), (4, 4)]:
        basis = build_basis(m, n)
        w = schmidt_number_lower_bound(make_uniform_state(basis), basis, cert_for(m, n))
        assert w.lower_bound == 3
        assert w.certificate_ref == cert_for(m, n).digest()
        assert w.support_dimension == basis.dimension
        assert max(w.support_check) < 1e-12
    single = pure_density(basis_vec(3, 3))
    assert schmidt_number_lower_bound(single, build_basis(3, 3), cert_for(3, 3)).lower_bound == 3


def test_lower_bound_refuses_product_state():
    rho = pure_density(PureState.basis(3, 3, 0, 0))
    with pytest.raises(NotSupported):
        schmidt_number_lower_bound(rho, build_basis(3, 3), cert_for(3, 3))


def test_lower_bound_refuses_bad_certificate():
    basis = build_basis(3, 3)
    rho = make_uniform_state(basis)
    with pytest.raises(InvalidCertificate):
        schmidt_number_lower_bound(rho, basis, cert_for(4, 4))
    d = cert_for(3, 3).to_json()
    d["minor_reports"][0]["minors"][0]["value"] = "0/1"
    with pytest.raises(InvalidCertificate):
        schmidt_number_lower_bound(rho, basis, RankCertificate.from_json(d))


def test_upper_bound_examples():
    assert schmidt_number_upper_bound(bell_density()) == 2
    assert schmidt_number_upper_bound(pure_density(PureState.basis(2, 3, 1, 2))) == 1
    assert schmidt_number_upper_bound(make_uniform_state(build_basis(3, 3))) == 3


def test_pure_state_bounds(rng):
    for m, n in [(3, 3), (4, 5)]:
        basis = build_basis(m, n)
        for _ in range(5):
            c = rng.normal(size=basis.dimension) + 1j * rng.normal(size=basis.dimension)
            psi = sum(ci * e.vector.to_pure().amplitudes for ci, e in zip(c, basis.elements))
            state = PureState(m, n, psi)
            rho = pure_density(state)
            up = schmidt_number_upper_bound(rho)
            assert up == schmidt_rank(state)
            low = schmidt_number_lower_bound(rho, basis, cert_for(m, n)).lower_bound
            assert low == 3 <= up


def test_uniform_state_properties():
    for m, n in [(3, 3), (3, 4), (4, 4), (4, 6)]:
        basis = build_basis(m, n)
        rho = make_uniform_state(basis)
        rho.validate()
        evals = np.linalg.eigvalsh(rho.entries)
        nz = evals[evals > 1e-10]
        assert nz.size == basis.dimension
        np.testing.assert_allclose(nz, 1 / basis.dimension, atol=1e-12)
        assert supported_on(rho, basis)


def test_uniform_3x3_is_projector():
    v = basis_vec(3, 3).amplitudes
    v = v / np.linalg.norm(v)
    np.testing.assert_allclose(make_uniform_state(build_basis(3, 3)).entries, np.outer(v, v.conj()), atol=1e-15)


def test_exact_gram_schmidt_orthogonal():
    basis = build_basis(4, 5)
    ortho = exact_gram_schmidt([e.vector.amplitudes for e in basis.elements])
    assert len(ortho) == basis.dimension
    for a in range(len(ortho)):
        for b in range(a + 1, len(ortho)):
            ip = sum((x.conjugate() * y for x, y in zip(ortho[a], ortho[b])), start=0)
            assert ip == 0


def test_product_mixtures_are_not_supported(rng):
    basis = build_basis(4, 4)
    cert = cert_for(4, 4)
    for _ in range(5):
        vecs = [basis_vec(4, 4, i).amplitudes for i in range(2)]
        u, w = rng.normal(size=4), rng.normal(size=4)
        vecs.append(np.kron(u, w))
        rho = mixture(vecs, rng.uniform(0.1, 1, size=3), 4, 4)
        assert not supported_on(rho, basis)
        with pytest.raises(NotSupported):
            schmidt_number_lower_bound(rho, basis, cert)


def test_witness_independent_of_weights(rng):
    basis = build_basis(4, 4)
    cert = cert_for(4, 4)
    ref = schmidt_number_lower_bound(make_uniform_state(basis), basis, cert)
    for _ in range(5):
        rho = make_uniform_state(basis, weights=rng.uniform(0.05, 1.0, size=basis.dimension))
        w = schmidt_number_lower_bound(rho, basis, cert)
        assert (w.lower_bound, w.certificate_ref, w.support_dimension) == (
            ref.lower_bound, ref.certificate_ref, ref.support_dimension)
