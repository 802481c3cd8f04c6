import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvlab import (
    CurvatureTensor,
    InconsistentKappa,
    InconsistentTau,
    NoDominantEigenvalue,
    NotAlmostIsotropic,
    Subspace,
    almost_isotropy_scan,
    build_model,
    build_r1,
    build_ra,
    eigenspace_at,
    extremal_curvature,
    kappa_at,
    random_skew,
    recover_decomposition,
    standard_complex_structure,
    unit_sphere_samples,
)
from curvlab.models import block_diagonal_skew, plane_operator, two_plane_operator

from _oracles import diagonal_plane_tensor


def block_model_4d():
    j = standard_complex_structure(4)
    w1 = Subspace.span([np.eye(4)[0], np.eye(4)[1]])
    a, _ = two_plane_operator(j, 2.0, 0.5, w1)
    return build_model(1.0, 1, a), a


def skew_match(recovered, expected):
    """Distance to the expected operator modulo the unobservable global sign."""
    return min(
        float(np.max(np.abs(recovered - expected))),
        float(np.max(np.abs(recovered + expected))),
    )


class TestKappaAt:
    def test_block_model_cluster(self):
        model, _ = block_model_4d()
        kappa, multiplicity = kappa_at(model, np.eye(4)[0])
        assert kappa == pytest.approx(1.0, abs=1e-12)
        assert multiplicity == 2

    def test_r1_full_multiplicity(self):
        for d in (4, 5, 6):
            kappa, multiplicity = kappa_at(build_r1(d), np.eye(d)[0])
            assert kappa == pytest.approx(1.0, abs=1e-13)
            assert multiplicity == d - 1

    def test_broken_cluster_raises(self):
        # distinct plane curvatures at e1 leave no window of size d-2
        comp = build_r1(4).components + diagonal_plane_tensor(
            4, {(0, 1): 0.5, (0, 2): 1.0}
        )
        tensor = CurvatureTensor(4, comp)
        with pytest.raises(NoDominantEigenvalue):
            kappa_at(tensor, np.eye(4)[0])

    def test_dimension_three_ambiguous(self):
        with pytest.raises(ValueError):
            kappa_at(build_r1(3), np.eye(3)[0])


class TestAlmostIsotropyScan:
    def test_model_tensor_detected(self):
        model = build_model(-2.0, 1, random_skew(6, 12))
        report = almost_isotropy_scan(model)
        assert report.is_almost_isotropic
        assert not report.is_isotropic
        assert report.kappa == pytest.approx(-2.0, abs=1e-9)
        assert report.samples_used == 12

    def test_scaled_r1_isotropic(self):
        report = almost_isotropy_scan(3.0 * build_r1(5))
        assert report.is_isotropic
        assert report.is_almost_isotropic
        assert report.kappa == pytest.approx(3.0, abs=1e-12)

    def test_rank_two_perturbation_rejected(self):
        # two independent skew deviations break the rank-one condition
        a = random_skew(6, 1)
        b = random_skew(6, 2)
        comp = (
            build_r1(6).components
            + 0.5 * build_ra(a).components
            + 0.5 * build_ra(b).components
        )
        tensor = CurvatureTensor(6, comp)
        report = almost_isotropy_scan(tensor)
        assert not report.is_almost_isotropic
        assert report.worst_rank_residual > 1e-3
        # oracle: the deviation spectrum at a generic sample has two large entries
        s = unit_sphere_samples(6, 8, seed=3)[7]
        q = Subspace.span([s]).complement().basis
        jac = np.einsum("ijkl,j,k->li", comp, s, s)
        eigenvalues = np.linalg.eigvalsh(q.T @ jac @ q)
        deviations = np.sort(np.abs(eigenvalues - 1.0))[::-1]
        assert deviations[1] > 1e-3

    def test_inconsistent_kappa_raises(self):
        # clean size-2 clusters at the basis vectors, but at two different values
        curvatures = {
            (0, 1): 1.0, (0, 2): 1.0, (0, 3): 9.0,
            (1, 2): 5.0, (1, 3): 5.0, (2, 3): 5.0,
        }
        tensor = CurvatureTensor(4, diagonal_plane_tensor(4, curvatures))
        with pytest.raises(InconsistentKappa):
            almost_isotropy_scan(tensor, n_samples=4)

    def test_dimension_three_vote(self):
        a = random_skew(3, 5)
        model = build_model(0.75, -1, a)
        report = almost_isotropy_scan(model)
        assert report.is_almost_isotropic
        assert report.kappa == pytest.approx(0.75, abs=1e-9)

    def test_dimension_two_isotropic(self):
        report = almost_isotropy_scan(-1.5 * build_r1(2))
        assert report.is_isotropic
        assert report.kappa == pytest.approx(-1.5, abs=1e-12)


class TestExtremalCurvature:
    def test_block_model_values(self):
        model, _ = block_model_4d()
        assert extremal_curvature(model, 1.0, np.eye(4)[0]) == pytest.approx(
            13.0, abs=1e-12
        )
        assert extremal_curvature(model, 1.0, np.eye(4)[2]) == pytest.approx(
            1.75, abs=1e-12
        )

    def test_isotropic_tensor_lambda_equals_kappa(self):
        r1 = build_r1(5)
        for s in unit_sphere_samples(5, 8, seed=2):
            assert extremal_curvature(r1, 1.0, s) == pytest.approx(1.0, abs=1e-12)

    @given(seed=st.integers(0, 5_000), d=st.sampled_from([4, 6]))
    def test_lambda_relation_property(self, seed, d):
        rng = np.random.default_rng(seed)
        kappa = float(rng.uniform(-2, 2))
        tau = int(rng.choice([-1, 1]))
        a = random_skew(d, seed)
        model = build_model(kappa, tau, a)
        for s in unit_sphere_samples(d, 6, seed):
            expected = kappa + 3.0 * tau * float(np.dot(a @ s, a @ s))
            assert extremal_curvature(model, kappa, s) == pytest.approx(
                expected, abs=1e-8 * max(1.0, abs(expected))
            )


class TestEigenspaceAt:
    def test_block_model_complement(self):
        model, _ = block_model_4d()
        space = eigenspace_at(model, 1.0, np.eye(4)[0])
        expected = Subspace.span([np.eye(4)[2], np.eye(4)[3]])
        assert space.dimension == 2
        assert space.angle_to(expected) < 1e-10

    def test_isotropic_tensor_full_complement(self):
        space = eigenspace_at(build_r1(4), 1.0, np.eye(4)[0])
        assert space.dimension == 3

    def test_kernel_point_full_complement(self):
        j = standard_complex_structure(6)
        w = Subspace.span([np.eye(6)[0], np.eye(6)[1]])
        model = build_model(1.0, 1, plane_operator(j, w))
        space = eigenspace_at(model, 1.0, np.eye(6)[4])  # e5 lies in ker(A)
        assert space.dimension == 5


class TestRecoverDecomposition:
    def test_block_model_roundtrip(self):
        model, a = block_model_4d()
        decomposition = recover_decomposition(model)
        assert decomposition.kappa == pytest.approx(1.0, abs=1e-10)
        assert decomposition.tau == 1
        assert skew_match(decomposition.skew, a) < 1e-8
        assert decomposition.residual < 1e-10

    def test_isotropic_input(self):
        decomposition = recover_decomposition(3.0 * build_r1(5))
        assert decomposition.kappa == pytest.approx(3.0, abs=1e-12)
        assert decomposition.tau == 0
        assert not np.any(decomposition.skew)

    def test_negative_scale_flat_model(self):
        # c * R_{J P_W} with c = -4: tau carries the sign, A the magnitude
        j = standard_complex_structure(4)
        w = Subspace.span([np.eye(4)[0], np.eye(4)[1]])
        base = plane_operator(j, w)
        tensor = -4.0 * build_ra(base)
        decomposition = recover_decomposition(tensor)
        assert decomposition.kappa == pytest.approx(0.0, abs=1e-12)
        assert decomposition.tau == -1
        assert skew_match(decomposition.skew, 2.0 * base) < 1e-10

    def test_block_diagonal_disjoint_blocks(self):
        # basis-disjoint blocks force the mixed-direction probes to run
        for d, scales in ((4, [1.5, -0.8]), (6, [1.0, 2.0, 0.5]), (8, [1.2, 0.9])):
            a = block_diagonal_skew(d, scales)
            model = build_model(-1.0, 1, a)
            decomposition = recover_decomposition(model)
            assert skew_match(decomposition.skew, a) < 1e-9
            assert decomposition.residual < 1e-10

    def test_kernel_operator(self):
        a = block_diagonal_skew(8, [1.4, 0.6])  # 4-dimensional kernel
        model = build_model(0.5, -1, a)
        decomposition = recover_decomposition(model)
        assert decomposition.tau == -1
        assert skew_match(decomposition.skew, a) < 1e-9

    def test_not_almost_isotropic_raises(self):
        comp = (
            build_r1(6).components
            + 0.5 * build_ra(random_skew(6, 1)).components
            + 0.5 * build_ra(random_skew(6, 2)).components
        )
        with pytest.raises(NotAlmostIsotropic):
            recover_decomposition(CurvatureTensor(6, comp))

    def test_inconsistent_tau_raises(self):
        # rank-one deviations of opposite signs at different basis vectors;
        # restricted to basis samples so the per-sample screens all pass
        curvatures = {
            (0, 1): 1.0, (0, 2): 1.0, (0, 3): 4.0,
            (1, 2): -2.0, (1, 3): 1.0, (2, 3): 1.0,
        }
        tensor = CurvatureTensor(4, diagonal_plane_tensor(4, curvatures))
        with pytest.raises(InconsistentTau):
            recover_decomposition(tensor, n_samples=4)

    def test_dimension_three_roundtrip(self):
        a = random_skew(3, 9)
        model = build_model(1.25, -1, a)
        decomposition = recover_decomposition(model)
        assert decomposition.kappa == pytest.approx(1.25, abs=1e-10)
        assert decomposition.tau == -1
        assert skew_match(decomposition.skew, a) < 1e-10

    def test_dimension_two_collapses_to_isotropic(self):
        # in dimension 2 the skew tensor is itself isotropic (RA = |a|^2 R1),
        # so the normalized decomposition absorbs it into kappa
        j = standard_complex_structure(2)
        tensor = build_model(0.5, 1, 2.0 * j)
        decomposition = recover_decomposition(tensor)
        assert decomposition.kappa == pytest.approx(12.5, abs=1e-12)
        assert decomposition.tau == 0

    def test_tolerance_separates_noise_from_structure(self):
        # a second skew deviation far below tol reads as rounding noise;
        # the same deviation above tol breaks the rank-one condition
        a = random_skew(6, 4)
        b = random_skew(6, 5)
        base = build_model(1.0, 1, a)
        noisy = CurvatureTensor(6, base.components + 1e-12 * build_ra(b).components)
        decomposition = recover_decomposition(noisy)
        assert abs(decomposition.kappa - 1.0) < 1e-10
        assert skew_match(decomposition.skew, a) < 1e-10
        broken = CurvatureTensor(6, base.components + 1e-6 * build_ra(b).components)
        with pytest.raises(NotAlmostIsotropic):
            recover_decomposition(broken)

    @given(
        seed=st.integers(0, 10_000),
        d=st.sampled_from([4, 6, 8]),
        tau=st.sampled_from([-1, 1]),
    )
    def test_roundtrip_property(self, seed, d, tau):
        rng = np.random.default_rng(seed)
        kappa = float(rng.uniform(-2, 2))
        a = random_skew(d, seed)
        model = build_model(kappa, tau, a)
        decomposition = recover_decomposition(model)
        assert abs(decomposition.kappa - kappa) < 1e-8
        assert decomposition.residual < 1e-8
        assert decomposition.tau == tau
        assert skew_match(decomposition.skew, a) < 1e-8
