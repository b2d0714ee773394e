#include "pca/complex_structure.hpp"
#include "pca/fermion.hpp"
#include "pca/interactions.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pca;

namespace {

LatticeSpec spec_of(int n, Species s) {
    LatticeSpec l;
    l.n_x = n;
    l.species = s;
    return l;
}

RVec random_real(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    RVec v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

}  // namespace

TEST(Structure, BSquaredFollowsOddSlotCount) {
    for (int n : {3, 5, 7, 9}) {
        for (Species sp : {Species::MW_R, Species::Dirac}) {
            auto s = spec_of(n, sp);
            auto m = structure_matrices(s);
            // each register holds (n-1)/2 odd slots
            int odd = (n - 1) / 2 * s.n_species();
            auto b2 = m.B * m.B;
            for (std::size_t r = 0; r < b2.dim(); ++r) {
                ASSERT_EQ(b2.image(r), r);
                ASSERT_EQ(b2.sign(r), odd % 2 ? -1 : 1) << n;
            }
        }
    }
}

TEST(Structure, FactorsAreTheLiteralTensors) {
    auto s = spec_of(3, Species::MW_R);
    auto m = structure_matrices(s);
    // T1 = tau1^3, D = 1 x tau3 x 1, T3 = tau3^3 on the (occupied, empty) factors
    RMat t1 = RMat::Zero(8, 8), t3 = RMat::Zero(8, 8), d = RMat::Zero(8, 8);
    for (int r = 0; r < 8; ++r) {
        t1(7 - r, r) = 1;
        t3(r, r) = __builtin_popcount(r) % 2 ? -1 : 1;
        d(r, r) = (r & 0b010) ? -1 : 1;
    }
    EXPECT_EQ((m.T1.to_dense() - t1).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.T3.to_dense() - t3).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.D.to_dense() - d).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.B.to_dense() - d * t1).cwiseAbs().maxCoeff(), 0.0);
    auto eta = eta_signs(BasisIndexing(s));
    for (int r = 0; r < 8; ++r) EXPECT_EQ(eta[r], t3(r, r));
}

TEST(Structure, IdentitiesHoldForTheStep) {
    for (auto s : {spec_of(5, Species::MW_R), spec_of(5, Species::MW_L), spec_of(9, Species::MW_R)}) {
        auto m = structure_matrices(s);
        auto S = build_transport_operator(s);
        for (auto& b : verify_structure(single_structure(m), S)) ADD_FAILURE() << s.n_x << " single " << b;
        for (auto& b : verify_structure(doubled_structure(m), S)) ADD_FAILURE() << s.n_x << " doubled " << b;
    }
}

// with an even number of slots T3 commutes with B, so I = T3 B is no complex structure
TEST(Structure, EvenSlotCountBreaksAnticommutation) {
    auto s = spec_of(5, Species::Dirac);
    auto m = structure_matrices(s);
    EXPECT_TRUE(m.T3 * m.B == m.B * m.T3);
    auto cell = build_cell_operator(s, rule_color_switch());
    std::vector<std::string> want{"I^2 = -1", "{K,I} = 0", "{F_I, K} = 0"};
    EXPECT_EQ(verify_structure(single_structure(m), cell), want);
    EXPECT_EQ(verify_structure(single_structure(m), build_transport_operator(s)), want);
    // the step still commutes with B and T3
    auto S = build_transport_operator(s);
    EXPECT_TRUE(S * m.B == m.B * S);
    EXPECT_TRUE(cell * m.B == m.B * cell);
    EXPECT_TRUE(S * m.T3 == m.T3 * S);
}

TEST(Structure, ThreeOddSlotsBreakKSquared) {
    auto s = spec_of(7, Species::MW_R);
    EXPECT_THROW(s.validate(true), StructureError);
    auto bad = verify_structure(single_structure(structure_matrices(s)), build_transport_operator(s));
    EXPECT_FALSE(bad.empty());
    EXPECT_EQ(bad.front(), "K^2 = 1");
}

TEST(Structure, MutatedDIsFlagged) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    std::vector<std::uint32_t> im(m.D.dim());
    std::vector<std::int8_t> sg(m.D.dim());
    for (std::size_t r = 0; r < im.size(); ++r) {
        im[r] = std::uint32_t(r);
        sg[r] = std::int8_t(m.D.sign(r));
    }
    sg[3] = std::int8_t(-sg[3]);
    m.D = SignedPermutation(im, sg);
    m.B = m.D * m.T1;
    auto bad = verify_structure(single_structure(m), build_transport_operator(s));
    auto has = [&](const char* x) { return std::find(bad.begin(), bad.end(), x) != bad.end(); };
    // a diagonal D commutes with T3, so {K,I} survives any sign change in D
    EXPECT_FALSE(has("{K,I} = 0"));
    EXPECT_TRUE(has("K^2 = 1"));
    EXPECT_TRUE(has("[S,K] = 0"));
    auto pair = single_structure(structure_matrices(s));
    pair.F_R = 0;
    EXPECT_THROW(verify_structure(pair, build_transport_operator(s)), StructureError);
}

TEST(Complexify, RoundTripAndConstraint) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    std::mt19937_64 rng(11);
    RVec qt = random_real(32, rng), qb = random_real(32, rng);
    auto w = complexify(qt, qb, m);
    EXPECT_FALSE(w.constrained);
    auto [a, b] = decomplexify(w, m);
    EXPECT_LT((a - qt).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b - qb).cwiseAbs().maxCoeff(), 1e-14);
    // with q' = q~ the complex wave is a B eigenvector up to T3
    auto c = complexify(qt, qt, m);
    EXPECT_TRUE(c.constrained);
    EXPECT_LT((m.B.apply(c.phi) - c.phi).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(project_B(c.phi, m).second.cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_THROW(complexify(qt, RVec(RVec::Zero(8)), m), DimensionError);
}

TEST(Complexify, SingleSite) {
    LatticeSpec s;
    s.n_x = 1;
    auto m = structure_matrices(s);
    RVec q(2);
    q << 0.6, 0.8;
    auto w = complexify(q, q, m);
    cplx want = 0.5 * cplx(0.6 + 0.8, 0.6 - 0.8);
    EXPECT_NEAR(std::abs(w.phi[0] - want), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.phi[1] - want), 0.0, 1e-15);
    // real phi: both components agree, imaginary phi: opposite
    ComplexWave r{CVec::Constant(2, cplx(0.3, 0)), false}, i{CVec::Constant(2, cplx(0, 0.3)), false};
    // compare q~ with the conjugate components B q'
    auto [a, b] = decomplexify(r, m);
    EXPECT_LT((a - m.B.apply(b)).cwiseAbs().maxCoeff(), 1e-15);
    auto [c, d] = decomplexify(i, m);
    EXPECT_LT((c + m.B.apply(d)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_GT(c.cwiseAbs().maxCoeff(), 0.1);
}

TEST(Complexify, ProjectorsSplitTheWave) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    std::mt19937_64 rng(12);
    CVec phi = random_real(32, rng).cast<cplx>() + kI * random_real(32, rng).cast<cplx>();
    auto [p, q] = project_B(phi, m);
    EXPECT_LT((p + q - phi).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((m.B.apply(p) - p).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((m.B.apply(q) + q).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Complexify, PhaseRotationKeepsSumsAndMixesDifferences) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    std::mt19937_64 rng(13);
    auto w = complexify(random_real(32, rng), random_real(32, rng), m);
    RVec alpha = random_real(32, rng);
    auto rep = phase_rotate(w, alpha, m);
    EXPECT_LT((rep.sum_after - rep.sum_before).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((rep.diff_after - rep.diff_predicted).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT((rep.diff_after - rep.diff_before).cwiseAbs().maxCoeff(), 1e-3);
    EXPECT_THROW(phase_rotate(w, RVec(RVec::Zero(3)), m), DimensionError);
    auto id = phase_rotate(w, RVec(RVec::Zero(32)), m);
    EXPECT_LT((id.rotated.phi - w.phi).cwiseAbs().maxCoeff(), 1e-15);
    RVec half = RVec::Zero(32);
    half[5] = kPi / 2;
    auto h = phase_rotate(w, half, m);
    EXPECT_NEAR(h.diff_after[5], -h.diff_before[5], 1e-12);
}

TEST(Compat, StepIsCompatibleAndComplexifiesToItself) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    auto pair = single_structure(m);
    CMat S = build_transport_operator(s).to_dense().cast<cplx>();
    auto r = compat_project(S, pair);
    EXPECT_TRUE(r.compatible);
    EXPECT_LT(max_abs(CMat(r.projected - S)), 1e-14);
    EXPECT_LT(max_abs(CMat(r.A_C - S)), 1e-14);
    EXPECT_LT(r.K_commutator_norm, 1e-14);
    // a single occupation number anticommutes with neither K nor I
    CMat n = CMat(occupation_operator(BasisIndexing(s), 2));
    EXPECT_FALSE(compat_project(n, pair).compatible);
    CMat I = pair.I.to_dense().cast<cplx>();
    CMat one = CMat::Identity(32, 32);
    EXPECT_LT(max_abs(CMat(I * n * I + (one - n))), 1e-15);
    auto e = compat_project(one, pair);
    EXPECT_TRUE(e.compatible);
    EXPECT_LT(max_abs(CMat(e.A_C - one)), 1e-15);
    // (AB)_C = A_C B_C for compatible real operators
    CMat T = build_transport_operator(s).to_dense().cast<cplx>();
    CMat S2 = T * T;
    EXPECT_LT(max_abs(CMat(compat_project(S2, pair).A_C - r.A_C * r.A_C)), 1e-14);
}

TEST(Doubled, LadderActionAndNumberExpectation) {
    auto s = spec_of(5, Species::MW_R);
    auto m = structure_matrices(s);
    auto l = build_ladders(s, LadderFamily::SignString);
    std::mt19937_64 rng(14);
    RVec qt = random_real(32, rng), qb = random_real(32, rng);
    auto w = complexify(qt, qb, m);
    const SpMat& a = l.a(0, 1);
    SpMat n = SpMat(adjoint(a) * a);
    double got = doubled_number_expectation(qt, qb, n);
    double want = 0.5 * (qt.dot(RVec((n * qt.cast<cplx>()).real())) +
                         qb.squaredNorm() - qb.dot(RVec((n * qb.cast<cplx>()).real())));
    EXPECT_NEAR(got, want, 1e-12);
    SpMat N = doubled_matrix(DoubledOp::N, a, m);
    EXPECT_EQ(N.rows(), 64);
    SpMat A = doubled_matrix(DoubledOp::A, a, m);
    EXPECT_LT(max_abs_diff(SpMat(A * A), SpMat(block_diag(SpMat(a * a), SpMat(a * a)))), 1e-14);
    SpMat Ap = doubled_matrix(DoubledOp::A_prime, a, m);
    EXPECT_LT(max_abs_diff(SpMat(adjoint(A) * A), SpMat(adjoint(Ap) * Ap)), 1e-14);
    // q' = q~ gives half filling
    RVec u = qt / qt.norm();
    EXPECT_NEAR(doubled_number_expectation(u, u, n), 0.5, 1e-14);
    auto out = doubled_ladder_action(w, qt, qb, a, m);
    EXPECT_EQ(out.phi.size(), 32);
    auto c = complexify(qt, qt, m);
    EXPECT_THROW(doubled_ladder_action(c, qt, qt, a, m), PictureError);
}
