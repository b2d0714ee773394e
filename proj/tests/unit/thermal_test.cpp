#include "pca/thermal.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace pca;

namespace {

LatticeSpec spec_of(int n, Species s) {
    LatticeSpec l;
    l.n_x = n;
    l.species = s;
    return l;
}

CMat gibbs_oracle(const SpMat& h, double T) {
    Eigen::SelfAdjointEigenSolver<CMat> es{CMat(h)};
    const RVec& e = es.eigenvalues();
    RVec w = (-(e.array() - e.minCoeff()) / T).exp();
    w /= w.sum();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST(Fermi, FactorAndLimits) {
    EXPECT_DOUBLE_EQ(fermi(0.0, 1.0), 0.5);
    EXPECT_NEAR(fermi(1.0, 2.0), 1 / (std::exp(0.5) + 1), 1e-15);
    EXPECT_NEAR(fermi(-1.0, 2.0) + fermi(1.0, 2.0), 1.0, 1e-15);
    EXPECT_EQ(fermi(1.0, 0.0), 0.0);
    EXPECT_EQ(fermi(-1.0, 0.0), 1.0);
    EXPECT_EQ(fermi(0.0, 0.0), 0.5);
    EXPECT_EQ(fermi(1e5, 1.0), 0.0);
    auto s = spec_of(5, Species::MW_R);
    EXPECT_THROW(thermal_occupations(s, 0.0), InputError);
    EXPECT_THROW(thermal_occupations(s, -1.0), InputError);
    EXPECT_THROW(thermal_state(free_model(s), 0.0), InputError);
}

TEST(Thermal, DensityMatrixIsTheGibbsState) {
    for (auto s : {spec_of(5, Species::MW_R), spec_of(3, Species::Dirac)}) {
        auto m = free_model(s);
        for (double T : {0.3, 1.0, 4.0}) {
            auto st = thermal_state(m, T);
            EXPECT_LT(max_abs(CMat(st.rho - gibbs_oracle(m.H, T))), 1e-12) << T;
            EXPECT_NEAR(st.rho.trace().real(), 1.0, 1e-13);
            EXPECT_LT(max_abs(CMat(st.rho - st.rho.adjoint())), 1e-14);
            Eigen::SelfAdjointEigenSolver<CMat> es(st.rho);
            EXPECT_GT(es.eigenvalues().minCoeff(), -1e-14);
        }
    }
}

TEST(Thermal, OccupationsAtUnitTemperature) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto st = thermal_state(m, 1.0);
    const double want[] = {0.925067, 0.778447, 0.5, 0.221553, 0.0749328};
    for (int k = -2; k <= 2; ++k) {
        auto o = mode_occupation(st, m, 0, k);
        EXPECT_NEAR(o.trace, want[k + 2], 1e-6) << k;
        EXPECT_NEAR(o.trace, o.analytic, 1e-12);
        EXPECT_NEAR(o.analytic, o.fermi_dirac, 1e-12);
        EXPECT_NEAR(st.occupation[0][k + 2], o.analytic, 1e-15);
    }
    auto l = spec_of(5, Species::MW_L);
    auto ml = free_model(l);
    auto sl = thermal_state(ml, 1.0);
    for (int k = -2; k <= 2; ++k) EXPECT_NEAR(mode_occupation(sl, ml, 0, k).trace, want[2 - k], 1e-6);
    EXPECT_THROW(mode_occupation(st, m, 0, 3), InputError);
}

TEST(Thermal, DiracTraceMatchesAnalytic) {
    auto s = spec_of(3, Species::Dirac);
    auto m = free_model(s);
    for (double T : {0.5, 2.0}) {
        auto st = thermal_state(m, T);
        for (int g = 0; g < 2; ++g)
            for (int k = -1; k <= 1; ++k) {
                auto o = mode_occupation(st, m, g, k);
                EXPECT_NEAR(o.trace, o.analytic, 1e-12);
                if (k == 0) EXPECT_NEAR(o.trace, 0.5, 1e-13);
            }
    }
}

TEST(Thermal, MomentumLookup) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto st = thermal_state(m, 1.0);
    auto o = mode_occupation_at(st, m, 0, 2 * kPi / 5);
    EXPECT_NEAR(o.trace, mode_occupation(st, m, 0, 1).trace, 1e-15);
    EXPECT_THROW(mode_occupation_at(st, m, 0, 0.3), InputError);
}

TEST(Thermal, HalfFillingAtEveryTemperature) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    for (double T : {0.2, 1.0, 10.0}) {
        auto r = thermal_half_filling(thermal_state(m, T), m);
        ASSERT_EQ(r.N.size(), 5u);
        EXPECT_LT(r.max_site_deviation, 1e-12);
        EXPECT_LT(r.max_charge, 1e-12);
        EXPECT_LT(r.max_offdiag, 1e-12);
        EXPECT_LT(r.max_pair_sum, 1e-12);
    }
    EXPECT_THROW(thermal_half_filling(thermal_occupations(s, 1.0), m), InputError);
}

TEST(Thermal, StationaryUnderTheStep) {
    auto s = spec_of(3, Species::Dirac);
    auto m = free_model(s);
    auto r = thermal_stationarity(thermal_state(m, 0.7), m);
    EXPECT_LT(r.step, 1e-12);
    EXPECT_LT(r.H, 1e-12);
    EXPECT_LT(r.P, 1e-12);
    EXPECT_LT(r.Qprime, 1e-12);
    EXPECT_LT(r.N, 1e-12);
    EXPECT_THROW(thermal_stationarity(thermal_occupations(s, 1.0), m), InputError);
}

TEST(Thermal, OccupationFallsWithMomentumAndRisesWithTemperature) {
    auto s = spec_of(9, Species::MW_R);
    double prev_hot = 0;
    for (double T : {0.1, 0.5, 2.0, 8.0}) {
        auto st = thermal_occupations(s, T);
        const auto& occ = st.occupation[0];
        for (std::size_t i = 1; i < occ.size(); ++i) EXPECT_LT(occ[i], occ[i - 1]);
        // highest mode fills up as T grows
        EXPECT_GT(occ.back(), prev_hot);
        prev_hot = occ.back();
    }
}

TEST(Thermal, ZeroTemperatureLimitIsTheVacuum) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto v = build_vacuum(VacuumKind::ParticleMW, m);
    auto st = thermal_state(m, 0.02);
    for (int k = -2; k <= 2; ++k) {
        double vac = v.psi.dot(m.modes[0].n(k) * v.psi).real();
        EXPECT_NEAR(mode_occupation(st, m, 0, k).trace, vac, 1e-12) << k;
    }
    // energy approaches the vacuum energy
    double e = (st.rho * CMat(m.H)).trace().real();
    EXPECT_NEAR(e, v.energy, 1e-10);
}
