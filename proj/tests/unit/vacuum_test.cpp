#include "pca/vacuum.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace pca;

namespace {

LatticeSpec spec_of(int n, Species s) {
    LatticeSpec l;
    l.n_x = n;
    l.species = s;
    return l;
}

OneParticleWave wave_of(int n, int gamma, std::map<int, cplx> a) {
    OneParticleWave w;
    w.gamma = gamma;
    w.amp.assign(n, 0.0);
    for (auto [k, c] : a) w.amp[k + (n - 1) / 2] = c;
    return w;
}

}  // namespace

TEST(Vacuum, MajoranaWeylReport) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto v = build_vacuum(VacuumKind::ParticleMW, m);
    auto r = vacuum_report(v, m);
    EXPECT_NEAR(r.norm, 1.0, 1e-14);
    EXPECT_NEAR(r.energy, -6 * kPi / 5, 1e-12);
    EXPECT_NEAR(r.energy, -3.7699, 1e-4);
    EXPECT_LT(r.eigen_residual, 1e-12);
    EXPECT_LT(r.annihilation_residual, 1e-12);
    EXPECT_NEAR(r.zero_mode_occupation, 0.5, 1e-14);
    EXPECT_LT(r.charge_residual, 1e-12);
    EXPECT_NEAR(r.Qprime_expectation, 0.0, 1e-12);
    EXPECT_LT(r.step_phase_residual, 1e-12);
    EXPECT_LT(r.B_residual, 1e-12);
    // B acts on the literal vacuum with -1 at n_x = 5
    EXPECT_NEAR(r.B_eigenvalue, -1.0, 1e-12);
    EXPECT_EQ(r.particle_numbers, (std::vector<int>{2, 3}));
    for (double x : half_filling_check(v.psi, m.ladders)) EXPECT_NEAR(x, 0.5, 1e-12);
    // the vacuum is the ground state
    EXPECT_NEAR(hermitian_spectrum(m.H).minCoeff(), r.energy, 1e-12);
}

TEST(Vacuum, NineSitesFlipTheBSign) {
    auto s = spec_of(9, Species::MW_R);
    auto m = free_model(s);
    auto r = vacuum_report(build_vacuum(VacuumKind::ParticleMW, m), m);
    EXPECT_NEAR(r.B_eigenvalue, 1.0, 1e-12);
    EXPECT_NEAR(r.energy, vacuum_energy_formula(9, 1.0), 1e-11);
    EXPECT_EQ(r.particle_numbers, (std::vector<int>{4, 5}));
}

TEST(Vacuum, LeftMoverMirrorsTheRightMover) {
    auto s = spec_of(5, Species::MW_L);
    auto m = free_model(s);
    auto r = vacuum_report(build_vacuum(VacuumKind::ParticleMW, m), m);
    EXPECT_NEAR(r.energy, -6 * kPi / 5, 1e-12);
    EXPECT_LT(r.annihilation_residual, 1e-12);
}

TEST(Vacuum, DiracTable) {
    auto s = spec_of(5, Species::Dirac);
    auto m = free_model(s);
    auto v = build_vacuum(VacuumKind::ParticleDirac, m);
    auto r = vacuum_report(v, m);
    EXPECT_NEAR(r.energy, 2 * vacuum_energy_formula(5, 1.0), 1e-12);
    EXPECT_NEAR(r.momentum, 0.0, 1e-12);
    EXPECT_LT(r.momentum_residual, 1e-12);
    EXPECT_LT(r.B_residual, 1e-12);
    std::map<TransformKind, double> want{{TransformKind::C, 0}, {TransformKind::P, 1},
                                         {TransformKind::T, 0}, {TransformKind::PT, 0},
                                         {TransformKind::CT, 1}, {TransformKind::CPT, 1}};
    auto table = vacuum_symmetry_table(v, SymmetryContext(s));
    ASSERT_EQ(table.size(), 6u);
    for (const auto& row : table) {
        EXPECT_NEAR(std::abs(row.overlap), want[row.kind], 1e-10) << to_string(row.kind);
        EXPECT_EQ(row.invariant, want[row.kind] == 1) << to_string(row.kind);
    }
    EXPECT_THROW(build_vacuum(VacuumKind::ParticleMW, m), InputError);
    EXPECT_THROW(build_vacuum(VacuumKind::ParticleDirac, free_model(spec_of(5, Species::MW_R))), InputError);
}

TEST(Vacuum, SingleSpeciesTableSkipsTimeReversal) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto table = vacuum_symmetry_table(build_vacuum(VacuumKind::ParticleMW, m), SymmetryContext(s));
    ASSERT_EQ(table.size(), 2u);
    // C sends the filled negative modes to filled positive ones
    EXPECT_EQ(table[0].kind, TransformKind::C);
    EXPECT_FALSE(table[0].invariant);
    EXPECT_NEAR(std::abs(table[0].overlap), 0.0, 1e-12);
    EXPECT_EQ(table[1].kind, TransformKind::P);
    EXPECT_FALSE(table[1].invariant);
}

TEST(Vacuum, EmptyAndEquipartition) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto e = vacuum_report(build_vacuum(VacuumKind::Empty, m), m);
    EXPECT_NEAR(e.energy, 0.0, 1e-14);
    EXPECT_EQ(e.particle_numbers, std::vector<int>{0});
    auto q = build_vacuum(VacuumKind::Equipartition, m);
    EXPECT_NEAR(q.psi.norm(), 1.0, 1e-14);
    EXPECT_NEAR(q.energy, 0.0, 1e-12);
    EXPECT_EQ(to_string(VacuumKind::ParticleDirac).empty(), false);
    EXPECT_THROW(free_model(spec_of(7, Species::Dirac)), DimensionError);
}

TEST(OneParticle, MomentumEigenstateEnergy) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto v = build_vacuum(VacuumKind::ParticleMW, m);
    for (int k : {-2, -1, 1, 2}) {
        CVec psi = one_particle_state(wave_of(5, 0, {{k, 1.0}}), v, m);
        EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
        double e = psi.dot(m.H * psi).real();
        EXPECT_NEAR(e, v.energy + 2 * kPi * std::abs(k) / s.L(), 1e-12) << k;
        EXPECT_LT((m.H * psi - e * psi).norm(), 1e-12);
    }
    EXPECT_THROW(one_particle_state(wave_of(5, 0, {{0, 1.0}}), v, m), InputError);
    EXPECT_THROW(one_particle_state(wave_of(3, 0, {{1, 1.0}}), v, m), DimensionError);
}

TEST(OneParticle, StepMatchesClosedFormPhases) {
    auto s = spec_of(5, Species::MW_R);
    auto m = free_model(s);
    auto v = build_vacuum(VacuumKind::ParticleMW, m);
    auto w = wave_of(5, 0, {{-2, 0.3}, {-1, cplx(0.1, 0.4)}, {1, -0.5}, {2, cplx(0.2, -0.6)}});
    CVec psi = one_particle_state(w, v, m);
    auto S = build_transport_operator(s);
    for (int t = 1; t <= 4; ++t) {
        psi = S.apply(psi);
        auto got = extract_amplitudes(psi, 0, v, m, t * s.epsilon);
        auto want = one_particle_evolve(w, t, v.energy, s);
        for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(got.amp[i] - want.amp[i]), 0.0, 1e-12) << t;
    }
}

TEST(OneParticle, RephasedWaveShiftsOneSitePerStep) {
    auto s = spec_of(7, Species::MW_R);
    double E = vacuum_energy_formula(7, 1.0);
    auto delta = project_zero_mode({0, 0, 0, 1, 0, 0, 0});
    auto w = from_position(delta, 0);
    // back in the unphased frame, then evolve
    auto raw = unrephase(w, E, s);
    for (int t = 1; t <= 7; ++t) {
        auto cur = rephase(one_particle_evolve(raw, t, E, s), E, s);
        auto phi = to_position(cur);
        for (int j = 0; j < 7; ++j)
            EXPECT_NEAR(std::abs(phi[j] - delta[(j - t % 7 + 7) % 7]), 0.0, 1e-12) << t << " " << j;
    }
}

TEST(OneParticle, PositionRoundTripAndZeroMode) {
    std::vector<cplx> phi{0.1, cplx(0, 0.2), -0.3, 0.4, cplx(0.1, 0.1)};
    EXPECT_THROW(from_position(phi, 0), InputError);
    auto p = project_zero_mode(phi);
    cplx sum = 0;
    for (auto x : p) sum += x;
    EXPECT_NEAR(std::abs(sum), 0.0, 1e-15);
    auto back = to_position(from_position(p, 0));
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(back[j] - p[j]), 0.0, 1e-15);
    EXPECT_THROW(from_position({1.0, -1.0}, 0), InputError);
    // rephase is invertible
    auto s = spec_of(5, Species::MW_R);
    auto w = from_position(p, 0, 2.0);
    auto u = unrephase(rephase(w, -3.0, s), -3.0, s);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(u.amp[i] - w.amp[i]), 0.0, 1e-15);
}

TEST(DiracResidual, ErrorsConstantAndPerturbed) {
    std::vector<DiracLayer> two(2, DiracLayer{{1, 1, 1}, {1, 1, 1}});
    EXPECT_THROW(dirac_residual(two, 1.0), InputError);
    std::vector<DiracLayer> ragged(3, DiracLayer{{1, 1, 1}, {1, 1, 1}});
    ragged[1].L.pop_back();
    EXPECT_THROW(dirac_residual(ragged, 1.0), DimensionError);
    std::vector<DiracLayer> flat(4, DiracLayer{{cplx(0.2, 0.1), cplx(0.2, 0.1), cplx(0.2, 0.1)}, {1, 1, 1}});
    EXPECT_EQ(dirac_residual(flat, 1.0), 0.0);
    auto bumped = flat;
    bumped[2].R[1] += 0.5;
    EXPECT_NEAR(dirac_residual(bumped, 1.0), 0.25, 1e-15);
}

TEST(DiracResidual, MoversSolveTheWaveEquation) {
    // R(t, x) = f(x - t), L(t, x) = g(x + t) with smooth periodic profiles
    const int n = 400, nt = 6;
    const double eps = 0.01, L = n * eps;
    std::vector<DiracLayer> layers(nt);
    for (int t = 0; t < nt; ++t) {
        layers[t].R.resize(n);
        layers[t].L.resize(n);
        for (int j = 0; j < n; ++j) {
            double x = j * eps, tt = t * eps;
            layers[t].R[j] = std::exp(cplx(0, 2 * kPi * (x - tt) / L));
            layers[t].L[j] = std::cos(2 * kPi * (x + tt) / L);
        }
    }
    EXPECT_LT(dirac_residual(layers, eps), 1e-3);
    std::swap(layers[0].R, layers[0].L);
    EXPECT_GT(dirac_residual(layers, eps), 1.0);
}
