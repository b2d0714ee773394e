#pragma once

#include "pca/fermion.hpp"
#include "pca/symmetry.hpp"

#include <string>
#include <vector>

namespace pca {

// sign-string ladders, momentum modes and Hamiltonians for every species
struct FreeModel {
    LatticeSpec spec;
    LadderSet ladders;
    std::vector<MomentumModes> modes;  // one per species
    std::vector<SpMat> H_gamma;        // chirality-signed, one per species
    SpMat H;
    SpMat P;                           // sum of momenta, H_R - H_L
    double E0 = 0;                     // formula value per species

    int chirality(int gamma) const { return spec.direction(gamma); }
    std::size_t dim() const { return ladders.dim(); }
};
FreeModel free_model(const LatticeSpec& spec, std::size_t dense_cap = kDefaultDenseCap);

enum class VacuumKind { Empty, Equipartition, ParticleMW, ParticleDirac };
std::string to_string(VacuumKind k);

struct VacuumState {
    VacuumKind kind = VacuumKind::Empty;
    CVec psi;
    double energy = 0;  // <0|H|0>, measured
};

// particle vacua fill the negative-energy modes of every species in increasing
// k order and half-fill k = 0: prod a+(k) (1 + a+(0))/sqrt2 |0>_E
VacuumState build_vacuum(VacuumKind kind, const FreeModel& m);

struct VacuumReport {
    double norm = 0;
    double energy = 0;
    double eigen_residual = 0;        // |H psi - E psi|
    double annihilation_residual = 0; // a(k), b(k) on the vacuum, k on the particle side
    double zero_mode_occupation = 0;  // <n(0)> per species, worst deviation from 1/2 reported separately
    double zero_mode_deviation = 0;
    double charge_residual = 0;       // |Q psi| summed over species
    double Qprime_expectation = 0;
    double B_eigenvalue = 0;          // <0|B|0>
    double B_residual = 0;            // |B psi - lambda psi|
    double step_phase_residual = 0;   // |S psi - exp(-i eps E) psi|
    double momentum_residual = 0;     // |P psi - <P> psi|
    double momentum = 0;
    std::vector<int> particle_numbers;  // sectors with nonzero weight
};
VacuumReport vacuum_report(const VacuumState& v, const FreeModel& m);

// <0| a+(j) a(j) |0> for every slot
std::vector<double> half_filling_check(const CVec& psi, const LadderSet& l);

struct SymmetryOverlap {
    TransformKind kind;
    cplx overlap;     // <0| tr |0>
    bool invariant;   // |overlap| = 1
};
std::vector<SymmetryOverlap> vacuum_symmetry_table(const VacuumState& v, const SymmetryContext& ctx,
                                                   double tol = 1e-10);

// one-particle amplitudes of a single species, k = -kmax..kmax, k = 0 must vanish
struct OneParticleWave {
    int gamma = 0;
    std::vector<cplx> amp;
    double t = 0;  // physical time
};

// particle side: chirality * k > 0 uses a+(k), the other side a(k)
CVec one_particle_state(const OneParticleWave& w, const VacuumState& v, const FreeModel& m);
// read the amplitudes back from a Hilbert-space state
OneParticleWave extract_amplitudes(const CVec& psi, int gamma, const VacuumState& v,
                                   const FreeModel& m, double t = 0);
// closed-form step phases exp(-i eps (E_vac + 2 pi |k| / L))
OneParticleWave one_particle_evolve(const OneParticleWave& w, int steps, double E_vac,
                                    const LatticeSpec& spec);
// combine particle amplitudes and conjugated antiparticle amplitudes
OneParticleWave rephase(const OneParticleWave& w, double E_vac, const LatticeSpec& spec);
OneParticleWave unrephase(const OneParticleWave& w, double E_vac, const LatticeSpec& spec);
// phi(j) = sum_k D^-1(j,k) phi(k), j = -kmax..kmax
std::vector<cplx> to_position(const OneParticleWave& w);
// inverse; throws InputError if the k = 0 component is nonzero beyond tol
OneParticleWave from_position(const std::vector<cplx>& phi_j, int gamma, double t = 0,
                              double tol = 1e-12);
// removes the k = 0 component
std::vector<cplx> project_zero_mode(const std::vector<cplx>& phi_j);

struct DiracLayer {
    std::vector<cplx> R, L;  // indexed by slot
};
// max |gamma^mu d_mu phi| over the interior layers with central differences
double dirac_residual(const std::vector<DiracLayer>& layers, double eps);

}  // namespace pca
