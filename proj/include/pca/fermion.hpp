#pragma once

#include "pca/complex_structure.hpp"
#include "pca/hilbert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pca {

enum class LadderFamily { SignString, Alternative, Composite, Conjugated, BCommutingFull };

struct LadderSet {
    LadderFamily family = LadderFamily::SignString;
    LatticeSpec spec;
    BasisIndexing basis;
    std::vector<SpMat> ann;      // by global slot g = gamma*n_x + p
    std::vector<int> index_set;  // slots where the algebra is declared to hold
    SpMat W;                     // conjugated family only

    const SpMat& a(int gamma, int j) const { return ann.at(gamma * spec.n_x + spec.slot(j)); }
    SpMat adag(int gamma, int j) const { return adjoint(a(gamma, j)); }
    std::size_t dim() const { return basis.dim(); }
};

// W = W+ x W- x W+ ... (alternating by slot)
SpMat alternating_W(int n_x);

LadderSet build_ladders(const LatticeSpec& spec, LadderFamily family,
                        const std::optional<SpMat>& W = std::nullopt);

// max deviation of {a_i, a_k} = 0, {a_i, a_k^+} = delta over the index set
double anticommutator_defect(const LadderSet& l);

struct MomentumModes {
    int n_x = 0;
    double epsilon = 1.0;
    std::vector<SpMat> ak;  // k = -(n_x-1)/2 .. (n_x-1)/2

    int kmax() const { return (n_x - 1) / 2; }
    double L() const { return n_x * epsilon; }
    double p(int k) const { return 2 * kPi * k / L(); }
    const SpMat& a(int k) const { return ak.at(k + kmax()); }
    SpMat adag(int k) const { return adjoint(a(k)); }
    SpMat n(int k) const { return SpMat(adag(k) * a(k)); }
    // antiparticles for k > 0
    SpMat b(int k) const { return adag(-k); }
    SpMat bdag(int k) const { return a(-k); }
};

// a(k) = sum_j D(k,j) a(j), D(k,j) = exp(-2 pi i k j / n_x) / sqrt(n_x)
MomentumModes fourier_modes(const LadderSet& l, int gamma = 0);
cplx fourier_D(int k, int j, int n_x);

double vacuum_energy_formula(int n_x, double eps);
// mod 2pi/eps equivalent of the same energy, informational only
double vacuum_energy_alt(int n_x, double eps);

struct MWHamiltonian {
    SpMat H;
    SpMat H_normal;  // H - E0 in the normal-ordered form
    double E0 = 0;
};
// chirality +1: H = sum p n(p); -1: H = -sum p n(p)
MWHamiltonian hamiltonian_mw(const MomentumModes& modes, int chirality = 1);

// non-local position form; by default m runs to (n_x-1)/2, full_range
// takes m = 1..n_x-1
SpMat hamiltonian_position(const LadderSet& l, int gamma = 0, bool full_range = false);

struct Charges {
    std::vector<SpMat> Qj;
    SpMat Q_prime;
    SpMat Q;
};
Charges charge_operators(const LadderSet& l, const MomentumModes& modes, int gamma = 0);

struct DiracHamiltonian {
    LadderSet ladders;
    MomentumModes modes_R, modes_L;
    SpMat H_R, H_L, H, P;
    double E0 = 0;  // per chirality
};
DiracHamiltonian hamiltonian_dirac(const LatticeSpec& spec, std::size_t dense_cap = kDefaultDenseCap);

struct CompositeReport {
    double number_vs_B = 0;        // |[B, N(j)]| over the index set
    double momentum_vs_Ntot = 0;   // |[P, N_tot]|
    double S_Ntot = 0;             // |[S, N_tot]|
    double unit_anticomm = 0;      // |{A^+, A} - 1|
    double ladder_vs_B = 0;        // |[B, A(j)]|
    double number_local_form = 0;  // |N(j) - (n n' + (1-n)(1-n'))|
    double neighbor_anomaly = 0;   // |{A(j), A(j+1)}| for a neighbour pair
    std::vector<std::string> violated;
};
// N(j) = A^+(j) A(j) for every slot of a composite ladder set
SpMat composite_number(const LadderSet& l, int p);
CompositeReport composite_checks(const LadderSet& l, double tol = 1e-12);

}  // namespace pca
