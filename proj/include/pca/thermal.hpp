#pragma once

#include "pca/vacuum.hpp"

#include <vector>

namespace pca {

struct ThermalState {
    double T = 1.0;
    LatticeSpec spec;
    CMat rho;  // explicit density matrix, raw basis
    // analytic occupations per species, k = -kmax..kmax
    std::vector<std::vector<double>> occupation;
};

// Fermi factor 1/(exp(x/T) + 1); T = 0 gives the step with 1/2 at x = 0
double fermi(double x, double T);

// rho = exp(-H/T)/Z assembled from momentum Fock states; throws InputError for T <= 0
ThermalState thermal_state(const FreeModel& m, double T);
// analytic table only, no dense matrix
ThermalState thermal_occupations(const LatticeSpec& spec, double T);

struct Occupation {
    double trace = 0;     // Tr(rho n(k)) with n(k) from the position ladders
    double analytic = 0;  // per-mode factorization
    double fermi_dirac = 0;
};
Occupation mode_occupation(const ThermalState& s, const FreeModel& m, int gamma, int k);
// momentum value instead of index; off-grid p is an input error
Occupation mode_occupation_at(const ThermalState& s, const FreeModel& m, int gamma, double p);

struct HalfFillingReport {
    std::vector<double> N;  // <a+(j) a(j)> per slot
    double max_site_deviation = 0;  // |<N(j)> - 1/2|
    double max_charge = 0;          // |<Q(j)>|
    double max_offdiag = 0;         // |<a+(k) a(k')>|, k != k'
    double max_pair_sum = 0;        // |<n(k)> + <n(-k)> - 1|, k > 0
};
HalfFillingReport thermal_half_filling(const ThermalState& s, const FreeModel& m);

struct StationarityReport {
    double step = 0;  // |S rho S^T - rho|
    double H = 0, P = 0, Qprime = 0, N = 0;  // commutator norms
};
StationarityReport thermal_stationarity(const ThermalState& s, const FreeModel& m);

}  // namespace pca
