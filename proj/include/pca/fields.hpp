#pragma once

#include "pca/vacuum.hpp"

#include <functional>
#include <vector>

namespace pca {

enum class KernelMode { FiniteL, InfiniteL };

// interpolation kernels on a ring of n_x sites with spacing eps
struct Kernel {
    int n_x = 5;
    double eps = 1.0;

    double L() const { return n_x * eps; }
    int m() const { return (n_x - 1) / 2; }

    // (1/L) [1 + 2 sum_k cos(2 pi k y / L)]
    double delta(double y) const;
    // d/dy of delta, analytic
    double delta_prime(double y) const;
    // closed form at lattice separations eps*m
    double delta_prime_lattice(int m) const;
    // (1/L) sum_{k>0} exp(2 pi i k y / L), or its L -> infinity limit
    cplx delta_plus(double y, KernelMode mode = KernelMode::FiniteL) const;
    cplx delta_minus(double y, KernelMode mode = KernelMode::FiniteL) const {
        return std::conj(delta_plus(y, mode));
    }
    // plain sum, no closed form, for cross-checks
    cplx delta_plus_sum(double y) const;
};

// composite Gauss-Legendre, 16 nodes per panel
cplx integrate(const std::function<cplx(double)>& f, double a, double b, int panels);

// Psi_+(t,x) = sum_k u(t,x;k) a(k), u = exp(2 pi i k (x - chi t)/L)/sqrt L
SpMat field_op(const FreeModel& m, int gamma, double t, double x, int sign = +1);
// analytic d/dx of Psi_+
SpMat field_op_dx(const FreeModel& m, int gamma, double t, double x);

// |Psi_+(t,x) - exp(iHt) Psi_+(0,x) exp(-iHt)|_max with a dense exponential
double heisenberg_check(const FreeModel& m, int gamma, double t, double x);
// same with S^{-k} Psi S^k for lattice times t = k eps
double heisenberg_check_lattice(const FreeModel& m, int gamma, int k, double x);

struct Whiteman {
    cplx W_plus, W_minus;
};
// matrix-element evaluation on the vacuum, vacuum piece 1/(2L) removed
Whiteman whiteman(const FreeModel& m, const VacuumState& v, int gamma, double t, double x);
// analytic kernel evaluation for a right mover (x - t) or left mover (x + t)
Whiteman whiteman_kernel(const Kernel& k, int chirality, double t, double x,
                         KernelMode mode = KernelMode::FiniteL);

// time-ordered; throws InputError when t == t'
cplx feynman(const Kernel& k, int chirality, double t, double x, double tp, double xp,
             KernelMode mode = KernelMode::FiniteL);
cplx feynman(const FreeModel& m, const VacuumState& v, int gamma, double t, double x, double tp,
             double xp);
// central-difference (d_t + chi d_x) G_F at (t, x), stencil h
cplx feynman_wave_residual(const Kernel& k, int chirality, double t, double x, double tp, double xp,
                           double h, KernelMode mode = KernelMode::FiniteL);

// continuum -1/(2 pi i y)
cplx continuum_delta_plus(double y);

// probe-smeared propagator: integral of a normalized Gaussian (center y0, width
// sigma, truncated at +-cut sigma) against delta_plus or against the continuum
struct SmearedComparison {
    cplx lattice, continuum;
    double rel_error = 0;
};
SmearedComparison smeared_probe(const Kernel& k, double y0, double sigma, double cut = 3.5,
                                KernelMode mode = KernelMode::FiniteL);

// Fourier coefficients c_k = (1/n) sum_j f(j) exp(-2 pi i k j / n), k = -m..m
std::vector<cplx> lattice_fourier(const std::vector<cplx>& f_j);

// integral of delta(x - eps j') delta'(x - eps j) over one period, numerical
double overlap_integral(const Kernel& k, int jp, int j, int panels);
// H from the field operators: eps sum a+(j') a(j) (-i) overlap(j', j)
SpMat reconstruct_hamiltonian(const FreeModel& m, int gamma, int panels = 0);

}  // namespace pca
