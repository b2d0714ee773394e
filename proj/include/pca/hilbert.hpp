#pragma once

#include "pca/core.hpp"
#include "pca/lattice.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pca {

// Raw tensor basis. Global slot g = gamma*n_x + p; its tensor factor is the
// g-th from the left. Index bit (M-1-g) is 0 when slot g is occupied, so the
// first component of every 2-dim factor is "occupied".
struct BasisIndexing {
    int n_x = 0;
    int n_species = 1;
    int M = 0;

    BasisIndexing() = default;
    explicit BasisIndexing(const LatticeSpec& spec);
    BasisIndexing(int n_x, int n_species);

    std::size_t dim() const { return std::size_t{1} << M; }
    std::uint64_t mask() const { return M == 64 ? ~0ull : ((1ull << M) - 1); }
    std::uint64_t slot_bit(int g) const { return 1ull << (M - 1 - g); }
    bool occupied(std::uint64_t r, int g) const { return !(r & slot_bit(g)); }

    // occupation code (SpinConfig::code) <-> raw index
    std::uint64_t raw(std::uint64_t code) const { return ~code & mask(); }
    std::uint64_t code(std::uint64_t r) const { return ~r & mask(); }
    std::uint64_t raw(const SpinConfig& c) const { return raw(c.code()); }
    SpinConfig config(std::uint64_t r) const {
        return SpinConfig::from_code(code(r), n_x, n_species);
    }

    // sign of the increasing-order creation product on the raw basis
    double sigma_code(std::uint64_t code) const;
    double sigma_raw(std::uint64_t r) const { return sigma_code(code(r)); }
};

class SignedPermutation {
public:
    SignedPermutation() = default;
    explicit SignedPermutation(std::size_t dim);  // identity
    SignedPermutation(std::vector<std::uint32_t> image, std::vector<std::int8_t> sign);

    std::size_t dim() const { return image_.size(); }
    std::uint32_t image(std::size_t r) const { return image_[r]; }
    int sign(std::size_t r) const { return sign_[r]; }

    bool is_valid() const;
    // (this * o) e_r = this(o(e_r))
    SignedPermutation operator*(const SignedPermutation& o) const;
    SignedPermutation inverse() const;
    SignedPermutation transpose() const { return inverse(); }
    SignedPermutation pow(long k) const;
    bool operator==(const SignedPermutation& o) const;

    CVec apply(const CVec& v) const;
    RVec apply(const RVec& v) const;
    SpMat to_sparse() const;
    RMat to_dense() const;
    // U A U^-1
    SpMat conjugate(const SpMat& a) const;

    static SignedPermutation diagonal(const std::vector<std::int8_t>& s);

private:
    std::vector<std::uint32_t> image_;
    std::vector<std::int8_t> sign_;
};

SignedPermutation build_transport_operator(const LatticeSpec& spec);
// Ŝ_int for a cell rule, all entries +1 in the raw basis
SignedPermutation build_cell_operator(const LatticeSpec& spec, const InteractionRule& rule);
// dense step operators are represented by the sparse type for uniformity
SpMat as_operator(const SignedPermutation& s);

struct WaveFunctionPair {
    RVec q_tilde;
    RVec q_bar;
};

WaveFunctionPair evolve_pair(const WaveFunctionPair& pair, const SignedPermutation& s);
WaveFunctionPair evolve_pair(const WaveFunctionPair& pair, const RMat& s);

double expectation(const WaveFunctionPair& pair, const SpMat& a);
double expectation(const CVec& phi, const SpMat& a);
cplx matrix_element(const CVec& bra, const SpMat& a, const CVec& ket);

// Tr{ B (S_{n-1} ... S_t) A (S_{t-1} ... S_0) }
double expectation_chain(const CMat& boundary, const std::vector<SpMat>& steps,
                         const SpMat& a, int t);
CMat pure_boundary(const RVec& q_tilde_in, const RVec& q_bar_final);

// occupation number operator from the bit pattern, diagonal
SpMat occupation_operator(const BasisIndexing& b, int g);
SpMat total_number_operator(const BasisIndexing& b);

// exp(-i t H) for hermitian H; the sparsity graph is split into connected
// components and each block is diagonalized densely
SpMat expm_hermitian(const SpMat& h, double t, std::size_t dense_cap = kDefaultDenseCap);
// exp(A) for anti-hermitian A
SpMat expm_antihermitian(const SpMat& a, std::size_t dense_cap = kDefaultDenseCap);
// f(H) for hermitian H, blockwise
SpMat hermitian_function(const SpMat& h, const std::function<cplx(double)>& f,
                         std::size_t dense_cap = kDefaultDenseCap);
RVec hermitian_spectrum(const SpMat& h, std::size_t dense_cap = kDefaultDenseCap);
bool is_hermitian(const SpMat& h, double tol = 1e-12);

struct LogResult {
    CMat log;
    double condition = 0;  // condition number of the eigenvector matrix
};
// principal branch, eigenvalue arguments in (-pi, pi]
LogResult principal_log(const CMat& s, double max_condition = 1e10);
// exact cycle decomposition; generator G = (i/eps) log S returned sparse
SpMat principal_generator(const SignedPermutation& s, double eps);

struct IsingTransfer {
    RMat S;
    double delta = 0;   // additive constant fixing the spectral radius to 1
    CMat H;             // hermitian part of G = (i/eps) log S
    CMat J;             // G = H + iJ
    double condition = 0;
};
IsingTransfer ising_transfer(int n_x, double beta, double eps = 1.0);

// classical ensemble as a wave-function pair q~ = q = sqrt(p), evolved with
// the step operators of the schedule; <n(gamma,p)> per layer via the quantum
// rule, ids and ordering as in sample_observables with occupation observables
std::vector<SeriesPoint> quantum_occupation_series(const Ensemble& ens, const LatticeSpec& spec,
                                                   const Schedule& sched);

CMat evolve_density(const CMat& rho, const SignedPermutation& s);
CMat evolve_density(const CMat& rho, const CMat& s);

std::vector<cplx> spectrum(const CMat& a);

}  // namespace pca
