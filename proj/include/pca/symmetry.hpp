#pragma once

#include "pca/complex_structure.hpp"
#include "pca/hilbert.hpp"

#include <array>
#include <string>
#include <vector>

namespace pca {

enum class TransformKind { C, P, T, PT, CT, CPT };

inline constexpr std::array<TransformKind, 6> kAllTransforms = {
    TransformKind::C, TransformKind::P, TransformKind::T,
    TransformKind::PT, TransformKind::CT, TransformKind::CPT};

std::string to_string(TransformKind k);
TransformKind transform_from_string(const std::string& s);

struct DiscreteTransform {
    TransformKind kind;
    bool has_c = false, has_p = false, has_t = false;
    bool antilinear() const { return has_c; }
    bool time_reversing() const { return has_t; }
    // species are exchanged R <-> L by P and by T on two-chirality lattices
    bool swaps_species(const LatticeSpec& spec) const;
};
DiscreteTransform make_transform(TransformKind k);

// configuration relabelling; C flips every bit, P reflects j -> -j (with the
// R/L swap for Dirac and colored lattices), T only swaps R/L
SpinConfig apply_transform(const SpinConfig& c, TransformKind k, const LatticeSpec& spec);
std::uint64_t transform_code(std::uint64_t code, TransformKind k, const LatticeSpec& spec);

// x -> U x, or U x* when conj is set
struct AntiUnitary {
    SignedPermutation U;
    bool conj = false;
    AntiUnitary operator*(const AntiUnitary& o) const;
    CVec apply(const CVec& v) const;
    // U A U^-1 or U A* U^-1
    SpMat conjugate(const SpMat& a) const;
};

// raw-basis operators for one lattice
struct SymmetryContext {
    LatticeSpec spec;
    BasisIndexing basis;
    StructureMatrices m;
    SignedPermutation UP;  // reflection with species swap, sign-corrected
    SignedPermutation X;   // species swap only (identity for one species)

    explicit SymmetryContext(const LatticeSpec& spec);
    AntiUnitary state_map(TransformKind k) const;
};

// complex wave functions
CVec apply_transform(const CVec& phi, TransformKind k, const SymmetryContext& ctx);
ComplexWave apply_transform(const ComplexWave& w, TransformKind k, const SymmetryContext& ctx);
// real single wave function: only C and P are available here
RVec apply_transform(const RVec& q, TransformKind k, const SymmetryContext& ctx);
// pair picture: T exchanges q_tilde and q_bar
WaveFunctionPair apply_transform(const WaveFunctionPair& w, TransformKind k,
                                 const SymmetryContext& ctx);
// observables
SpMat apply_transform(const SpMat& a, TransformKind k, const SymmetryContext& ctx);

// step operators: P conjugates, T transposes (with species swap), C conjugates with B
SpMat transform_step(const SpMat& s, TransformKind k, const SymmetryContext& ctx);
// Hamiltonians: T sends H -> -X H* X
SpMat transform_hamiltonian(const SpMat& h, TransformKind k, const SymmetryContext& ctx);

struct InvarianceResult {
    bool invariant = false;
    double deviation = 0;  // max |entry| of the difference
    int row = -1, col = -1;
};
InvarianceResult check_invariance(const SpMat& s, TransformKind k, const SymmetryContext& ctx,
                                  double tol = 1e-12);
InvarianceResult check_invariance(const SignedPermutation& s, TransformKind k,
                                  const SymmetryContext& ctx, double tol = 1e-12);

struct HamiltonianReport {
    TransformKind kind;
    double dev_R = 0, dev_L = 0, dev_total = 0;
    bool ok = false;
};
// expected images: P (H_L, H_R), T (-H_L, -H_R), PT (-H_R, -H_L), C (-H_R, -H_L),
// CT (H_L, H_R), CPT (H_R, H_L); for a single chirality pass H_L = -H_R
HamiltonianReport hamiltonian_transform_report(const SpMat& H_R, const SpMat& H_L, TransformKind k,
                                               const SymmetryContext& ctx, double tol = 1e-10);

// C eigenstates (phi +- B phi*)/2
std::pair<CVec, CVec> c_eigenstates(const CVec& phi, const SymmetryContext& ctx);

// B_c = W B W^T for the alternative ladder set of one species
SpMat alternative_Bc(int n_x);
// literal tensor form tau3 x (-i tau2) x tau3 x ...
SpMat alternative_Bc_literal(int n_x);

}  // namespace pca
