#pragma once

#include "pca/hilbert.hpp"

#include <string>
#include <vector>

namespace pca {

struct StructureMatrices {
    SignedPermutation T1, T3, D, B;
};

// T1 flips all bits, T3 = (-1)^{#empty}, D = tau3 on the odd slots of every
// species register, B = D T1
StructureMatrices structure_matrices(const LatticeSpec& spec);

// eta(tau) = (-1)^{#empty bits}, indexed by raw index
std::vector<std::int8_t> eta_signs(const BasisIndexing& b);

enum class ConjugateEncoding { Independent, PT, CPT };

struct ComplexStructurePair {
    std::string name;
    SignedPermutation K, I;
    SignedPermutation F_tilde_I;  // F_R^-1 F_I
    double F_R = 0.5;             // scalar multiple of the identity
    double c = 1.0;
    bool doubled = false;
};

// single picture: K = B, I = T3 B
ComplexStructurePair single_structure(const StructureMatrices& m);
// doubled picture with a selector bit in front: K = tau1 x B, I = tau1 x T3 B
ComplexStructurePair doubled_structure(const StructureMatrices& m);

// doubling helpers for the selector-bit space (q_tilde on top)
SignedPermutation tau1_kron(const SignedPermutation& a);
SignedPermutation one_kron(const SignedPermutation& a);
SpMat block_diag(const SpMat& a, const SpMat& b);

struct ComplexWave {
    CVec phi;
    bool constrained = false;  // B phi = phi enforced
};

ComplexWave complexify(const RVec& q_tilde, const RVec& q_bar_prime, const StructureMatrices& m);
// returns q_tilde and q_bar_prime; the conjugate components q'^c = B q'
std::pair<RVec, RVec> decomplexify(const ComplexWave& w, const StructureMatrices& m);

struct PhaseReport {
    ComplexWave rotated;
    RVec sum_before, sum_after;    // p_tau + pbar_{tau^c}
    RVec diff_before, diff_after;  // p_tau - pbar_{tau^c}
    RVec diff_predicted;           // cos(2a) diff + 2 eta sin(2a) q~ q'^c
};
PhaseReport phase_rotate(const ComplexWave& w, const RVec& alpha, const StructureMatrices& m);

std::pair<CVec, CVec> project_B(const CVec& phi, const StructureMatrices& m);

// empty list means every identity holds
std::vector<std::string> verify_structure(const ComplexStructurePair& pair,
                                          const SignedPermutation& step, double tol = 1e-12);

struct CompatResult {
    CMat projected;      // (A - I A I)/2
    CMat A_C;            // A_R - i I A_I, only meaningful when compatible
    bool compatible = false;
    double commutator_norm = 0;
    double K_commutator_norm = 0;  // |[K, A_C]|
};
CompatResult compat_project(const CMat& a, const ComplexStructurePair& pair);

// doubled picture, (q_tilde, q_bar') stacked
enum class DoubledOp { A, A_prime, N };
// phi -> a(j) phi from the two real components
ComplexWave doubled_ladder_action(const ComplexWave& w, const RVec& q_tilde, const RVec& q_bar_prime,
                                  const SpMat& a_j, const StructureMatrices& m);
// real-picture matrices in the (q_tilde, q_hat) basis
SpMat doubled_matrix(DoubledOp op, const SpMat& a_j, const StructureMatrices& m);
// <N(j)> = (q~ n q~ + q' (1-n) q') / 2
double doubled_number_expectation(const RVec& q_tilde, const RVec& q_bar_prime, const SpMat& n_j);

}  // namespace pca
