#pragma once

#include "pca/fermion.hpp"
#include "pca/hilbert.hpp"
#include "pca/rule.hpp"

#include <limits>
#include <string>
#include <vector>

namespace pca {

// three-site Dirac cell rule with the listed scatterings, identity elsewhere
InteractionRule rule_ua_un();
// one site, (n_R | n_L): 01 <-> 10
InteractionRule rule_color_switch();
// one site, (R1 R2 | ... ) four species: one right- and one left-mover swap colors
InteractionRule rule_two_color();

// the explicit swap pairs of rule_ua_un as local-code strings
std::vector<std::pair<std::string, std::string>> ua_un_pairs();
std::vector<std::string> ua_un_fixed_points();

// cell-local discrete transforms: C flips, P reflects sites and swaps R/L,
// T swaps R/L; keyed "C", "P", "T", "CP", "CT", "PT", "CPT"
std::uint32_t cell_transform(std::uint32_t code, const std::string& kind, int width, int n_species);
SymmetryCertificate certify_symmetries(const InteractionRule& rule);
// parity of the particle number is conserved entry by entry
bool conserves_parity(const InteractionRule& rule);
bool conserves_number(const InteractionRule& rule);

// local permutation matrix with +1 entries, out = table(in)
RMat local_matrix(const InteractionRule& rule);
// (pi / 2 eps)(1 - S_i); UnsupportedError unless the rule is an involution
RMat local_hamiltonian(const InteractionRule& rule, double eps);
// operator for one cell on the full lattice
SignedPermutation cell_operator(const LatticeSpec& spec, const InteractionRule& rule, int cell);
// sum over cells of (pi / 2 eps)(1 - S_cell)
SpMat interaction_hamiltonian(const LatticeSpec& spec, const InteractionRule& rule);

// two-mode operator a1+ a2 + a2+ a1 + s1 n1 n2 + s2 (1-n1)(1-n2) with
// Jordan-Wigner ladders in the (R | L) local order
RMat color_switch_operator_form(int s1 = +1, int s2 = +1);
// -(a+R1 aR2 - a+R2 aR1)(a+L1 aL2 - a+L2 aL1) + (nR1 - nR2)(nL1 - nL2)
RMat two_color_operator_form();
// diagonal +-1 gauge D with D A D = B, if one exists
std::optional<std::vector<int>> find_sign_gauge(const RMat& A, const RMat& B, double tol = 1e-12);

// alternating free / interaction steps: S = S_int S_f
struct ComposedAutomaton {
    SignedPermutation S_f, S_int, S;
    SpMat H_f, H_int, H;  // H from the principal branch of S
    double commutator_norm = 0;  // |[H_f, H_int]|
    double orthogonality = 0;    // |S S^T - 1|
    double conservation = 0;     // |[S, H]|
    long period = 0;             // smallest k with S^k = 1
};
ComposedAutomaton compose_automaton(const LatticeSpec& spec, const InteractionRule& rule);

// beta -> infinity encoding of a rule as an action
class IsingEncoding {
public:
    explicit IsingEncoding(InteractionRule rule);
    // sum of the 2^m recipe terms minus 2^m: 0 if allowed, negative otherwise
    int recipe(std::uint32_t in, std::uint32_t out) const;
    // 0 or +inf; finite beta is unsupported
    double L_int(std::uint32_t in, std::uint32_t out,
                 double beta = std::numeric_limits<double>::infinity()) const;
    const InteractionRule& rule() const { return rule_; }

private:
    InteractionRule rule_;
};

// s_R' s_L + s_L' s_R + s_R' s_L' s_R s_L - 3, primes at the later time
int gi3_polynomial(int sRp, int sLp, int sR, int sL);

// combined action over two steps: the intermediate layer is eliminated by the
// transport substitution; 0 iff s2 = rule(transport(s0))
double combined_action(const SpinConfig& s2, const SpinConfig& s0, const LatticeSpec& spec,
                       const IsingEncoding& enc);

}  // namespace pca
