#include "pca/interactions.hpp"

#include <cmath>
#include <numeric>

namespace pca {

namespace {

int popcount32(std::uint32_t x) { return __builtin_popcount(x); }

int species_partner(int gamma, int n_species) {
    if (n_species == 2) return 1 - gamma;
    if (n_species == 4) return (gamma + 2) % 4;
    return gamma;
}

// code-basis ladder for mode i of m modes, occupied = bit 1, mode 0 most significant;
// the string counts occupied modes in front
RMat jw_annihilator(int i, int m) {
    const int d = 1 << m;
    RMat a = RMat::Zero(d, d);
    for (int c = 0; c < d; ++c) {
        std::uint32_t bit = 1u << (m - 1 - i);
        if (!(c & bit)) continue;
        std::uint32_t before = std::uint32_t(c) >> (m - i);
        a(c ^ bit, c) = (popcount32(before) & 1) ? -1.0 : 1.0;
    }
    return a;
}

RMat number(const RMat& a) { return a.transpose() * a; }

}  // namespace

std::vector<std::pair<std::string, std::string>> ua_un_pairs() {
    return {
        // three particles
        {"100|101", "010|110"}, {"101|001", "011|010"}, {"010|011", "001|101"},
        {"101|100", "110|010"}, {"001|011", "011|001"}, {"110|100", "100|110"},
        {"100|011", "110|001"}, {"011|100", "001|110"}, {"000|111", "111|000"},
        // two <-> four
        {"010|001", "101|011"}, {"100|010", "110|101"}, {"001|010", "011|101"},
        {"010|100", "101|110"}, {"100|001", "110|011"}, {"001|100", "011|110"},
        {"100|100", "110|110"}, {"001|001", "011|011"}, {"010|010", "101|101"},
    };
}

std::vector<std::string> ua_un_fixed_points() { return {"010|101", "101|010"}; }

InteractionRule rule_ua_un() {
    std::vector<std::uint32_t> t(64);
    std::iota(t.begin(), t.end(), 0u);
    for (const auto& [a, b] : ua_un_pairs()) {
        auto ca = parse_local_code(a, 3, 2), cb = parse_local_code(b, 3, 2);
        t[ca] = cb;
        t[cb] = ca;
    }
    auto r = make_rule("ua-un", 3, 2, std::move(t));
    r.certificate = certify_symmetries(r);
    return r;
}

InteractionRule rule_color_switch() {
    // (nR | nL)
    std::vector<std::uint32_t> t{0b00, 0b10, 0b01, 0b11};
    auto r = make_rule("color-switch", 1, 2, std::move(t));
    r.certificate = certify_symmetries(r);
    return r;
}

InteractionRule rule_two_color() {
    // (R1 | R2 | L1 | L2), one site
    std::vector<std::uint32_t> t(16);
    for (std::uint32_t c = 0; c < 16; ++c) {
        int r1 = (c >> 3) & 1, r2 = (c >> 2) & 1, l1 = (c >> 1) & 1, l2 = c & 1;
        if (r1 + r2 == 1 && l1 + l2 == 1) t[c] = std::uint32_t(r2 << 3 | r1 << 2 | l2 << 1 | l1);
        else t[c] = c;
    }
    auto r = make_rule("two-color", 1, 4, std::move(t));
    r.certificate = certify_symmetries(r);
    return r;
}

std::uint32_t cell_transform(std::uint32_t code, const std::string& kind, int width, int n_species) {
    const bool c = kind.find('C') != std::string::npos;
    const bool p = kind.find('P') != std::string::npos;
    const bool t = kind.find('T') != std::string::npos;
    const int a = width * n_species;
    std::uint32_t out = 0;
    for (int g = 0; g < n_species; ++g)
        for (int i = 0; i < width; ++i) {
            if (!((code >> (a - 1 - (g * width + i))) & 1u)) continue;
            int g2 = g, i2 = i;
            if (t) g2 = species_partner(g2, n_species);
            if (p) {
                g2 = species_partner(g2, n_species);
                i2 = width - 1 - i;
            }
            out |= 1u << (a - 1 - (g2 * width + i2));
        }
    if (c) out = ~out & ((1u << a) - 1);
    return out;
}

SymmetryCertificate certify_symmetries(const InteractionRule& rule) {
    rule.validate();
    SymmetryCertificate cert;
    const auto n = std::uint32_t(rule.size());
    for (const char* kind : {"C", "P", "T", "CP", "CT", "PT", "CPT"}) {
        const std::string k = kind;
        const bool time = k.find('T') != std::string::npos;
        auto g = [&](std::uint32_t x) { return cell_transform(x, k, rule.width, rule.n_species); };
        SymmetryCertificate::Entry e;
        e.covariant = true;
        e.closed = true;
        for (std::uint32_t x = 0; x < n; ++x) {
            // time reversal maps the rule onto its inverse
            bool ok = time ? rule.table[g(rule.table[x])] == g(x) : rule.table[g(x)] == g(rule.table[x]);
            if (!ok && e.covariant) {
                e.covariant = false;
                e.witness = int(x);
            }
            if (g(x) == x && g(rule.table[x]) != rule.table[x]) e.closed = false;
        }
        cert.entries[k] = e;
    }
    return cert;
}

bool conserves_parity(const InteractionRule& rule) {
    for (std::uint32_t x = 0; x < rule.size(); ++x)
        if ((popcount32(x) ^ popcount32(rule.table[x])) & 1) return false;
    return true;
}

bool conserves_number(const InteractionRule& rule) {
    for (std::uint32_t x = 0; x < rule.size(); ++x)
        if (popcount32(x) != popcount32(rule.table[x])) return false;
    return true;
}

RMat local_matrix(const InteractionRule& rule) {
    rule.validate();
    const int d = int(rule.size());
    RMat s = RMat::Zero(d, d);
    for (int x = 0; x < d; ++x) s(rule.table[x], x) = 1.0;
    return s;
}

RMat local_hamiltonian(const InteractionRule& rule, double eps) {
    if (!rule.is_involution())
        throw UnsupportedError("the closed-form interaction Hamiltonian needs an involutive rule");
    RMat s = local_matrix(rule);
    return kPi / (2 * eps) * (RMat::Identity(s.rows(), s.cols()) - s);
}

SignedPermutation cell_operator(const LatticeSpec& spec, const InteractionRule& rule, int cell) {
    rule.validate();
    if (rule.n_species != spec.n_species()) throw InvalidRuleError("rule species count does not match lattice");
    if (spec.n_x % rule.width != 0) throw InputError("cell width does not divide n_x");
    BasisIndexing b(spec);
    const int w = rule.width, a = rule.arity(), n = spec.n_x;
    std::vector<std::uint32_t> im(b.dim());
    std::vector<std::int8_t> sg(b.dim(), 1);
    for (std::uint64_t r = 0; r < b.dim(); ++r) {
        std::uint64_t code = b.code(r);
        std::uint32_t loc = 0;
        for (int g = 0; g < rule.n_species; ++g)
            for (int i = 0; i < w; ++i) {
                int slot = g * n + cell * w + i;
                if ((code >> (b.M - 1 - slot)) & 1) loc |= 1u << (a - 1 - (g * w + i));
            }
        std::uint32_t out = rule.table[loc];
        for (int g = 0; g < rule.n_species; ++g)
            for (int i = 0; i < w; ++i) {
                int slot = g * n + cell * w + i;
                std::uint64_t bit = 1ull << (b.M - 1 - slot);
                if ((out >> (a - 1 - (g * w + i))) & 1u) code |= bit;
                else code &= ~bit;
            }
        im[r] = std::uint32_t(b.raw(code));
    }
    return {std::move(im), std::move(sg)};
}

SpMat interaction_hamiltonian(const LatticeSpec& spec, const InteractionRule& rule) {
    if (!rule.is_involution())
        throw UnsupportedError("the closed-form interaction Hamiltonian needs an involutive rule");
    BasisIndexing b(spec);
    const double c = kPi / (2 * spec.epsilon);
    SpMat h(b.dim(), b.dim());
    SpMat one = identity(b.dim());
    for (int cell = 0; cell < spec.n_x / rule.width; ++cell)
        h += c * SpMat(one - cell_operator(spec, rule, cell).to_sparse());
    h.prune(cplx(0.0));
    return h;
}

RMat color_switch_operator_form(int s1, int s2) {
    RMat a1 = jw_annihilator(0, 2), a2 = jw_annihilator(1, 2);
    RMat one = RMat::Identity(4, 4);
    RMat n1 = number(a1), n2 = number(a2);
    return a1.transpose() * a2 + a2.transpose() * a1 + s1 * n1 * n2 + s2 * (one - n1) * (one - n2);
}

RMat two_color_operator_form() {
    RMat R1 = jw_annihilator(0, 4), R2 = jw_annihilator(1, 4);
    RMat L1 = jw_annihilator(2, 4), L2 = jw_annihilator(3, 4);
    RMat xr = R1.transpose() * R2 - R2.transpose() * R1;
    RMat xl = L1.transpose() * L2 - L2.transpose() * L1;
    return -xr * xl + (number(R1) - number(R2)) * (number(L1) - number(L2));
}

std::optional<std::vector<int>> find_sign_gauge(const RMat& A, const RMat& B, double tol) {
    const int d = int(A.rows());
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
    // propagate signs through the nonzero pattern: B_ij = s_i s_j A_ij
    std::vector<int> s(d, 0);
    for (int start = 0; start < d; ++start) {
        if (s[start]) continue;
        s[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < d; ++j) {
                double a = A(i, j), bb = B(i, j);
                if (std::abs(a) < tol && std::abs(bb) < tol) continue;
                if (std::abs(std::abs(a) - std::abs(bb)) > tol) return std::nullopt;
                int need = (a * bb > 0) ? s[i] : -s[i];
                if (!s[j]) {
                    s[j] = need;
                    stack.push_back(j);
                } else if (s[j] != need) {
                    return std::nullopt;
                }
            }
        }
    }
    return s;
}

ComposedAutomaton compose_automaton(const LatticeSpec& spec, const InteractionRule& rule) {
    ComposedAutomaton c;
    c.S_f = build_transport_operator(spec);
    c.S_int = build_cell_operator(spec, rule);
    c.S = c.S_int * c.S_f;
    c.H_f = principal_generator(c.S_f, spec.epsilon);
    c.H = principal_generator(c.S, spec.epsilon);
    c.H_int = rule.is_involution() ? interaction_hamiltonian(spec, rule)
                                   : principal_generator(c.S_int, spec.epsilon);
    c.commutator_norm = max_abs(commutator(c.H_f, c.H_int));
    SpMat s = c.S.to_sparse();
    c.orthogonality = max_abs(SpMat(s * SpMat(s.transpose()) - identity(c.S.dim())));
    c.conservation = max_abs(commutator(s, c.H));
    // order of the signed permutation
    std::vector<bool> seen(c.S.dim(), false);
    long period = 1;
    for (std::size_t r = 0; r < c.S.dim(); ++r) {
        if (seen[r]) continue;
        long len = 0;
        int sign = 1;
        std::size_t x = r;
        do {
            seen[x] = true;
            sign *= c.S.sign(x);
            x = c.S.image(x);
            ++len;
        } while (x != r);
        if (sign < 0) len *= 2;
        period = std::lcm(period, len);
    }
    c.period = period;
    return c;
}

IsingEncoding::IsingEncoding(InteractionRule rule) : rule_(std::move(rule)) { rule_.validate(); }

int IsingEncoding::recipe(std::uint32_t in, std::uint32_t out) const {
    const int m = rule_.arity();
    int total = 0;
    for (std::uint32_t c = 0; c < rule_.size(); ++c) {
        // product of n or (1 - n) factors selecting "in = c", then "out = table(c)"
        int sel_in = 1, sel_out = 1;
        const std::uint32_t o = rule_.table[c];
        for (int b = 0; b < m; ++b) {
            int nin = (in >> b) & 1, nout = (out >> b) & 1;
            sel_in *= ((c >> b) & 1) ? nin : 1 - nin;
            sel_out *= ((o >> b) & 1) ? nout : 1 - nout;
        }
        total += 1 - sel_in * (1 - sel_out);
    }
    return total - int(rule_.size());
}

double IsingEncoding::L_int(std::uint32_t in, std::uint32_t out, double beta) const {
    if (!std::isinf(beta) || beta < 0)
        throw UnsupportedError("only the beta -> infinity encoding is implemented");
    return recipe(in, out) == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

int gi3_polynomial(int sRp, int sLp, int sR, int sL) {
    return sRp * sL + sLp * sR + sRp * sLp * sR * sL - 3;
}

double combined_action(const SpinConfig& s2, const SpinConfig& s0, const LatticeSpec& spec,
                       const IsingEncoding& enc) {
    const auto& rule = enc.rule();
    SpinConfig mid = apply_transport(s0, spec);  // s_R(t+eps, x) = s_R(t, x-eps) etc.
    const int w = rule.width, a = rule.arity();
    double total = 0;
    for (int cell = 0; cell < spec.n_x / w; ++cell) {
        std::uint32_t in = 0, out = 0;
        for (int g = 0; g < rule.n_species; ++g)
            for (int i = 0; i < w; ++i) {
                int bit = a - 1 - (g * w + i);
                if (mid.get(g, cell * w + i)) in |= 1u << bit;
                if (s2.get(g, cell * w + i)) out |= 1u << bit;
            }
        total += enc.L_int(in, out);
    }
    return total;
}

}  // namespace pca
