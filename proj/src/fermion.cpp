#include "pca/fermion.hpp"

#include <cmath>

namespace pca {

namespace {

using M2 = Eigen::Matrix2cd;

M2 pauli(int k) {
    M2 m;
    switch (k) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// annihilator on one slot: occupied (component 0) -> empty (component 1)
M2 lower() {
    M2 m;
    m << 0, 0, 1, 0;
    return m;
}

SpMat kron_chain(const std::vector<M2>& f) {
    SpMat out(1, 1);
    out.insert(0, 0) = 1.0;
    for (const auto& m : f) out = kron(out, to_sparse(CMat(m)));
    out.prune(cplx(0.0));
    return out;
}

SpMat sign_string_ladder(const BasisIndexing& b, int g) {
    std::vector<Triplet> t;
    const std::uint64_t bit = b.slot_bit(g);
    for (std::uint64_t r = 0; r < b.dim(); ++r) {
        if (r & bit) continue;  // slot empty
        // (-1)^{#empty slots before g}
        int par = g == 0 ? 0 : parity(r >> (b.M - g));
        t.emplace_back(r | bit, r, sgn_of(par));
    }
    SpMat s(b.dim(), b.dim());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

void require_single(const LatticeSpec& spec, const char* what) {
    if (spec.n_species() != 1)
        throw InputError(std::string(what) + " ladders require a single species");
}

}  // namespace

SpMat alternating_W(int n_x) {
    const double s = 1.0 / std::sqrt(2.0);
    M2 wp = s * (pauli(1) + pauli(3));
    M2 wm = s * (pauli(2) + pauli(3));
    std::vector<M2> f;
    for (int p = 0; p < n_x; ++p) f.push_back(p % 2 == 0 ? wp : wm);
    return kron_chain(f);
}

LadderSet build_ladders(const LatticeSpec& spec, LadderFamily family, const std::optional<SpMat>& W) {
    LadderSet l;
    l.family = family;
    l.spec = spec;
    l.basis = BasisIndexing(spec);
    const int n = spec.n_x;
    const int M = l.basis.M;

    switch (family) {
        case LadderFamily::SignString:
            for (int g = 0; g < M; ++g) {
                l.ann.push_back(sign_string_ladder(l.basis, g));
                l.index_set.push_back(g);
            }
            break;
        case LadderFamily::Alternative: {
            require_single(spec, "alternative");
            M2 ap = 0.5 * (pauli(3) + kI * pauli(2));
            M2 am = -0.5 * (pauli(1) + kI * pauli(3));
            for (int p = 0; p < n; ++p) {
                std::vector<M2> f;
                for (int q = 0; q < p; ++q) f.push_back(q % 2 == 0 ? pauli(1) : pauli(2));
                f.push_back(p % 2 == 0 ? ap : am);
                for (int q = p + 1; q < n; ++q) f.push_back(pauli(0));
                l.ann.push_back(kron_chain(f));
                l.index_set.push_back(p);
            }
            break;
        }
        case LadderFamily::Composite: {
            require_single(spec, "composite");
            spec.validate(true);
            M2 a = lower(), at = lower().transpose();
            M2 pp = 0.5 * (pauli(0) + pauli(3)), pm = 0.5 * (pauli(0) - pauli(3));
            for (int p = 0; p < n; ++p) {
                std::vector<M2> f1, f2;
                if (p < n - 1) {
                    for (int q = 0; q < p; ++q) {
                        f1.push_back(pauli(3));
                        f2.push_back(pauli(3));
                    }
                    f1.push_back(a);
                    f1.push_back(pp);
                    f2.push_back(at);
                    f2.push_back(pm);
                    for (int q = p + 2; q < n; ++q) {
                        f1.push_back(pauli(0));
                        f2.push_back(pauli(0));
                    }
                } else {
                    // j_max: its neighbour is j_min on the periodic lattice
                    f1.push_back(pauli(3) * pp);
                    f2.push_back(pauli(3) * pm);
                    for (int q = 1; q < n - 1; ++q) {
                        f1.push_back(pauli(3));
                        f2.push_back(pauli(3));
                    }
                    f1.push_back(a);
                    f2.push_back(at);
                }
                l.ann.push_back(SpMat(kron_chain(f1) + kron_chain(f2)));
                int j = spec.site(p);
                if (j % 2 == 0 && p != n - 1) l.index_set.push_back(p);
            }
            break;
        }
        case LadderFamily::Conjugated: {
            require_single(spec, "conjugated");
            l.W = W ? *W : alternating_W(n);
            if (std::size_t(l.W.rows()) != l.basis.dim()) throw DimensionError("W has wrong dimension");
            SpMat wd = adjoint(l.W);
            for (int g = 0; g < M; ++g) {
                SpMat x = l.W * sign_string_ladder(l.basis, g) * wd;
                x.prune(cplx(0.0), 1e-14);
                l.ann.push_back(x);
                l.index_set.push_back(g);
            }
            break;
        }
        case LadderFamily::BCommutingFull:
            throw StructureError(
                "no set of n_x annihilation operators commutes with B; at most n_x-1 exist");
    }
    return l;
}

double anticommutator_defect(const LadderSet& l) {
    double worst = 0;
    const SpMat one = identity(l.dim());
    for (int i : l.index_set)
        for (int k : l.index_set) {
            const SpMat& a = l.ann[i];
            const SpMat& b = l.ann[k];
            worst = std::max(worst, max_abs(anticommutator(a, b)));
            SpMat c = anticommutator(a, adjoint(b));
            if (i == k) c = c - one;
            worst = std::max(worst, max_abs(c));
        }
    return worst;
}

cplx fourier_D(int k, int j, int n_x) {
    return std::exp(cplx(0, -2 * kPi * double(k) * j / n_x)) / std::sqrt(double(n_x));
}

MomentumModes fourier_modes(const LadderSet& l, int gamma) {
    MomentumModes m;
    m.n_x = l.spec.n_x;
    m.epsilon = l.spec.epsilon;
    const int km = m.kmax();
    for (int k = -km; k <= km; ++k) {
        SpMat s(l.dim(), l.dim());
        for (int j = -km; j <= km; ++j) s += fourier_D(k, j, m.n_x) * l.a(gamma, j);
        s.prune(cplx(0.0), 1e-15);
        m.ak.push_back(s);
    }
    return m;
}

double vacuum_energy_formula(int n_x, double eps) {
    return -(double(n_x) * n_x - 1) * kPi / (4.0 * n_x * eps);
}

double vacuum_energy_alt(int n_x, double eps) {
    int r = n_x % 8;
    int nt = r == 1 ? 0 : r == 3 ? 1 : r == 5 ? -2 : -1;
    return -2 * kPi / eps * ((2.0 * nt + 1) / 8.0 - 1.0 / (8.0 * n_x));
}

MWHamiltonian hamiltonian_mw(const MomentumModes& modes, int chirality) {
    MWHamiltonian h;
    const int km = modes.kmax();
    const auto dim = modes.a(0).rows();
    h.H = SpMat(dim, dim);
    h.H_normal = SpMat(dim, dim);
    for (int k = -km; k <= km; ++k)
        if (k != 0) h.H += (chirality * modes.p(k)) * modes.n(k);
    for (int k = 1; k <= km; ++k) {
        int kp = chirality * k;
        h.H_normal += modes.p(k) * SpMat(modes.n(kp) + modes.a(-kp) * modes.adag(-kp));
    }
    h.E0 = vacuum_energy_formula(modes.n_x, modes.epsilon);
    return h;
}

SpMat hamiltonian_position(const LadderSet& l, int gamma, bool full_range) {
    const auto& spec = l.spec;
    const int n = spec.n_x, km = spec.jmax();
    const double L = spec.L();
    const int mmax = full_range ? n - 1 : km;
    auto wrap = [&](int j) { return ((j + km) % n + n) % n - km; };
    SpMat h(l.dim(), l.dim());
    for (int j = -km; j <= km; ++j) {
        SpMat ad = l.adag(gamma, j);
        for (int m = 1; m <= mmax; ++m) {
            cplx c = kI * kPi * (m % 2 ? -1.0 : 1.0) / (L * std::sin(kPi * m * spec.epsilon / L));
            h += c * SpMat(ad * SpMat(l.a(gamma, wrap(j + m)) - l.a(gamma, wrap(j - m))));
        }
    }
    h *= double(spec.direction(gamma));
    h.prune(cplx(0.0), 1e-15);
    return h;
}

Charges charge_operators(const LadderSet& l, const MomentumModes& modes, int gamma) {
    Charges c;
    const SpMat one = identity(l.dim());
    const int km = l.spec.jmax();
    c.Q_prime = SpMat(l.dim(), l.dim());
    for (int j = -km; j <= km; ++j) {
        SpMat q = SpMat(l.adag(gamma, j) * l.a(gamma, j)) - 0.5 * one;
        c.Q_prime += q;
        c.Qj.push_back(q);
    }
    c.Q = c.Q_prime - modes.n(0) + 0.5 * one;
    return c;
}

DiracHamiltonian hamiltonian_dirac(const LatticeSpec& spec, std::size_t dense_cap) {
    if (spec.species != Species::Dirac) throw InputError("Dirac species required");
    std::size_t dim = std::size_t{1} << spec.bits();
    if (dim > dense_cap)
        throw DimensionError("Dirac Hamiltonian dimension " + std::to_string(dim) +
                             " exceeds the dense cap; use the signed-permutation path");
    DiracHamiltonian d;
    d.ladders = build_ladders(spec, LadderFamily::SignString);
    d.modes_R = fourier_modes(d.ladders, 0);
    d.modes_L = fourier_modes(d.ladders, 1);
    d.H_R = hamiltonian_mw(d.modes_R, +1).H;
    d.H_L = hamiltonian_mw(d.modes_L, -1).H;
    d.H = d.H_R + d.H_L;
    d.P = d.H_R - d.H_L;
    d.E0 = vacuum_energy_formula(spec.n_x, spec.epsilon);
    return d;
}

SpMat composite_number(const LadderSet& l, int p) {
    const SpMat& a = l.ann.at(p);
    return SpMat(adjoint(a) * a);
}

CompositeReport composite_checks(const LadderSet& l, double tol) {
    if (l.family != LadderFamily::Composite) throw InputError("composite ladder set required");
    CompositeReport r;
    const auto& spec = l.spec;
    const int n = spec.n_x;
    SpMat B = structure_matrices(spec).B.to_sparse();
    SpMat one = identity(l.dim());
    for (int p : l.index_set) {
        const SpMat& a = l.ann[p];
        SpMat ad = adjoint(a);
        SpMat N = composite_number(l, p);
        r.ladder_vs_B = std::max({r.ladder_vs_B, max_abs(commutator(B, a)), max_abs(commutator(B, ad))});
        r.unit_anticomm = std::max(r.unit_anticomm, max_abs(SpMat(anticommutator(ad, a) - one)));
        r.number_vs_B = std::max(r.number_vs_B, max_abs(commutator(B, N)));
    }
    SpMat ntot(l.dim(), l.dim());
    for (int p = 0; p < n; ++p) {
        SpMat N = composite_number(l, p);
        SpMat n1 = occupation_operator(l.basis, p);
        SpMat n2 = occupation_operator(l.basis, (p + 1) % n);
        SpMat expect = SpMat(n1 * n2) + SpMat(SpMat(one - n1) * SpMat(one - n2));
        r.number_local_form = std::max(r.number_local_form, max_abs_diff(N, expect));
        ntot += N;
    }
    LadderSet ss = build_ladders(spec, LadderFamily::SignString);
    SpMat P = hamiltonian_mw(fourier_modes(ss, 0), spec.direction(0)).H;
    r.momentum_vs_Ntot = max_abs(commutator(P, ntot));
    r.S_Ntot = max_abs(commutator(build_transport_operator(spec).to_sparse(), ntot));
    r.neighbor_anomaly = max_abs(anticommutator(l.ann[0], l.ann[1]));
    if (r.ladder_vs_B > tol) r.violated.push_back("ladder commutes with B");
    if (r.unit_anticomm > tol) r.violated.push_back("{A+,A} = 1");
    if (r.number_vs_B > tol) r.violated.push_back("N(j) commutes with B");
    if (r.number_local_form > tol) r.violated.push_back("N(j) = nn' + (1-n)(1-n')");
    if (r.momentum_vs_Ntot > tol) r.violated.push_back("[P, N_tot] = 0");
    if (r.neighbor_anomaly <= tol) r.violated.push_back("neighbour anticommutator nonzero");
    return r;
}

}  // namespace pca
