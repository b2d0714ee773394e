#include "pca/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pca {

// ------------------------------------------------------------------ basis

BasisIndexing::BasisIndexing(const LatticeSpec& spec)
    : BasisIndexing(spec.n_x, spec.n_species()) {}

BasisIndexing::BasisIndexing(int nx, int ns) : n_x(nx), n_species(ns), M(nx * ns) {
    if (M > 30) throw DimensionError("Hilbert space too large for an explicit basis");
}

double BasisIndexing::sigma_code(std::uint64_t code) const {
    int s = 0;
    for (int g = 0; g < M; ++g)
        if ((code >> (M - 1 - g)) & 1u) s += g;
    return (s & 1) ? -1.0 : 1.0;
}

// ------------------------------------------------------- SignedPermutation

SignedPermutation::SignedPermutation(std::size_t dim) : image_(dim), sign_(dim, 1) {
    std::iota(image_.begin(), image_.end(), 0u);
}

SignedPermutation::SignedPermutation(std::vector<std::uint32_t> image,
                                     std::vector<std::int8_t> sign)
    : image_(std::move(image)), sign_(std::move(sign)) {
    if (image_.size() != sign_.size()) throw DimensionError("image/sign size mismatch");
}

bool SignedPermutation::is_valid() const {
    std::vector<char> hit(dim(), 0);
    for (std::size_t r = 0; r < dim(); ++r) {
        if (image_[r] >= dim() || hit[image_[r]]) return false;
        if (sign_[r] != 1 && sign_[r] != -1) return false;
        hit[image_[r]] = 1;
    }
    return true;
}

SignedPermutation SignedPermutation::operator*(const SignedPermutation& o) const {
    if (dim() != o.dim()) throw DimensionError("signed permutation dimensions differ");
    std::vector<std::uint32_t> im(dim());
    std::vector<std::int8_t> sg(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        std::uint32_t m = o.image_[r];
        im[r] = image_[m];
        sg[r] = std::int8_t(o.sign_[r] * sign_[m]);
    }
    return {std::move(im), std::move(sg)};
}

SignedPermutation SignedPermutation::inverse() const {
    std::vector<std::uint32_t> im(dim());
    std::vector<std::int8_t> sg(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        im[image_[r]] = std::uint32_t(r);
        sg[image_[r]] = sign_[r];
    }
    return {std::move(im), std::move(sg)};
}

SignedPermutation SignedPermutation::pow(long k) const {
    SignedPermutation base = k < 0 ? inverse() : *this;
    long e = std::labs(k);
    SignedPermutation out(dim());
    while (e) {
        if (e & 1) out = base * out;
        base = base * base;
        e >>= 1;
    }
    return out;
}

bool SignedPermutation::operator==(const SignedPermutation& o) const {
    return image_ == o.image_ && sign_ == o.sign_;
}

CVec SignedPermutation::apply(const CVec& v) const {
    if (std::size_t(v.size()) != dim()) throw DimensionError("vector dimension mismatch");
    CVec out(v.size());
    for (std::size_t r = 0; r < dim(); ++r) out[image_[r]] = double(sign_[r]) * v[r];
    return out;
}

RVec SignedPermutation::apply(const RVec& v) const {
    if (std::size_t(v.size()) != dim()) throw DimensionError("vector dimension mismatch");
    RVec out(v.size());
    for (std::size_t r = 0; r < dim(); ++r) out[image_[r]] = sign_[r] * v[r];
    return out;
}

SpMat SignedPermutation::to_sparse() const {
    std::vector<Triplet> t;
    t.reserve(dim());
    for (std::size_t r = 0; r < dim(); ++r) t.emplace_back(image_[r], r, double(sign_[r]));
    SpMat s(dim(), dim());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

RMat SignedPermutation::to_dense() const {
    RMat m = RMat::Zero(dim(), dim());
    for (std::size_t r = 0; r < dim(); ++r) m(image_[r], r) = sign_[r];
    return m;
}

SpMat SignedPermutation::conjugate(const SpMat& a) const {
    if (std::size_t(a.rows()) != dim()) throw DimensionError("operator dimension mismatch");
    std::vector<Triplet> t;
    t.reserve(a.nonZeros());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) {
            auto r = it.row(), c = it.col();
            t.emplace_back(image_[r], image_[c], double(sign_[r] * sign_[c]) * it.value());
        }
    SpMat s(a.rows(), a.cols());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

SignedPermutation SignedPermutation::diagonal(const std::vector<std::int8_t>& s) {
    std::vector<std::uint32_t> im(s.size());
    std::iota(im.begin(), im.end(), 0u);
    return {std::move(im), s};
}

SpMat as_operator(const SignedPermutation& s) { return s.to_sparse(); }

// ---------------------------------------------------- step evolution operators

SignedPermutation build_transport_operator(const LatticeSpec& spec) {
    BasisIndexing b(spec);
    const int n = spec.n_x;
    std::vector<std::uint32_t> im(b.dim());
    std::vector<std::int8_t> sg(b.dim());
    for (std::uint64_t r = 0; r < b.dim(); ++r) {
        std::uint64_t c = b.code(r);
        SpinConfig cfg = SpinConfig::from_code(c, n, b.n_species);
        SpinConfig out = apply_transport(cfg, spec);
        std::uint64_t c2 = out.code();
        // reordering parity: the wrapped creator passes K-1 others of its species
        int par = 0;
        for (int g = 0; g < b.n_species; ++g) {
            int wrap_slot = spec.direction(g) > 0 ? n - 1 : 0;
            if (cfg.get(g, wrap_slot)) {
                int k = 0;
                for (int p = 0; p < n; ++p) k += cfg.get(g, p);
                par += k - 1;
            }
        }
        double s = b.sigma_code(c) * b.sigma_code(c2) * sgn_of(par & 1);
        im[r] = std::uint32_t(b.raw(c2));
        sg[r] = std::int8_t(s);
    }
    return {std::move(im), std::move(sg)};
}

SignedPermutation build_cell_operator(const LatticeSpec& spec, const InteractionRule& rule) {
    BasisIndexing b(spec);
    CellKernel k(rule, spec);
    std::vector<std::uint32_t> im(b.dim());
    std::vector<std::int8_t> sg(b.dim(), 1);
    for (std::uint64_t r = 0; r < b.dim(); ++r) {
        SpinConfig cfg = b.config(r);
        k.apply(cfg);
        im[r] = std::uint32_t(b.raw(cfg));
    }
    return {std::move(im), std::move(sg)};
}

// ------------------------------------------------------------- wave functions

WaveFunctionPair evolve_pair(const WaveFunctionPair& pair, const SignedPermutation& s) {
    // (S^T)^-1 = S for a signed permutation
    return {s.apply(pair.q_tilde), s.apply(pair.q_bar)};
}

WaveFunctionPair evolve_pair(const WaveFunctionPair& pair, const RMat& s) {
    if (s.rows() != pair.q_tilde.size() || s.rows() != pair.q_bar.size())
        throw DimensionError("step operator dimension mismatch");
    Eigen::FullPivLU<RMat> lu(s.transpose());
    if (!lu.isInvertible()) throw NumericalError("singular step evolution operator");
    return {s * pair.q_tilde, lu.solve(pair.q_bar)};
}

double expectation(const WaveFunctionPair& pair, const SpMat& a) {
    if (a.rows() != pair.q_tilde.size()) throw DimensionError("operator dimension mismatch");
    CVec qt = pair.q_tilde.cast<cplx>();
    CVec qb = pair.q_bar.cast<cplx>();
    return (qb.transpose() * (a * qt)).value().real();
}

double expectation(const CVec& phi, const SpMat& a) {
    if (a.rows() != phi.size()) throw DimensionError("operator dimension mismatch");
    return phi.dot(a * phi).real();
}

cplx matrix_element(const CVec& bra, const SpMat& a, const CVec& ket) {
    return bra.dot(a * ket);
}

double expectation_chain(const CMat& boundary, const std::vector<SpMat>& steps,
                         const SpMat& a, int t) {
    if (steps.empty()) throw InputError("empty operator chain");
    if (t < 0 || t > int(steps.size())) throw InputError("insertion time out of range");
    CMat x = CMat(a);
    for (int s = 0; s < t; ++s) x = x * steps[s];  // right factors S_{t-1}...S_0
    for (int s = t; s < int(steps.size()); ++s) x = steps[s] * x;
    return (boundary * x).trace().real();
}

CMat pure_boundary(const RVec& q_tilde_in, const RVec& q_bar_final) {
    return (q_tilde_in * q_bar_final.transpose()).cast<cplx>();
}

SpMat occupation_operator(const BasisIndexing& b, int g) {
    std::vector<Triplet> t;
    for (std::uint64_t r = 0; r < b.dim(); ++r)
        if (b.occupied(r, g)) t.emplace_back(r, r, 1.0);
    SpMat s(b.dim(), b.dim());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

SpMat total_number_operator(const BasisIndexing& b) {
    std::vector<Triplet> t;
    for (std::uint64_t r = 0; r < b.dim(); ++r)
        t.emplace_back(r, r, double(b.M - __builtin_popcountll(r)));
    SpMat s(b.dim(), b.dim());
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

// -------------------------------------------------------------- exponentials

bool is_hermitian(const SpMat& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return max_abs_diff(h, adjoint(h)) <= tol;
}

namespace {

std::vector<std::vector<int>> components(const SpMat& h) {
    const int n = int(h.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it) {
            if (it.value() == cplx(0)) continue;
            int a = find(int(it.row())), b = find(int(it.col()));
            if (a != b) parent[a] = b;
        }
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = int(groups.size());
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }
    return groups;
}

void check_cap(const SpMat& h, std::size_t cap) {
    if (std::size_t(h.rows()) > cap)
        throw DimensionError("dimension " + std::to_string(h.rows()) +
                             " exceeds the dense cap; use the signed-permutation path");
}

template <class F>
void for_each_block(const SpMat& h, std::size_t cap, F&& f) {
    check_cap(h, cap);
    if (!is_hermitian(h, 1e-10)) throw InputError("operator is not hermitian");
    CMat dense = CMat(h);
    for (auto& idx : components(h)) {
        const int s = int(idx.size());
        CMat blk(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) blk(i, j) = dense(idx[i], idx[j]);
        Eigen::SelfAdjointEigenSolver<CMat> es(blk);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        f(idx, es.eigenvalues(), es.eigenvectors());
    }
}

}  // namespace

SpMat hermitian_function(const SpMat& h, const std::function<cplx(double)>& fn,
                         std::size_t dense_cap) {
    std::vector<Triplet> t;
    for_each_block(h, dense_cap, [&](const std::vector<int>& idx, const RVec& w, const CMat& v) {
        CVec fw(w.size());
        for (int i = 0; i < w.size(); ++i) fw[i] = fn(w[i]);
        CMat blk = v * fw.asDiagonal() * v.adjoint();
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                if (std::abs(blk(i, j)) > 1e-15) t.emplace_back(idx[i], idx[j], blk(i, j));
    });
    SpMat out(h.rows(), h.cols());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

SpMat expm_hermitian(const SpMat& h, double t, std::size_t dense_cap) {
    return hermitian_function(h, [t](double e) { return std::exp(cplx(0, -t * e)); },
                              dense_cap);
}

SpMat expm_antihermitian(const SpMat& a, std::size_t dense_cap) {
    // exp(A) = exp(-i (iA))
    SpMat h = SpMat(a * kI);
    return expm_hermitian(h, 1.0, dense_cap);
}

RVec hermitian_spectrum(const SpMat& h, std::size_t dense_cap) {
    std::vector<double> all;
    for_each_block(h, dense_cap, [&](const std::vector<int>&, const RVec& w, const CMat&) {
        for (int i = 0; i < w.size(); ++i) all.push_back(w[i]);
    });
    std::sort(all.begin(), all.end());
    return Eigen::Map<RVec>(all.data(), Eigen::Index(all.size()));
}

LogResult principal_log(const CMat& s, double max_condition) {
    Eigen::ComplexEigenSolver<CMat> es(s);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    const CMat& v = es.eigenvectors();
    Eigen::JacobiSVD<CMat> svd(v);
    const auto& sv = svd.singularValues();
    double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(cond < max_condition))
        throw NumericalError("matrix not safely diagonalizable, eigenvector condition " +
                             std::to_string(cond));
    CVec lw(es.eigenvalues().size());
    for (int i = 0; i < lw.size(); ++i) {
        cplx l = es.eigenvalues()[i];
        if (std::abs(l) == 0) throw NumericalError("zero eigenvalue, log undefined");
        // arguments at -pi are moved to +pi
        double arg = std::arg(l);
        if (arg <= -kPi + 1e-14) arg = kPi;
        lw[i] = cplx(std::log(std::abs(l)), arg);
    }
    return {v * lw.asDiagonal() * v.inverse(), cond};
}

SpMat principal_generator(const SignedPermutation& s, double eps) {
    const std::size_t n = s.dim();
    std::vector<char> seen(n, 0);
    std::vector<Triplet> t;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        // f_i = S^i e_start = g_i e_{c_i}
        std::vector<std::uint32_t> cyc;
        std::vector<double> gauge;
        double g = 1;
        std::size_t c = start;
        do {
            seen[c] = 1;
            cyc.push_back(std::uint32_t(c));
            gauge.push_back(g);
            g *= s.sign(c);
            c = s.image(c);
        } while (c != start);
        const int l = int(cyc.size());
        const double theta0 = g > 0 ? 0.0 : kPi;  // product of signs around the cycle
        std::vector<double> th(l);
        for (int r = 0; r < l; ++r) {
            double a = (theta0 + 2 * kPi * r) / l;
            while (a > kPi + 1e-14) a -= 2 * kPi;
            th[r] = a;
        }
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b) {
                cplx v = 0;
                for (int r = 0; r < l; ++r)
                    v += -th[r] / eps * std::exp(cplx(0, th[r] * (b - a)));
                v /= double(l);
                v *= gauge[a] * gauge[b];
                if (std::abs(v) > 1e-15) t.emplace_back(cyc[a], cyc[b], v);
            }
    }
    SpMat out(n, n);
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

// ------------------------------------------------------------------ Ising

IsingTransfer ising_transfer(int n_x, double beta, double eps) {
    if (!(beta > 0) || !std::isfinite(beta)) throw InputError("finite beta > 0 required");
    if (n_x < 1 || n_x > 12) throw DimensionError("Ising transfer matrix limited to n_x <= 12");
    const std::size_t dim = std::size_t{1} << n_x;
    auto spin = [&](std::size_t r, int x) { return ((r >> (n_x - 1 - x)) & 1u) ? -1.0 : 1.0; };
    auto intra = [&](std::size_t r) {
        double s = 0;
        for (int x = 0; x < n_x; ++x) s += spin(r, (x + 1) % n_x) * spin(r, x);
        return s;
    };
    RMat s0(dim, dim);
    for (std::size_t tau = 0; tau < dim; ++tau)
        for (std::size_t rho = 0; rho < dim; ++rho) {
            double e = 0;
            for (int x = 0; x < n_x; ++x) e += spin(tau, x) * spin(rho, x);
            e += 0.5 * intra(rho) + 0.5 * intra(tau);
            s0(tau, rho) = std::exp(beta * e);
        }
    Eigen::SelfAdjointEigenSolver<RMat> es(s0);
    double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    IsingTransfer out;
    out.S = s0 / lmax;
    out.delta = 2.0 - std::log(lmax) / (beta * n_x);
    LogResult lg = principal_log(out.S.cast<cplx>());
    CMat g = lg.log * cplx(0, 1.0 / eps);
    out.H = 0.5 * (g + g.adjoint());
    out.J = (g - g.adjoint()) * cplx(0, -0.5);
    out.condition = lg.condition;
    return out;
}

std::vector<SeriesPoint> quantum_occupation_series(const Ensemble& ens, const LatticeSpec& spec,
                                                   const Schedule& sched) {
    ens.validate();
    BasisIndexing b(spec);
    if (b.M > 26) throw DimensionError("quantum evolution limited to 26 bits");
    RVec q = RVec::Zero(b.dim());
    for (const auto& [c, w] : ens.entries) q[b.raw(c)] += w;
    q = q.cwiseSqrt();
    WaveFunctionPair pair{q, q};
    SignedPermutation St = build_transport_operator(spec);
    std::optional<SignedPermutation> Si;
    if (sched.rule) Si = build_cell_operator(spec, *sched.rule);
    // n(g) is diagonal in the occupation basis: <n(g)> = sum_r q~_r q_r [g occupied in r]
    std::vector<double> acc(b.M);
    std::vector<SeriesPoint> out;
    for (int t = 0;; ++t) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t r = 0; r < b.dim(); ++r) {
            double w = pair.q_tilde[r] * pair.q_bar[r];
            if (w == 0.0) continue;
            for (int g = 0; g < b.M; ++g)
                if (b.occupied(r, g)) acc[g] += w;
        }
        for (int g = 0; g < b.M; ++g)
            out.push_back({t, "n(" + std::to_string(g / spec.n_x) + "," + std::to_string(g % spec.n_x) + ")",
                           acc[g], 0.0});
        if (t == spec.n_t) break;
        pair = evolve_pair(pair, sched.interaction_at(t) ? *Si : St);
    }
    return out;
}

CMat evolve_density(const CMat& rho, const SignedPermutation& s) {
    SpMat sp = s.to_sparse();
    SpMat si = s.inverse().to_sparse();
    return CMat(sp * rho) * si;
}

CMat evolve_density(const CMat& rho, const CMat& s) {
    Eigen::FullPivLU<CMat> lu(s);
    if (!lu.isInvertible()) throw NumericalError("singular step evolution operator");
    return s * rho * lu.inverse();
}

std::vector<cplx> spectrum(const CMat& a) {
    Eigen::ComplexEigenSolver<CMat> es(a, false);
    std::vector<cplx> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

}  // namespace pca
