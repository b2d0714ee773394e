#include "pca/complex_structure.hpp"

#include <cmath>

namespace pca {

namespace {

SignedPermutation negate(const SignedPermutation& a) {
    std::vector<std::uint32_t> im(a.dim());
    std::vector<std::int8_t> sg(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        im[r] = a.image(r);
        sg[r] = std::int8_t(-a.sign(r));
    }
    return {std::move(im), std::move(sg)};
}

RMat dense(const SignedPermutation& a) { return a.to_dense(); }

}  // namespace

std::vector<std::int8_t> eta_signs(const BasisIndexing& b) {
    std::vector<std::int8_t> s(b.dim());
    for (std::uint64_t r = 0; r < b.dim(); ++r) s[r] = std::int8_t(sgn_of(parity(r)));
    return s;
}

StructureMatrices structure_matrices(const LatticeSpec& spec) {
    BasisIndexing b(spec);
    const std::size_t dim = b.dim();
    std::vector<std::uint32_t> flip(dim), id(dim);
    std::vector<std::int8_t> ones(dim, 1), t3(dim), d(dim);
    std::uint64_t odd_mask = 0;
    for (int g = 0; g < b.M; ++g)
        if ((g % spec.n_x) % 2 == 1) odd_mask |= b.slot_bit(g);
    for (std::uint64_t r = 0; r < dim; ++r) {
        flip[r] = std::uint32_t(r ^ b.mask());
        id[r] = std::uint32_t(r);
        t3[r] = std::int8_t(sgn_of(parity(r)));  // tau3 = -1 on an empty slot
        d[r] = std::int8_t(sgn_of(parity(r & odd_mask)));
    }
    StructureMatrices m;
    m.T1 = SignedPermutation(flip, ones);
    m.T3 = SignedPermutation(id, t3);
    m.D = SignedPermutation(id, d);
    m.B = m.D * m.T1;
    return m;
}

ComplexStructurePair single_structure(const StructureMatrices& m) {
    ComplexStructurePair p;
    p.name = "single";
    p.K = m.B;
    p.I = m.T3 * m.B;
    p.F_tilde_I = m.T3;
    return p;
}

SignedPermutation tau1_kron(const SignedPermutation& a) {
    const std::size_t n = a.dim();
    std::vector<std::uint32_t> im(2 * n);
    std::vector<std::int8_t> sg(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        im[r] = std::uint32_t(n + a.image(r));
        sg[r] = std::int8_t(a.sign(r));
        im[n + r] = a.image(r);
        sg[n + r] = std::int8_t(a.sign(r));
    }
    return {std::move(im), std::move(sg)};
}

SignedPermutation one_kron(const SignedPermutation& a) {
    const std::size_t n = a.dim();
    std::vector<std::uint32_t> im(2 * n);
    std::vector<std::int8_t> sg(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        im[r] = a.image(r);
        sg[r] = std::int8_t(a.sign(r));
        im[n + r] = std::uint32_t(n + a.image(r));
        sg[n + r] = std::int8_t(a.sign(r));
    }
    return {std::move(im), std::move(sg)};
}

SpMat block_diag(const SpMat& a, const SpMat& b) {
    std::vector<Triplet> t;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < b.outerSize(); ++k)
        for (SpMat::InnerIterator it(b, k); it; ++it)
            t.emplace_back(a.rows() + it.row(), a.cols() + it.col(), it.value());
    SpMat out(a.rows() + b.rows(), a.cols() + b.cols());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

ComplexStructurePair doubled_structure(const StructureMatrices& m) {
    ComplexStructurePair p;
    p.name = "doubled";
    p.K = tau1_kron(m.B);
    p.I = tau1_kron(m.T3 * m.B);
    p.F_tilde_I = one_kron(m.T3);
    p.doubled = true;
    return p;
}

// ------------------------------------------------------------ complexify

ComplexWave complexify(const RVec& q_tilde, const RVec& q_bar_prime, const StructureMatrices& m) {
    if (q_tilde.size() != q_bar_prime.size() || std::size_t(q_tilde.size()) != m.B.dim())
        throw DimensionError("wave function dimensions do not match the structure");
    RVec q_hat = m.B.apply(q_bar_prime);
    RVec re = 0.5 * (q_tilde + q_hat);
    RVec im = 0.5 * m.T3.apply(RVec(q_tilde - q_hat));
    ComplexWave w;
    w.phi = re.cast<cplx>() + kI * im.cast<cplx>();
    w.constrained = (q_tilde - q_bar_prime).cwiseAbs().maxCoeff() == 0.0;
    return w;
}

std::pair<RVec, RVec> decomplexify(const ComplexWave& w, const StructureMatrices& m) {
    if (std::size_t(w.phi.size()) != m.B.dim()) throw DimensionError("wave dimension mismatch");
    RVec re = w.phi.real();
    RVec t3im = m.T3.apply(RVec(w.phi.imag()));
    RVec q_tilde = re + t3im;
    RVec q_hat = re - t3im;
    return {q_tilde, m.B.apply(q_hat)};  // B^2 = 1
}

PhaseReport phase_rotate(const ComplexWave& w, const RVec& alpha, const StructureMatrices& m) {
    if (alpha.size() != w.phi.size()) throw DimensionError("phase vector size mismatch");
    auto probs = [&](const ComplexWave& x, RVec& sum, RVec& diff, RVec* qq) {
        auto [qt, qb] = decomplexify(x, m);
        RVec qhat = m.B.apply(qb);
        sum = qt.cwiseProduct(qt) + qhat.cwiseProduct(qhat);
        diff = qt.cwiseProduct(qt) - qhat.cwiseProduct(qhat);
        if (qq) *qq = qt.cwiseProduct(qhat);
    };
    PhaseReport rep;
    rep.rotated = w;
    for (int i = 0; i < w.phi.size(); ++i) rep.rotated.phi[i] *= std::exp(cplx(0, alpha[i]));
    RVec qq;
    probs(w, rep.sum_before, rep.diff_before, &qq);
    probs(rep.rotated, rep.sum_after, rep.diff_after, nullptr);
    rep.diff_predicted.resize(alpha.size());
    for (int i = 0; i < alpha.size(); ++i) {
        double eta = m.T3.sign(i);
        rep.diff_predicted[i] = std::cos(2 * alpha[i]) * rep.diff_before[i] +
                                2 * eta * std::sin(2 * alpha[i]) * qq[i];
    }
    return rep;
}

std::pair<CVec, CVec> project_B(const CVec& phi, const StructureMatrices& m) {
    CVec bphi = m.B.apply(phi);
    return {0.5 * (phi + bphi), 0.5 * (phi - bphi)};
}

// ------------------------------------------------------------ verification

std::vector<std::string> verify_structure(const ComplexStructurePair& pair,
                                          const SignedPermutation& step, double tol) {
    std::vector<std::string> bad;
    if (pair.F_R == 0.0) throw StructureError("singular F_R is not supported");
    const std::size_t n = pair.K.dim();
    SignedPermutation id(n);
    SignedPermutation s = step;
    if (pair.doubled && step.dim() * 2 == n) s = one_kron(step);
    if (s.dim() != n) throw DimensionError("step operator does not match the structure");

    if (!(pair.K * pair.K == id)) bad.push_back("K^2 = 1");
    if (!(pair.I * pair.I == negate(id))) bad.push_back("I^2 = -1");
    if (!(pair.K * pair.I == negate(pair.I * pair.K))) bad.push_back("{K,I} = 0");
    if (!(s * pair.K == pair.K * s)) bad.push_back("[S,K] = 0");
    if (!(s * pair.I == pair.I * s)) bad.push_back("[S,I] = 0");

    RMat fi = dense(pair.F_tilde_I * pair.I);
    RMat rhs = (1 - pair.c) * RMat::Identity(n, n) + pair.c * dense(pair.K);
    if ((fi - rhs).cwiseAbs().maxCoeff() > tol) bad.push_back("F_I I = 1 - c(1-K)");
    RMat k = dense(pair.K);
    if ((fi * k - k * fi).cwiseAbs().maxCoeff() > tol) bad.push_back("[F_I I, K] = 0");
    RMat f = dense(pair.F_tilde_I);
    if ((f * k + k * f).cwiseAbs().maxCoeff() > tol) bad.push_back("{F_I, K} = 0");
    return bad;
}

CompatResult compat_project(const CMat& a, const ComplexStructurePair& pair) {
    const int n = int(pair.I.dim());
    if (a.rows() != n || a.cols() != n) throw DimensionError("operator dimension mismatch");
    CMat I = dense(pair.I).cast<cplx>();
    CMat K = dense(pair.K).cast<cplx>();
    CMat one = CMat::Identity(n, n);
    CompatResult r;
    r.projected = 0.5 * (a - I * a * I);
    r.commutator_norm = max_abs(CMat(a * I - I * a));
    r.compatible = r.commutator_norm < 1e-12;
    CMat pp = 0.5 * (one + K), pm = 0.5 * (one - K);
    CMat ar = pp * a * pp + pm * a * pm;
    CMat ai = pp * a * pm + pm * a * pp;
    r.A_C = ar - kI * I * ai;
    r.K_commutator_norm = max_abs(CMat(K * r.A_C - r.A_C * K));
    return r;
}

ComplexWave doubled_ladder_action(const ComplexWave& w, const RVec& q_tilde, const RVec& q_bar_prime,
                                  const SpMat& a_j, const StructureMatrices& m) {
    if (w.constrained)
        throw PictureError("a(j) is not compatible with the identification q' = q~");
    CVec qt = q_tilde.cast<cplx>(), qb = q_bar_prime.cast<cplx>();
    CVec u = a_j * qt;
    CVec v = m.B.apply(CVec(SpMat(a_j.adjoint()) * qb));
    ComplexWave out;
    out.phi = 0.5 * ((u - kI * m.T3.apply(u)) + (v + kI * m.T3.apply(v)));
    return out;
}

SpMat doubled_matrix(DoubledOp op, const SpMat& a_j, const StructureMatrices& m) {
    const auto n = a_j.rows();
    SpMat zero(n, n);
    SpMat t3a = SpMat(m.T3.to_sparse() * a_j);
    switch (op) {
        case DoubledOp::A: {
            std::vector<Triplet> t;
            for (int k = 0; k < a_j.outerSize(); ++k)
                for (SpMat::InnerIterator it(a_j, k); it; ++it) {
                    t.emplace_back(it.row(), n + it.col(), it.value());
                    t.emplace_back(n + it.row(), it.col(), it.value());
                }
            SpMat out(2 * n, 2 * n);
            out.setFromTriplets(t.begin(), t.end());
            return out;
        }
        case DoubledOp::A_prime: return block_diag(t3a, SpMat(-t3a));
        case DoubledOp::N: {
            SpMat nj = SpMat(a_j.adjoint() * a_j);
            return block_diag(nj, nj);
        }
    }
    return zero;
}

double doubled_number_expectation(const RVec& q_tilde, const RVec& q_bar_prime, const SpMat& n_j) {
    CVec qt = q_tilde.cast<cplx>(), qb = q_bar_prime.cast<cplx>();
    double a = qt.dot(n_j * qt).real();
    double b = qb.dot(qb).real() - qb.dot(n_j * qb).real();
    return 0.5 * (a + b);
}

}  // namespace pca
