#include "pca/symmetry.hpp"

#include "pca/fermion.hpp"

namespace pca {

namespace {

int swap_partner(int gamma, Species s) {
    switch (s) {
        case Species::Dirac: return 1 - gamma;
        case Species::Colored: return (gamma + 2) % 4;
        default: return gamma;
    }
}

// canonical permutation of configurations conjugated by the creation-order signs
SignedPermutation relabel_operator(const SymmetryContext& ctx, TransformKind k) {
    const auto& b = ctx.basis;
    std::vector<std::uint32_t> im(b.dim());
    std::vector<std::int8_t> sg(b.dim());
    for (std::uint64_t r = 0; r < b.dim(); ++r) {
        std::uint64_t c = b.code(r);
        std::uint64_t c2 = transform_code(c, k, ctx.spec);
        im[r] = std::uint32_t(b.raw(c2));
        sg[r] = std::int8_t(b.sigma_code(c) * b.sigma_code(c2));
    }
    return {std::move(im), std::move(sg)};
}

SpMat transpose_of(const SpMat& a) { return SpMat(a.transpose()); }
SpMat conj_of(const SpMat& a) { return SpMat(a.conjugate()); }

InvarianceResult compare(const SpMat& a, const SpMat& b, double tol) {
    InvarianceResult r;
    SpMat d = a - b;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it)
            if (std::abs(it.value()) > r.deviation) {
                r.deviation = std::abs(it.value());
                r.row = int(it.row());
                r.col = int(it.col());
            }
    r.invariant = r.deviation <= tol;
    return r;
}

SpMat mat2(cplx a, cplx b, cplx c, cplx d) {
    SpMat m(2, 2);
    std::vector<Triplet> t{{0, 0, a}, {0, 1, b}, {1, 0, c}, {1, 1, d}};
    m.setFromTriplets(t.begin(), t.end());
    m.prune(cplx(0.0));
    return m;
}

}  // namespace

std::string to_string(TransformKind k) {
    switch (k) {
        case TransformKind::C: return "C";
        case TransformKind::P: return "P";
        case TransformKind::T: return "T";
        case TransformKind::PT: return "PT";
        case TransformKind::CT: return "CT";
        case TransformKind::CPT: return "CPT";
    }
    return "?";
}

TransformKind transform_from_string(const std::string& s) {
    for (auto k : kAllTransforms)
        if (to_string(k) == s) return k;
    throw InputError("unknown transform '" + s + "'");
}

DiscreteTransform make_transform(TransformKind k) {
    DiscreteTransform t{k};
    const std::string s = to_string(k);
    t.has_c = s.find('C') != std::string::npos;
    t.has_p = s.find('P') != std::string::npos;
    t.has_t = s.find('T') != std::string::npos;
    return t;
}

bool DiscreteTransform::swaps_species(const LatticeSpec& spec) const {
    if (spec.n_species() == 1) return false;
    return has_p != has_t;  // P and T both swap, PT swaps twice
}

std::uint64_t transform_code(std::uint64_t code, TransformKind k, const LatticeSpec& spec) {
    const auto t = make_transform(k);
    const int n = spec.n_x, ns = spec.n_species(), M = n * ns;
    std::uint64_t out = 0;
    for (int g = 0; g < M; ++g) {
        if (!((code >> (M - 1 - g)) & 1)) continue;
        int gamma = g / n, p = g % n;
        if (t.has_t) gamma = swap_partner(gamma, spec.species);
        if (t.has_p) {
            gamma = swap_partner(gamma, spec.species);
            p = n - 1 - p;
        }
        out |= 1ull << (M - 1 - (gamma * n + p));
    }
    if (t.has_c) out = ~out & (M == 64 ? ~0ull : ((1ull << M) - 1));
    return out;
}

SpinConfig apply_transform(const SpinConfig& c, TransformKind k, const LatticeSpec& spec) {
    if (c.n_x() != spec.n_x || c.n_species() != spec.n_species())
        throw DimensionError("configuration does not match the lattice");
    const auto t = make_transform(k);
    const int n = spec.n_x;
    SpinConfig out(n, spec.n_species());
    for (int gamma = 0; gamma < spec.n_species(); ++gamma)
        for (int p = 0; p < n; ++p) {
            int g2 = gamma, p2 = p;
            if (t.has_t) g2 = swap_partner(g2, spec.species);
            if (t.has_p) {
                g2 = swap_partner(g2, spec.species);
                p2 = n - 1 - p;
            }
            out.set(g2, p2, c.get(gamma, p) != t.has_c);
        }
    return out;
}

AntiUnitary AntiUnitary::operator*(const AntiUnitary& o) const {
    // U1 (U2 x^c2)^c1 = U1 U2 x^(c1 xor c2) for real U2
    return {U * o.U, conj != o.conj};
}

CVec AntiUnitary::apply(const CVec& v) const {
    return conj ? U.apply(CVec(v.conjugate())) : U.apply(v);
}

SpMat AntiUnitary::conjugate(const SpMat& a) const {
    return U.conjugate(conj ? conj_of(a) : a);
}

SymmetryContext::SymmetryContext(const LatticeSpec& s)
    : spec(s), basis(s), m(structure_matrices(s)) {
    UP = relabel_operator(*this, TransformKind::P);
    X = relabel_operator(*this, TransformKind::T);
}

AntiUnitary SymmetryContext::state_map(TransformKind k) const {
    const auto t = make_transform(k);
    AntiUnitary a{SignedPermutation(basis.dim()), false};
    if (t.has_t) a = AntiUnitary{X, false} * a;
    if (t.has_p) a = AntiUnitary{UP, false} * a;
    if (t.has_c) a = AntiUnitary{m.B, true} * a;
    return a;
}

CVec apply_transform(const CVec& phi, TransformKind k, const SymmetryContext& ctx) {
    if (std::size_t(phi.size()) != ctx.basis.dim()) throw DimensionError("wave function dimension mismatch");
    return ctx.state_map(k).apply(phi);
}

ComplexWave apply_transform(const ComplexWave& w, TransformKind k, const SymmetryContext& ctx) {
    if (make_transform(k).has_t && ctx.spec.n_species() == 1)
        throw PictureError(to_string(k) +
                           " exchanges q~ and q-bar; use the pair picture for a single chirality");
    return {apply_transform(w.phi, k, ctx), w.constrained};
}

RVec apply_transform(const RVec& q, TransformKind k, const SymmetryContext& ctx) {
    const auto t = make_transform(k);
    if (t.has_t)
        throw PictureError(to_string(k) +
                           " needs the conjugate wave function; pass a WaveFunctionPair");
    if (std::size_t(q.size()) != ctx.basis.dim()) throw DimensionError("wave function dimension mismatch");
    RVec out = q;
    if (t.has_p) out = ctx.UP.apply(out);
    if (t.has_c) out = ctx.m.B.apply(out);
    return out;
}

WaveFunctionPair apply_transform(const WaveFunctionPair& w, TransformKind k,
                                 const SymmetryContext& ctx) {
    const auto t = make_transform(k);
    if (std::size_t(w.q_tilde.size()) != ctx.basis.dim() || w.q_bar.size() != w.q_tilde.size())
        throw DimensionError("wave function dimension mismatch");
    WaveFunctionPair out = w;
    if (t.has_t) out = {ctx.X.apply(w.q_bar), ctx.X.apply(w.q_tilde)};
    if (t.has_p) out = {ctx.UP.apply(out.q_tilde), ctx.UP.apply(out.q_bar)};
    if (t.has_c) out = {ctx.m.B.apply(out.q_tilde), ctx.m.B.apply(out.q_bar)};
    return out;
}

SpMat apply_transform(const SpMat& a, TransformKind k, const SymmetryContext& ctx) {
    return ctx.state_map(k).conjugate(a);
}

SpMat transform_step(const SpMat& s, TransformKind k, const SymmetryContext& ctx) {
    const auto t = make_transform(k);
    SpMat out = s;
    if (t.has_t) out = ctx.X.conjugate(transpose_of(out));
    if (t.has_p) out = ctx.UP.conjugate(out);
    if (t.has_c) out = ctx.m.B.conjugate(conj_of(out));
    return out;
}

SpMat transform_hamiltonian(const SpMat& h, TransformKind k, const SymmetryContext& ctx) {
    const auto t = make_transform(k);
    SpMat out = h;
    if (t.has_t) out = SpMat(-ctx.X.conjugate(conj_of(out)));
    if (t.has_p) out = ctx.UP.conjugate(out);
    if (t.has_c) out = ctx.m.B.conjugate(conj_of(out));
    return out;
}

InvarianceResult check_invariance(const SpMat& s, TransformKind k, const SymmetryContext& ctx,
                                  double tol) {
    if (std::size_t(s.rows()) != ctx.basis.dim()) throw DimensionError("step operator dimension mismatch");
    return compare(transform_step(s, k, ctx), s, tol);
}

InvarianceResult check_invariance(const SignedPermutation& s, TransformKind k,
                                  const SymmetryContext& ctx, double tol) {
    return check_invariance(s.to_sparse(), k, ctx, tol);
}

HamiltonianReport hamiltonian_transform_report(const SpMat& H_R, const SpMat& H_L, TransformKind k,
                                               const SymmetryContext& ctx, double tol) {
    // expected (image of H_R, image of H_L)
    SpMat eR, eL;
    switch (k) {
        case TransformKind::P: eR = H_L; eL = H_R; break;
        case TransformKind::T: eR = -H_L; eL = -H_R; break;
        case TransformKind::PT: eR = -H_R; eL = -H_L; break;
        case TransformKind::C: eR = -H_R; eL = -H_L; break;
        case TransformKind::CT: eR = H_L; eL = H_R; break;
        case TransformKind::CPT: eR = H_R; eL = H_L; break;
    }
    HamiltonianReport rep{k};
    SpMat iR = transform_hamiltonian(H_R, k, ctx);
    SpMat iL = transform_hamiltonian(H_L, k, ctx);
    rep.dev_R = max_abs_diff(iR, eR);
    rep.dev_L = max_abs_diff(iL, eL);
    rep.dev_total = max_abs_diff(SpMat(iR + iL), SpMat(eR + eL));
    rep.ok = rep.dev_R <= tol && rep.dev_L <= tol && rep.dev_total <= tol;
    return rep;
}

std::pair<CVec, CVec> c_eigenstates(const CVec& phi, const SymmetryContext& ctx) {
    CVec c = apply_transform(phi, TransformKind::C, ctx);
    return {0.5 * (phi + c), 0.5 * (phi - c)};
}

SpMat alternative_Bc(int n_x) {
    LatticeSpec spec;
    spec.n_x = n_x;
    spec.species = Species::MW_R;
    SpMat W = alternating_W(n_x);
    SpMat B = structure_matrices(spec).B.to_sparse();
    SpMat out = W * B * transpose_of(W);
    out.prune(cplx(0.0), 1e-14);
    return out;
}

SpMat alternative_Bc_literal(int n_x) {
    SpMat t3 = mat2(1, 0, 0, -1);
    SpMat mit2 = mat2(0, -1, 1, 0);  // -i tau2
    SpMat out = t3;
    for (int p = 1; p < n_x; ++p) out = kron(out, p % 2 == 0 ? t3 : mit2);
    return out;
}

}  // namespace pca
