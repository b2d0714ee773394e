#include "pca/vacuum.hpp"

#include <cmath>
#include <set>

namespace pca {

namespace {

double vnorm(const CVec& v) { return v.norm(); }

int kmax_of(const LatticeSpec& s) { return s.jmax(); }

}  // namespace

FreeModel free_model(const LatticeSpec& spec, std::size_t dense_cap) {
    spec.validate();
    std::size_t dim = std::size_t{1} << spec.bits();
    if (dim > dense_cap)
        throw DimensionError("Hilbert dimension " + std::to_string(dim) + " exceeds the cap " +
                             std::to_string(dense_cap));
    FreeModel m;
    m.spec = spec;
    m.ladders = build_ladders(spec, LadderFamily::SignString);
    m.H = SpMat(dim, dim);
    m.P = SpMat(dim, dim);
    for (int g = 0; g < spec.n_species(); ++g) {
        m.modes.push_back(fourier_modes(m.ladders, g));
        SpMat h = hamiltonian_mw(m.modes.back(), spec.direction(g)).H;
        m.H += h;
        m.P += double(spec.direction(g)) * h;
        m.H_gamma.push_back(std::move(h));
    }
    m.E0 = vacuum_energy_formula(spec.n_x, spec.epsilon);
    return m;
}

std::string to_string(VacuumKind k) {
    switch (k) {
        case VacuumKind::Empty: return "empty";
        case VacuumKind::Equipartition: return "equipartition";
        case VacuumKind::ParticleMW: return "particle-mw";
        case VacuumKind::ParticleDirac: return "particle-dirac";
    }
    return "?";
}

VacuumState build_vacuum(VacuumKind kind, const FreeModel& m) {
    const auto& spec = m.spec;
    const std::size_t dim = m.dim();
    VacuumState v;
    v.kind = kind;
    BasisIndexing b(spec);
    CVec empty = CVec::Zero(dim);
    empty[b.raw(std::uint64_t{0})] = 1.0;

    switch (kind) {
        case VacuumKind::Empty: v.psi = empty; break;
        case VacuumKind::Equipartition:
            v.psi = CVec::Constant(dim, 1.0 / std::sqrt(double(dim)));
            break;
        case VacuumKind::ParticleMW:
        case VacuumKind::ParticleDirac: {
            if (kind == VacuumKind::ParticleMW && spec.n_species() != 1)
                throw InputError("the Majorana-Weyl vacuum needs a single species");
            if (kind == VacuumKind::ParticleDirac && spec.species != Species::Dirac)
                throw InputError("the Dirac vacuum needs the Dirac species");
            spec.validate(true);
            const int km = kmax_of(spec);
            CVec psi = empty;
            // rightmost factor acts first: last species first, zero mode before the others
            for (int g = spec.n_species() - 1; g >= 0; --g) {
                const auto& md = m.modes[g];
                psi = (psi + md.adag(0) * psi) / std::sqrt(2.0);
                const int chi = spec.direction(g);
                for (int k = km; k >= -km; --k)
                    if (chi * k < 0) psi = md.adag(k) * psi;
            }
            v.psi = psi;
            break;
        }
    }
    v.energy = v.psi.dot(m.H * v.psi).real();
    return v;
}

VacuumReport vacuum_report(const VacuumState& v, const FreeModel& m) {
    const auto& spec = m.spec;
    const CVec& psi = v.psi;
    VacuumReport r;
    r.norm = vnorm(psi);
    r.energy = v.energy;
    r.eigen_residual = vnorm(m.H * psi - v.energy * psi);
    const int km = kmax_of(spec);
    double zmax = 0;
    for (int g = 0; g < spec.n_species(); ++g) {
        const auto& md = m.modes[g];
        const int chi = spec.direction(g);
        for (int k = 1; k <= km; ++k) {
            // particles at chi*k > 0 are annihilated by a, antiparticles by b = a+(-k)
            r.annihilation_residual = std::max(r.annihilation_residual, vnorm(md.a(chi * k) * psi));
            r.annihilation_residual = std::max(r.annihilation_residual, vnorm(md.adag(-chi * k) * psi));
        }
        double z = psi.dot(md.n(0) * psi).real();
        r.zero_mode_occupation = z;
        zmax = std::max(zmax, std::abs(z - 0.5));
        Charges c = charge_operators(m.ladders, md, g);
        r.charge_residual += vnorm(c.Q * psi);
        r.Qprime_expectation += psi.dot(c.Q_prime * psi).real();
    }
    r.zero_mode_deviation = zmax;
    auto sm = structure_matrices(spec);
    CVec bpsi = sm.B.apply(psi);
    r.B_eigenvalue = psi.dot(bpsi).real();
    r.B_residual = vnorm(bpsi - r.B_eigenvalue * psi);
    CVec spsi = build_transport_operator(spec).apply(psi);
    r.step_phase_residual = vnorm(spsi - std::exp(cplx(0, -spec.epsilon * v.energy)) * psi);
    CVec ppsi = m.P * psi;
    r.momentum = psi.dot(ppsi).real();
    r.momentum_residual = vnorm(ppsi - r.momentum * psi);
    BasisIndexing b(spec);
    std::set<int> sectors;
    for (std::size_t i = 0; i < std::size_t(psi.size()); ++i)
        if (std::abs(psi[i]) > 1e-12) sectors.insert(__builtin_popcountll(b.code(i)));
    r.particle_numbers.assign(sectors.begin(), sectors.end());
    return r;
}

std::vector<double> half_filling_check(const CVec& psi, const LadderSet& l) {
    std::vector<double> out;
    for (const auto& a : l.ann) {
        CVec x = a * psi;
        out.push_back(x.squaredNorm());
    }
    return out;
}

std::vector<SymmetryOverlap> vacuum_symmetry_table(const VacuumState& v, const SymmetryContext& ctx,
                                                   double tol) {
    std::vector<SymmetryOverlap> out;
    for (auto k : kAllTransforms) {
        if (make_transform(k).has_t && ctx.spec.n_species() == 1) continue;
        CVec t = apply_transform(v.psi, k, ctx);
        cplx o = v.psi.dot(t);
        out.push_back({k, o, std::abs(std::abs(o) - 1.0) < tol});
    }
    return out;
}

CVec one_particle_state(const OneParticleWave& w, const VacuumState& v, const FreeModel& m) {
    const int km = kmax_of(m.spec);
    if (int(w.amp.size()) != 2 * km + 1) throw DimensionError("amplitude vector has the wrong length");
    if (std::abs(w.amp[km]) > 1e-12) throw InputError("the k = 0 amplitude must vanish");
    const auto& md = m.modes.at(w.gamma);
    const int chi = m.spec.direction(w.gamma);
    CVec out = CVec::Zero(v.psi.size());
    for (int k = -km; k <= km; ++k) {
        if (k == 0) continue;
        cplx c = w.amp[k + km];
        if (c == 0.0) continue;
        out += c * (chi * k > 0 ? CVec(md.adag(k) * v.psi) : CVec(md.a(k) * v.psi));
    }
    return out;
}

OneParticleWave extract_amplitudes(const CVec& psi, int gamma, const VacuumState& v,
                                   const FreeModel& m, double t) {
    const int km = kmax_of(m.spec);
    const auto& md = m.modes.at(gamma);
    const int chi = m.spec.direction(gamma);
    OneParticleWave w{gamma, std::vector<cplx>(2 * km + 1, 0.0), t};
    for (int k = -km; k <= km; ++k) {
        if (k == 0) continue;
        CVec x = chi * k > 0 ? CVec(md.a(k) * psi) : CVec(md.adag(k) * psi);
        w.amp[k + km] = v.psi.dot(x);
    }
    return w;
}

OneParticleWave one_particle_evolve(const OneParticleWave& w, int steps, double E_vac,
                                    const LatticeSpec& spec) {
    const int km = kmax_of(spec);
    if (std::abs(w.amp.at(km)) > 1e-12) throw InputError("the k = 0 amplitude must vanish");
    OneParticleWave out = w;
    const double eps = spec.epsilon;
    for (int k = -km; k <= km; ++k) {
        double e = E_vac + 2 * kPi * std::abs(k) / spec.L();
        out.amp[k + km] *= std::exp(cplx(0, -eps * steps * e));
    }
    out.t = w.t + steps * eps;
    return out;
}

OneParticleWave rephase(const OneParticleWave& w, double E_vac, const LatticeSpec& spec) {
    const int km = kmax_of(spec);
    const int chi = spec.direction(w.gamma);
    OneParticleWave out = w;
    for (int k = -km; k <= km; ++k) {
        if (k == 0) continue;
        cplx& a = out.amp[k + km];
        if (chi * k > 0) a = std::exp(cplx(0, w.t * E_vac)) * a;
        else a = std::exp(cplx(0, -w.t * E_vac)) * std::conj(a);
    }
    return out;
}

OneParticleWave unrephase(const OneParticleWave& w, double E_vac, const LatticeSpec& spec) {
    const int km = kmax_of(spec);
    const int chi = spec.direction(w.gamma);
    OneParticleWave out = w;
    for (int k = -km; k <= km; ++k) {
        if (k == 0) continue;
        cplx& a = out.amp[k + km];
        if (chi * k > 0) a = std::exp(cplx(0, -w.t * E_vac)) * a;
        else a = std::conj(std::exp(cplx(0, w.t * E_vac)) * a);
    }
    return out;
}

std::vector<cplx> to_position(const OneParticleWave& w) {
    const int n = int(w.amp.size()), km = (n - 1) / 2;
    std::vector<cplx> out(n, 0.0);
    for (int j = -km; j <= km; ++j)
        for (int k = -km; k <= km; ++k) out[j + km] += std::conj(fourier_D(k, j, n)) * w.amp[k + km];
    return out;
}

OneParticleWave from_position(const std::vector<cplx>& phi_j, int gamma, double t, double tol) {
    const int n = int(phi_j.size()), km = (n - 1) / 2;
    if (n % 2 == 0) throw InputError("position wave needs an odd number of sites");
    OneParticleWave w{gamma, std::vector<cplx>(n, 0.0), t};
    for (int k = -km; k <= km; ++k)
        for (int j = -km; j <= km; ++j) w.amp[k + km] += fourier_D(k, j, n) * phi_j[j + km];
    if (std::abs(w.amp[km]) > tol)
        throw InputError("position wave has a k = 0 component; project it out first");
    w.amp[km] = 0.0;
    return w;
}

std::vector<cplx> project_zero_mode(const std::vector<cplx>& phi_j) {
    cplx mean = 0.0;
    for (auto x : phi_j) mean += x;
    mean /= double(phi_j.size());
    std::vector<cplx> out = phi_j;
    for (auto& x : out) x -= mean;
    return out;
}

double dirac_residual(const std::vector<DiracLayer>& layers, double eps) {
    if (layers.size() < 3) throw InputError("at least three time layers are needed");
    const int n = int(layers[0].R.size());
    for (const auto& l : layers)
        if (int(l.R.size()) != n || int(l.L.size()) != n) throw DimensionError("ragged layers");
    double worst = 0;
    for (std::size_t t = 1; t + 1 < layers.size(); ++t)
        for (int j = 0; j < n; ++j) {
            int jp = (j + 1) % n, jm = (j + n - 1) % n;
            const auto &a = layers[t - 1], &b = layers[t], &c = layers[t + 1];
            cplx dtR = (c.R[j] - a.R[j]) / (2 * eps), dxR = (b.R[jp] - b.R[jm]) / (2 * eps);
            cplx dtL = (c.L[j] - a.L[j]) / (2 * eps), dxL = (b.L[jp] - b.L[jm]) / (2 * eps);
            // gamma0 = -i tau2, gamma1 = tau1
            worst = std::max({worst, std::abs(dtR + dxR), std::abs(dxL - dtL)});
        }
    return worst;
}

}  // namespace pca
