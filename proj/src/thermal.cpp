#include "pca/thermal.hpp"

#include <cmath>

namespace pca {

double fermi(double x, double T) {
    if (T == 0) return x > 0 ? 0.0 : x < 0 ? 1.0 : 0.5;
    double z = x / T;
    if (z > 700) return 0.0;
    return 1.0 / (std::exp(z) + 1.0);
}

ThermalState thermal_occupations(const LatticeSpec& spec, double T) {
    if (!(T > 0)) throw InputError("temperature must be positive");
    ThermalState s;
    s.T = T;
    s.spec = spec;
    const int km = spec.jmax();
    for (int g = 0; g < spec.n_species(); ++g) {
        std::vector<double> occ;
        for (int k = -km; k <= km; ++k)
            occ.push_back(fermi(spec.direction(g) * 2 * kPi * k / spec.L(), T));
        s.occupation.push_back(std::move(occ));
    }
    return s;
}

ThermalState thermal_state(const FreeModel& m, double T) {
    ThermalState s = thermal_occupations(m.spec, T);
    const int ns = m.spec.n_species(), n = m.spec.n_x, km = m.spec.jmax();
    const int M = ns * n;
    const std::size_t dim = m.dim();
    BasisIndexing b(m.spec);
    CVec empty = CVec::Zero(dim);
    empty[b.raw(std::uint64_t{0})] = 1.0;

    // column c: bit i of c occupies mode i = gamma*n + (k + km)
    CMat V(dim, dim);
    RVec E(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        CVec v = empty;
        double e = 0;
        for (int i = M - 1; i >= 0; --i) {
            if (!((c >> i) & 1)) continue;
            int g = i / n, k = i % n - km;
            v = m.modes[g].adag(k) * v;
            e += m.spec.direction(g) * m.modes[g].p(k);
        }
        V.col(c) = v;
        E[c] = e;
    }
    const double emin = E.minCoeff();
    RVec w(dim);
    for (std::size_t c = 0; c < dim; ++c) w[c] = std::exp(-(E[c] - emin) / T);
    w /= w.sum();
    s.rho = V * w.cast<cplx>().asDiagonal() * V.adjoint();
    return s;
}

Occupation mode_occupation(const ThermalState& s, const FreeModel& m, int gamma, int k) {
    const int km = m.spec.jmax();
    if (k < -km || k > km) throw InputError("mode index outside the grid");
    Occupation o;
    if (s.rho.size() > 0) o.trace = (s.rho * m.modes.at(gamma).n(k)).trace().real();
    o.analytic = s.occupation.at(gamma).at(k + km);
    o.fermi_dirac = fermi(m.spec.direction(gamma) * m.modes.at(gamma).p(k), s.T);
    return o;
}

Occupation mode_occupation_at(const ThermalState& s, const FreeModel& m, int gamma, double p) {
    double kk = p * m.spec.L() / (2 * kPi);
    long k = std::lround(kk);
    if (std::abs(kk - double(k)) > 1e-9) throw InputError("momentum is not on the lattice grid");
    return mode_occupation(s, m, gamma, int(k));
}

HalfFillingReport thermal_half_filling(const ThermalState& s, const FreeModel& m) {
    if (s.rho.size() == 0) throw InputError("explicit density matrix required");
    HalfFillingReport r;
    for (int g = 0; g < m.spec.n_species(); ++g) {
        for (int p = 0; p < m.spec.n_x; ++p) {
            const SpMat& a = m.ladders.ann[g * m.spec.n_x + p];
            double nj = (s.rho * SpMat(adjoint(a) * a)).trace().real();
            r.N.push_back(nj);
            r.max_site_deviation = std::max(r.max_site_deviation, std::abs(nj - 0.5));
            r.max_charge = std::max(r.max_charge, std::abs(nj - 0.5));
        }
        const auto& md = m.modes[g];
        const int km = md.kmax();
        for (int k = -km; k <= km; ++k)
            for (int k2 = -km; k2 <= km; ++k2)
                if (k != k2)
                    r.max_offdiag = std::max(
                        r.max_offdiag, std::abs((s.rho * SpMat(md.adag(k) * md.a(k2))).trace()));
        for (int k = 1; k <= km; ++k) {
            double sum = (s.rho * SpMat(md.n(k) + md.n(-k))).trace().real();
            r.max_pair_sum = std::max(r.max_pair_sum, std::abs(sum - 1.0));
        }
    }
    return r;
}

StationarityReport thermal_stationarity(const ThermalState& s, const FreeModel& m) {
    if (s.rho.size() == 0) throw InputError("explicit density matrix required");
    StationarityReport r;
    SignedPermutation S = build_transport_operator(m.spec);
    r.step = max_abs(CMat(evolve_density(s.rho, S) - s.rho));
    auto comm = [&](const SpMat& a) {
        CMat A(a);
        return max_abs(CMat(s.rho * A - A * s.rho));
    };
    r.H = comm(m.H);
    r.P = comm(m.P);
    SpMat qp(m.dim(), m.dim());
    for (int g = 0; g < m.spec.n_species(); ++g)
        qp += charge_operators(m.ladders, m.modes[g], g).Q_prime;
    r.Qprime = comm(qp);
    r.N = comm(total_number_operator(BasisIndexing(m.spec)));
    return r;
}

}  // namespace pca
