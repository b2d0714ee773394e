#include "pca/fields.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <map>

namespace pca {

double Kernel::delta(double y) const {
    double s = std::sin(kPi * y / L());
    if (std::abs(s) > 1e-6) return std::sin(kPi * y / eps) / (L() * s);
    double acc = 1.0;
    for (int k = 1; k <= m(); ++k) acc += 2 * std::cos(2 * kPi * k * y / L());
    return acc / L();
}

double Kernel::delta_prime(double y) const {
    double acc = 0;
    for (int k = 1; k <= m(); ++k) acc += k * std::sin(2 * kPi * k * y / L());
    return -4 * kPi * acc / (L() * L());
}

double Kernel::delta_prime_lattice(int mm) const {
    int r = ((mm % n_x) + n_x) % n_x;
    if (r == 0) return 0.0;
    double sign = (mm % 2 == 0) ? 1.0 : -1.0;
    return kPi * sign / (eps * eps * n_x * std::sin(kPi * mm / double(n_x)));
}

cplx Kernel::delta_plus_sum(double y) const {
    cplx acc = 0;
    for (int k = 1; k <= m(); ++k) acc += std::exp(cplx(0, 2 * kPi * k * y / L()));
    return acc / L();
}

cplx Kernel::delta_plus(double y, KernelMode mode) const {
    if (mode == KernelMode::InfiniteL) {
        double z = kPi * y / eps;
        if (std::abs(z) < 1e-4) return (1.0 + kI * z / 2.0 - z * z / 6.0) / (2 * eps);
        return (std::exp(kI * z) - 1.0) / (2 * kPi * kI * y);
    }
    cplx q = std::exp(cplx(0, 2 * kPi * y / L()));
    if (std::abs(1.0 - q) < 1e-6) return delta_plus_sum(y);
    cplx num = 1.0 - std::exp(cplx(0, kPi * y * (1 / eps - 1 / L())));
    return num / ((1.0 / q - 1.0) * L());
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b, int panels) {
    using boost::math::quadrature::gauss;
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    cplx acc = 0;
    for (int i = 0; i < panels; ++i) {
        double lo = a + i * h;
        acc += gauss<double, 16>::integrate([&](double x) { return f(x); }, lo, lo + h);
    }
    return acc;
}

SpMat field_op(const FreeModel& m, int gamma, double t, double x, int sign) {
    const auto& md = m.modes.at(gamma);
    const int chi = m.spec.direction(gamma);
    const double L = m.spec.L();
    SpMat psi(m.dim(), m.dim());
    for (int k = -md.kmax(); k <= md.kmax(); ++k)
        psi += std::exp(cplx(0, 2 * kPi * k * (x - chi * t) / L)) / std::sqrt(L) * md.a(k);
    return sign > 0 ? psi : adjoint(psi);
}

SpMat field_op_dx(const FreeModel& m, int gamma, double t, double x) {
    const auto& md = m.modes.at(gamma);
    const int chi = m.spec.direction(gamma);
    const double L = m.spec.L();
    SpMat d(m.dim(), m.dim());
    for (int k = -md.kmax(); k <= md.kmax(); ++k)
        d += kI * (2 * kPi * k / L) * std::exp(cplx(0, 2 * kPi * k * (x - chi * t) / L)) /
             std::sqrt(L) * md.a(k);
    return d;
}

double heisenberg_check(const FreeModel& m, int gamma, double t, double x) {
    SpMat U = expm_hermitian(m.H, t);
    SpMat moved = SpMat(adjoint(U) * field_op(m, gamma, 0, x)) * U;
    return max_abs_diff(field_op(m, gamma, t, x), moved);
}

double heisenberg_check_lattice(const FreeModel& m, int gamma, int k, double x) {
    SignedPermutation S = build_transport_operator(m.spec).pow(k);
    SpMat moved = S.inverse().conjugate(field_op(m, gamma, 0, x));
    return max_abs_diff(field_op(m, gamma, k * m.spec.epsilon, x), moved);
}

Whiteman whiteman(const FreeModel& m, const VacuumState& v, int gamma, double t, double x) {
    SpMat a = field_op(m, gamma, t, x);
    SpMat b = field_op(m, gamma, 0, 0);
    const double half = 1.0 / (2 * m.spec.L());
    Whiteman w;
    w.W_plus = v.psi.dot(a * (adjoint(b) * v.psi)) - half;
    w.W_minus = v.psi.dot(b * (adjoint(a) * v.psi)) - half;
    return w;
}

Whiteman whiteman_kernel(const Kernel& k, int chirality, double t, double x, KernelMode mode) {
    cplx wp = k.delta_plus(chirality * x - t, mode);
    return {wp, std::conj(wp)};
}

cplx feynman(const Kernel& k, int chirality, double t, double x, double tp, double xp,
             KernelMode mode) {
    if (t == tp) throw InputError("time ordering is undefined at equal times");
    Whiteman w = whiteman_kernel(k, chirality, t - tp, x - xp, mode);
    return t > tp ? w.W_plus : -w.W_minus;
}

cplx feynman(const FreeModel& m, const VacuumState& v, int gamma, double t, double x, double tp,
             double xp) {
    if (t == tp) throw InputError("time ordering is undefined at equal times");
    Whiteman w = whiteman(m, v, gamma, t - tp, x - xp);
    return t > tp ? w.W_plus : -w.W_minus;
}

cplx feynman_wave_residual(const Kernel& k, int chirality, double t, double x, double tp, double xp,
                           double h, KernelMode mode) {
    auto G = [&](double tt, double xx) { return feynman(k, chirality, tt, xx, tp, xp, mode); };
    cplx dt = (G(t + h, x) - G(t - h, x)) / (2 * h);
    cplx dx = (G(t, x + h) - G(t, x - h)) / (2 * h);
    return dt + double(chirality) * dx;
}

cplx continuum_delta_plus(double y) { return -1.0 / (2 * kPi * kI * y); }

SmearedComparison smeared_probe(const Kernel& k, double y0, double sigma, double cut,
                                KernelMode mode) {
    const double a = y0 - cut * sigma, b = y0 + cut * sigma;
    if (a <= 0 && b >= 0) throw InputError("probe window contains the coincidence point");
    auto g = [&](double y) {
        double u = (y - y0) / sigma;
        return std::exp(-0.5 * u * u) / (std::sqrt(2 * kPi) * sigma);
    };
    const int panels = int(std::ceil((b - a) / (k.eps / 4)));
    SmearedComparison s;
    s.lattice = integrate([&](double y) { return g(y) * k.delta_plus(y, mode); }, a, b, panels);
    s.continuum = integrate([&](double y) { return g(y) * continuum_delta_plus(y); }, a, b, panels);
    s.rel_error = std::abs(s.lattice - s.continuum) / std::abs(s.continuum);
    return s;
}

std::vector<cplx> lattice_fourier(const std::vector<cplx>& f_j) {
    const int n = int(f_j.size()), m = (n - 1) / 2;
    std::vector<cplx> c(n, 0.0);
    for (int k = -m; k <= m; ++k)
        for (int j = -m; j <= m; ++j)
            c[k + m] += f_j[j + m] * std::exp(cplx(0, -2 * kPi * k * j / double(n))) / double(n);
    return c;
}

double overlap_integral(const Kernel& k, int jp, int j, int panels) {
    const double L = k.L();
    auto f = [&](double x) { return cplx(k.delta(x - k.eps * jp) * k.delta_prime(x - k.eps * j)); };
    return integrate(f, -L / 2, L / 2, panels).real();
}

SpMat reconstruct_hamiltonian(const FreeModel& m, int gamma, int panels) {
    const auto& spec = m.spec;
    Kernel k{spec.n_x, spec.epsilon};
    if (panels <= 0) panels = 4 * spec.n_x;
    const int km = spec.jmax();
    std::map<int, double> cache;  // by (j' - j) mod n
    SpMat h(m.dim(), m.dim());
    for (int jp = -km; jp <= km; ++jp)
        for (int j = -km; j <= km; ++j) {
            int d = ((jp - j) % spec.n_x + spec.n_x) % spec.n_x;
            auto it = cache.find(d);
            if (it == cache.end()) it = cache.emplace(d, overlap_integral(k, jp, j, panels)).first;
            if (std::abs(it->second) < 1e-15) continue;
            h += (spec.epsilon * -kI * it->second) *
                 SpMat(m.ladders.adag(gamma, jp) * m.ladders.a(gamma, j));
        }
    h.prune(cplx(0.0), 1e-14);
    return h;
}

}  // namespace pca
