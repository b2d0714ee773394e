#include "pca/lattice.hpp"

#include "pca/core.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace pca {

std::string to_string(Species s) {
    switch (s) {
        case Species::MW_R: return "mw-r";
        case Species::MW_L: return "mw-l";
        case Species::Dirac: return "dirac";
        case Species::Colored: return "colored";
    }
    return "?";
}

Species species_from_string(const std::string& s) {
    if (s == "mw-r" || s == "MW-R" || s == "mw") return Species::MW_R;
    if (s == "mw-l" || s == "MW-L") return Species::MW_L;
    if (s == "dirac" || s == "Dirac") return Species::Dirac;
    if (s == "colored" || s == "Colored") return Species::Colored;
    throw InputError("unknown species '" + s + "'");
}

int LatticeSpec::n_species() const {
    switch (species) {
        case Species::MW_R:
        case Species::MW_L: return 1;
        case Species::Dirac: return 2;
        case Species::Colored: return 4;
    }
    return 1;
}

int LatticeSpec::direction(int gamma) const {
    switch (species) {
        case Species::MW_R: return 1;
        case Species::MW_L: return -1;
        case Species::Dirac: return gamma == 0 ? 1 : -1;
        case Species::Colored: return gamma < 2 ? 1 : -1;
    }
    return 1;
}

void LatticeSpec::validate(bool complex_features) const {
    if (n_x < 1 || n_x % 2 == 0) throw InputError("n_x odd required");
    if (!(epsilon > 0)) throw InputError("epsilon > 0 required");
    if (n_t < 0) throw InputError("n_t >= 0 required");
    if (cell_width != 1 && cell_width != 3) throw InputError("cell_width must be 1 or 3");
    if (complex_features && n_x % 4 != 1)
        throw StructureError("n_x = 1 mod 4 required for the complex structure");
    if (cell_width == 3 && n_x % 12 != 9)
        throw InputError("n_x = 9 mod 12 required for 3-site cells");
}

// ---------------------------------------------------------------- SpinConfig

SpinConfig::SpinConfig(int n_x, int n_species)
    : n_x_(n_x), n_species_(n_species), nw_((std::size_t(n_x) + 63) / 64),
      words_(std::size_t(n_species) * (nw_ + 1), 0) {}

void SpinConfig::set(int gamma, int p, bool v) {
    std::uint64_t m = 1ull << (p & 63);
    std::uint64_t& w = plane(gamma)[p >> 6];
    w = v ? (w | m) : (w & ~m);
}

std::uint64_t SpinConfig::code() const {
    if (bits() > 64) throw DimensionError("config too wide for an integer code");
    std::uint64_t c = 0;
    for (int g = 0; g < n_species_; ++g)
        for (int p = 0; p < n_x_; ++p) c = (c << 1) | std::uint64_t(get(g, p));
    return c;
}

SpinConfig SpinConfig::from_code(std::uint64_t code, int n_x, int n_species) {
    SpinConfig s(n_x, n_species);
    int m = n_x * n_species;
    for (int g = 0; g < n_species; ++g)
        for (int p = 0; p < n_x; ++p) {
            int bit = m - 1 - (g * n_x + p);
            s.set(g, p, (code >> bit) & 1u);
        }
    return s;
}

std::string SpinConfig::str() const {
    std::string out;
    for (int g = 0; g < n_species_; ++g) {
        if (g) out += '|';
        for (int p = 0; p < n_x_; ++p) out += get(g, p) ? '1' : '0';
    }
    return out;
}

SpinConfig SpinConfig::parse(const std::string& s) {
    std::vector<std::string> parts(1);
    for (char ch : s) {
        if (ch == '|') parts.emplace_back();
        else if (ch == '0' || ch == '1') parts.back() += ch;
        else if (ch != ' ') throw InputError("bad character in config '" + s + "'");
    }
    int n = int(parts[0].size());
    for (auto& p : parts)
        if (int(p.size()) != n) throw DimensionError("species planes differ in length");
    SpinConfig c(n, int(parts.size()));
    for (int g = 0; g < int(parts.size()); ++g)
        for (int p = 0; p < n; ++p) c.set(g, p, parts[g][p] == '1');
    return c;
}

int SpinConfig::popcount() const {
    int n = 0;
    for (auto w : words_) n += __builtin_popcountll(w);
    return n;
}

bool SpinConfig::operator==(const SpinConfig& o) const {
    return n_x_ == o.n_x_ && n_species_ == o.n_species_ && words_ == o.words_;
}

// ------------------------------------------------------------------ transport

namespace {

void check_shape(const SpinConfig& cfg, const LatticeSpec& spec) {
    if (cfg.n_x() != spec.n_x || cfg.n_species() != spec.n_species())
        throw DimensionError("config shape does not match lattice spec");
}

// p -> p+1, site n-1 wraps to 0
void rotate_up(std::uint64_t* w, std::size_t nw, int n) {
    std::uint64_t wrap = (w[(n - 1) >> 6] >> ((n - 1) & 63)) & 1u;
    for (std::size_t i = nw - 1; i > 0; --i) w[i] = (w[i] << 1) | (w[i - 1] >> 63);
    w[0] = (w[0] << 1) | wrap;
    if (n & 63) w[n >> 6] &= ~(1ull << (n & 63));
}

// p -> p-1, site 0 wraps to n-1
void rotate_down(std::uint64_t* w, std::size_t nw, int n) {
    std::uint64_t wrap = w[0] & 1u;
    for (std::size_t i = 0; i + 1 < nw; ++i) w[i] = (w[i] >> 1) | (w[i + 1] << 63);
    w[nw - 1] >>= 1;
    if (wrap) w[(n - 1) >> 6] |= 1ull << ((n - 1) & 63);
}

std::uint64_t read_bits(const std::uint64_t* w, std::size_t s) {
    std::size_t i = s >> 6, o = s & 63;
    std::uint64_t v = w[i] >> o;
    if (o) v |= w[i + 1] << (64 - o);
    return v;
}

void write_bits(std::uint64_t* w, std::size_t s, int nbits, std::uint64_t v) {
    std::size_t i = s >> 6, o = s & 63;
    std::uint64_t mask = nbits == 64 ? ~0ull : ((1ull << nbits) - 1);
    v &= mask;
    w[i] = (w[i] & ~(mask << o)) | (v << o);
    if (o && int(64 - o) < nbits) {
        std::uint64_t m2 = mask >> (64 - o);
        w[i + 1] = (w[i + 1] & ~m2) | (v >> (64 - o));
    }
}

}  // namespace

void transport_inplace(SpinConfig& cfg, const LatticeSpec& spec, bool inverse) {
    check_shape(cfg, spec);
    for (int g = 0; g < cfg.n_species(); ++g) {
        int d = spec.direction(g) * (inverse ? -1 : 1);
        if (d > 0) rotate_up(cfg.plane(g), cfg.words_per_plane(), cfg.n_x());
        else rotate_down(cfg.plane(g), cfg.words_per_plane(), cfg.n_x());
    }
}

SpinConfig apply_transport(const SpinConfig& cfg, const LatticeSpec& spec) {
    SpinConfig out = cfg;
    transport_inplace(out, spec, false);
    return out;
}

SpinConfig apply_inverse_transport(const SpinConfig& cfg, const LatticeSpec& spec) {
    SpinConfig out = cfg;
    transport_inplace(out, spec, true);
    return out;
}

// ------------------------------------------------------------------ cell rules

CellKernel::CellKernel(const InteractionRule& rule, const LatticeSpec& spec)
    : width_(rule.width), n_species_(rule.n_species), n_x_(spec.n_x) {
    rule.validate();
    if (rule.n_species != spec.n_species())
        throw InvalidRuleError("rule species count does not match lattice");
    if (spec.n_x % rule.width != 0)
        throw InputError("cell width does not divide n_x");
    int a = rule.arity();
    // msb-first local code bit for (species g, cell site i) is a-1-(g*w+i);
    // the kernel index uses bit g*w+i instead
    auto to_lsb = [&](std::uint32_t msb) {
        std::uint32_t l = 0;
        for (int b = 0; b < a; ++b)
            if ((msb >> (a - 1 - b)) & 1u) l |= 1u << b;
        return l;
    };
    lsb_table_.resize(rule.size());
    for (std::uint32_t c = 0; c < rule.size(); ++c)
        lsb_table_[to_lsb(c)] = std::uint16_t(to_lsb(rule.table[c]));
}

void CellKernel::apply(SpinConfig& cfg) const {
    if (cfg.n_x() != n_x_ || cfg.n_species() != n_species_)
        throw DimensionError("config shape does not match rule");
    const int w = width_;
    const int per_block = 63 / w;
    const int n_cells = n_x_ / w;
    const std::uint64_t mask = (1ull << w) - 1;
    std::uint64_t win[4], out[4];
    std::uint64_t* planes[4];
    for (int g = 0; g < n_species_; ++g) planes[g] = cfg.plane(g);
    for (int c0 = 0; c0 < n_cells; c0 += per_block) {
        int k = std::min(per_block, n_cells - c0);
        std::size_t s = std::size_t(c0) * w;
        for (int g = 0; g < n_species_; ++g) {
            win[g] = read_bits(planes[g], s);
            out[g] = 0;
        }
        for (int c = 0; c < k; ++c) {
            int sh = c * w;
            std::uint32_t idx = 0;
            for (int g = 0; g < n_species_; ++g)
                idx |= std::uint32_t((win[g] >> sh) & mask) << (g * w);
            std::uint32_t r = lsb_table_[idx];
            for (int g = 0; g < n_species_; ++g)
                out[g] |= std::uint64_t((r >> (g * w)) & mask) << sh;
        }
        for (int g = 0; g < n_species_; ++g) write_bits(planes[g], s, k * w, out[g]);
    }
}

SpinConfig apply_cell_rule(const SpinConfig& cfg, const InteractionRule& rule,
                           const LatticeSpec& spec) {
    check_shape(cfg, spec);
    CellKernel k(rule, spec);
    SpinConfig out = cfg;
    k.apply(out);
    return out;
}

// ---------------------------------------------------------------- trajectories

Trajectory evolve_trajectory(const SpinConfig& cfg, const LatticeSpec& spec,
                             const Schedule& sched) {
    check_shape(cfg, spec);
    std::optional<CellKernel> kernel;
    if (sched.rule) kernel.emplace(*sched.rule, spec);
    Trajectory tr;
    tr.layers.reserve(spec.n_t + 1);
    tr.layers.push_back(cfg);
    SpinConfig cur = cfg;
    for (int t = 0; t < spec.n_t; ++t) {
        if (sched.interaction_at(t)) kernel->apply(cur);
        else transport_inplace(cur, spec);
        tr.layers.push_back(cur);
    }
    return tr;
}

SpinConfig reverse_trajectory(const SpinConfig& last, const LatticeSpec& spec,
                              const Schedule& sched) {
    check_shape(last, spec);
    std::optional<CellKernel> kernel;
    if (sched.rule) kernel.emplace(sched.rule->inverse(), spec);
    SpinConfig cur = last;
    for (int t = spec.n_t - 1; t >= 0; --t) {
        if (sched.interaction_at(t)) kernel->apply(cur);
        else transport_inplace(cur, spec, true);
    }
    return cur;
}

// ------------------------------------------------------------------- sampling

void Ensemble::validate() const {
    if (entries.empty()) throw InputError("empty ensemble");
    double s = 0;
    for (auto& [c, w] : entries) {
        if (w < 0) throw InputError("negative ensemble weight");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw InputError("ensemble weights do not sum to 1");
}

Observable occupation_observable(int gamma, int p) {
    return {"n(" + std::to_string(gamma) + "," + std::to_string(p) + ")",
            [=](const SpinConfig& c) { return c.get(gamma, p) ? 1.0 : 0.0; }};
}

Observable density_correlation(int gamma, int p, int gamma2, int p2) {
    return {"nn(" + std::to_string(gamma) + "," + std::to_string(p) + ";" +
                std::to_string(gamma2) + "," + std::to_string(p2) + ")",
            [=](const SpinConfig& c) {
                return (c.get(gamma, p) && c.get(gamma2, p2)) ? 1.0 : 0.0;
            }};
}

std::vector<SeriesPoint> sample_observables(const Ensemble& ens, const LatticeSpec& spec,
                                            const Schedule& sched,
                                            const std::vector<Observable>& obs,
                                            SampleMode mode, std::size_t n_samples) {
    ens.validate();
    const int nt = spec.n_t;
    const std::size_t no = obs.size();
    std::vector<double> sum((nt + 1) * no, 0.0), sum2((nt + 1) * no, 0.0);

    auto accumulate = [&](const SpinConfig& start, double w) {
        Trajectory tr = evolve_trajectory(start, spec, sched);
        for (int t = 0; t <= nt; ++t)
            for (std::size_t o = 0; o < no; ++o) {
                double v = obs[o].eval(tr.layers[t]);
                sum[t * no + o] += w * v;
                sum2[t * no + o] += w * v * v;
            }
    };

    std::size_t n_drawn = 0;
    if (mode == SampleMode::Exhaustive) {
        for (auto& [c, w] : ens.entries)
            if (w > 0) accumulate(c, w);
    } else {
        if (n_samples == 0) throw InputError("monte carlo mode needs a sample count");
        std::vector<double> weights;
        for (auto& e : ens.entries) weights.push_back(e.second);
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        std::mt19937_64 rng(ens.seed);
        std::vector<std::size_t> counts(ens.entries.size(), 0);
        for (std::size_t s = 0; s < n_samples; ++s) ++counts[pick(rng)];
        // identical draws share one deterministic trajectory
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i]) accumulate(ens.entries[i].first, double(counts[i]) / n_samples);
        n_drawn = n_samples;
    }

    std::vector<SeriesPoint> out;
    out.reserve((nt + 1) * no);
    for (int t = 0; t <= nt; ++t)
        for (std::size_t o = 0; o < no; ++o) {
            double m = sum[t * no + o];
            double se = 0;
            if (n_drawn > 1) {
                double var = std::max(0.0, sum2[t * no + o] - m * m);
                se = std::sqrt(var / double(n_drawn - 1));
            }
            out.push_back({t, obs[o].id, m, se});
        }
    return out;
}

}  // namespace pca
