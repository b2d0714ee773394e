#pragma once

#include "pca/rule.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pca {

enum class Species { MW_R, MW_L, Dirac, Colored };

std::string to_string(Species s);
Species species_from_string(const std::string& s);

struct LatticeSpec {
    int n_x = 5;
    double epsilon = 1.0;
    Species species = Species::MW_R;
    int n_t = 0;
    int cell_width = 1;

    int n_species() const;
    int bits() const { return n_x * n_species(); }
    // +1 for right movers, -1 for left movers
    int direction(int gamma) const;
    double L() const { return n_x * epsilon; }
    int jmax() const { return (n_x - 1) / 2; }
    int slot(int j) const { return j + jmax(); }
    int site(int p) const { return p - jmax(); }

    // throws InputError / StructureError naming the violated constraint
    void validate(bool complex_features = false) const;
};

// One bit plane per species, LSB-first: bit p of a plane is site p(j).
class SpinConfig {
public:
    SpinConfig() = default;
    SpinConfig(int n_x, int n_species);

    int n_x() const { return n_x_; }
    int n_species() const { return n_species_; }
    int bits() const { return n_x_ * n_species_; }
    std::size_t words_per_plane() const { return nw_; }

    bool get(int gamma, int p) const {
        return (plane(gamma)[p >> 6] >> (p & 63)) & 1u;
    }
    void set(int gamma, int p, bool v);

    std::uint64_t* plane(int gamma) { return words_.data() + gamma * (nw_ + 1); }
    const std::uint64_t* plane(int gamma) const {
        return words_.data() + gamma * (nw_ + 1);
    }

    // integer code: register 0 most significant, smallest j most significant
    std::uint64_t code() const;
    static SpinConfig from_code(std::uint64_t code, int n_x, int n_species);

    // "10010" per species joined by '|'
    std::string str() const;
    static SpinConfig parse(const std::string& s);

    int popcount() const;
    bool operator==(const SpinConfig& o) const;

private:
    int n_x_ = 0;
    int n_species_ = 0;
    std::size_t nw_ = 0;
    std::vector<std::uint64_t> words_;  // each plane has one zero pad word
};

SpinConfig apply_transport(const SpinConfig& cfg, const LatticeSpec& spec);
SpinConfig apply_inverse_transport(const SpinConfig& cfg, const LatticeSpec& spec);
void transport_inplace(SpinConfig& cfg, const LatticeSpec& spec, bool inverse = false);

SpinConfig apply_cell_rule(const SpinConfig& cfg, const InteractionRule& rule,
                           const LatticeSpec& spec);

// Precomputed form of a rule for repeated application on bit planes.
class CellKernel {
public:
    CellKernel(const InteractionRule& rule, const LatticeSpec& spec);
    void apply(SpinConfig& cfg) const;

private:
    int width_;
    int n_species_;
    int n_x_;
    std::vector<std::uint16_t> lsb_table_;
};

struct Schedule {
    std::optional<InteractionRule> rule;  // empty: transport only
    bool interaction_on_odd = true;
    bool interaction_at(int t) const {
        return rule && ((t % 2 == 1) == interaction_on_odd);
    }
};

struct Trajectory {
    std::vector<SpinConfig> layers;
};

Trajectory evolve_trajectory(const SpinConfig& cfg, const LatticeSpec& spec,
                             const Schedule& sched);
// runs the inverse updates from layer n_t back to 0
SpinConfig reverse_trajectory(const SpinConfig& last, const LatticeSpec& spec,
                              const Schedule& sched);

struct Ensemble {
    std::vector<std::pair<SpinConfig, double>> entries;
    std::uint64_t seed = 0;
    void validate() const;
};

struct Observable {
    std::string id;
    std::function<double(const SpinConfig&)> eval;
};
Observable occupation_observable(int gamma, int p);
Observable density_correlation(int gamma, int p, int gamma2, int p2);

enum class SampleMode { Exhaustive, MonteCarlo };

struct SeriesPoint {
    int t;
    std::string id;
    double mean;
    double stderr_;
};

std::vector<SeriesPoint> sample_observables(const Ensemble& ens, const LatticeSpec& spec,
                                            const Schedule& sched,
                                            const std::vector<Observable>& obs,
                                            SampleMode mode = SampleMode::Exhaustive,
                                            std::size_t n_samples = 0);

}  // namespace pca
