#pragma once

#include "pca/core.hpp"
#include "pca/lattice.hpp"
#include "pca/rule.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pca {

// "bits weight" per line, '#' comments, optional "seed <u64>" line;
// bits are per species joined by '|', smallest j first
Ensemble read_ensemble(std::istream& in, const LatticeSpec& spec);
Ensemble read_ensemble_file(const std::string& path, const LatticeSpec& spec);
void write_ensemble(std::ostream& out, const Ensemble& e);

// t,id,mean,stderr
void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& s);
// index,re,im
void write_spectrum_csv(std::ostream& out, const std::vector<cplx>& ev);
// "rows cols nnz" header then "row col re im" lines
void write_operator(std::ostream& out, const SpMat& a);
SpMat read_operator(std::istream& in);

// header keys "name", "width", "species", then "in -> out" lines with
// species-major local codes such as "100|101 -> 010|110"; unlisted codes are fixed
InteractionRule read_rule(std::istream& in);
InteractionRule read_rule_file(const std::string& path);
// writes every non-fixed entry
void write_rule(std::ostream& out, const InteractionRule& r);

struct ExperimentConfig {
    std::string kind = "verify";
    LatticeSpec spec;
    std::string rule_path;      // empty: built-in rule named by rule_name
    std::string rule_name;      // "", "ua-un", "color-switch", "two-color"
    std::string ensemble_path;
    std::vector<double> temperatures{0.5, 1.0, 2.0};
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    std::string mode = "exhaustive";
    std::size_t dense_cap = 4096;
    std::size_t samples = 0;
    bool infinite_L = false;    // propagator kernel mode
    double t_min = -3, t_max = 3, x_min = -3, x_max = 3;
    int grid = 13;
};

// INI sections [experiment], [lattice], [rule], [thermal], [propagator], [sampling]
ExperimentConfig read_config(const std::string& path);
ExperimentConfig read_config(std::istream& in);

}  // namespace pca
