#include "pca/io.hpp"

#include "pca/interactions.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace pca {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    auto p = s.find('#');
    return trim(p == std::string::npos ? s : s.substr(0, p));
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    return f;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(item, &used);
            } catch (const std::logic_error&) {
            }
            if (used == 0 || !trim(item.substr(used)).empty())
                throw InputError("config: bad number '" + trim(item) + "'");
            out.push_back(v);
        }
    return out;
}

// a present but malformed value is an error, not a silent default
template <class T>
T get_or(const boost::property_tree::ptree& tree, const std::string& key, T dflt) {
    auto v = tree.get_optional<std::string>(key);
    if (!v) return dflt;
    try {
        return tree.get<T>(key);
    } catch (const boost::property_tree::ptree_bad_data&) {
        throw InputError("config: bad value '" + *v + "' for " + key);
    }
}

}  // namespace

Ensemble read_ensemble(std::istream& in, const LatticeSpec& spec) {
    Ensemble e;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        ls >> a >> b;
        if (a == "seed") {
            e.seed = std::stoull(b);
            continue;
        }
        if (b.empty()) throw InputError("ensemble line " + std::to_string(lineno) + " has no weight");
        SpinConfig c = SpinConfig::parse(a);
        if (c.n_x() != spec.n_x || c.n_species() != spec.n_species())
            throw DimensionError("ensemble line " + std::to_string(lineno) + " does not match the lattice");
        e.entries.emplace_back(c, std::stod(b));
    }
    e.validate();
    return e;
}

Ensemble read_ensemble_file(const std::string& path, const LatticeSpec& spec) {
    auto f = open_or_throw(path);
    return read_ensemble(f, spec);
}

void write_ensemble(std::ostream& out, const Ensemble& e) {
    out << "seed " << e.seed << '\n' << std::setprecision(17);
    for (const auto& [c, w] : e.entries) out << c.str() << ' ' << w << '\n';
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& s) {
    out << "t,id,mean,stderr\n" << std::setprecision(17);
    for (const auto& p : s) out << p.t << ',' << p.id << ',' << p.mean << ',' << p.stderr_ << '\n';
}

void write_spectrum_csv(std::ostream& out, const std::vector<cplx>& ev) {
    out << "index,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < ev.size(); ++i)
        out << i << ',' << ev[i].real() << ',' << ev[i].imag() << '\n';
}

void write_operator(std::ostream& out, const SpMat& a) {
    out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n' << std::setprecision(17);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag()
                << '\n';
}

SpMat read_operator(std::istream& in) {
    long rows = 0, cols = 0, nnz = 0;
    if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0)
        throw InputError("bad operator header");
    std::vector<Triplet> t;
    for (long i = 0; i < nnz; ++i) {
        long r, c;
        double re, im;
        if (!(in >> r >> c >> re >> im)) throw InputError("truncated operator dump");
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw InputError("operator entry out of range");
        t.emplace_back(r, c, cplx(re, im));
    }
    SpMat a(rows, cols);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

InteractionRule read_rule(std::istream& in) {
    std::string name = "user", line;
    int width = 0, species = 0;
    std::vector<std::pair<std::string, std::string>> maps;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.empty()) continue;
        auto arrow = line.find("->");
        if (arrow != std::string::npos) {
            maps.emplace_back(trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)));
            continue;
        }
        std::istringstream ls(line);
        std::string key, val;
        ls >> key >> val;
        if (key == "name") name = val;
        else if (key == "width") width = std::stoi(val);
        else if (key == "species") species = std::stoi(val);
        else throw InputError("rule file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (width < 1 || species < 1) throw InputError("rule file needs width and species");
    std::vector<std::uint32_t> t(std::size_t{1} << (width * species));
    std::iota(t.begin(), t.end(), 0u);
    std::vector<char> set(t.size(), 0);
    for (const auto& [a, b] : maps) {
        auto ca = parse_local_code(a, width, species);
        if (set[ca]) throw InvalidRuleError("rule lists '" + a + "' twice");
        set[ca] = 1;
        t[ca] = parse_local_code(b, width, species);
    }
    auto r = make_rule(name, width, species, std::move(t));
    r.certificate = certify_symmetries(r);
    return r;
}

InteractionRule read_rule_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_rule(f);
}

void write_rule(std::ostream& out, const InteractionRule& r) {
    out << "name " << r.name << "\nwidth " << r.width << "\nspecies " << r.n_species << '\n';
    for (std::uint32_t c = 0; c < r.size(); ++c)
        if (r.table[c] != c)
            out << format_local_code(c, r.width, r.n_species) << " -> "
                << format_local_code(r.table[c], r.width, r.n_species) << '\n';
}

ExperimentConfig read_config(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    ExperimentConfig c;
    c.kind = get_or(tree, "experiment.kind", c.kind);
    c.out_dir = get_or(tree, "experiment.out", c.out_dir);
    c.seed = get_or(tree, "experiment.seed", c.seed);
    c.dense_cap = get_or(tree, "experiment.dense_cap", c.dense_cap);
    c.spec.n_x = get_or(tree, "lattice.n_x", c.spec.n_x);
    c.spec.epsilon = get_or(tree, "lattice.epsilon", c.spec.epsilon);
    c.spec.species = species_from_string(get_or(tree, "lattice.species", to_string(c.spec.species)));
    c.spec.n_t = get_or(tree, "lattice.n_t", c.spec.n_t);
    c.spec.cell_width = get_or(tree, "lattice.cell_width", c.spec.cell_width);
    c.rule_path = get_or(tree, "rule.file", c.rule_path);
    c.rule_name = get_or(tree, "rule.name", c.rule_name);
    c.ensemble_path = get_or(tree, "sampling.ensemble", c.ensemble_path);
    c.mode = get_or(tree, "sampling.mode", c.mode);
    c.samples = get_or(tree, "sampling.samples", c.samples);
    if (auto t = tree.get_optional<std::string>("thermal.temperatures")) c.temperatures = parse_list(*t);
    c.infinite_L = get_or(tree, "propagator.infinite_L", c.infinite_L);
    c.t_min = get_or(tree, "propagator.t_min", c.t_min);
    c.t_max = get_or(tree, "propagator.t_max", c.t_max);
    c.x_min = get_or(tree, "propagator.x_min", c.x_min);
    c.x_max = get_or(tree, "propagator.x_max", c.x_max);
    c.grid = get_or(tree, "propagator.grid", c.grid);
    return c;
}

ExperimentConfig read_config(const std::string& path) {
    auto f = open_or_throw(path);
    return read_config(f);
}

}  // namespace pca
