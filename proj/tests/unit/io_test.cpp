#include "pca/interactions.hpp"
#include "pca/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace pca;

namespace {

LatticeSpec spec_of(int n, Species s) {
    LatticeSpec l;
    l.n_x = n;
    l.species = s;
    return l;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(EnsembleIO, ReadWriteRoundTrip) {
    auto s = spec_of(3, Species::Dirac);
    std::istringstream in("# two configs\nseed 42\n100|011 0.25\n\n010|110 0.75  # trailing\n");
    auto e = read_ensemble(in, s);
    EXPECT_EQ(e.seed, 42u);
    ASSERT_EQ(e.entries.size(), 2u);
    EXPECT_EQ(e.entries[0].first.str(), "100|011");
    EXPECT_DOUBLE_EQ(e.entries[1].second, 0.75);
    std::ostringstream out;
    write_ensemble(out, e);
    std::istringstream back(out.str());
    auto f = read_ensemble(back, s);
    EXPECT_EQ(f.seed, e.seed);
    ASSERT_EQ(f.entries.size(), e.entries.size());
    for (std::size_t i = 0; i < e.entries.size(); ++i) {
        EXPECT_EQ(f.entries[i].first, e.entries[i].first);
        EXPECT_EQ(f.entries[i].second, e.entries[i].second);
    }
}

TEST(EnsembleIO, Errors) {
    auto s = spec_of(3, Species::Dirac);
    auto parse = [&](const std::string& t) {
        std::istringstream in(t);
        return read_ensemble(in, s);
    };
    EXPECT_THROW(parse("100|011\n"), InputError);
    EXPECT_THROW(parse("1000|0110 1\n"), DimensionError);
    EXPECT_THROW(parse("100 1\n"), DimensionError);
    EXPECT_THROW(parse("100|011 0.5\n"), InputError);
    EXPECT_THROW(parse("100|011 1.5\n010|110 -0.5\n"), InputError);
    EXPECT_THROW(parse("# nothing\n"), InputError);
    EXPECT_THROW(read_ensemble_file("/nonexistent/ens.txt", s), InputError);
}

TEST(CsvIO, SeriesAndSpectrum) {
    std::ostringstream a;
    write_series_csv(a, {{0, "n(0,1)", 0.5, 0.0}, {3, "N", 1.25, 0.125}});
    EXPECT_EQ(lines(a.str()), (std::vector<std::string>{"t,id,mean,stderr", "0,n(0,1),0.5,0",
                                                         "3,N,1.25,0.125"}));
    std::ostringstream b;
    write_spectrum_csv(b, {cplx(1, 0), cplx(0, -0.5)});
    EXPECT_EQ(lines(b.str()), (std::vector<std::string>{"index,re,im", "0,1,0", "1,0,-0.5"}));
}

TEST(OperatorIO, RoundTripIsExact) {
    std::vector<Triplet> t{{0, 0, cplx(0.1, 0)}, {2, 1, cplx(-1.0 / 3, 2.0 / 7)}, {3, 3, cplx(0, kPi)}};
    SpMat a(4, 5);
    a.setFromTriplets(t.begin(), t.end());
    std::ostringstream out;
    write_operator(out, a);
    EXPECT_EQ(lines(out.str()).front(), "4 5 3");
    std::istringstream in(out.str());
    SpMat b = read_operator(in);
    EXPECT_EQ(b.rows(), 4);
    EXPECT_EQ(b.cols(), 5);
    EXPECT_EQ(max_abs_diff(a, b), 0.0);
}

TEST(OperatorIO, Errors) {
    auto parse = [](const std::string& t) {
        std::istringstream in(t);
        return read_operator(in);
    };
    EXPECT_THROW(parse(""), InputError);
    EXPECT_THROW(parse("-1 2 0"), InputError);
    EXPECT_THROW(parse("2 2 2\n0 0 1 0\n"), InputError);
    EXPECT_THROW(parse("2 2 1\n2 0 1 0\n"), InputError);
    EXPECT_NO_THROW(parse("2 2 0"));
}

TEST(RuleIO, BuiltinsRoundTrip) {
    for (const auto& r : {rule_ua_un(), rule_color_switch(), rule_two_color()}) {
        std::ostringstream out;
        write_rule(out, r);
        std::istringstream in(out.str());
        auto back = read_rule(in);
        EXPECT_EQ(back.name, r.name);
        EXPECT_EQ(back.width, r.width);
        EXPECT_EQ(back.n_species, r.n_species);
        EXPECT_EQ(back.table, r.table);
        ASSERT_TRUE(back.certificate.has_value());
        EXPECT_TRUE(back.certificate->all({"C", "P", "T", "CPT"}));
    }
    std::ostringstream out;
    write_rule(out, rule_ua_un());
    // 36 moved codes plus the header
    EXPECT_EQ(lines(out.str()).size(), 39u);
}

TEST(RuleIO, HandWrittenFile) {
    std::istringstream in("# swap the two colors\nname swap\nwidth 1\nspecies 2\n10 -> 01\n01 -> 10\n");
    auto r = read_rule(in);
    EXPECT_EQ(r.name, "swap");
    EXPECT_EQ(r.table, rule_color_switch().table);
}

TEST(RuleIO, Errors) {
    auto parse = [](const std::string& t) {
        std::istringstream in(t);
        return read_rule(in);
    };
    EXPECT_THROW(parse("width 1\nspecies 2\n10 -> 01\n10 -> 01\n"), InvalidRuleError);
    EXPECT_THROW(parse("width 1\nspecies 2\ncolour red\n"), InputError);
    EXPECT_THROW(parse("species 2\n10 -> 01\n"), InputError);
    EXPECT_THROW(parse("width 1\nspecies 2\n10 -> 111\n"), InputError);
    // not a bijection
    EXPECT_THROW(parse("width 1\nspecies 2\n10 -> 01\n"), InvalidRuleError);
    EXPECT_THROW(read_rule_file("/nonexistent/rule.txt"), InputError);
}

TEST(ConfigIO, SectionsAndDefaults) {
    std::istringstream in(
        "[experiment]\nkind = thermal\nout = results\nseed = 7\n"
        "[lattice]\nn_x = 7\nspecies = dirac\nn_t = 4\n"
        "[rule]\nname = color-switch\n"
        "[thermal]\ntemperatures = 0.25, 4\n"
        "[propagator]\ninfinite_L = true\ngrid = 5\n"
        "[sampling]\nmode = mc\nsamples = 100\n");
    auto c = read_config(in);
    EXPECT_EQ(c.kind, "thermal");
    EXPECT_EQ(c.out_dir, "results");
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.spec.n_x, 7);
    EXPECT_EQ(c.spec.species, Species::Dirac);
    EXPECT_EQ(c.spec.n_t, 4);
    EXPECT_EQ(c.rule_name, "color-switch");
    EXPECT_EQ(c.temperatures, (std::vector<double>{0.25, 4.0}));
    EXPECT_TRUE(c.infinite_L);
    EXPECT_EQ(c.grid, 5);
    EXPECT_EQ(c.mode, "mc");
    EXPECT_EQ(c.samples, 100u);
    ExperimentConfig d;
    EXPECT_EQ(c.t_min, d.t_min);
    EXPECT_EQ(c.dense_cap, d.dense_cap);
}

TEST(ConfigIO, Errors) {
    auto parse = [](const std::string& t) {
        std::istringstream in(t);
        return read_config(in);
    };
    EXPECT_THROW(parse("[lattice\nn_x = 3\n"), InputError);
    EXPECT_THROW(parse("[lattice]\nspecies = quark\n"), InputError);
    EXPECT_THROW(parse("[lattice]\nn_x = three\n"), InputError);
    EXPECT_THROW(parse("[propagator]\ninfinite_L = maybe\n"), InputError);
    EXPECT_THROW(parse("[thermal]\ntemperatures = 1, warm\n"), InputError);
    EXPECT_THROW(read_config(std::string("/nonexistent/cfg.ini")), InputError);
}
