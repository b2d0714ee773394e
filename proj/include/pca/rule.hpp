#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pca {

// Local code layout: species-major, inside a species the cell sites in
// increasing j, first bit most significant. For the 3-site Dirac cell that is
// (R-, R0, R+ | L-, L0, L+).
struct SymmetryCertificate {
    struct Entry {
        bool covariant = false;
        bool closed = false;     // invariant configurations map into themselves
        int witness = -1;        // first local code violating covariance
    };
    std::map<std::string, Entry> entries;  // keyed by "C", "P", "T", "CP", ...
    bool all(std::initializer_list<const char*> kinds) const;
};

struct InteractionRule {
    std::string name;
    int width = 1;       // sites per cell
    int n_species = 2;
    std::vector<std::uint32_t> table;
    bool involution = false;
    std::optional<SymmetryCertificate> certificate;

    int arity() const { return width * n_species; }
    std::size_t size() const { return std::size_t{1} << arity(); }
    std::uint32_t operator()(std::uint32_t code) const { return table.at(code); }

    // throws InvalidRuleError if the table is not a bijection of the right size
    void validate() const;
    bool is_bijective() const;
    bool is_involution() const;
    InteractionRule inverse() const;
    int fixed_points() const;
};

InteractionRule make_rule(std::string name, int width, int n_species,
                          std::vector<std::uint32_t> table);
InteractionRule identity_rule(int width, int n_species);

// "100|101" <-> local code
std::uint32_t parse_local_code(const std::string& s, int width, int n_species);
std::string format_local_code(std::uint32_t code, int width, int n_species);

}  // namespace pca
