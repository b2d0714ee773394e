#include "pca/rule.hpp"

#include "pca/core.hpp"

#include <algorithm>

namespace pca {

bool SymmetryCertificate::all(std::initializer_list<const char*> kinds) const {
    for (const char* k : kinds) {
        auto it = entries.find(k);
        if (it == entries.end() || !it->second.covariant) return false;
    }
    return true;
}

bool InteractionRule::is_bijective() const {
    if (table.size() != size()) return false;
    std::vector<char> hit(size(), 0);
    for (auto v : table) {
        if (v >= size() || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

void InteractionRule::validate() const {
    if (width < 1 || n_species < 1 || arity() > 16)
        throw InvalidRuleError("rule arity out of range");
    if (table.size() != size())
        throw InvalidRuleError("rule table has " + std::to_string(table.size()) +
                               " entries, expected " + std::to_string(size()));
    if (!is_bijective()) throw InvalidRuleError("rule table is not a bijection");
}

bool InteractionRule::is_involution() const {
    for (std::size_t c = 0; c < table.size(); ++c)
        if (table[table[c]] != c) return false;
    return true;
}

InteractionRule InteractionRule::inverse() const {
    validate();
    InteractionRule r = *this;
    r.name = name + "^-1";
    for (std::size_t c = 0; c < table.size(); ++c) r.table[table[c]] = std::uint32_t(c);
    r.certificate.reset();
    return r;
}

int InteractionRule::fixed_points() const {
    int n = 0;
    for (std::size_t c = 0; c < table.size(); ++c) n += table[c] == c;
    return n;
}

InteractionRule make_rule(std::string name, int width, int n_species,
                          std::vector<std::uint32_t> table) {
    InteractionRule r;
    r.name = std::move(name);
    r.width = width;
    r.n_species = n_species;
    r.table = std::move(table);
    r.validate();
    r.involution = r.is_involution();
    return r;
}

InteractionRule identity_rule(int width, int n_species) {
    std::vector<std::uint32_t> t(std::size_t{1} << (width * n_species));
    for (std::size_t c = 0; c < t.size(); ++c) t[c] = std::uint32_t(c);
    return make_rule("identity", width, n_species, std::move(t));
}

std::uint32_t parse_local_code(const std::string& s, int width, int n_species) {
    std::uint32_t code = 0;
    int nbits = 0;
    for (char ch : s) {
        if (ch == '|' || ch == ' ') continue;
        if (ch != '0' && ch != '1') throw InputError("bad bit character in '" + s + "'");
        code = (code << 1) | std::uint32_t(ch == '1');
        ++nbits;
    }
    if (nbits != width * n_species)
        throw InputError("local code '" + s + "' has wrong length");
    return code;
}

std::string format_local_code(std::uint32_t code, int width, int n_species) {
    std::string out;
    int total = width * n_species;
    for (int b = 0; b < total; ++b) {
        if (b > 0 && b % width == 0) out += '|';
        out += ((code >> (total - 1 - b)) & 1u) ? '1' : '0';
    }
    return out;
}

}  // namespace pca
