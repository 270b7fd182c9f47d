#include "bigmcg/curve.hpp"

#include "bigmcg/errors.hpp"

#include <cctype>
#include <charconv>

namespace bigmcg {

void SurfaceConfig::validate() const {
    if (ends < kMinEnds)
        throw ConfigError("ends must be >= 2, got " + std::to_string(ends));
    if (depth < kMinDepth)
        throw ConfigError("depth must be >= 5, got " + std::to_string(depth));
}

std::string_view family_tag(Family f) {
    switch (f) {
        case Family::A: return "a";
        case Family::B: return "b";
        case Family::C: return "c";
        case Family::C0: return "c0";
        case Family::D: return "d";
    }
    return "?";
}

bool CurveName::well_formed() const {
    if (primed && family != Family::A) return false;
    switch (family) {
        case Family::C0: return index == 0 && arm >= 1;
        case Family::D: return arm == 0 && (index == 1 || index == 2);
        default: return arm >= 1 && index >= 1;
    }
}

void CurveName::check_window(const SurfaceConfig& cfg) const {
    if (!well_formed()) throw IndexOutOfWindow("malformed curve name " + str());
    if (family == Family::D) return;
    if (arm > cfg.ends)
        throw IndexOutOfWindow(str() + ": arm exceeds ends=" + std::to_string(cfg.ends));
    // c_j joins handles j and j+1, so it needs j+1 inside the window.
    int max_index = family == Family::C ? cfg.depth - 1 : cfg.depth;
    if (index > max_index)
        throw IndexOutOfWindow(str() + ": index exceeds window depth=" + std::to_string(cfg.depth));
}

std::string CurveName::str() const {
    std::string out(family_tag(family));
    if (primed) out += '\'';
    switch (family) {
        case Family::C0: out += '[' + std::to_string(arm) + ']'; break;
        case Family::D: out += '[' + std::to_string(index) + ']'; break;
        default: out += '[' + std::to_string(arm) + ',' + std::to_string(index) + ']';
    }
    return out;
}

namespace {

int read_int(std::string_view text, std::size_t& pos) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() + pos)
        throw SyntaxError("expected integer in curve name '" + std::string(text) + "'", pos);
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

void expect(std::string_view text, std::size_t& pos, char c) {
    if (pos >= text.size() || text[pos] != c)
        throw SyntaxError(std::string("expected '") + c + "' in curve name '" + std::string(text) + "'",
                          pos);
    ++pos;
}

}  // namespace

CurveName CurveName::parse(std::string_view text) {
    std::size_t pos = 0;
    CurveName name;
    if (text.starts_with("c0")) {
        name.family = Family::C0;
        pos = 2;
    } else if (!text.empty()) {
        switch (text[0]) {
            case 'a': name.family = Family::A; break;
            case 'b': name.family = Family::B; break;
            case 'c': name.family = Family::C; break;
            case 'd': name.family = Family::D; break;
            default: throw SyntaxError("unknown curve family in '" + std::string(text) + "'", 0);
        }
        pos = 1;
    } else {
        throw SyntaxError("empty curve name", 0);
    }
    if (pos < text.size() && text[pos] == '\'') {
        if (name.family != Family::A)
            throw SyntaxError("only a-curves may be primed: '" + std::string(text) + "'", pos);
        name.primed = true;
        ++pos;
    }
    expect(text, pos, '[');
    int first = read_int(text, pos);
    if (name.family == Family::C0) {
        name.arm = first;
        name.index = 0;
    } else if (name.family == Family::D) {
        name.arm = 0;
        name.index = first;
    } else {
        expect(text, pos, ',');
        name.arm = first;
        name.index = read_int(text, pos);
    }
    expect(text, pos, ']');
    if (pos != text.size())
        throw SyntaxError("trailing characters in curve name '" + std::string(text) + "'", pos);
    if (!name.well_formed())
        throw SyntaxError("ill-formed curve name '" + std::string(text) + "'", 0);
    return name;
}

}  // namespace bigmcg
