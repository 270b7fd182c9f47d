#include "bigmcg/word.hpp"

#include "bigmcg/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace bigmcg {

std::string GeneratorToken::str() const {
    std::string body;
    switch (kind) {
        case Kind::Twist: {
            const CurveName& c = curve;
            switch (c.family) {
                case Family::A: body = c.primed ? "A'" : "A"; break;
                case Family::B: body = "B"; break;
                case Family::C: body = "C"; break;
                case Family::C0: body = "C0"; break;
                case Family::D: body = "D"; break;
            }
            if (c.family == Family::C0)
                body += "[" + std::to_string(c.arm) + "]";
            else if (c.family == Family::D)
                body += "[" + std::to_string(c.index) + "]";
            else
                body += "[" + std::to_string(c.arm) + "," + std::to_string(c.index) + "]";
            break;
        }
        case Kind::Rho1: body = "rho1"; break;
        case Kind::Rho2: body = "rho2"; break;
        case Kind::Tau1: body = "tau1"; break;
        case Kind::Tau2: body = "tau2"; break;
        case Kind::Shift: body = "h[" + std::to_string(shift_arm) + "]"; break;
    }
    return sign > 0 ? body : "inv(" + body + ")";
}

std::string MappingWord::str() const {
    std::string out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (i) out += '*';
        out += tokens_[i].str();
    }
    return out;
}

MappingWord compose(const MappingWord& u, const MappingWord& v) {
    std::vector<GeneratorToken> t = u.tokens();
    t.insert(t.end(), v.tokens().begin(), v.tokens().end());
    return MappingWord(std::move(t));
}

MappingWord invert(const MappingWord& w) {
    std::vector<GeneratorToken> t;
    t.reserve(w.size());
    for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it) t.push_back(it->inverse());
    return MappingWord(std::move(t));
}

MappingWord conjugate(const MappingWord& x, const MappingWord& f) { return compose(compose(f, x), invert(f)); }

MappingWord power(const MappingWord& w, int k) {
    MappingWord base = k < 0 ? invert(w) : w;
    MappingWord out;
    for (int i = 0; i < (k < 0 ? -k : k); ++i) out = compose(out, base);
    return out;
}

MappingWord free_reduce(const MappingWord& w) {
    std::vector<GeneratorToken> stack;
    stack.reserve(w.size());
    for (const auto& t : w.tokens()) {
        if (!stack.empty() && stack.back().cancels(t))
            stack.pop_back();
        else
            stack.push_back(t);
    }
    return MappingWord(std::move(stack));
}

// ------------------------------------------------------------------ parser

namespace {

constexpr std::array kReserved = {"A",    "B",    "C",    "C0",   "D",    "h",   "R",  "rho1",
                                  "rho2", "rho3", "rho4", "rho5", "tau1", "tau2", "id", "inv",
                                  "conj"};

constexpr int kMaxPower = 1000;

class Parser {
public:
    Parser(std::string_view text, const WordEnvironment* env) : text_(text), env_(env) {}

    MappingWord parse() {
        skip_ws();
        if (pos_ == text_.size()) return {};
        MappingWord w = word();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    std::string_view text_;
    const WordEnvironment* env_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view digits = text_.substr(start, pos_ - start);
        if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
            pos_ = start;
            fail("expected integer");
        }
        return value;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected a generator or name");
        return std::string(text_.substr(start, pos_ - start));
    }

    MappingWord word() {
        MappingWord w = factor();
        while (peek('*')) {
            ++pos_;
            w = compose(w, factor());
        }
        return w;
    }

    MappingWord factor() {
        MappingWord base = primary();
        if (peek('^')) {
            ++pos_;
            std::size_t at = pos_;
            int k = integer();
            if (k > kMaxPower || k < -kMaxPower) {
                pos_ = at;
                fail("power exponent out of range");
            }
            base = power(base, k);
        }
        return base;
    }

    GeneratorToken bracket_twist(Family family, bool primed) {
        expect('[');
        CurveName c;
        c.family = family;
        c.primed = primed;
        int first = integer();
        if (family == Family::C0) {
            c.arm = first;
            c.index = 0;
        } else if (family == Family::D) {
            c.arm = 0;
            c.index = first;
        } else {
            expect(',');
            c.arm = first;
            c.index = integer();
        }
        expect(']');
        if (!c.well_formed()) fail("ill-formed curve " + c.str());
        return GeneratorToken::twist(c);
    }

    static MappingWord rotation_r() {
        return MappingWord{GeneratorToken::of(GeneratorToken::Kind::Rho1), GeneratorToken::of(GeneratorToken::Kind::Rho2)};
    }

    MappingWord primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of word");
        if (text_[pos_] == '(') {
            ++pos_;
            MappingWord w = word();
            expect(')');
            return w;
        }
        if (text_[pos_] == '1') {
            ++pos_;
            return {};
        }
        std::size_t start = pos_;
        std::string id = identifier();
        using K = GeneratorToken::Kind;
        const MappingWord rho1{GeneratorToken::of(K::Rho1)};
        const MappingWord rho2{GeneratorToken::of(K::Rho2)};
        if (id == "A" && pos_ < text_.size() && text_[pos_] == '\'') {
            ++pos_;
            return MappingWord{bracket_twist(Family::A, true)};
        }
        if (id == "A") return MappingWord{bracket_twist(Family::A, false)};
        if (id == "B") return MappingWord{bracket_twist(Family::B, false)};
        if (id == "C") return MappingWord{bracket_twist(Family::C, false)};
        if (id == "C0") return MappingWord{bracket_twist(Family::C0, false)};
        if (id == "D") return MappingWord{bracket_twist(Family::D, false)};
        if (id == "h") {
            expect('[');
            int arm = integer();
            expect(']');
            if (arm < 1) fail("handle shift index must be >= 1");
            return MappingWord{GeneratorToken::shift(arm)};
        }
        if (id == "rho1") return rho1;
        if (id == "rho2") return rho2;
        if (id == "tau1") return MappingWord{GeneratorToken::of(K::Tau1)};
        if (id == "tau2") return MappingWord{GeneratorToken::of(K::Tau2)};
        if (id == "R") return rotation_r();
        if (id == "rho3") return conjugate(rho1, power(rotation_r(), 3));
        if (id == "rho4") return conjugate(rho1, rotation_r());
        if (id == "rho5") return conjugate(rho2, rotation_r());
        if (id == "id") return {};
        if (id == "inv") {
            expect('(');
            MappingWord w = word();
            expect(')');
            return invert(w);
        }
        if (id == "conj") {
            expect('(');
            MappingWord x = word();
            expect(',');
            MappingWord f = word();
            expect(')');
            return conjugate(x, f);
        }
        if (env_) {
            if (auto it = env_->find(id); it != env_->end()) return it->second;
        }
        pos_ = start;
        throw UnknownName("unknown name '" + id + "' at position " + std::to_string(start));
    }
};

}  // namespace

MappingWord parse_word(std::string_view text, const WordEnvironment* env) { return Parser(text, env).parse(); }

bool is_reserved_name(std::string_view name) {
    for (const char* r : kReserved)
        if (name == r) return true;
    return false;
}

}  // namespace bigmcg
