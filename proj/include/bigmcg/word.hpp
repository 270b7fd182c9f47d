#pragma once

#include "bigmcg/curve.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bigmcg {

/// One generator letter with exponent +1 or -1.
struct GeneratorToken {
    enum class Kind : std::uint8_t { Twist, Rho1, Rho2, Tau1, Tau2, Shift };

    Kind kind = Kind::Twist;
    CurveName curve{};  // Twist only
    int shift_arm = 0;  // Shift only: h_{shift_arm, shift_arm+1}
    int sign = 1;

    static GeneratorToken twist(const CurveName& c, int sign = 1) { return {Kind::Twist, c, 0, sign}; }
    static GeneratorToken shift(int arm, int sign = 1) { return {Kind::Shift, {}, arm, sign}; }
    static GeneratorToken of(Kind k, int sign = 1) { return {k, {}, 0, sign}; }

    GeneratorToken inverse() const {
        GeneratorToken t = *this;
        t.sign = -sign;
        return t;
    }
    bool cancels(const GeneratorToken& other) const {
        return kind == other.kind && curve == other.curve && shift_arm == other.shift_arm && sign == -other.sign;
    }
    /// Canonical text, e.g. `A'[7,1]`, `inv(h[1])`, `rho2`.
    std::string str() const;

    friend bool operator==(const GeneratorToken&, const GeneratorToken&) = default;
};

/// Word in the generators, read functionally: the rightmost token acts first.
class MappingWord {
public:
    MappingWord() = default;
    explicit MappingWord(std::vector<GeneratorToken> tokens) : tokens_(std::move(tokens)) {}
    MappingWord(std::initializer_list<GeneratorToken> tokens) : tokens_(tokens) {}

    const std::vector<GeneratorToken>& tokens() const { return tokens_; }
    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

    /// Canonical text: tokens joined by `*`; the empty word prints as "".
    std::string str() const;

    friend bool operator==(const MappingWord&, const MappingWord&) = default;

private:
    std::vector<GeneratorToken> tokens_;
};

MappingWord compose(const MappingWord& u, const MappingWord& v);
MappingWord invert(const MappingWord& w);
/// f x f^{-1}
MappingWord conjugate(const MappingWord& x, const MappingWord& f);
MappingWord power(const MappingWord& w, int k);
/// Cancels adjacent inverse pairs until none remain.
MappingWord free_reduce(const MappingWord& w);

/// Named elements available to the parser (script-defined F1, K3, ...).
using WordEnvironment = std::map<std::string, MappingWord>;

/// Parses the word grammar:
///
///   word    := "" | factor ('*' factor)*
///   factor  := primary ('^' integer)?
///   primary := A[i,j] | A'[i,j] | B[i,j] | C[i,j] | C0[i] | D[k] | h[i]
///            | rho1 | rho2 | tau1 | tau2 | R | rho3 | rho4 | rho5 | id | 1
///            | inv(word) | conj(word, word) | (word) | <name in env>
///
/// R, rho3, rho4 and rho5 expand to words in rho1, rho2. Throws SyntaxError
/// (with position) or UnknownName.
MappingWord parse_word(std::string_view text, const WordEnvironment* env = nullptr);

/// Names that cannot be bound in a WordEnvironment.
bool is_reserved_name(std::string_view name);

}  // namespace bigmcg
