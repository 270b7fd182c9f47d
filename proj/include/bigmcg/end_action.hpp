#pragma once

#include "bigmcg/word.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bigmcg {

/// Bijection of the ends {1..n}; (p * q)(i) = p(q(i)).
class EndPermutation {
public:
    EndPermutation() = default;
    /// images[i-1] is the image of end i. Throws ConfigError unless bijective.
    explicit EndPermutation(std::vector<int> images);

    static EndPermutation identity(int n);
    /// (1, 2, ..., n)
    static EndPermutation cycle(int n);
    static EndPermutation transposition(int n, int a, int b);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int end) const { return images_[static_cast<std::size_t>(end - 1)]; }
    const std::vector<int>& images() const { return images_; }

    EndPermutation operator*(const EndPermutation& rhs) const;
    EndPermutation inverse() const;
    bool is_identity() const;
    int order() const;

    /// Cycle notation listing fixed points, e.g. `(1 2)(3)(4)`.
    std::string str() const;

    /// Packs the images into 4-bit fields (n <= 16).
    std::uint64_t code() const;

    auto operator<=>(const EndPermutation&) const = default;

private:
    std::vector<int> images_;
};

/// Image of a single generator: twists and handle shifts fix every end,
/// tau1 and tau2 swap ends 1 and 2, rho2: i -> 1-i, rho1: i -> 2-i (mod n).
EndPermutation token_perm(const GeneratorToken& t, int n);
EndPermutation perm_of(const MappingWord& w, int n);

/// Largest n accepted by subgroup_closure.
inline constexpr int kMaxClosureEnds = 10;

/// Subgroup of Sym_n generated by a set of permutations, enumerated
/// breadth-first.
class SubgroupClosure {
public:
    /// Throws TooLarge for n > 10.
    SubgroupClosure(int n, const std::vector<EndPermutation>& generators);

    int degree() const { return n_; }
    std::uint64_t order() const { return order_; }
    bool is_full_symmetric() const { return order_ == factorial(n_); }
    bool contains(const EndPermutation& p) const;

    static std::uint64_t factorial(int n);

private:
    int n_;
    std::uint64_t order_ = 0;
    std::vector<bool> seen_;  // indexed by Lehmer rank
};

std::uint64_t lehmer_rank(const EndPermutation& p);

}  // namespace bigmcg
