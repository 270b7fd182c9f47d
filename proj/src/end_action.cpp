#include "bigmcg/end_action.hpp"

#include "bigmcg/actions.hpp"
#include "bigmcg/errors.hpp"

#include <deque>
#include <numeric>

namespace bigmcg {

EndPermutation::EndPermutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size(), false);
    for (int v : images_) {
        if (v < 1 || v > size() || hit[static_cast<std::size_t>(v - 1)])
            throw ConfigError("end permutation is not a bijection");
        hit[static_cast<std::size_t>(v - 1)] = true;
    }
}

EndPermutation EndPermutation::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return EndPermutation(std::move(v));
}

EndPermutation EndPermutation::cycle(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) v[static_cast<std::size_t>(i - 1)] = i % n + 1;
    return EndPermutation(std::move(v));
}

EndPermutation EndPermutation::transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.images_[static_cast<std::size_t>(a - 1)], p.images_[static_cast<std::size_t>(b - 1)]);
    return p;
}

EndPermutation EndPermutation::operator*(const EndPermutation& rhs) const {
    if (rhs.size() != size()) throw DomainMismatch("composing permutations of different degree");
    std::vector<int> v(images_.size());
    for (int i = 1; i <= size(); ++i) v[static_cast<std::size_t>(i - 1)] = (*this)(rhs(i));
    return EndPermutation(std::move(v));
}

EndPermutation EndPermutation::inverse() const {
    std::vector<int> v(images_.size());
    for (int i = 1; i <= size(); ++i) v[static_cast<std::size_t>((*this)(i)-1)] = i;
    return EndPermutation(std::move(v));
}

bool EndPermutation::is_identity() const {
    for (int i = 1; i <= size(); ++i)
        if ((*this)(i) != i) return false;
    return true;
}

int EndPermutation::order() const {
    std::vector<bool> seen(images_.size(), false);
    int ord = 1;
    for (int i = 1; i <= size(); ++i) {
        if (seen[static_cast<std::size_t>(i - 1)]) continue;
        int len = 0;
        for (int j = i; !seen[static_cast<std::size_t>(j - 1)]; j = (*this)(j)) {
            seen[static_cast<std::size_t>(j - 1)] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string EndPermutation::str() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (int i = 1; i <= size(); ++i) {
        if (seen[static_cast<std::size_t>(i - 1)]) continue;
        out += '(';
        for (int j = i; !seen[static_cast<std::size_t>(j - 1)]; j = (*this)(j)) {
            if (j != i) out += ' ';
            out += std::to_string(j);
            seen[static_cast<std::size_t>(j - 1)] = true;
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::uint64_t EndPermutation::code() const {
    std::uint64_t c = 0;
    for (int v : images_) c = (c << 4) | static_cast<std::uint64_t>(v - 1);
    return c;
}

EndPermutation token_perm(const GeneratorToken& t, int n) {
    using K = GeneratorToken::Kind;
    std::vector<int> v(static_cast<std::size_t>(n));
    switch (t.kind) {
        case K::Twist:
        case K::Shift: return EndPermutation::identity(n);
        case K::Tau1:
        case K::Tau2: return EndPermutation::transposition(n, 1, 2);
        case K::Rho1:
            for (int i = 1; i <= n; ++i) v[static_cast<std::size_t>(i - 1)] = rho1_arm(n, i);
            break;
        case K::Rho2:
            for (int i = 1; i <= n; ++i) v[static_cast<std::size_t>(i - 1)] = rho2_arm(n, i);
            break;
    }
    EndPermutation p(std::move(v));
    return t.sign > 0 ? p : p.inverse();
}

EndPermutation perm_of(const MappingWord& w, int n) {
    EndPermutation p = EndPermutation::identity(n);
    for (const auto& t : w.tokens()) p = p * token_perm(t, n);
    return p;
}

// ----------------------------------------------------------------- closure

std::uint64_t SubgroupClosure::factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t lehmer_rank(const EndPermutation& p) {
    const int n = p.size();
    std::uint64_t rank = 0;
    for (int i = 1; i <= n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j <= n; ++j)
            if (p(j) < p(i)) ++smaller;
        rank = rank * static_cast<std::uint64_t>(n - i + 1) + static_cast<std::uint64_t>(smaller);
    }
    return rank;
}

SubgroupClosure::SubgroupClosure(int n, const std::vector<EndPermutation>& generators) : n_(n) {
    if (n > kMaxClosureEnds)
        throw TooLarge("enumerative closure supports n <= " + std::to_string(kMaxClosureEnds) + ", got " +
                       std::to_string(n));
    if (n < 1) throw ConfigError("closure needs n >= 1");
    for (const auto& g : generators)
        if (g.size() != n) throw DomainMismatch("generator of degree " + std::to_string(g.size()));
    seen_.assign(factorial(n), false);
    std::deque<EndPermutation> frontier;
    auto visit = [&](const EndPermutation& p) {
        auto r = lehmer_rank(p);
        if (seen_[r]) return;
        seen_[r] = true;
        ++order_;
        frontier.push_back(p);
    };
    visit(EndPermutation::identity(n));
    while (!frontier.empty()) {
        EndPermutation p = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : generators) visit(g * p);
    }
}

bool SubgroupClosure::contains(const EndPermutation& p) const {
    if (p.size() != n_) return false;
    return seen_[lehmer_rank(p)];
}

}  // namespace bigmcg
