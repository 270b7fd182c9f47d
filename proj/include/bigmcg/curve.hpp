#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bigmcg {

/// Truncated model of the n-ended surface: `ends` arms, each keeping
/// handles 1..depth.
struct SurfaceConfig {
    int ends = 3;
    int depth = 6;

    static constexpr int kMinEnds = 2;
    static constexpr int kMinDepth = 5;
    static constexpr int kDefaultDepth = 6;

    /// Throws ConfigError unless ends >= 2 and depth >= 5.
    void validate() const;
    int slots() const { return ends * depth; }
    int dimension() const { return 2 * slots(); }

    friend bool operator==(const SurfaceConfig&, const SurfaceConfig&) = default;
};

enum class Family : std::uint8_t { A, B, C, C0, D };

/// Arm carrying the lantern curves d[1], d[2].
inline constexpr int kLanternArm = 2;

std::string_view family_tag(Family f);

/// Symbolic identity of a named curve. d-curves have arm 0 (their arm is
/// fixed to kLanternArm); c0 curves have index 0.
struct CurveName {
    Family family = Family::A;
    int arm = 1;
    int index = 1;
    bool primed = false;

    static CurveName a(int arm, int index) { return {Family::A, arm, index, false}; }
    static CurveName a_primed(int arm, int index) { return {Family::A, arm, index, true}; }
    static CurveName b(int arm, int index) { return {Family::B, arm, index, false}; }
    static CurveName c(int arm, int index) { return {Family::C, arm, index, false}; }
    static CurveName c0(int arm) { return {Family::C0, arm, 0, false}; }
    static CurveName d(int k) { return {Family::D, 0, k, false}; }

    /// Structural constraints that do not depend on the window
    /// (c0 has index 0, only a may be primed, d index in {1,2}).
    bool well_formed() const;

    /// Throws IndexOutOfWindow when the arm or index falls outside cfg.
    void check_window(const SurfaceConfig& cfg) const;

    /// Canonical form, e.g. `a[1,1]`, `a'[7,1]`, `c0[3]`, `d[1]`.
    std::string str() const;

    /// Inverse of str(). Throws SyntaxError.
    static CurveName parse(std::string_view text);

    auto operator<=>(const CurveName&) const = default;
};

}  // namespace bigmcg
