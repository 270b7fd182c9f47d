#pragma once

#include "bigmcg/curve.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bigmcg {

/// Handle position (arm, index), both 1-based.
struct Slot {
    int arm = 1;
    int index = 1;
    auto operator<=>(const Slot&) const = default;
    std::string str() const { return std::to_string(arm) + ":" + std::to_string(index); }
};

enum class Coord : std::uint8_t { A = 0, B = 1 };

/// Coordinate layout shared by classes and matrices: slot k = (arm-1)*depth +
/// (index-1), with [a] at 2k and [b] at 2k+1.
int slot_number(const SurfaceConfig& cfg, Slot s);
Slot slot_at(const SurfaceConfig& cfg, int slot_number);
int coordinate(const SurfaceConfig& cfg, Slot s, Coord c);

namespace checked {
std::int64_t add(std::int64_t x, std::int64_t y);
std::int64_t mul(std::int64_t x, std::int64_t y);
}  // namespace checked

/// Integer vector in H_1 of the truncated surface, basis {[a_j^i], [b_j^i]}
/// with <[a_j^i],[b_j^i]> = +1. All arithmetic throws ArithmeticOverflow
/// rather than wrapping.
class HomologyClass {
public:
    HomologyClass() = default;
    explicit HomologyClass(const SurfaceConfig& cfg);
    HomologyClass(const SurfaceConfig& cfg, std::vector<std::int64_t> coeffs);

    static HomologyClass basis(const SurfaceConfig& cfg, Slot s, Coord c);
    static HomologyClass basis(const SurfaceConfig& cfg, int coord);

    const SurfaceConfig& config() const { return cfg_; }
    int dimension() const { return static_cast<int>(coeffs_.size()); }
    std::span<const std::int64_t> coeffs() const { return coeffs_; }

    std::int64_t operator[](int coord) const { return coeffs_[static_cast<std::size_t>(coord)]; }
    std::int64_t at(Slot s, Coord c) const { return (*this)[coordinate(cfg_, s, c)]; }
    void add_to(Slot s, Coord c, std::int64_t delta);

    /// this += factor * other
    void add_scaled(const HomologyClass& other, std::int64_t factor);

    HomologyClass operator-() const;
    friend HomologyClass operator+(HomologyClass x, const HomologyClass& y) {
        x.add_scaled(y, 1);
        return x;
    }
    friend HomologyClass operator-(HomologyClass x, const HomologyClass& y) {
        x.add_scaled(y, -1);
        return x;
    }

    /// Intersection pairing <this, other>.
    std::int64_t pair(const HomologyClass& other) const;

    bool is_zero() const;
    /// Nonzero with gcd of coordinates equal to 1.
    bool is_primitive() const;
    /// Slots with a nonzero a- or b-coordinate, ascending.
    std::vector<Slot> support() const;

    /// e.g. "a[1,1] - a[1,2] + 2b[3,1]"; "0" for the zero class.
    std::string str() const;

    friend bool operator==(const HomologyClass& x, const HomologyClass& y) {
        return x.cfg_ == y.cfg_ && x.coeffs_ == y.coeffs_;
    }

private:
    SurfaceConfig cfg_{};
    std::vector<std::int64_t> coeffs_;
};

std::int64_t pairing(const HomologyClass& x, const HomologyClass& y);
bool classes_equal_up_to_sign(const HomologyClass& x, const HomologyClass& y);

/// Square integer matrix on the lattice, stored column by column. A column
/// may be undefined, which is how windowed (partial) actions are carried.
class ActionMatrix {
public:
    ActionMatrix() = default;
    static ActionMatrix identity(const SurfaceConfig& cfg);
    static ActionMatrix negated_identity(const SurfaceConfig& cfg);
    /// Matrix with every column undefined; fill with set_column.
    static ActionMatrix undefined(const SurfaceConfig& cfg);

    const SurfaceConfig& config() const { return cfg_; }
    int dimension() const { return dim_; }

    bool defined(int col) const { return defined_[static_cast<std::size_t>(col)]; }
    bool is_total() const;
    int defined_count() const;
    /// Slots whose a- or b-column is undefined.
    std::vector<Slot> undefined_slots() const;

    std::int64_t at(int row, int col) const;
    HomologyClass column(int col) const;
    void set_column(int col, const HomologyClass& value);
    void undefine_column(int col);

    /// M x. Throws OutOfWindow if x has weight on an undefined column.
    HomologyClass apply(const HomologyClass& x) const;

    /// (this * rhs): column j defined when rhs column j is defined and lands
    /// inside this matrix's defined columns.
    ActionMatrix operator*(const ActionMatrix& rhs) const;
    ActionMatrix operator-() const;

    /// M^T J M == J. Requires a total matrix.
    bool preserves_form() const;
    /// -J M^T J, the inverse of a form-preserving total matrix.
    ActionMatrix symplectic_inverse() const;

    /// Same matrix restricted to the columns defined in `mask`.
    ActionMatrix restricted_to(const ActionMatrix& mask) const;

    /// Row-major integer grid, one row per line (undefined columns print '*').
    std::string grid() const;

    friend bool operator==(const ActionMatrix& x, const ActionMatrix& y);

private:
    SurfaceConfig cfg_{};
    int dim_ = 0;
    std::vector<std::int64_t> data_;  // column-major
    std::vector<bool> defined_;
};

/// True iff M1 = +M2 or M1 = -M2, column domains must coincide
/// (DomainMismatch otherwise).
bool matrices_equal_up_to_sign(const ActionMatrix& m1, const ActionMatrix& m2);

/// x -> x + sign * <x,c> c. Throws ZeroClass for c == 0 and InvariantViolation
/// when c is not primitive.
HomologyClass apply_transvection(const HomologyClass& c, const HomologyClass& x, int sign = 1);
ActionMatrix transvection(const HomologyClass& c, int sign = 1);

}  // namespace bigmcg
