#include "bigmcg/homology.hpp"

#include "bigmcg/errors.hpp"

#include <numeric>
#include <sstream>

namespace bigmcg {

int slot_number(const SurfaceConfig& cfg, Slot s) {
    if (s.arm < 1 || s.arm > cfg.ends || s.index < 1 || s.index > cfg.depth)
        throw IndexOutOfWindow("slot " + s.str() + " outside window");
    return (s.arm - 1) * cfg.depth + (s.index - 1);
}

Slot slot_at(const SurfaceConfig& cfg, int n) {
    return {n / cfg.depth + 1, n % cfg.depth + 1};
}

int coordinate(const SurfaceConfig& cfg, Slot s, Coord c) {
    return 2 * slot_number(cfg, s) + static_cast<int>(c);
}

namespace checked {

std::int64_t add(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(x, y, &out)) throw ArithmeticOverflow("integer overflow in addition");
    return out;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out))
        throw ArithmeticOverflow("integer overflow in multiplication");
    return out;
}

}  // namespace checked

// ---------------------------------------------------------------- classes

HomologyClass::HomologyClass(const SurfaceConfig& cfg)
    : cfg_(cfg), coeffs_(static_cast<std::size_t>(cfg.dimension()), 0) {}

HomologyClass::HomologyClass(const SurfaceConfig& cfg, std::vector<std::int64_t> coeffs)
    : cfg_(cfg), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != cfg.dimension())
        throw DomainMismatch("class has " + std::to_string(coeffs_.size()) +
                             " coordinates, lattice has " + std::to_string(cfg.dimension()));
}

HomologyClass HomologyClass::basis(const SurfaceConfig& cfg, Slot s, Coord c) {
    return basis(cfg, coordinate(cfg, s, c));
}

HomologyClass HomologyClass::basis(const SurfaceConfig& cfg, int coord) {
    HomologyClass out(cfg);
    out.coeffs_[static_cast<std::size_t>(coord)] = 1;
    return out;
}

void HomologyClass::add_to(Slot s, Coord c, std::int64_t delta) {
    auto& v = coeffs_[static_cast<std::size_t>(coordinate(cfg_, s, c))];
    v = checked::add(v, delta);
}

void HomologyClass::add_scaled(const HomologyClass& other, std::int64_t factor) {
    if (other.coeffs_.size() != coeffs_.size())
        throw DomainMismatch("adding classes of different lattices");
    if (factor == 0) return;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (other.coeffs_[i] != 0)
            coeffs_[i] = checked::add(coeffs_[i], checked::mul(factor, other.coeffs_[i]));
}

HomologyClass HomologyClass::operator-() const {
    HomologyClass out(*this);
    for (auto& v : out.coeffs_) v = checked::mul(v, -1);
    return out;
}

std::int64_t HomologyClass::pair(const HomologyClass& other) const {
    if (other.coeffs_.size() != coeffs_.size())
        throw DomainMismatch("pairing classes of different lattices");
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < coeffs_.size(); k += 2) {
        std::int64_t xa = coeffs_[k], xb = coeffs_[k + 1];
        std::int64_t ya = other.coeffs_[k], yb = other.coeffs_[k + 1];
        if ((xa | xb) == 0 || (ya | yb) == 0) continue;
        acc = checked::add(acc, checked::mul(xa, yb));
        acc = checked::add(acc, -checked::mul(xb, ya));
    }
    return acc;
}

bool HomologyClass::is_zero() const {
    for (auto v : coeffs_)
        if (v != 0) return false;
    return true;
}

bool HomologyClass::is_primitive() const {
    std::int64_t g = 0;
    for (auto v : coeffs_) g = std::gcd(g, v);
    return g == 1;
}

std::vector<Slot> HomologyClass::support() const {
    std::vector<Slot> out;
    for (std::size_t k = 0; k < coeffs_.size(); k += 2)
        if (coeffs_[k] != 0 || coeffs_[k + 1] != 0)
            out.push_back(slot_at(cfg_, static_cast<int>(k / 2)));
    return out;
}

std::string HomologyClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        std::int64_t v = coeffs_[k];
        if (v == 0) continue;
        Slot s = slot_at(cfg_, static_cast<int>(k / 2));
        if (first) {
            if (v < 0) os << '-';
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        std::int64_t mag = v < 0 ? -v : v;
        if (mag != 1) os << mag;
        os << (k % 2 == 0 ? 'a' : 'b') << '[' << s.arm << ',' << s.index << ']';
        first = false;
    }
    return first ? "0" : os.str();
}

std::int64_t pairing(const HomologyClass& x, const HomologyClass& y) { return x.pair(y); }

bool classes_equal_up_to_sign(const HomologyClass& x, const HomologyClass& y) {
    if (x.dimension() != y.dimension()) throw DomainMismatch("comparing classes of different lattices");
    if (x == y) return true;
    auto xs = x.coeffs();
    auto ys = y.coeffs();
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] != -ys[i]) return false;
    return true;
}

// --------------------------------------------------------------- matrices

ActionMatrix ActionMatrix::undefined(const SurfaceConfig& cfg) {
    ActionMatrix m;
    m.cfg_ = cfg;
    m.dim_ = cfg.dimension();
    m.data_.assign(static_cast<std::size_t>(m.dim_) * static_cast<std::size_t>(m.dim_), 0);
    m.defined_.assign(static_cast<std::size_t>(m.dim_), false);
    return m;
}

ActionMatrix ActionMatrix::identity(const SurfaceConfig& cfg) {
    ActionMatrix m = undefined(cfg);
    for (int i = 0; i < m.dim_; ++i) {
        m.data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m.dim_) + static_cast<std::size_t>(i)] = 1;
        m.defined_[static_cast<std::size_t>(i)] = true;
    }
    return m;
}

ActionMatrix ActionMatrix::negated_identity(const SurfaceConfig& cfg) { return -identity(cfg); }

bool ActionMatrix::is_total() const {
    for (bool d : defined_)
        if (!d) return false;
    return true;
}

int ActionMatrix::defined_count() const {
    int n = 0;
    for (bool d : defined_) n += d ? 1 : 0;
    return n;
}

std::vector<Slot> ActionMatrix::undefined_slots() const {
    std::vector<Slot> out;
    for (int k = 0; k < dim_; k += 2)
        if (!defined(k) || !defined(k + 1)) out.push_back(slot_at(cfg_, k / 2));
    return out;
}

std::int64_t ActionMatrix::at(int row, int col) const {
    if (!defined(col)) throw OutOfWindow("matrix column " + std::to_string(col) + " is undefined");
    return data_[static_cast<std::size_t>(col) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(row)];
}

HomologyClass ActionMatrix::column(int col) const {
    if (!defined(col)) throw OutOfWindow("matrix column " + std::to_string(col) + " is undefined");
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(col) * dim_;
    return HomologyClass(cfg_, std::vector<std::int64_t>(first, first + dim_));
}

void ActionMatrix::set_column(int col, const HomologyClass& value) {
    if (value.dimension() != dim_) throw DomainMismatch("column dimension mismatch");
    auto c = value.coeffs();
    std::copy(c.begin(), c.end(), data_.begin() + static_cast<std::ptrdiff_t>(col) * dim_);
    defined_[static_cast<std::size_t>(col)] = true;
}

void ActionMatrix::undefine_column(int col) {
    std::fill_n(data_.begin() + static_cast<std::ptrdiff_t>(col) * dim_, dim_, 0);
    defined_[static_cast<std::size_t>(col)] = false;
}

HomologyClass ActionMatrix::apply(const HomologyClass& x) const {
    if (x.dimension() != dim_) throw DomainMismatch("applying matrix to class of another lattice");
    HomologyClass out(cfg_);
    auto xs = x.coeffs();
    for (int j = 0; j < dim_; ++j) {
        if (xs[static_cast<std::size_t>(j)] == 0) continue;
        if (!defined(j))
            throw OutOfWindow("class " + x.str() + " has weight on undefined column " +
                              slot_at(cfg_, j / 2).str());
        out.add_scaled(column(j), xs[static_cast<std::size_t>(j)]);
    }
    return out;
}

ActionMatrix ActionMatrix::operator*(const ActionMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw DomainMismatch("multiplying matrices of different lattices");
    ActionMatrix out = undefined(cfg_);
    for (int j = 0; j < dim_; ++j) {
        if (!rhs.defined(j)) continue;
        try {
            out.set_column(j, apply(rhs.column(j)));
        } catch (const OutOfWindow&) {
            // left factor undefined on this image; column stays undefined
        }
    }
    return out;
}

ActionMatrix ActionMatrix::operator-() const {
    ActionMatrix out(*this);
    for (auto& v : out.data_) v = checked::mul(v, -1);
    return out;
}

namespace {

// J y for the pairing <x,y> = x^T J y: (J y)_a = y_b, (J y)_b = -y_a.
HomologyClass apply_form(const HomologyClass& y) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(y.dimension()));
    auto c = y.coeffs();
    for (std::size_t k = 0; k < c.size(); k += 2) {
        out[k] = c[k + 1];
        out[k + 1] = checked::mul(c[k], -1);
    }
    return HomologyClass(y.config(), std::move(out));
}

}  // namespace

bool ActionMatrix::preserves_form() const {
    if (!is_total()) throw DomainMismatch("form check needs a total matrix");
    // (M^T J M)_{ij} = <M e_i, M e_j>; must equal <e_i, e_j>.
    std::vector<HomologyClass> cols;
    cols.reserve(static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) cols.push_back(column(j));
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            std::int64_t expected = 0;
            if (i / 2 == j / 2 && i != j) expected = (i % 2 == 0) ? 1 : -1;
            if (cols[static_cast<std::size_t>(i)].pair(cols[static_cast<std::size_t>(j)]) != expected)
                return false;
        }
    }
    return true;
}

ActionMatrix ActionMatrix::symplectic_inverse() const {
    if (!is_total()) throw DomainMismatch("inverse needs a total matrix");
    // M^T J M = J  =>  M^{-1} = J^{-1} M^T J = -J M^T J, built column by column.
    ActionMatrix out = undefined(cfg_);
    for (int j = 0; j < dim_; ++j) {
        HomologyClass ej = HomologyClass::basis(cfg_, j);
        HomologyClass jej = apply_form(ej);
        // M^T (J e_j): component k is <column k of M, J e_j> in dot-product sense.
        std::vector<std::int64_t> mt(static_cast<std::size_t>(dim_), 0);
        for (int k = 0; k < dim_; ++k) {
            std::int64_t acc = 0;
            auto col = data_.begin() + static_cast<std::ptrdiff_t>(k) * dim_;
            for (int r = 0; r < dim_; ++r) {
                std::int64_t v = jej[r];
                if (v != 0) acc = checked::add(acc, checked::mul(col[r], v));
            }
            mt[static_cast<std::size_t>(k)] = acc;
        }
        // J^{-1} = -J
        HomologyClass col = -apply_form(HomologyClass(cfg_, std::move(mt)));
        out.set_column(j, col);
    }
    return out;
}

ActionMatrix ActionMatrix::restricted_to(const ActionMatrix& mask) const {
    if (mask.dim_ != dim_) throw DomainMismatch("restricting to a mask of another lattice");
    ActionMatrix out(*this);
    for (int j = 0; j < dim_; ++j)
        if (!mask.defined(j) && out.defined(j)) out.undefine_column(j);
    return out;
}

std::string ActionMatrix::grid() const {
    std::ostringstream os;
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            if (c) os << ' ';
            if (defined(c))
                os << at(r, c);
            else
                os << '*';
        }
        os << '\n';
    }
    return os.str();
}

bool operator==(const ActionMatrix& x, const ActionMatrix& y) {
    return x.dim_ == y.dim_ && x.defined_ == y.defined_ && x.data_ == y.data_;
}

bool matrices_equal_up_to_sign(const ActionMatrix& m1, const ActionMatrix& m2) {
    if (m1.dimension() != m2.dimension()) throw DomainMismatch("matrices of different dimension");
    for (int j = 0; j < m1.dimension(); ++j)
        if (m1.defined(j) != m2.defined(j)) throw DomainMismatch("matrices with different domains");
    if (m1 == m2) return true;
    return m1 == -m2;
}

HomologyClass apply_transvection(const HomologyClass& c, const HomologyClass& x, int sign) {
    std::int64_t p = x.pair(c);
    HomologyClass out(x);
    if (p != 0) out.add_scaled(c, sign > 0 ? p : checked::mul(p, -1));
    return out;
}

ActionMatrix transvection(const HomologyClass& c, int sign) {
    if (c.is_zero()) throw ZeroClass("transvection about the zero class");
    if (!c.is_primitive()) throw InvariantViolation("transvection class " + c.str() + " is not primitive");
    ActionMatrix m = ActionMatrix::undefined(c.config());
    for (int j = 0; j < m.dimension(); ++j)
        m.set_column(j, apply_transvection(c, HomologyClass::basis(c.config(), j), sign));
    return m;
}

}  // namespace bigmcg
