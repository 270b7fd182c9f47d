#include "bigmcg/actions.hpp"

#include "bigmcg/errors.hpp"

namespace bigmcg {

SlotMap SlotMap::identity(const SurfaceConfig& cfg, int sign) {
    SlotMap m;
    m.cfg_ = cfg;
    m.images_.resize(static_cast<std::size_t>(cfg.slots()));
    for (int k = 0; k < cfg.slots(); ++k) m.images_[static_cast<std::size_t>(k)] = Image{slot_at(cfg, k), sign};
    return m;
}

void SlotMap::set(Slot from, Slot to, int sign) {
    slot_number(cfg_, to);
    images_[static_cast<std::size_t>(slot_number(cfg_, from))] = Image{to, sign};
}

void SlotMap::undefine(Slot from) { images_[static_cast<std::size_t>(slot_number(cfg_, from))].reset(); }

std::optional<SlotMap::Image> SlotMap::image(Slot s) const {
    return images_[static_cast<std::size_t>(slot_number(cfg_, s))];
}

bool SlotMap::is_total() const {
    for (const auto& im : images_)
        if (!im) return false;
    return true;
}

std::vector<Slot> SlotMap::excluded() const {
    std::vector<Slot> out;
    for (int k = 0; k < cfg_.slots(); ++k)
        if (!images_[static_cast<std::size_t>(k)]) out.push_back(slot_at(cfg_, k));
    return out;
}

HomologyClass SlotMap::apply(const HomologyClass& x) const {
    HomologyClass out(cfg_);
    for (int k = 0; k < cfg_.slots(); ++k) {
        std::int64_t xa = x[2 * k], xb = x[2 * k + 1];
        if (xa == 0 && xb == 0) continue;
        const auto& im = images_[static_cast<std::size_t>(k)];
        if (!im) throw OutOfWindow("slot " + slot_at(cfg_, k).str() + " of " + x.str() + " leaves the window");
        out.add_to(im->slot, Coord::A, checked::mul(im->sign, xa));
        out.add_to(im->slot, Coord::B, checked::mul(im->sign, xb));
    }
    return out;
}

SlotMap SlotMap::inverse() const {
    SlotMap inv;
    inv.cfg_ = cfg_;
    inv.images_.resize(images_.size());
    for (int k = 0; k < cfg_.slots(); ++k) {
        const auto& im = images_[static_cast<std::size_t>(k)];
        if (im) inv.images_[static_cast<std::size_t>(slot_number(cfg_, im->slot))] = Image{slot_at(cfg_, k), im->sign};
    }
    for (Slot s : flagged_) {
        auto im = image(s);
        inv.flagged_.push_back(im ? im->slot : s);
    }
    return inv;
}

ActionMatrix SlotMap::matrix() const {
    ActionMatrix m = ActionMatrix::undefined(cfg_);
    for (int col = 0; col < cfg_.dimension(); ++col) {
        const auto& im = images_[static_cast<std::size_t>(col / 2)];
        if (!im) continue;
        HomologyClass v(cfg_);
        v.add_to(im->slot, static_cast<Coord>(col % 2), im->sign);
        m.set_column(col, v);
    }
    return m;
}

namespace {

int wrap(int ends, int arm) {
    int r = (arm - 1) % ends;
    if (r < 0) r += ends;
    return r + 1;
}

SlotMap arm_map(const SurfaceConfig& cfg, int (*arm_fn)(int, int), int sign) {
    SlotMap m = SlotMap::identity(cfg);
    for (int i = 1; i <= cfg.ends; ++i)
        for (int j = 1; j <= cfg.depth; ++j) m.set({i, j}, {arm_fn(cfg.ends, i), j}, sign);
    return m;
}

}  // namespace

int rho1_arm(int ends, int arm) { return wrap(ends, 2 - arm); }
int rho2_arm(int ends, int arm) { return wrap(ends, 1 - arm); }

SlotMap rho1_map(const SurfaceConfig& cfg) { return arm_map(cfg, rho1_arm, -1); }
SlotMap rho2_map(const SurfaceConfig& cfg) { return arm_map(cfg, rho2_arm, -1); }

SlotMap rotation_map(const SurfaceConfig& cfg) {
    return arm_map(cfg, [](int ends, int arm) { return wrap(ends, arm + 1); }, 1);
}

SlotMap shift_map(const SurfaceConfig& cfg, int arm) {
    if (arm < 1 || arm >= cfg.ends)
        throw IndexOutOfWindow("handle shift h[" + std::to_string(arm) + "] needs 1 <= i < ends=" +
                               std::to_string(cfg.ends));
    const int g = cfg.depth;
    const int next = arm + 1;
    SlotMap m = SlotMap::identity(cfg);
    m.set({arm, 1}, {next, 1}, 1);
    for (int j = 2; j <= g; ++j) m.set({arm, j}, {arm, j - 1}, 1);
    for (int j = 1; j < g; ++j) m.set({next, j}, {next, j + 1}, 1);
    m.undefine({next, g});
    return m;
}

SlotMap tau1_map(const SurfaceConfig& cfg) {
    SlotMap m = SlotMap::identity(cfg, -1);
    for (int j = 1; j <= cfg.depth; ++j) {
        m.set({1, j}, {2, j}, -1);
        m.set({2, j}, {1, j}, -1);
    }
    return m;
}

SlotMap tau2_map(const SurfaceConfig& cfg) {
    SlotMap m = SlotMap::identity(cfg, -1);
    const int g = cfg.depth;
    m.set({1, 1}, {1, 1}, -1);
    for (int j = 1; j < g; ++j) {
        m.set({2, j}, {1, j + 1}, -1);
        m.set({1, j + 1}, {2, j}, -1);
    }
    m.set({2, g}, {2, g}, -1);
    m.flag({2, g});
    return m;
}

}  // namespace bigmcg
