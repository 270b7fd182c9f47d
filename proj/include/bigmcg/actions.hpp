#pragma once

#include "bigmcg/homology.hpp"

#include <optional>
#include <vector>

namespace bigmcg {

/// A (possibly partial) signed permutation of handle slots. Slot s is sent
/// to sign * slot t on both its a- and b-coordinate, so every SlotMap with
/// signs in {+1,-1} preserves the intersection form on its domain.
class SlotMap {
public:
    struct Image {
        Slot slot;
        int sign = 1;
    };

    SlotMap() = default;
    static SlotMap identity(const SurfaceConfig& cfg, int sign = 1);

    const SurfaceConfig& config() const { return cfg_; }

    void set(Slot from, Slot to, int sign);
    void undefine(Slot from);
    /// Marks a slot whose image is a truncation artefact rather than geometry.
    void flag(Slot s) { flagged_.push_back(s); }

    std::optional<Image> image(Slot s) const;
    bool is_total() const;
    std::vector<Slot> excluded() const;
    const std::vector<Slot>& flagged() const { return flagged_; }

    /// Throws OutOfWindow naming the first offending slot.
    HomologyClass apply(const HomologyClass& x) const;
    /// Partial inverse: defined exactly on the image of this map.
    SlotMap inverse() const;
    ActionMatrix matrix() const;

private:
    SurfaceConfig cfg_{};
    std::vector<std::optional<Image>> images_;
    std::vector<Slot> flagged_;
};

// Fixed conventions for the rotations and involutions of the model. Arms
// are numbered 1..n around the rotation axis; rho2 reflects arm i to 1-i,
// rho1 reflects arm i to 2-i (mod n), so R = rho1*rho2 advances i -> i+1.
// A rotation by pi reverses the orientation of each handle curve it moves,
// which is the -1 sign carried by rho1, rho2, tau1, tau2.

int rho1_arm(int ends, int arm);
int rho2_arm(int ends, int arm);

SlotMap rho1_map(const SurfaceConfig& cfg);
SlotMap rho2_map(const SurfaceConfig& cfg);
/// R = rho1 rho2: (i, j) -> (i+1, j).
SlotMap rotation_map(const SurfaceConfig& cfg);
/// Handle shift h_{arm,arm+1}. Undefined on (arm+1, depth).
SlotMap shift_map(const SurfaceConfig& cfg, int arm);
/// Swaps arms 1 and 2 handle by handle; acts as -1 on every other arm.
SlotMap tau1_map(const SurfaceConfig& cfg);
/// Reflects the handle line of arms 1,2 about handle (1,1). The slot
/// (2, depth) has no partner inside the window and is fixed (flagged).
SlotMap tau2_map(const SurfaceConfig& cfg);

}  // namespace bigmcg
