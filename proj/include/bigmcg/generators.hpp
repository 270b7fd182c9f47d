#pragma once

#include "bigmcg/actions.hpp"
#include "bigmcg/atlas.hpp"
#include "bigmcg/word.hpp"

#include <map>

namespace bigmcg {

/// Evaluates generator tokens and words on the homology of a fixed atlas.
/// Twists act as transvections about their atlas class; rho1, rho2, tau1,
/// tau2 as total signed slot permutations; h[i] as a windowed partial map.
class HomologyEngine {
public:
    explicit HomologyEngine(CurveAtlas atlas);

    const CurveAtlas& atlas() const { return atlas_; }
    const SurfaceConfig& config() const { return atlas_.config(); }

    /// Class of a named curve. Throws UnknownCurve.
    const HomologyClass& curve_class(const CurveName& c) const { return atlas_.homology(c); }

    /// Checks the token against (n, g): known curve, 1 <= shift arm < n.
    void validate(const GeneratorToken& t) const;

    HomologyClass apply(const GeneratorToken& t, const HomologyClass& x) const;
    ActionMatrix generator_matrix(const GeneratorToken& t) const;
    /// Slot map behind a non-twist token.
    const SlotMap& slot_map(const GeneratorToken& t) const;

    /// Applies the rightmost token first. OutOfWindow names the offending
    /// token position and the intermediate support.
    HomologyClass evaluate(const MappingWord& w, const HomologyClass& x) const;
    HomologyClass evaluate(const MappingWord& w, const CurveName& c) const { return evaluate(w, curve_class(c)); }

    /// Column j is w(e_j), undefined where evaluation leaves the window.
    ActionMatrix word_matrix(const MappingWord& w) const;

private:
    CurveAtlas atlas_;
    SlotMap rho1_, rho2_, tau1_, tau2_;
    SlotMap rho1_inv_, rho2_inv_, tau1_inv_, tau2_inv_;
    std::map<int, std::pair<SlotMap, SlotMap>> shifts_;  // arm -> (h, h^{-1})
};

}  // namespace bigmcg
