#pragma once

#include "bigmcg/curve.hpp"
#include "bigmcg/homology.hpp"

#include <json.hpp>

#include <map>
#include <utility>
#include <vector>

namespace bigmcg {

/// Named curves of the truncated surface with their homology classes and
/// pairwise geometric intersection numbers. Immutable once built.
class CurveAtlas {
public:
    const SurfaceConfig& config() const { return cfg_; }

    bool contains(const CurveName& name) const { return classes_.count(name) != 0; }
    /// Throws UnknownCurve.
    const HomologyClass& homology(const CurveName& name) const;
    const std::map<CurveName, HomologyClass>& curves() const { return classes_; }
    std::vector<CurveName> family(Family f, bool primed = false) const;

    /// Symmetric lookup with i(x,x) = 0. Throws UnknownCurve.
    int intersection(const CurveName& x, const CurveName& y) const;

    /// Entries that override the chain-configuration defaults.
    const std::map<std::pair<CurveName, CurveName>, int>& overrides() const { return overrides_; }

    nlohmann::json to_json() const;

private:
    friend CurveAtlas build_atlas(const SurfaceConfig& cfg, const nlohmann::json& doc);

    SurfaceConfig cfg_{};
    std::map<CurveName, HomologyClass> classes_;
    std::map<std::pair<CurveName, CurveName>, int> overrides_;  // key ordered (min, max)
};

/// Intersection number implied by the chain configuration: a_j/b_j meet
/// once, c_j meets b_j and b_{j+1}, c0^i meets b_1^i and b_1^{i+1}; every
/// other pair is disjoint.
int chain_intersection(const SurfaceConfig& cfg, const CurveName& x, const CurveName& y);

/// Parses and validates an atlas document. Fails atomically with
/// MalformedAtlas, IndexOutOfWindow or InvariantViolation.
CurveAtlas build_atlas(const SurfaceConfig& cfg, const nlohmann::json& doc);
/// Same, taking the configuration from the document itself.
CurveAtlas build_atlas(const nlohmann::json& doc);

/// The bundled atlas for (ends, depth), in file form.
nlohmann::json default_atlas_json(const SurfaceConfig& cfg);
CurveAtlas default_atlas(const SurfaceConfig& cfg);

}  // namespace bigmcg
