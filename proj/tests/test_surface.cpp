#include "bigmcg/atlas.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/generators.hpp"

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace bigmcg;

namespace {

SurfaceConfig cfg(int n, int g = 6) { return SurfaceConfig{n, g}; }

}  // namespace

TEST(SurfaceConfig, RejectsSmallEndsAndDepth) {
    EXPECT_NO_THROW(cfg(2, 5).validate());
    EXPECT_THROW(cfg(1).validate(), ConfigError);
    EXPECT_THROW(cfg(3, 4).validate(), ConfigError);
    EXPECT_EQ(cfg(4).dimension(), 48);
}

TEST(CurveName, CanonicalTextRoundTrips) {
    for (const auto& text : {"a[1,1]", "a'[7,1]", "b[3,6]", "c[2,5]", "c0[3]", "d[1]", "d[2]"}) {
        CurveName c = CurveName::parse(text);
        EXPECT_EQ(c.str(), text);
        EXPECT_TRUE(c.well_formed());
    }
    EXPECT_EQ(CurveName::parse("a'[7,1]"), CurveName::a_primed(7, 1));
    EXPECT_EQ(CurveName::parse("c0[3]"), CurveName::c0(3));
}

TEST(CurveName, MalformedTextIsSyntaxError) {
    EXPECT_THROW(CurveName::parse(""), SyntaxError);
    EXPECT_THROW(CurveName::parse("q[1,1]"), SyntaxError);
    EXPECT_THROW(CurveName::parse("a[1"), SyntaxError);
    EXPECT_THROW(CurveName::parse("a[x,1]"), SyntaxError);
}

TEST(CurveName, WindowChecks) {
    EXPECT_THROW(CurveName::a(4, 1).check_window(cfg(3)), IndexOutOfWindow);
    EXPECT_THROW(CurveName::b(1, 7).check_window(cfg(3)), IndexOutOfWindow);
    EXPECT_NO_THROW(CurveName::d(2).check_window(cfg(3)));
    CurveName bad{Family::B, 1, 1, true};
    EXPECT_FALSE(bad.well_formed());
}

TEST(Atlas, IntersectionsFromChainPicture) {
    auto atlas = default_atlas(cfg(3));
    EXPECT_EQ(atlas.intersection(CurveName::a(1, 1), CurveName::a(2, 1)), 0);
    EXPECT_EQ(atlas.intersection(CurveName::a(1, 1), CurveName::b(1, 1)), 1);
    EXPECT_EQ(atlas.intersection(CurveName::c(2, 1), CurveName::b(2, 2)), 1);
    EXPECT_EQ(atlas.intersection(CurveName::c(2, 1), CurveName::b(2, 1)), 1);
    EXPECT_EQ(atlas.intersection(CurveName::c(2, 1), CurveName::b(2, 3)), 0);
    EXPECT_EQ(atlas.intersection(CurveName::b(1, 1), CurveName::a(1, 1)), 1);
    EXPECT_THROW(atlas.intersection(CurveName::a(1, 1), CurveName::a(9, 1)), UnknownCurve);
}

TEST(Atlas, DefaultAtlasValidForSupportedEnds) {
    for (int n = 2; n <= 8; ++n) {
        auto atlas = default_atlas(cfg(n));
        EXPECT_EQ(atlas.family(Family::A).size(), static_cast<std::size_t>(n * 6));
        EXPECT_EQ(atlas.family(Family::A, true).size(), static_cast<std::size_t>(n * 6));
        EXPECT_EQ(atlas.family(Family::C0).size(), static_cast<std::size_t>(n));
    }
}

TEST(Atlas, ClassesMatchIndependentReading) {
    const int n = 4, g = 6;
    auto atlas = default_atlas(cfg(n, g));
    for (const auto& [name, cls] : atlas.curves()) {
        oracle::Vec got(cls.coeffs().begin(), cls.coeffs().end());
        oracle::Vec want;
        switch (name.family) {
            case Family::A: want = oracle::a(n, g, name.arm, name.index); break;
            case Family::B: want = oracle::b(n, g, name.arm, name.index); break;
            case Family::C: {
                want = oracle::a(n, g, name.arm, name.index);
                auto next = oracle::a(n, g, name.arm, name.index + 1);
                for (std::size_t k = 0; k < want.size(); ++k) want[k] -= next[k];
                break;
            }
            case Family::C0: {
                want = oracle::a(n, g, name.arm, 1);
                auto next = oracle::a(n, g, name.arm % n + 1, 1);
                for (std::size_t k = 0; k < want.size(); ++k) want[k] -= next[k];
                break;
            }
            case Family::D: continue;
        }
        bool same = got == want;
        for (auto& x : want) x = -x;
        EXPECT_TRUE(same || got == want) << name.str() << " = " << cls.str();
    }
}

TEST(Atlas, JsonRoundTrip) {
    auto atlas = default_atlas(cfg(5));
    auto again = build_atlas(atlas.to_json());
    EXPECT_EQ(again.curves(), atlas.curves());
    EXPECT_EQ(again.config(), atlas.config());
}

TEST(Atlas, DeclaredZeroBasisIntersectionRejected) {
    auto doc = default_atlas_json(cfg(3));
    doc["intersections"] = nlohmann::json::array({nlohmann::json::array({"a[1,1]", "b[1,1]", 0})});
    EXPECT_THROW(build_atlas(doc), InvariantViolation);
}

TEST(Atlas, BrokenEquivarianceRejected) {
    auto doc = default_atlas_json(cfg(3));
    for (auto& curve : doc["curves"]) {
        if (curve["family"] == "c0" && curve["arm"] == 1) {
            // a[1,1] - a[1,3] instead of a[1,1] - a[2,1]
            curve["homology"] = nlohmann::json::array({nlohmann::json::array({1, 1, "a", 1}),
                                                       nlohmann::json::array({1, 3, "a", -1})});
        }
    }
    try {
        build_atlas(doc);
        FAIL() << "expected InvariantViolation";
    } catch (const InvariantViolation& e) {
        EXPECT_NE(std::string(e.what()).find("c0[1]"), std::string::npos) << e.what();
    }
}

TEST(Atlas, NonPrimitiveClassRejected) {
    auto doc = default_atlas_json(cfg(3));
    for (auto& curve : doc["curves"])
        if (curve["family"] == "b" && curve["arm"] == 2 && curve["index"] == 4)
            curve["homology"] = nlohmann::json::array({nlohmann::json::array({2, 4, "b", 2})});
    EXPECT_THROW(build_atlas(doc), InvariantViolation);
}

TEST(Atlas, SyntaxAndWindowErrors) {
    EXPECT_THROW(build_atlas(nlohmann::json::parse(R"({"config":{"ends":3,"depth":6}})")), MalformedAtlas);
    auto doc = default_atlas_json(cfg(3));
    EXPECT_THROW(build_atlas(cfg(4), doc), MalformedAtlas);
    doc["curves"].push_back({{"family", "a"}, {"arm", 1}, {"index", 9}, {"primed", false},
                             {"homology", nlohmann::json::array({nlohmann::json::array({1, 1, "a", 1})})}});
    EXPECT_THROW(build_atlas(doc), IndexOutOfWindow);
}

TEST(Atlas, NoPartialAtlasOnFailure) {
    auto doc = default_atlas_json(cfg(3));
    doc["intersections"] = nlohmann::json::array({nlohmann::json::array({"a[1,1]", "a[1,1]", 1})});
    EXPECT_THROW(build_atlas(doc), InvariantViolation);
}
