#include "bigmcg/errors.hpp"
#include "bigmcg/replay.hpp"

#include <gtest/gtest.h>

using namespace bigmcg;

namespace {

const HomologyEngine& engine(int n) {
    static std::map<int, HomologyEngine> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, HomologyEngine(default_atlas(SurfaceConfig{n, 6}))).first;
    return it->second;
}

ProofChecker checker(int n) { return ProofChecker(engine(n), ScriptLibrary::builtin()); }

MappingWord w(const std::string& text) { return parse_word(text); }

const StepReport* find_step(const VerificationReport& r, const std::string& name, const std::string& kind = "") {
    for (const auto& s : r.steps)
        if (s.name == name && (kind.empty() || s.kind == kind)) return &s;
    return nullptr;
}

DerivationScript script_from(const char* text) { return DerivationScript::from_json(nlohmann::json::parse(text)); }

}  // namespace

TEST(ImageClaim, ShiftTakesC0ToC) {
    auto out = checker(4).verify_image_claim(w("h[1]"), {{CurveName::c0(1), CurveName::c(2, 1)}});
    EXPECT_TRUE(out.pass) << out.detail;
}

TEST(ImageClaim, EmptyWordFixesEverything) {
    auto out = checker(4).verify_image_claim(MappingWord{}, {{CurveName::a(1, 1), CurveName::a(1, 1)}});
    EXPECT_TRUE(out.pass);
}

TEST(ImageClaim, TwistMovesDualCurve) {
    auto out = checker(4).verify_image_claim(w("A[1,1]"), {{CurveName::b(1, 1), CurveName::b(1, 1)}});
    EXPECT_FALSE(out.pass);
    EXPECT_NE(out.detail.find("-a[1,1] + b[1,1]"), std::string::npos) << out.detail;
}

TEST(ImageClaim, OutOfWindowPropagates) {
    EXPECT_THROW(checker(4).verify_image_claim(w("h[1]"), {{CurveName::a(2, 6), CurveName::a(2, 6)}}), OutOfWindow);
}

TEST(Conjugation, RotatedDifference) {
    auto out = checker(5).verify_conjugation_step(w("A[1,1]*inv(A[2,1])"), w("rho1"),
                                                  {{CurveName::a(1, 1), CurveName::a_primed(1, 1)},
                                                   {CurveName::a(2, 1), CurveName::a_primed(5, 1)}},
                                                  w("A'[1,1]*inv(A'[5,1])"));
    EXPECT_TRUE(out.pass) << out.detail;
}

TEST(Conjugation, EmptyConjugatorLeavesBase) {
    auto base = w("B[2,2]*inv(C[2,1])");
    EXPECT_TRUE(checker(3).verify_conjugation_step(base, MappingWord{}, {}, base).pass);
    EXPECT_FALSE(checker(3).verify_conjugation_step(base, MappingWord{}, {}, w("B[2,2]")).pass);
}

TEST(Relation, Lantern) {
    auto out = checker(4).verify_relation(w("A[2,1]*C[2,1]*C[2,2]*A[2,3]"), w("A[2,2]*D[1]*D[2]"));
    EXPECT_TRUE(out.pass) << out.detail;
    EXPECT_TRUE(out.warnings.empty());
}

TEST(Relation, DisjointTwistsCommute) {
    EXPECT_TRUE(checker(3).verify_relation(w("A[1,1]*A[1,2]"), w("A[1,2]*A[1,1]")).pass);
}

TEST(Relation, DualTwistsDoNotCommute) {
    auto out = checker(3).verify_relation(w("A[1,1]*B[1,1]"), w("B[1,1]*A[1,1]"));
    EXPECT_FALSE(out.pass);
    EXPECT_FALSE(out.detail.empty());
}

TEST(Relation, PartialSidesRejected) {
    EXPECT_THROW(checker(3).verify_relation(w("h[1]"), w("tau1*tau2")), OutOfWindow);
    EXPECT_TRUE(checker(3).verify_agreement(w("h[1]"), w("tau1*tau2")).pass);
}

TEST(Involution, Rotation) { EXPECT_TRUE(checker(5).verify_involution(w("rho1")).pass); }

TEST(Involution, CompositeAtSixEnds) {
    auto out = checker(6).verify_involution(w("rho2*A[1,1]*C0[1]*B[3,1]*inv(B[4,1])*inv(C0[5])*inv(A'[6,1])"));
    EXPECT_TRUE(out.pass) << out.detail;
}

TEST(Involution, TwistIsNot) {
    auto out = checker(3).verify_involution(w("A[1,1]"));
    EXPECT_FALSE(out.pass);
    EXPECT_NE(out.detail.find("b[1,1]"), std::string::npos) << out.detail;
}

TEST(Closure, RotationAndSwap) {
    EXPECT_TRUE(checker(5).verify_closure({w("R"), w("tau1")}).pass);
    EXPECT_FALSE(checker(5).verify_closure({w("R")}).pass);
}

TEST(Orbit, RotationAndShiftReachFamily) {
    EXPECT_TRUE(checker(4).verify_orbit(CurveName::a(2, 3), {w("R"), w("h[1]")}, Family::A).pass);
    EXPECT_FALSE(checker(4).verify_orbit(CurveName::a(2, 3), {w("R")}, Family::A).pass);
}

TEST(RunScript, Lem33ProducesDifferences) {
    auto r = checker(5).run_script("lem33");
    EXPECT_TRUE(r.pass) << r.text(true);
    for (const auto& t : {"A21_A22", "B21_B22", "C21_C22"}) {
        auto* s = find_step(r, t, "target");
        ASSERT_NE(s, nullptr) << t;
        EXPECT_EQ(s->status, "pass");
    }
}

TEST(RunScript, Lem33TakesSpecialBranchAtThree) {
    auto r = checker(3).run_script("lem33");
    EXPECT_TRUE(r.pass) << r.text(true);
    int skipped = 0;
    for (const auto& s : r.steps) skipped += s.status == "skipped";
    EXPECT_GE(skipped, 1);
}

TEST(RunScript, NotApplicable) {
    EXPECT_THROW(checker(7).run_script("lem5"), ScriptNotApplicable);
    EXPECT_THROW(checker(6).run_script("lem4"), ScriptNotApplicable);
    EXPECT_THROW(checker(5).run_script("no-such"), UnknownName);
}

TEST(RunScript, Lem4SevenBranchEndsInPrimedTwist) {
    auto r = checker(7).run_script("lem4");
    EXPECT_TRUE(r.pass) << r.text(true);
    ASSERT_TRUE(r.elements.count("F2"));
    EXPECT_NE(r.elements.at("F2").find("inv(A'[1,1])"), std::string::npos) << r.elements.at("F2");
    auto* a2b2 = find_step(r, "A2_B2");
    ASSERT_NE(a2b2, nullptr);
    EXPECT_EQ(a2b2->status, "pass");
}

TEST(RunScript, LanternImagesCrossValidateAtlas) {
    auto r = checker(5).run_script("lem44");
    EXPECT_TRUE(r.pass) << r.text(true);
    int images = 0;
    for (const auto& s : r.steps)
        if (s.kind == "image" && s.cite.find("d_1") != std::string::npos) {
            EXPECT_EQ(s.status, "pass");
            ++images;
        }
    EXPECT_EQ(images, 2);
}

TEST(RunScript, TwoRoutesToTheSameChainDifference) {
    auto r5 = checker(6).run_script("lem5");
    auto r6 = checker(6).run_script("lem6");
    ASSERT_TRUE(r5.pass) << r5.text(true);
    ASSERT_TRUE(r6.pass) << r6.text(true);
    WordEnvironment e5, e6;
    for (const auto& [k, v] : r5.elements) e5[k] = parse_word(v);
    for (const auto& [k, v] : r6.elements) e6[k] = parse_word(v);
    const auto& eng = engine(6);
    auto via5 = eng.word_matrix(parse_word("conj(C4_C5, R^3)", &e5));
    auto via6 = eng.word_matrix(parse_word("L8*L13*inv(L9)", &e6));
    EXPECT_EQ(via5, via6);
    EXPECT_EQ(via5, eng.word_matrix(parse_word("C0[1]*inv(C0[2])")));
}

TEST(RunScript, EveryStepCarriesCitation) {
    const auto& lib = ScriptLibrary::builtin();
    for (const auto& id : lib.ids())
        for (const auto& step : lib.get(id).steps)
            if (step.kind != StepKind::Include) EXPECT_FALSE(step.cite.empty()) << id << " " << step.name;
}

TEST(RunScript, FailingStepNamesItsClaim) {
    ScriptLibrary lib;
    lib.add(script_from(R"({"id":"bad","requires":{"min_n":3},"steps":[
        {"kind":"image","word":"A[1,1]","images":[["b[1,1]","b[1,1]"]],"cite":"$A(b)=b$"}]})"));
    ProofChecker pc(engine(3), lib);
    auto r = pc.run_script("bad");
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.steps.size(), 1u);
    EXPECT_EQ(r.steps[0].status, "fail");
    EXPECT_NE(r.text().find("$A(b)=b$"), std::string::npos);
}

TEST(RunScript, ErrorGivesPartialReport) {
    ScriptLibrary lib;
    lib.add(script_from(R"({"id":"partial","requires":{"min_n":3},"steps":[
        {"kind":"define","name":"X","word":"A[1,1]","cite":"x"},
        {"kind":"image","word":"h[1]","images":[["a[2,6]","a[2,6]"]],"cite":"edge"},
        {"kind":"define","name":"Y","word":"B[1,1]","cite":"y"}]})"));
    ProofChecker pc(engine(3), lib);
    auto r = pc.run_script("partial");
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.steps.size(), 2u);
    EXPECT_EQ(r.steps[0].status, "pass");
    EXPECT_EQ(r.steps[1].status, "error");
    EXPECT_NE(r.steps[1].detail.find("OutOfWindow"), std::string::npos) << r.steps[1].detail;
}

TEST(RunScript, UndefinedNameIsError) {
    ScriptLibrary lib;
    lib.add(script_from(R"({"id":"u","requires":{"min_n":3},"steps":[
        {"kind":"product","name":"Z","factors":["X"],"word":"A[1,1]","cite":"z"}]})"));
    ProofChecker pc(engine(3), lib);
    auto r = pc.run_script("u");
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.steps.back().status, "error");
}

TEST(Report, JsonRoundTripAndDeterminism) {
    auto r1 = checker(6).run_script("main-n6");
    auto r2 = checker(6).run_script("main-n6");
    EXPECT_TRUE(r1.pass) << r1.text(true);
    EXPECT_EQ(r1.to_json().dump(), r2.to_json().dump());
    EXPECT_EQ(VerificationReport::from_json(r1.to_json()), r1);
    EXPECT_FALSE(r1.excluded_slots.empty());
}

TEST(Report, TextHeader) {
    auto r = checker(4).run_script("lem6");
    auto text = r.text();
    EXPECT_EQ(text.rfind("lem6", 0), 0u) << text;
    EXPECT_NE(text.find("PASS"), std::string::npos);
}

TEST(Scripts, JsonRoundTrip) {
    const auto& lib = ScriptLibrary::builtin();
    EXPECT_EQ(lib.ids(), builtin_script_order());
    for (const auto& id : lib.ids()) {
        auto j = lib.get(id).to_json();
        EXPECT_EQ(DerivationScript::from_json(j).to_json(), j) << id;
    }
}

TEST(Scripts, MalformedStepsRejected) {
    EXPECT_THROW(script_from(R"({"id":"x","steps":[{"kind":"bogus"}]})"), MalformedScript);
    EXPECT_THROW(script_from(R"({"id":"x","steps":[{"kind":"conjugate","name":"Y","base":"X","word":"A[1,1]"}]})"),
                 MalformedScript);
    EXPECT_THROW(EndsPredicate::from_json(nlohmann::json::parse(R"({"min":3})")), MalformedScript);
}

TEST(Scripts, TemplatesExpand) {
    EXPECT_EQ(expand_template("B[{n},1]*inv(A'[{n-1},1])", 7), "B[7,1]*inv(A'[6,1])");
    EXPECT_EQ(expand_template("c0[{n+0}]", 4), "c0[4]");
    EXPECT_EQ(expand_template("plain", 4), "plain");
}

TEST(Scripts, PredicateText) {
    EndsPredicate p;
    p.min_n = 3;
    p.not_n = 4;
    EXPECT_TRUE(p.holds(3));
    EXPECT_FALSE(p.holds(4));
    EXPECT_FALSE(p.holds(2));
    EXPECT_FALSE(p.str().empty());
}
