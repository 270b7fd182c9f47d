#include "bigmcg/atlas.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/generators.hpp"
#include "bigmcg/word.hpp"

#include <gtest/gtest.h>

#include <limits>

#include "oracle.hpp"

using namespace bigmcg;

namespace {

const SurfaceConfig kCfg{3, 6};

HomologyClass a(int arm, int index) { return HomologyClass::basis(kCfg, Slot{arm, index}, Coord::A); }
HomologyClass b(int arm, int index) { return HomologyClass::basis(kCfg, Slot{arm, index}, Coord::B); }

const HomologyEngine& engine3() {
    static const HomologyEngine e(default_atlas(kCfg));
    return e;
}

ActionMatrix mat(const std::string& w) { return engine3().word_matrix(parse_word(w)); }

}  // namespace

TEST(Homology, PairingConvention) {
    EXPECT_EQ(a(1, 1).pair(b(1, 1)), 1);
    EXPECT_EQ(b(1, 1).pair(a(1, 1)), -1);
    EXPECT_EQ(a(1, 1).pair(b(1, 2)), 0);
    EXPECT_EQ((a(1, 1) - a(1, 2)).str(), "a[1,1] - a[1,2]");
    EXPECT_EQ(HomologyClass(kCfg).str(), "0");
}

TEST(Homology, TransvectionFormula) {
    // <b,a> = -1, so T_a(b) = b - a.
    EXPECT_EQ(apply_transvection(a(1, 1), b(1, 1)), b(1, 1) - a(1, 1));
    EXPECT_EQ(apply_transvection(a(1, 1), a(2, 3)), a(2, 3));
    auto t = transvection(a(1, 1));
    auto ti = transvection(a(1, 1), -1);
    EXPECT_EQ(t * ti, ActionMatrix::identity(kCfg));
}

TEST(Homology, TransvectionErrors) {
    EXPECT_THROW(transvection(HomologyClass(kCfg)), ZeroClass);
    HomologyClass two = a(1, 1);
    two.add_scaled(a(1, 1), 1);
    EXPECT_THROW(transvection(two), InvariantViolation);
}

TEST(Homology, OverflowIsAnError) {
    HomologyClass big = a(1, 1);
    big.add_to(Slot{1, 1}, Coord::A, std::numeric_limits<std::int64_t>::max() - 1);
    EXPECT_THROW(big.add_scaled(a(1, 1), 1), ArithmeticOverflow);
    EXPECT_THROW(checked::mul(std::numeric_limits<std::int64_t>::max(), 2), ArithmeticOverflow);
}

TEST(Homology, SignEquality) {
    auto m = mat("A[1,1]");
    EXPECT_TRUE(matrices_equal_up_to_sign(m, m));
    EXPECT_TRUE(matrices_equal_up_to_sign(m, -m));
    EXPECT_FALSE(matrices_equal_up_to_sign(m, mat("B[1,1]")));
    EXPECT_THROW(matrices_equal_up_to_sign(mat("h[1]"), m), DomainMismatch);
}

TEST(Homology, TwistDistinctFromOtherTwistByOracle) {
    auto ta = oracle::twist_matrix(oracle::a(3, 6, 1, 1));
    auto tb = oracle::twist_matrix(oracle::b(3, 6, 1, 1));
    EXPECT_NE(ta, tb);
    auto m = mat("A[1,1]");
    for (int r = 0; r < m.dimension(); ++r)
        for (int c = 0; c < m.dimension(); ++c) ASSERT_EQ(m.at(r, c), ta[r][c]);
}

TEST(Generators, ShiftTable) {
    const auto& e = engine3();
    EXPECT_EQ(e.evaluate(parse_word("h[1]"), b(1, 1)), b(2, 1));
    auto c0 = e.evaluate(parse_word("h[1]"), CurveName::c0(1));
    EXPECT_TRUE(classes_equal_up_to_sign(c0, e.curve_class(CurveName::c(2, 1))));
    EXPECT_THROW(e.evaluate(parse_word("h[1]"), a(2, 6)), OutOfWindow);
    EXPECT_THROW(e.validate(GeneratorToken::shift(3)), IndexOutOfWindow);
    EXPECT_FALSE(mat("h[1]").is_total());
}

TEST(Generators, RotationMovesArms) {
    const auto& e = engine3();
    auto img = e.evaluate(parse_word("R"), CurveName::c0(1));
    EXPECT_TRUE(classes_equal_up_to_sign(img, e.curve_class(CurveName::c0(2))));
    EXPECT_EQ(e.evaluate(parse_word("R"), a(3, 2)), a(1, 2));
}

TEST(Generators, InvolutionsAndRotationOrder) {
    auto id = ActionMatrix::identity(kCfg);
    for (const auto& w : {"rho1*rho1", "rho2*rho2", "tau1*tau1", "tau2*tau2", "R^3"}) EXPECT_EQ(mat(w), id) << w;
    EXPECT_NE(mat("R^2"), id);
    for (const auto& w : {"rho1", "rho2", "tau1", "tau2", "A[2,3]", "D[1]"}) EXPECT_TRUE(mat(w).preserves_form()) << w;
}

TEST(Generators, Tau1Tau2IsShiftOnItsDomain) {
    auto h = mat("h[1]");
    auto t = mat("tau1*tau2");
    EXPECT_EQ(t.restricted_to(h), h);
    auto undefined = h.undefined_slots();
    ASSERT_EQ(undefined.size(), 1u);
    EXPECT_EQ(undefined.front(), (Slot{2, 6}));
}

TEST(Generators, EvaluateEmptyWord) {
    EXPECT_EQ(engine3().evaluate(MappingWord{}, b(2, 2)), b(2, 2));
    EXPECT_EQ(mat(""), ActionMatrix::identity(kCfg));
}

TEST(Generators, ProductOfTwistDifferencesMovesA1ToB1) {
    const auto& e = engine3();
    auto w = parse_word("A[1,1]*inv(A[1,2])*B[1,1]*inv(B[1,2])");
    EXPECT_TRUE(classes_equal_up_to_sign(e.evaluate(w, a(1, 1)), b(1, 1)));
    EXPECT_TRUE(classes_equal_up_to_sign(e.evaluate(w, a(1, 3)), a(1, 3)));
}

TEST(Generators, PrimedConjugationMatchesRotatedDifference) {
    auto lhs = mat("conj(A[1,1]*inv(A[2,1]), rho1)");
    auto rhs = mat("A'[1,1]*inv(A'[3,1])");
    EXPECT_EQ(lhs, rhs);
}
