#include "bigmcg/end_action.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/word.hpp"

#include <gtest/gtest.h>

using namespace bigmcg;
using Kind = GeneratorToken::Kind;

TEST(Word, ParsesTwistsAndInverses) {
    auto w = parse_word("A[1,1]*inv(A[2,1])");
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w.tokens()[0], GeneratorToken::twist(CurveName::a(1, 1)));
    EXPECT_EQ(w.tokens()[1], GeneratorToken::twist(CurveName::a(2, 1), -1));
}

TEST(Word, ConjugationExpands) {
    auto w = parse_word("conj(A[1,1], rho1)");
    MappingWord want{GeneratorToken::of(Kind::Rho1), GeneratorToken::twist(CurveName::a(1, 1)),
                     GeneratorToken::of(Kind::Rho1, -1)};
    EXPECT_EQ(w, want);
    EXPECT_EQ(conjugate(parse_word("A[1,1]"), MappingWord{}), parse_word("A[1,1]"));
}

TEST(Word, DerivedRotations) {
    auto r = parse_word("rho1*rho2");
    EXPECT_EQ(parse_word("R"), r);
    EXPECT_EQ(parse_word("rho4"), compose(compose(r, parse_word("rho1")), invert(r)));
    EXPECT_EQ(parse_word("rho3"), conjugate(parse_word("rho1"), power(r, 3)));
    EXPECT_EQ(parse_word("rho5"), conjugate(parse_word("rho2"), r));
    EXPECT_EQ(compose(parse_word("rho1"), parse_word("rho2")), r);
}

TEST(Word, PrinterRoundTrip) {
    for (const auto& text : {"", "A'[7,1]", "inv(h[1])*rho2", "C0[3]*D[2]*inv(B[1,6])", "tau1*tau2"}) {
        auto w = parse_word(text);
        EXPECT_EQ(w.str(), text);
        EXPECT_EQ(parse_word(w.str()), w);
    }
}

TEST(Word, PowersAndGrouping) {
    EXPECT_EQ(parse_word("(A[1,1]*B[1,1])^2").size(), 4u);
    EXPECT_EQ(parse_word("h[1]^-2"), parse_word("inv(h[1])*inv(h[1])"));
    EXPECT_TRUE(parse_word("id").empty());
    EXPECT_TRUE(parse_word("1").empty());
    EXPECT_TRUE(parse_word("  ").empty());
}

TEST(Word, Environment) {
    WordEnvironment env{{"F1", parse_word("A[1,1]*inv(A[1,2])")}};
    EXPECT_EQ(parse_word("inv(F1)", &env), invert(env["F1"]));
    EXPECT_THROW(parse_word("F2", &env), UnknownName);
    EXPECT_TRUE(is_reserved_name("rho1"));
    EXPECT_FALSE(is_reserved_name("F1"));
}

TEST(Word, SyntaxErrorsCarryPosition) {
    try {
        parse_word("A[1,1]**B[1,1]");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.position(), 7u);
    }
    EXPECT_THROW(parse_word("A[1,"), SyntaxError);
    EXPECT_THROW(parse_word("conj(A[1,1])"), SyntaxError);
    EXPECT_THROW(parse_word("A[1,1] B[1,1]"), SyntaxError);
    EXPECT_THROW(parse_word("Q[1,1]"), UnknownName);
}

TEST(Word, FreeReduce) {
    auto t = GeneratorToken::twist(CurveName::b(1, 2));
    EXPECT_TRUE(free_reduce(MappingWord{t, t.inverse()}).empty());
    auto w = parse_word("A[1,1]*B[1,1]*inv(B[1,1])*inv(A[1,1])*h[1]");
    EXPECT_EQ(free_reduce(w), parse_word("h[1]"));
    auto reduced = parse_word("A[1,1]*B[1,1]");
    EXPECT_EQ(free_reduce(reduced), reduced);
    auto x = parse_word("rho2*C[1,1]*inv(h[1])");
    EXPECT_TRUE(free_reduce(compose(x, invert(x))).empty());
}

TEST(Word, InvertTwiceIsIdentity) {
    auto w = parse_word("rho1*A'[2,3]*inv(tau2)");
    EXPECT_EQ(invert(invert(w)), w);
    EXPECT_EQ(invert(w).str(), "tau2*inv(A'[2,3])*inv(rho1)");
}

TEST(EndAction, GeneratorImages) {
    EXPECT_EQ(perm_of(parse_word("R"), 5), EndPermutation::cycle(5));
    EXPECT_TRUE(perm_of(parse_word("h[1]"), 5).is_identity());
    EXPECT_TRUE(perm_of(parse_word("A[3,1]*C0[2]"), 5).is_identity());
    EXPECT_EQ(perm_of(parse_word("tau1"), 4), EndPermutation::transposition(4, 1, 2));
    EXPECT_EQ(perm_of(parse_word("rho1"), 4), EndPermutation({1, 4, 3, 2}));
    EXPECT_EQ(perm_of(parse_word("R"), 6).order(), 6);
}

TEST(EndAction, CycleNotation) {
    EXPECT_EQ(EndPermutation::transposition(4, 1, 2).str(), "(1 2)(3)(4)");
    EXPECT_EQ(EndPermutation::cycle(3).str(), "(1 2 3)");
    EXPECT_THROW(EndPermutation({1, 1, 2}), ConfigError);
}

TEST(EndAction, ClosureOrders) {
    for (int n = 2; n <= 8; ++n) {
        SubgroupClosure s(n, {EndPermutation::cycle(n), EndPermutation::transposition(n, 1, 2)});
        EXPECT_EQ(s.order(), SubgroupClosure::factorial(n));
        EXPECT_TRUE(s.is_full_symmetric());
    }
    EXPECT_EQ(SubgroupClosure(5, {EndPermutation::identity(5)}).order(), 1u);
    SubgroupClosure klein(4, {EndPermutation::transposition(4, 1, 2), EndPermutation::transposition(4, 3, 4)});
    EXPECT_EQ(klein.order(), 4u);
    EXPECT_TRUE(klein.contains(EndPermutation({2, 1, 4, 3})));
    EXPECT_FALSE(klein.contains(EndPermutation({3, 4, 1, 2})));
    EXPECT_THROW(SubgroupClosure(11, {EndPermutation::identity(11)}), TooLarge);
}
