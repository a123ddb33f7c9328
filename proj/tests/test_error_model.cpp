#include <gtest/gtest.h>

#include "gamma_channel/error_model.hpp"
#include "gamma_channel/oracle.hpp"

using namespace gamma_channel;

TEST(ParseRational, Literals) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  for (const char* bad : {"", "abc", "1..2", "1/0", "0.1x", "e5", "1e"}) EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(ParseErrorModel, Grammar) {
  const auto c = parse_error_model("constant:t=2");
  EXPECT_EQ(c.kind, ErrorModelSpec::Kind::constant);
  EXPECT_EQ(c.t, 2);
  const auto i = parse_error_model("iid:t=3");
  EXPECT_EQ(i.kind, ErrorModelSpec::Kind::iid_vectors);
  EXPECT_EQ(i.t, 3);
  const auto b = parse_error_model("binomial:T=5,p=0.1");
  EXPECT_EQ(b.kind, ErrorModelSpec::Kind::binomial_packets);
  EXPECT_EQ(b.t, 5);
  EXPECT_EQ(b.p, Rational(1, 10));
  const auto e = parse_error_model("empirical:0.5,0.3,0.2");
  EXPECT_EQ(e.kind, ErrorModelSpec::Kind::empirical);
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_EQ(e.values[1], Rational(3, 10));
}

TEST(ParseErrorModel, RejectsMalformed) {
  for (const char* bad : {"constant:s=2", "constant:t=2,x=1", "constant", "constant:t=-1", "constant:t=two", "iid:",
                          "binomial:T=3", "binomial:p=0.1", "poisson:l=1", "constant:t=1,t=2", "empirical:", "empirical:0.5,,0.5"})
    EXPECT_THROW(parse_error_model(bad), InputError) << bad;
}

TEST(BuildErrorModel, Examples) {
  const FieldOrder two(2);
  const auto d0 = build_error_model("constant:t=0", two, 3, 3);
  EXPECT_TRUE(d0.is_exact());
  EXPECT_EQ(d0.rationals(), (std::vector<Rational>{1, 0, 0, 0}));
  const auto iid = build_error_model("iid:t=1", two, 2, 2);
  EXPECT_EQ(iid.rationals(), (std::vector<Rational>{Rational(1, 4), Rational(3, 4), 0}));
  const auto none = build_error_model("binomial:T=2,p=0", two, 2, 2);
  EXPECT_EQ(none.rationals(), (std::vector<Rational>{1, 0, 0}));
  const auto emp = build_error_model("empirical:1.0", two, 2, 2);
  EXPECT_EQ(emp.rationals(), (std::vector<Rational>{1, 0, 0}));
}

TEST(BuildErrorModel, Rejections) {
  const FieldOrder two(2);
  EXPECT_THROW(build_error_model("constant:t=3", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("iid:t=3", two, 2, 4), InputError);
  EXPECT_THROW(build_error_model("binomial:T=3,p=0.1", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("binomial:T=2,p=1.5", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("binomial:T=2,p=-0.5", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("empirical:0.5,0.4", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("empirical:0.5,0.25,0.25,0", two, 2, 2), InputError);
  EXPECT_THROW(build_error_model("empirical:1.5,-0.5", two, 2, 2), InputError);
}

TEST(BuildErrorModel, AlwaysNormalized) {
  for (int q : {2, 3, 4})
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) {
        for (int t = 0; t <= n; ++t) {
          const auto d = build_error_model("iid:t=" + std::to_string(t), FieldOrder(q), n, m);
          Rational sum = 0;
          for (const auto& p : d.rationals()) sum += p;
          EXPECT_EQ(sum, 1);
          const auto b = build_error_model("binomial:T=" + std::to_string(t) + ",p=0.3", FieldOrder(q), n, m);
          EXPECT_TRUE(b.is_exact());
        }
      }
}

TEST(BuildErrorModel, BinomialIsMixtureOfIid) {
  const FieldOrder three(3);
  const auto b = build_error_model("binomial:T=2,p=1/4", three, 2, 3);
  const auto i0 = build_error_model("iid:t=0", three, 2, 3);
  const auto i1 = build_error_model("iid:t=1", three, 2, 3);
  const auto i2 = build_error_model("iid:t=2", three, 2, 3);
  for (std::size_t r = 0; r < 3; ++r)
    EXPECT_EQ(b.rational(r), Rational(9, 16) * i0.rational(r) + Rational(6, 16) * i1.rational(r) + Rational(1, 16) * i2.rational(r));
}

// Rank law of the span of t uniform vectors against all t-tuples of F_2^m.
TEST(IidVectors, MatchesTupleEnumeration) {
  const FieldOrder two(2);
  for (int m = 1; m <= 3; ++m)
    for (int t = 0; t <= 3; ++t) {
      const auto cat = oracle::catalog(t, m, two, 1 << 12);
      std::vector<Rational> law(static_cast<std::size_t>(std::min(m, t)) + 1, Rational(0));
      for (int r : cat.rank) law[static_cast<std::size_t>(r)] += Rational(1, static_cast<long long>(cat.size));
      EXPECT_EQ(iid_vectors_law(t, m, two), law) << m << t;
    }
}
