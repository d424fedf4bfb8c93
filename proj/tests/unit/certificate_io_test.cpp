#include "cvwerner/certificate_io.hpp"

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "test_support.hpp"

namespace cvwerner {
namespace {

using nlohmann::json;

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = u(gen) * std::pow(10.0, trial % 40 - 20);
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
}

TEST(Csv, HeaderRowsAndFooter) {
  const Table t{{"a", "b"}, {{1.0, 0.25}, {-2.0, 0.0625}}};
  const std::string csv = table_to_csv(t, {{"tool", "cvwerner"}, {"n", "3"}}, {{"lambda_th", "0.389"}});
  EXPECT_EQ(csv, "# tool=cvwerner\n# n=3\na,b\n1,0.25\n-2,0.0625\n#lambda_th,0.389\n");
}

TEST(Json, TableDocument) {
  const Table t{{"x"}, {{0.125}}};
  const auto j = json::parse(table_to_json(t, {{"k", "v"}}, {{"f", "1"}}));
  EXPECT_EQ(j.at("metadata").at("k"), "v");
  EXPECT_EQ(j.at("columns")[0], "x");
  EXPECT_EQ(j.at("rows")[0][0].get<double>(), 0.125);
  EXPECT_EQ(j.at("footer").at("f"), "1");
  EXPECT_FALSE(json::parse(table_to_json(t, {})).contains("footer"));
}

TEST(Certificate, JsonRoundTrip) {
  const WernerParams w{0.5, 0.5, 0.08, 3};
  const auto cert = decompose_general_ppt(w);
  const std::string text = certificate_to_json(cert, {{"lambda1", "0.5"}});
  const auto j = json::parse(text);
  EXPECT_EQ(j.at("term_count").get<std::size_t>(), cert.terms.size());
  EXPECT_EQ(j.at("parameters").at("lambda1"), "0.5");
  ASSERT_EQ(j.at("terms")[0].at("ket_a").size(), 3u);
  EXPECT_EQ(j.at("terms")[0].at("ket_a")[0].size(), 2u);

  const auto back = certificate_from_json(text);
  EXPECT_EQ(back.dim_a, 3);
  EXPECT_EQ(back.terms.size(), cert.terms.size());
  EXPECT_EQ(back.reconstruction_error, cert.reconstruction_error);
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    EXPECT_EQ(back.terms[i].weight, cert.terms[i].weight);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(back.terms[i].ket_a[k], cert.terms[i].ket_a[k]);
      EXPECT_EQ(back.terms[i].ket_b[k], cert.terms[i].ket_b[k]);
    }
  }
  EXPECT_LE(reconstruction_error(back, build_werner_truncated(w)), 1e-10);
}

TEST(Certificate, MalformedInputIsRejected) {
  EXPECT_CVW_ERROR(certificate_from_json("{"), MalformedInput);
  EXPECT_CVW_ERROR(certificate_from_json("{\"dim_a\": 2}"), MalformedInput);
  EXPECT_CVW_ERROR(certificate_from_json("[]"), MalformedInput);
}

TEST(DiscordTable, OneRowPerReport) {
  DiscordReport r;
  r.lambda = 0.3;
  r.n_levels = 30;
  r.cutoff = 500;
  r.delta = -1.5;
  const auto t = discord_table({r, r});
  ASSERT_EQ(t.columns.size(), 10u);
  EXPECT_EQ(t.columns.front(), "lambda");
  EXPECT_EQ(t.columns.back(), "delta");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], 30.0);
  EXPECT_EQ(t.rows[1][9], -1.5);
}

TEST(Checks, TextCsvJson) {
  const std::vector<CheckResult> checks{{"alpha", 1e-15, 1e-10, true, ""}, {"beta", 0.5, 0.1, false, "say \"hi\""}};
  const std::string text = checks_to_text(checks, {{"tool", "cvwerner"}});
  EXPECT_NE(text.find("PASS alpha residual=1.0000000000000001e-15 tolerance=1e-10\n"), std::string::npos);
  EXPECT_NE(text.find("FAIL beta"), std::string::npos);
  EXPECT_NE(text.find("1/2 checks passed"), std::string::npos);

  const std::string csv = checks_to_csv(checks, {});
  EXPECT_NE(csv.find("beta,0.5,0.10000000000000001,0,\"say \"\"hi\"\"\"\n"), std::string::npos);

  const auto j = json::parse(checks_to_json(checks, {}));
  EXPECT_FALSE(j.at("all_passed").get<bool>());
  EXPECT_EQ(j.at("checks")[1].at("name"), "beta");
  EXPECT_TRUE(json::parse(checks_to_json({checks[0]}, {})).at("all_passed").get<bool>());
}

}  // namespace
}  // namespace cvwerner
