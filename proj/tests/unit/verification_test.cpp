#include "cvwerner/verification.hpp"

#include <algorithm>

#include "test_support.hpp"

namespace cvwerner {
namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.include_threshold = false;
  o.entropy_cutoff = 120;
  o.photon_cutoff = 120;
  o.discord_cutoff = 200;
  return o;
}

const CheckResult* find(const std::vector<CheckResult>& checks, const std::string& name) {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

TEST(Fault, NamesRoundTrip) {
  for (const auto& name : fault_names()) EXPECT_EQ(to_string(parse_fault(name)), name);
  EXPECT_EQ(parse_fault("none"), Fault::None);
  EXPECT_CVW_ERROR(parse_fault("bogus"), ParamOutOfRange);
}

TEST(Verification, QuickSuitePasses) {
  const auto checks = run_verification(quick());
  EXPECT_EQ(checks.size(), 18u);
  for (const auto& c : checks) {
    EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual << " tol " << c.tolerance << " " << c.detail;
    EXPECT_LE(c.residual, c.tolerance) << c.name;
  }
  EXPECT_EQ(find(checks, "discord_threshold"), nullptr);
}

struct FaultCase {
  Fault fault;
  const char* failing_check;
};

class InjectedFault : public ::testing::TestWithParam<FaultCase> {};

TEST_P(InjectedFault, NamedCheckFails) {
  auto options = quick();
  options.fault = GetParam().fault;
  const auto checks = run_verification(options);
  const auto* target = find(checks, GetParam().failing_check);
  ASSERT_NE(target, nullptr);
  EXPECT_FALSE(target->passed) << target->name << " residual " << target->residual;
}

INSTANTIATE_TEST_SUITE_P(Faults, InjectedFault,
                         ::testing::Values(FaultCase{Fault::WrongKn, "decomposition_identity"},
                                           FaultCase{Fault::DropTerm, "general_certificates"},
                                           FaultCase{Fault::ShiftThreshold, "ppt_threshold_agreement"},
                                           FaultCase{Fault::WrongEntropy, "global_entropy_closed_form"}));

}  // namespace
}  // namespace cvwerner
