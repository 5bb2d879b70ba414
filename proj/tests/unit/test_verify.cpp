#include "susy_damp/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>
#include <string>

using namespace susy_damp;

namespace {

// Every named invariant of the library, by module.  Adding a check without
// listing it here (or the reverse) fails the completeness test.
const std::set<std::string> kExpected{
    "core.coefficient_round_trip",
    "core.frequency_partition",
    "core.regime_exhaustive",
    "modes.abel_identity",
    "modes.blow_up_sign",
    "modes.critical_wronskian",
    "modes.derivative_consistency",
    "modes.eq10_residual",
    "modes.gamma_limit_overdamped",
    "modes.gamma_limit_underdamped",
    "modes.gamma_limit_underdamped_convergence",
    "modes.seed_eigenrelation",
    "modes.seed_residual",
    "modes.tilde_eigenrelation",
    "operators.aplus_not_eigenfunction",
    "operators.factorization_analytic",
    "operators.factorization_fd",
    "operators.fd_convergence_order",
    "operators.intertwining_analytic",
    "operators.intertwining_fd",
    "operators.linearity",
    "operators.newton10_shift",
    "operators.susy_mapping",
    "oracle.closed_form_match",
    "oracle.order_verification",
    "oracle.self_convergence",
    "oracle.time_reversal",
    "oracle.zero_solution",
    "riccati.factorization_conditions",
    "riccati.full_equation",
    "riccati.gamma_zero_limit",
    "riccati.h_identity",
};

}  // namespace

TEST_CASE("registry is complete and each check appears once") {
    const auto names = check_names(Scope::All);
    CHECK(std::set<std::string>(names.begin(), names.end()) == kExpected);
    CHECK(names.size() == kExpected.size());

    std::size_t total = 0;
    for (auto name : scope_names()) {
        const Scope s = *parse_scope(name);
        if (s != Scope::All) total += check_names(s).size();
    }
    CHECK(total == kExpected.size());
}

TEST_CASE("scope names round trip") {
    for (auto name : scope_names()) CHECK(to_string(*parse_scope(name)) == name);
    CHECK_FALSE(parse_scope("nope"));
}

TEST_CASE("riccati scope passes well below 1e-13") {
    const auto reports = run_suite(Scope::Riccati, 0);
    CHECK(all_passed(reports));
    for (const auto& r : reports) CHECK(r.max_residual < 1e-13);
}

TEST_CASE("eq10 scope passes") { CHECK(all_passed(run_suite(Scope::Eq10, 0))); }

TEST_CASE("full suite passes and is deterministic") {
    const auto a = run_suite(Scope::All, 0);
    const auto b = run_suite(Scope::All, 0);
    CHECK(all_passed(a));
    CHECK(report_to_json(a) == report_to_json(b));
    for (const auto& r : a) CHECK_MESSAGE(r.passed == (r.max_residual <= r.threshold), r.check_name);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].check_name < a[i].check_name);
}

TEST_CASE("pass/fail vector does not depend on the seed") {
    const auto s1 = run_suite(Scope::All, 1);
    const auto s2 = run_suite(Scope::All, 2);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK_MESSAGE(s1[i].passed == s2[i].passed, s1[i].check_name);
}

TEST_CASE("JSON report schema") {
    const auto json = nlohmann::json::parse(report_to_json(run_suite(Scope::Wronskian, 3)));
    REQUIRE(json.is_array());
    REQUIRE(json.size() == check_names(Scope::Wronskian).size());
    for (const auto& entry : json) {
        CHECK(entry.contains("check_name"));
        CHECK(entry["max_residual"].is_number());
        CHECK(entry["threshold"].is_number());
        CHECK(entry["passed"].is_boolean());
        CHECK(entry["worst_point"].contains("t"));
        CHECK(entry["worst_point"].contains("gamma"));
    }
}
