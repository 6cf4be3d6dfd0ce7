#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sstream>

#include "farey/report.hpp"
#include "farey/verification.hpp"

using namespace farey;

namespace {

Backend exact_backend() {
    Backend b;
    b.mode = Mode::exact;
    return b;
}

Backend float_backend() { return Backend{}; }

}  // namespace

TEST_CASE("identity check passes at small levels") {
    const auto exact = check_identity(4, exact_backend());
    CHECK(exact.status == CheckStatus::pass);
    CHECK(exact.actual == 1.0);
    CHECK(exact.margin == 0.0);

    const auto floating = check_identity(16, float_backend());
    CHECK(floating.status == CheckStatus::pass);
    CHECK(std::abs(floating.actual - 1.0) <= 1e-12);
}

TEST_CASE("sandwich check at hand-verified levels") {
    // level 3: 41/200 < 3/10 < 8/9; level 4: 7561/39200 < 39/140 < 41/50
    for (Level k : {3u, 4u}) {
        const auto r = check_sandwich(k, exact_backend());
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.margin > 0.0);
    }
    const auto r3 = check_sandwich(3, exact_backend());
    CHECK(r3.lower == Catch::Approx(41.0 / 200.0));
    CHECK(r3.actual == Catch::Approx(3.0 / 10.0));
    CHECK(r3.upper == Catch::Approx(8.0 / 9.0));
}

TEST_CASE("odd-sum bracket check brackets the measured odd sum") {
    const auto r4 = check_odd_sum_bracket(4, exact_backend());
    CHECK(r4.status == CheckStatus::pass);
    CHECK(r4.lower == Catch::Approx(94.0 / 135.0));
    CHECK(r4.actual == Catch::Approx(101.0 / 140.0));
    CHECK(r4.upper == Catch::Approx(253.0 / 350.0));

    // upper bound attained exactly at level 3; the non-strict check passes
    const auto r3 = check_odd_sum_bracket(3, exact_backend());
    CHECK(r3.status == CheckStatus::pass);
    CHECK(r3.margin == 0.0);

    const auto f3 = check_odd_sum_bracket(3, float_backend());
    CHECK(f3.status == CheckStatus::pass);
}

TEST_CASE("lineage check runs exhaustively at small levels") {
    for (Level k : {3u, 4u, 10u}) {
        const auto r = check_lineage(k, float_backend());
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.actual == 0.0);  // partition defect
        CHECK(r.margin >= 0.0);  // slack inside the ratio bounds
    }
    // at level 3 the single ratio (1/5)/(1/3) = 3/5 sits exactly on the
    // upper bound, so the slack is zero
    CHECK(check_lineage(3, float_backend()).margin == 0.0);
}

TEST_CASE("lineage check is skipped above the cap") {
    const auto r = check_lineage(15, float_backend());
    CHECK(r.status == CheckStatus::skip);
    CHECK(!r.reason.empty());
}

TEST_CASE("monotone decay holds through level 12 in both backends") {
    CHECK(check_monotone_decay(12, exact_backend()).status == CheckStatus::pass);
    const auto fl = check_monotone_decay(12, float_backend());
    CHECK(fl.status == CheckStatus::pass);
    CHECK(fl.check_class == CheckClass::observation);
}

TEST_CASE("exact checks above the exact cap are skipped, not failed") {
    Backend ex = exact_backend();
    ex.exact_cap = 6;
    VerificationEngine engine(ex);
    const auto r = engine.check_identity(7);
    CHECK(r.status == CheckStatus::skip);
    CHECK(r.reason.find("cap") != std::string::npos);
}

TEST_CASE("suite runs every applicable check per level") {
    const auto reports = run_suite(2, 6, exact_backend());
    REQUIRE(reports.size() == 5);
    CHECK(reports[0].k == 2);
    CHECK(reports[0].checks.size() == 2);  // identity + sandwich only at k=2
    CHECK(reports[1].checks.size() == 5);
    CHECK(suite_passed(reports));
    for (const auto& report : reports)
        for (const auto& check : report.checks) CHECK(check.status == CheckStatus::pass);
}

TEST_CASE("empty suite range reports nothing and passes") {
    const auto reports = run_suite(5, 4, float_backend());
    CHECK(reports.empty());
    CHECK(suite_passed(reports));
}

TEST_CASE("suite reports are deterministic modulo timings") {
    const auto a = run_suite(2, 8, float_backend());
    const auto b = run_suite(2, 8, float_backend());
    std::ostringstream sa, sb;
    write_reports(sa, a, OutputFormat::jsonl, /*timings=*/false);
    write_reports(sb, b, OutputFormat::jsonl, /*timings=*/false);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("\"status\":\"fail\"") == std::string::npos);
}

TEST_CASE("report serialization carries the required fields in order") {
    const auto reports = run_suite(3, 3, exact_backend());
    std::ostringstream jsonl, csv;
    write_reports(jsonl, reports, OutputFormat::jsonl);
    write_reports(csv, reports, OutputFormat::csv);

    const std::string j = jsonl.str();
    CHECK(j.find("\"k\":3") != std::string::npos);
    CHECK(j.find("\"check_name\":\"identity\"") != std::string::npos);
    CHECK(j.find("\"check_name\":\"sandwich\"") != std::string::npos);
    CHECK(j.find("\"check_name\":\"odd_sum_bracket\"") != std::string::npos);
    CHECK(j.find("\"check_name\":\"lineage\"") != std::string::npos);
    CHECK(j.find("\"check_name\":\"monotone_decay\"") != std::string::npos);
    CHECK(j.find("\"class\":\"observation\"") != std::string::npos);
    CHECK(j.find("\"backend\":\"exact\"") != std::string::npos);

    const std::string c = csv.str();
    CHECK(c.rfind("k,check_name,lower,actual,upper,margin,pass,backend,elapsed_ms", 0) == 0);
    CHECK(c.find(",monotone_decay,") != std::string::npos);
}

TEST_CASE("skipped checks serialize with reason and never as failures") {
    Backend ex = exact_backend();
    ex.exact_cap = 4;
    const auto reports = run_suite(2, 6, ex);
    CHECK(suite_passed(reports));
    std::ostringstream csv;
    write_reports(csv, reports, OutputFormat::csv);
    CHECK(csv.str().find("skip,") != std::string::npos);
    std::size_t skips = 0;
    for (const auto& report : reports)
        for (const auto& check : report.checks)
            if (check.status == CheckStatus::skip) {
                ++skips;
                CHECK(!check.reason.empty());
            }
    CHECK(skips > 0);
}

TEST_CASE("jsonl report rows are well-formed json with the expected keys") {
    Backend ex;
    ex.mode = Mode::exact;
    ex.exact_cap = 4;  // force a skip row into the output
    const auto reports = run_suite(2, 6, ex);
    std::ostringstream os;
    write_reports(os, reports, OutputFormat::jsonl);
    std::istringstream lines(os.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        const auto record = nlohmann::json::parse(line);
        for (const char* key : {"k", "check_name", "lower", "actual", "upper", "margin", "pass",
                                "backend", "elapsed_ms", "class", "status", "reason"})
            REQUIRE(record.contains(key));
        if (record["status"] == "skip") {
            CHECK(record["lower"].is_null());
            CHECK(record["pass"] == true);  // a cap never converts to a failure
            CHECK(!record["reason"].get<std::string>().empty());
        }
        ++rows;
    }
    CHECK(rows > 0);
}

TEST_CASE("decimal17 round-trips binary64") {
    for (double v : {1.0 / 3.0, 0.3, 39.0 / 140.0, 1e-300, 0.0}) {
        CHECK(std::stod(decimal17(v)) == v);
    }
}
