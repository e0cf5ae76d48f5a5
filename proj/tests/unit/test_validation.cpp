#include <doctest.h>

#include <sstream>

#include "sbplate/validation.hpp"

using namespace sbplate;

TEST_CASE("embedded tables load with the transcribed values") {
    const std::vector<ReferenceRow> t1 = reference_table("T1");
    REQUIRE(t1.size() == 6);
    CHECK(t1[0].quantity == "omega_1");
    CHECK(t1[0].mesh == 2);
    CHECK(t1[0].value == doctest::Approx(2.0035));
    CHECK(t1[5].quantity == "lambda_cru");
    CHECK(t1[5].value == doctest::Approx(4.0000));

    CHECK(reference_table("T2").size() == 36);
    CHECK(reference_table("T4").size() == 72);
    CHECK(reference_table("T5").size() == 48);

    const std::vector<ReferenceRow> t3 = reference_table("T3");
    int skipped = 0;
    for (const ReferenceRow& row : t3)
        skipped += row.skip ? 1 : 0;
    CHECK(t3.size() == 96);
    CHECK(skipped == 6); // flagged anomalous cells at psi = 45, n in {5, 10}

    CHECK_THROWS_AS(reference_table("T9"), ConfigError);
}

TEST_CASE("validate_rows passes a correct coarse-mesh reference") {
    ReferenceRow row;
    row.table = "T1";
    row.bc = "SSSS";
    row.b_over_h = 1000.0;
    row.psi_deg = 0.0;
    row.n = 0.0;
    row.quantity = "omega_1";
    row.mesh = 2;
    row.value = 2.0035;
    row.rtol = 0.005;

    const ValidationReport report = validate_rows({row});
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].pass);
    CHECK(report.all_pass);
    CHECK(report.rows[0].rel_err < 0.005);
}

TEST_CASE("an intentionally wrong reference value flags the row and fails") {
    ReferenceRow good;
    good.table = "T1";
    good.bc = "SSSS";
    good.b_over_h = 1000.0;
    good.quantity = "lambda_cru";
    good.mesh = 2;
    good.value = 4.0154;
    good.rtol = 0.005;

    ReferenceRow bad = good;
    bad.quantity = "omega_1";
    bad.value = 99.0; // deliberately wrong

    const ValidationReport report = validate_rows({good, bad});
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].pass);
    CHECK_FALSE(report.rows[1].pass);
    CHECK_FALSE(report.all_pass);

    std::ostringstream text;
    write_validation_text(report, text);
    CHECK(text.str().find("[FAIL]") != std::string::npos);
    CHECK(text.str().find("result: FAIL") != std::string::npos);

    std::ostringstream csv;
    write_validation_csv(report, csv);
    CHECK(csv.str().find("FAIL") != std::string::npos);
}

TEST_CASE("skipped rows do not decide the overall outcome") {
    ReferenceRow row;
    row.table = "T3";
    row.bc = "SSSS";
    row.b_over_h = 1000.0;
    row.quantity = "omega_1";
    row.mesh = 2;
    row.value = 123.0; // wrong, but excluded
    row.rtol = 0.005;
    row.skip = true;

    const ValidationReport report = validate_rows({row});
    CHECK(report.all_pass);
    std::ostringstream text;
    write_validation_text(report, text);
    CHECK(text.str().find("[SKIP]") != std::string::npos);
}

TEST_CASE("SCSC rows carry both assignments") {
    ReferenceRow row;
    row.table = "T3";
    row.bc = "SCSC";
    row.b_over_h = 100.0;
    row.psi_deg = 0.0;
    row.n = 0.0;
    row.quantity = "omega_1";
    row.mesh = 2;
    row.value = 2.93; // coarse-mesh ballpark
    row.rtol = 0.05;

    const ValidationReport report = validate_rows({row});
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].has_alternate);
    // on the unskewed homogeneous square both assignments coincide
    CHECK(report.rows[0].computed ==
          doctest::Approx(report.rows[0].computed_alternate).epsilon(1e-6));
    CHECK(report.scsc_assignment != "n/a");
}
