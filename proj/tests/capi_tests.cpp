#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "softedge/softedge.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

std::string take(char* s)
{
    std::string out = s ? s : "";
    se_string_free(s);
    return out;
}

} // namespace

TEST_CASE("status names and version")
{
    CHECK(std::string(se_status_name(SE_OK)) == "ok");
    CHECK(std::string(se_status_name(SE_ERR_IO)) == "io");
    CHECK(std::strlen(se_version()) > 0);
}

TEST_CASE("argument errors set codes and messages")
{
    double v = 0;
    CHECK(se_limit_F(3, 0.0, 1.0, &v) == SE_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(se_last_error()) > 0);
    CHECK(se_limit_F(2, 0.0, 1.0, nullptr) == SE_ERR_INVALID_ARGUMENT);
    CHECK(se_limit_F(2, 0.0, 1.0, &v) == SE_OK);
    CHECK(std::string(se_last_error()).empty());
    se_ensemble bad{SE_LAGUERRE, 2, 5, 3.0};
    CHECK(se_E2n(&bad, 1.0, 0.5, &v) == SE_ERR_INVALID_ARGUMENT);
    se_table* t = nullptr;
    CHECK(se_table_load("/nonexistent/coefficients.txt", &t) == SE_ERR_IO);
    CHECK(t == nullptr);
    CHECK(se_table_parse("P 2 1 1 derived-numeric 1\n 2 0 1 5\n", &t) == SE_ERR_IO);
}

TEST_CASE("limit values through the C surface")
{
    double f2, fp, fm;
    REQUIRE(se_limit_F(2, -1.0, 1.0, &f2) == SE_OK);
    REQUIRE(se_F_pm(+1, -1.0, 1.0, &fp) == SE_OK);
    REQUIRE(se_F_pm(-1, -1.0, 1.0, &fm) == SE_OK);
    CHECK(std::fabs(fp * fm - f2) < 1e-12);
    se_pii* sol = nullptr;
    REQUIRE(se_pii_solve(1.0, 0, 0, &sol) == SE_OK);
    double viaP;
    REQUIRE(se_pii_F(sol, SE_TARGET_F2, -1.0, &viaP) == SE_OK);
    CHECK(std::fabs(viaP - f2) < 1e-8);
    CHECK(se_pii_F(sol, 7, -1.0, &viaP) == SE_ERR_INVALID_ARGUMENT);
    se_pii_free(sol);
    se_pii_free(nullptr);
}

TEST_CASE("finite n and closed form")
{
    se_ensemble one{SE_GAUSSIAN, 2, 1, 0};
    double v;
    REQUIRE(se_E2n(&one, 0.0, 1.0, &v) == SE_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
    se_ensemble gue{SE_GAUSSIAN, 2, 5, 0};
    std::vector<double> P(6);
    REQUIRE(se_gap_probabilities(&gue, 1.0, P.data()) == SE_OK);
    double sum = 0;
    for (double p : P) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tables and expansions")
{
    se_table* t = nullptr;
    REQUIRE(se_table_default(&t) == SE_OK);
    int order = 0;
    REQUIRE(se_table_max_order(t, 1, &order) == SE_OK);
    CHECK(order == 2);
    char *poly = nullptr, *prov = nullptr;
    REQUIRE(se_table_entry(t, 2, 1, 2, &poly, &prov, nullptr) == SE_OK);
    CHECK(take(poly) == "1/10*tau - 3/10");
    CHECK(take(prov) == "derived-numeric");
    double c;
    REQUIRE(se_table_eval(t, 2, 1, 1, 2.0, 0.0, &c) == SE_OK);
    CHECK(c == doctest::Approx(0.8));
    CHECK(se_table_entry(t, 2, 3, 1, nullptr, nullptr, nullptr) == SE_ERR_OUT_OF_RANGE);

    char* text = nullptr;
    REQUIRE(se_table_format(t, &text) == SE_OK);
    se_table* u = nullptr;
    REQUIRE(se_table_parse(text, &u) == SE_OK);
    char* again = nullptr;
    REQUIRE(se_table_format(u, &again) == SE_OK);
    CHECK(std::string(text) == std::string(again));
    se_string_free(text);
    se_string_free(again);
    se_table_free(u);

    se_ensemble goe{SE_GAUSSIAN, 1, 10, 0};
    int orders[] = {0, 1};
    double weights[] = {1.0, -1.0};
    se_induced op{1.0, 2, orders, weights};
    std::vector<double> s{-2.0, -1.0, 0.0};
    std::vector<double> vals(3 * s.size()), dens(3 * s.size());
    REQUIRE(se_expand_grid(t, &goe, &op, 2, s.data(), int(s.size()), vals.data(), dens.data()) == SE_OK);
    for (size_t i = 0; i < s.size(); ++i) {
        double v, parts[3];
        REQUIRE(se_expand(t, &goe, s[i], &op, 2, &v, parts) == SE_OK);
        CHECK(std::fabs(v - vals[2 * s.size() + i]) < 1e-9);
        CHECK(std::fabs(parts[0] + parts[1] + parts[2] - v) < 1e-14);
    }
    double v;
    CHECK(se_expand(t, &goe, 0.0, &op, 3, &v, nullptr) == SE_ERR_INVALID_ARGUMENT);
    se_table_free(t);
}

TEST_CASE("sampling handles")
{
    se_ensemble gue{SE_GAUSSIAN, 2, 4, 0};
    se_batch* b = nullptr;
    REQUIRE(se_sample(&gue, 100, 3, 1, &b) == SE_OK);
    const double* lv;
    int count, n;
    REQUIRE(se_batch_levels(b, &lv, &count, &n) == SE_OK);
    CHECK(count == 100);
    CHECK(n == 4);
    CHECK(lv[0] <= lv[1]);
    double stat, p;
    REQUIRE(se_ks_two_sample(lv, 100, lv, 100, &stat, &p) == SE_OK);
    CHECK(stat == 0);
    se_batch_free(b);
    CHECK(se_sample(&gue, 0, 3, 1, &b) == SE_ERR_INVALID_ARGUMENT);
    char* rep = nullptr;
    REQUIRE(se_decimation_check(4, 0, 1, 1, &rep) == SE_OK);
    CHECK(take(rep).find("\"items\": []") != std::string::npos);
}

TEST_CASE("criteria catalogue")
{
    CHECK(se_criteria_count() == 12);
    int pass = 0;
    char* rep = nullptr;
    REQUIRE(se_validate_criterion(7, 0, 1, 0, nullptr, &pass, &rep) == SE_OK);
    CHECK(pass == 1);
    CHECK(take(rep).find("\"id\":7") != std::string::npos);
    CHECK(se_validate_criterion(13, 0, 1, 0, nullptr, &pass, nullptr) == SE_ERR_OUT_OF_RANGE);
}
