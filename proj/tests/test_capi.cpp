#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <mqm/mqm.h>

namespace {

struct SystemHandle {
    mqm_system* sys = mqm_system_create();
    ~SystemHandle() { mqm_system_destroy(sys); }
    operator mqm_system*() { return sys; }
};

}  // namespace

TEST_CASE("status names") {
    CHECK(std::string(mqm_status_name(MQM_OK)) == "ok");
    CHECK(std::string(mqm_status_name(MQM_ERR_INVALID)) == "invalid");
    CHECK(std::string(mqm_status_name(MQM_ERR_SEARCH)) == "search");
}

TEST_CASE("null-handle calls fail cleanly") {
    CHECK(mqm_system_configure(nullptr, MQM_SCENARIO_LANDAU, 1, 1, 1) ==
          MQM_ERR_INVALID);
    double e;
    CHECK(mqm_energy(nullptr, 0, 0, 0.0, &e, nullptr) == MQM_ERR_INVALID);
    CHECK(mqm_system_validate(nullptr, 0, 0, nullptr, 0) == -1);
    mqm_system_destroy(nullptr);  // no-op
}

TEST_CASE("validation through the C surface") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LANDAU, 1.0, 1.0, 1.0) == MQM_OK);
    char buf[256];
    CHECK(mqm_system_validate(h, 0, 0, buf, sizeof buf) == 0);
    CHECK(mqm_system_validate(h, -1, 0, buf, sizeof buf) > 0);

    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LANDAU, 1.0, -1.0, 1.0) == MQM_OK);
    REQUIRE(mqm_system_validate(h, 0, 0, buf, sizeof buf) == 1);
    CHECK(std::strstr(buf, "Mq must be > 0") != nullptr);
}

TEST_CASE("Landau energies") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LANDAU, 1.0, 1.0, 1.0) == MQM_OK);
    double e = 0.0, w = 0.0;
    REQUIRE(mqm_energy(h, 0, 0, 0.0, &e, &w) == MQM_OK);
    CHECK(e == doctest::Approx(1.0));
    CHECK(w == doctest::Approx(2.0));
    REQUIRE(mqm_energy(h, 2, -1, 0.0, &e, nullptr) == MQM_OK);
    CHECK(e == doctest::Approx(7.0));
}

TEST_CASE("hard wall energies") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_HARDWALL, 1.0, 1.0, 1.0) == MQM_OK);
    double e = 0.0;
    // radius not yet set
    CHECK(mqm_energy(h, 0, 0, 0.0, &e, nullptr) != MQM_OK);
    CHECK(std::string(mqm_system_last_error(h)).size() > 0);

    REQUIRE(mqm_system_set_rho0(h, 1.0) == MQM_OK);
    REQUIRE(mqm_energy(h, 0, 0, 0.0, &e, nullptr) == MQM_OK);
    CHECK(e == doctest::Approx(3.0).epsilon(1e-10));
    REQUIRE(mqm_energy(h, 1, 0, 0.0, &e, nullptr) == MQM_OK);
    CHECK(e == doctest::Approx(15.391538049464802).epsilon(1e-9));

    double approx = 0.0;
    REQUIRE(mqm_hardwall_energy_approx(h, 6, 0, &approx) == MQM_OK);
    REQUIRE(mqm_energy(h, 6, 0, 0.0, &e, nullptr) == MQM_OK);
    CHECK(std::abs(approx - e) / e < 5e-3);
}

TEST_CASE("potential scenarios") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_COULOMB, 1.0, 1.0, 1.0) == MQM_OK);
    double e = 0.0;
    // alpha not set yet
    CHECK(mqm_energy(h, 1, 0, 0.0, &e, nullptr) != MQM_OK);
    REQUIRE(mqm_system_set_alpha(h, 1.0) == MQM_OK);

    double w = 0.0;
    REQUIRE(mqm_allowed_frequency_n1(h, 0, &w) == MQM_OK);
    CHECK(w == doctest::Approx(2.0));

    double freq = 0.0;
    REQUIRE(mqm_energy(h, 1, 0, 0.0, &e, &freq) == MQM_OK);
    CHECK(freq == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(e == doctest::Approx(4.0).epsilon(1e-9));

    double r = 0.0;
    REQUIRE(mqm_truncation_residual(h, 1, 0, 2.0, &r) == MQM_OK);
    CHECK(std::abs(r) < 1e-12);
    CHECK(mqm_truncation_residual(h, 1, 0, -1.0, &r) == MQM_ERR_DOMAIN);

    double roots[8];
    int count = 0;
    REQUIRE(mqm_allowed_frequencies(h, 1, 0, roots, 8, &count) == MQM_OK);
    REQUIRE(count >= 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-9));

    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LINEAR, 1.0, 1.0, 1.0) == MQM_OK);
    REQUIRE(mqm_system_set_eta(h, 1.0) == MQM_OK);
    REQUIRE(mqm_energy(h, 1, 0, 0.0, &e, &freq) == MQM_OK);
    double varpi = std::cbrt(1.5);
    CHECK(freq == doctest::Approx(varpi).epsilon(1e-9));
    CHECK(e == doctest::Approx(5.0 * varpi / 3.0).epsilon(1e-9));
}

TEST_CASE("verification round trip") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LANDAU, 1.0, 1.0, 1.0) == MQM_OK);
    double ea = 0.0, en = 0.0, freq = 0.0, ov = 0.0;
    REQUIRE(mqm_verify_level(h, 0, 0, 0.0, 1200, &ea, &en, &freq, &ov) == MQM_OK);
    CHECK(ea == doctest::Approx(1.0));
    CHECK(std::abs(en - ea) / ea < 1e-3);
    CHECK(ov > 0.999);
}

TEST_CASE("field residuals and probe orders") {
    SystemHandle h;
    REQUIRE(mqm_system_configure(h, MQM_SCENARIO_LANDAU, 1.0, 1.0, 1.0) == MQM_OK);
    double far = 1.0, mdb = 1.0, spread = 1.0;
    REQUIRE(mqm_fields_residuals(h, 1e-3, &far, &mdb, &spread) == MQM_OK);
    CHECK(far < 1e-8);
    CHECK(mdb < 1e-8);
    CHECK(spread < 1e-8);

    double pf = 0.0, pm = 0.0;
    REQUIRE(mqm_fields_probe_orders(h, 1e-3, &pf, &pm) == MQM_OK);
    CHECK(pf == doctest::Approx(2.0).epsilon(0.1));
    CHECK(pm == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("stateless special functions") {
    double v = 0.0;
    REQUIRE(mqm_kummer_1f1(1.0, 1.0, 1.0, 1e-15, &v) == MQM_OK);
    CHECK(v == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(mqm_kummer_1f1(1.0, 0.0, 1.0, 1e-15, &v) == MQM_ERR_DOMAIN);

    double expected = std::exp(0.5) / std::sqrt(M_PI) *
                      std::cos(std::sqrt(43.0) - M_PI / 4.0);
    REQUIRE(mqm_kummer_large_a(-10.25, 1.0, 1.0, &v) == MQM_OK);
    CHECK(v == doctest::Approx(expected).epsilon(1e-13));
    CHECK(mqm_kummer_large_a(1.0, 1.0, 1.0, &v) == MQM_ERR_DOMAIN);
}
