#include <doctest.h>

#include <cmath>

#include "riemannflow/analysis.hpp"
#include "riemannflow/gamma.hpp"

using namespace rflow;

TEST_CASE("gamma against closed forms and the libm oracle") {
    CHECK(gamma_lanczos(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(gamma_lanczos(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_lanczos(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    for (double x = 0.05; x < 12.0; x += 0.173)
        CHECK(gamma_lanczos(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    // reflection branch
    for (double x : {-0.3, -1.7, -4.2})
        CHECK(gamma_lanczos(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-11));
}

TEST_CASE("analytic period: closed-form anchors") {
    CHECK(std::abs(analytic_period(0.0) - M_PI) < 1e-12);
    CHECK(std::abs(analytic_period(1.0 / M_PI) - 2.93702) < 5e-5);
}

TEST_CASE("analytic period agrees with a libm-gamma evaluation of the same formula") {
    for (double eps : {0.0, 0.2, 0.7, 1.0, 1.9}) {
        const double want = 2.0 * std::sqrt(M_PI) * std::cos(M_PI * eps / (4.0 + 2.0 * eps)) *
                            std::tgamma((3.0 + eps) / (2.0 + eps)) /
                            std::tgamma((4.0 + eps) / (4.0 + 2.0 * eps));
        CHECK(analytic_period(eps) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("analytic period decreases with eps near 0") {
    CHECK(analytic_period(0.5) < analytic_period(0.0));
    CHECK(analytic_period(1.0) < analytic_period(0.5));
}
