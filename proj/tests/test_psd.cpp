#include <doctest.h>

#include "recsel/psd.hpp"
#include "recsel/rng.hpp"

using namespace recsel;

TEST_CASE("psd_repair clips negative eigenvalues") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -2.0;
    const Matrix r = psd_repair(m, 0.0);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(r(1, 1) == doctest::Approx(0.0));
    CHECK(r(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("psd_repair identity passthrough is exact") {
    const Matrix id = Matrix::Identity(3, 3);
    const Matrix r = psd_repair(id, 0.5);
    CHECK((r - id).norm() == 0.0);
}

TEST_CASE("project_psd of the swap matrix") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;  // eigenvalues +-1
    const Matrix r = project_psd(m);
    CHECK(r(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("projection idempotence and floor property on random matrices") {
    Xoshiro256StarStar rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.below(6));
        Matrix a(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
        const Matrix sym = symmetrized(a);
        const Matrix proj = project_psd(sym);
        CHECK(min_eigenvalue(proj) >= -1e-12);
        CHECK((project_psd(proj) - proj).norm() <= 1e-12 * (1.0 + proj.norm()));

        const double floor = 1e-3;
        const Matrix rep = psd_repair(sym, floor);
        CHECK(min_eigenvalue(rep) >= floor - 1e-9);
        // Repair only moves the matrix along clipped eigendirections:
        // distance is bounded by the worst clipped eigenvalue shift.
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        double shift = 0.0;
        for (Index i = 0; i < n; ++i) {
            shift = std::max(shift, floor - es.eigenvalues()(i));
        }
        CHECK((rep - sym).norm() <= std::sqrt(static_cast<double>(n)) * shift + 1e-12);
    }
}

TEST_CASE("psd_repair rejects non-finite input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(psd_repair(m, 0.0), std::invalid_argument);
}
