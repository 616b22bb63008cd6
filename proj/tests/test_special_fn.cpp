#include <doctest.h>

#include <stdexcept>

#include "pwk/special_fn.hpp"
#include "support.hpp"

using namespace pwk;

namespace {
HalfInt h(int twice) { return HalfInt::from_twice(twice); }
}  // namespace

TEST_SUITE("special_fn") {
  TEST_CASE("legendre_p values") {
    CHECK(legendre_p(0, 0.3) == 1.0);
    CHECK(legendre_p(1, -0.25) == -0.25);
    // Rodrigues formula evaluated exactly
    CHECK_REL(legendre_p(5, 0.7), -0.36519875, 1e-13);
    CHECK_REL(legendre_p(12, -0.35), -0.0551801853654260542392730712891, 1e-13);
    CHECK_THROWS_AS(legendre_p(2, 1.0001), std::domain_error);
    CHECK_THROWS_AS(legendre_p(2, -1.5), std::domain_error);
  }

  TEST_CASE("Bonnet recurrence residual") {
    for (int ell = 1; ell < 40; ++ell)
      for (double x = -1.0; x <= 1.0; x += 0.0625) {
        const double r = (2 * ell + 1) * x * legendre_p(ell, x) - (ell + 1) * legendre_p(ell + 1, x) -
                         ell * legendre_p(ell - 1, x);
        CHECK(std::abs(r) < 1e-12);
      }
  }

  TEST_CASE("legendre_q closed forms and quadrature references") {
    CHECK_REL(legendre_q(0, 2.0), 0.5493061443340548456976226, 1e-14);
    CHECK_REL(legendre_q(1, 2.0), 0.09861228866810969139524524, 1e-14);
    CHECK_REL(legendre_q(0, 1e6), 1.000000000000333333e-6, 1e-9);
    CHECK_REL(legendre_q(7, 1.01), 0.3857281829150587149628434, 1e-12);
    CHECK_REL(legendre_q(20, 1.5), 7.013877278486274695412683e-10, 1e-12);
    CHECK_REL(legendre_q(50, 3.0), 2.286433943955551572972583e-40, 1e-12);
    // close to the diagonal, through the y - 1 argument
    CHECK_REL(legendre_q_all(3, 1e-6)[3], 5.421034311955336932263619, 1e-12);
    CHECK_THROWS_AS(legendre_q(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(legendre_q(0, 0.5), std::domain_error);
  }

  TEST_CASE("legendre_q is positive, decreasing and obeys the recurrence") {
    for (int ell = 0; ell <= 20; ++ell) {
      double prev = INFINITY;
      for (double y = 1.001; y < 100.0; y *= 1.3) {
        const double q = legendre_q(ell, y);
        CHECK(q > 0.0);
        CHECK(q < prev);
        prev = q;
      }
    }
    for (int ell = 1; ell < 40; ++ell)
      for (double y : {1.0001, 1.01, 1.3, 2.0, 7.5}) {
        const auto q = legendre_q_all(ell + 1, y - 1.0);
        const double r = (2 * ell + 1) * y * q[ell] - (ell + 1) * q[ell + 1] - ell * q[ell - 1];
        CHECK(std::abs(r) <= 1e-10 * (2 * ell + 1) * y * q[ell]);
      }
  }

  TEST_CASE("wigner_d") {
    for (double b : {0.0, 0.4, 1.7, 3.1}) {
      CHECK_ABS(wigner_d(h(1), h(1), h(1), b), std::cos(b / 2), 1e-15);
      CHECK_ABS(wigner_d(h(1), h(1), h(-1), b), -std::sin(b / 2), 1e-15);
      CHECK_ABS(wigner_d(h(2), h(0), h(0), b), std::cos(b), 1e-15);
    }
    CHECK_ABS(wigner_d(h(2), h(0), h(0), M_PI / 3), 0.5, 1e-15);
    for (int tj = 0; tj <= 8; ++tj)
      for (int tm = -tj; tm <= tj; tm += 2)
        for (int tmp = -tj; tmp <= tj; tmp += 2) CHECK_ABS(wigner_d(h(tj), h(tm), h(tmp), 0.0), tm == tmp ? 1.0 : 0.0, 1e-15);
    // Wigner's explicit sum evaluated in extended precision
    CHECK_REL(wigner_d(h(5), h(3), h(-1), 0.9), 0.4948671233752029882418593, 1e-13);
    CHECK_REL(wigner_d(h(4), h(2), h(-4), 2.1), -0.6494986264278339003450239, 1e-13);
    CHECK_REL(wigner_d(h(14), h(6), h(10), 1.3), -0.1642719632434528991920501, 1e-12);
    CHECK_THROWS_AS(wigner_d(h(1), h(3), h(1), 0.1), std::domain_error);
    CHECK_THROWS_AS(wigner_d(h(2), h(1), h(0), 0.1), std::domain_error);
  }

  TEST_CASE("wigner_d rows are unit vectors") {
    for (int tj = 1; tj <= 10; ++tj)
      for (int tm = -tj; tm <= tj; tm += 2) {
        double s = 0.0;
        for (int tmp = -tj; tmp <= tj; tmp += 2) s += std::pow(wigner_d(h(tj), h(tm), h(tmp), 1.234), 2);
        CHECK_ABS(s, 1.0, 1e-12);
      }
  }

  TEST_CASE("clebsch_gordan") {
    CHECK_REL(clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0)), 1.0 / std::sqrt(2.0), 1e-15);
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(0)) == 0.0);
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(-1), h(4), h(0)) == 0.0);  // triangle
    // exact values from the Racah formula
    CHECK_REL(clebsch_gordan(h(3), h(1), h(2), h(-2), h(3), h(-1)), 0.7302967433402214846092930, 1e-14);
    CHECK_REL(clebsch_gordan(h(4), h(2), h(3), h(-1), h(5), h(1)), 0.5976143046671968199844086, 1e-14);
    CHECK_REL(clebsch_gordan(h(2), h(2), h(2), h(-2), h(4), h(0)), 0.4082482904638630163662140, 1e-14);
    CHECK_REL(clebsch_gordan(h(6), h(-4), h(4), h(2), h(8), h(-2)), -0.5916079783099616042567328, 1e-14);
    CHECK(clebsch_gordan_2(3, 1, 2, -2, 3, -1) == clebsch_gordan(h(3), h(1), h(2), h(-2), h(3), h(-1)));
  }

  TEST_CASE("clebsch_gordan orthonormality and completeness") {
    for (int tj1 : {1, 2, 3})
      for (int tj2 : {1, 2}) {
        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
          for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2)
            for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
              double s = 0.0;
              for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                s += clebsch_gordan_2(tj1, tm1, tj2, tM - tm1, tJ, tM) *
                     clebsch_gordan_2(tj1, tm1, tj2, tM - tm1, tJp, tM);
              CHECK_ABS(s, tJ == tJp ? 1.0 : 0.0, 1e-14);
            }
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            double s = 0.0;
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
              s += std::pow(clebsch_gordan_2(tj1, tm1, tj2, tm2, tJ, tm1 + tm2), 2);
            CHECK_ABS(s, 1.0, 1e-14);
          }
      }
  }

  TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0.0);
    CHECK_REL(harmonic(4), 25.0 / 12.0, 1e-15);
  }
}
