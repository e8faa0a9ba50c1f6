#include "doctest.h"
#include "gfcpd/cost.hpp"
#include "helpers.hpp"

using namespace gfcpd;
namespace cost = gfcpd::cost;

namespace {

bool close3(const cost::rational& v, double target) {
  const double x = cost::to_double(v);
  return std::abs(x - target) <= 5e-3 * std::abs(target);
}

// brute count of m x n rank-r matrices whose rows are all canonically
// normalized
std::uint64_t normalized_rank_count(const Field& f, int m, int n, int r) {
  std::uint64_t count = 0;
  th::for_all_matrices(f, m, n, [&](const Matrix& x) {
    if (th::rows_all_normalized(x) && rank(f, x) == r) ++count;
  });
  return count;
}

}  // namespace

TEST_SUITE_BEGIN("cost");

TEST_CASE("f") {
  CHECK(cost::f(2, 2, 2) == cost::rational(4));
  CHECK(cost::f(2, 2, 3) == cost::rational(9, 4));
  CHECK(cost::f(0, 0, 2) == cost::rational(1));
  CHECK(cost::f(0, 0, 7) == cost::rational(1));
}

TEST_CASE("mu") {
  for (long q : {2, 3, 5})
    for (long r = 1; r <= 8; ++r) {
      CHECK(cost::mu(r, 1, q) == r);
      for (long k = 1; k <= r; ++k) CHECK(cost::mu(r, k, q) >= k);
    }
  CHECK(cost::mu(3, 2, 2) == 2);
  CHECK(cost::mu(2, 2, 2) == 2);
  CHECK(cost::mu(5, 2, 2) == 4);
  CHECK_THROWS_AS(cost::mu(2, 3, 2), std::invalid_argument);
}

TEST_CASE("pexp") {
  CHECK(cost::pexp(4, 2, 0, 3) == cost::rational(1));
  CHECK(cost::pexp(3, 2, 1, 2) == cost::rational(16));
  CHECK(cost::pexp(4, 2, 2, 2) == cost::f(10, 2, 2));
}

TEST_CASE("fix-one constants reproduce the model table") {
  CHECK(close3(cost::fix_one_constant(1, 2), 4.0));
  CHECK(close3(cost::fix_one_constant(2, 2), 80.0));
  CHECK(close3(cost::fix_one_constant(3, 2), 2.05e4));
  CHECK(close3(cost::fix_one_constant(4, 2), 6.29e6));
  CHECK(close3(cost::fix_one_constant(5, 2), 3.98e10));
  CHECK(close3(cost::fix_one_constant(1, 3), 2.25));
  CHECK(close3(cost::fix_one_constant(2, 3), 55.7));
  CHECK(close3(cost::fix_one_constant(3, 3), 8.31e4));
  CHECK(close3(cost::fix_one_constant(4, 3), 1.24e9));
  CHECK(close3(cost::fix_one_constant(5, 3), 5.45e13));
  // exact spot value: 80 = f(4,3) + f(6,4) = 16 + 64 over GF(2)
  CHECK(cost::fix_one_constant(2, 2) == cost::rational(80));
}

TEST_CASE("fix-two constants") {
  CHECK(cost::fix_two_constant(1, 2) == cost::rational(4));
  CHECK(close3(cost::fix_two_constant(2, 2), 2.56e2));
  CHECK(close3(cost::fix_two_constant(3, 2), 2.62e5));
  CHECK(close3(cost::fix_two_constant(4, 2), 4.29e9));
  CHECK(close3(cost::fix_two_constant(5, 2), 1.13e15));
  CHECK(cost::fix_two_constant(1, 3) == cost::rational(9, 4));
  CHECK(close3(cost::fix_two_constant(2, 3), 4.1e2));
  CHECK(close3(cost::fix_two_constant(3, 3), 6.05e6));
  CHECK(close3(cost::fix_two_constant(4, 3), 7.24e12));
  // exact f(2r^2, 2r) evaluation at r = 5, q = 3: 3^50 / 2^10
  CHECK(cost::fix_two_constant(5, 3) ==
        cost::rational(cost::bigint("717897987691852588770249"), 1024));
}

TEST_CASE("matcount bound dominates the exhaustive count") {
  CHECK(cost::matcount_bound(3, 3, 0, 2) == cost::rational(1));
  CHECK(cost::matcount_bound(2, 2, 2, 2) == cost::rational(256, 6));
  CHECK(cost::matcount_bound(1, 1, 1, 2) == cost::rational(4));

  for (auto q : {2u, 3u}) {
    auto f = Field::make(q, 1);
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n)
        for (int r = 0; r <= std::min(m, n); ++r) {
          const auto bound = cost::matcount_bound(m, n, r, q);
          const auto count = normalized_rank_count(f, m, n, r);
          CHECK(cost::rational(count) <= bound);
        }
  }
}

TEST_CASE("large-field dominant exponents") {
  const std::pair<long, long> want_one[] = {{2, 2}, {6, 4}, {14, 6}, {24, 8}, {39, 10}};
  const std::pair<long, long> want_two[] = {{2, 2}, {8, 4}, {18, 6}, {32, 8}, {50, 10}};
  for (long r = 1; r <= 5; ++r) {
    CHECK(cost::fix_one_dominant_exponents(r) == want_one[r - 1]);
    CHECK(cost::fix_two_exponents(r) == want_two[r - 1]);
  }
}

TEST_CASE("table rendering") {
  const std::string table = cost::render_table();
  CHECK(table.find("fix-one") != std::string::npos);
  CHECK(table.find("2.05e+04") != std::string::npos);
  CHECK(table.find("f(39,10)") != std::string::npos);
  CHECK(table.find("f(50,10)") != std::string::npos);
  CHECK(cost::format_sig3(cost::rational(20544)) == "2.05e+04");
  CHECK(cost::format_sig3(cost::rational(9, 4)) == "2.25");
}

TEST_SUITE_END();
