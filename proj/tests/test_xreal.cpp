#include <doctest.h>

#include <random>

#include "lebesgue/xreal.hpp"

using namespace lebesgue;

namespace {

const XReal inf = XReal::pos_inf();

XReal random_nonneg(std::mt19937_64& rng) {
  const auto r = rng() % 12;
  if (r == 0) return inf;
  if (r == 1) return XReal(0);
  return XReal::fin(static_cast<long>(rng() % 11), static_cast<long>(rng() % 10 + 1));
}

}  // namespace

TEST_CASE("addition") {
  CHECK(XReal::fin(1, 2) + XReal::fin(1, 3) == XReal::fin(5, 6));
  CHECK(inf + XReal(7) == inf);
  CHECK(XReal::neg_inf() + XReal(7) == XReal::neg_inf());
  CHECK_THROWS_AS(inf + XReal::neg_inf(), KernelError);
  try {
    (void)xr_add(XReal::neg_inf(), inf);
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrorCode::IndeterminateSum);
  }
}

TEST_CASE("multiplication") {
  CHECK(XReal(0) * inf == XReal(0));
  CHECK(inf * XReal(0) == XReal(0));
  CHECK(XReal(0) * XReal::neg_inf() == XReal(0));
  CHECK(XReal(2) * XReal(3) == XReal(6));
  CHECK(inf * XReal::fin(1, 2) == inf);
  CHECK(inf * inf == inf);
  CHECK(XReal::neg_inf() * XReal(2) == XReal::neg_inf());
  CHECK(XReal::neg_inf() * XReal(-2) == inf);
  CHECK(XReal::neg_inf() * inf == XReal::neg_inf());
}

TEST_CASE("order and canonical form") {
  CHECK(XReal::neg_inf() < XReal(-1000));
  CHECK(XReal(1000) < inf);
  CHECK(XReal::fin(2, 4) == XReal::fin(1, 2));
  CHECK(XReal::fin(2, 4).value().get_den() == 2);
  CHECK(XReal::fin(6, 4).str() == "3/2");
  CHECK(inf.str() == "inf");
  CHECK(XReal::neg_inf().str() == "-inf");
  CHECK_THROWS_AS((void)inf.value(), KernelError);
}

TEST_CASE("sup of stabilized sequences") {
  CHECK(xr_sup(XRealSeq::stabilized({0, 1, 1}, 1)) == XReal(1));
  CHECK(xr_sup(XRealSeq::stabilized({inf}, 0)) == inf);
  CHECK(xr_sup(XRealSeq::stabilized({XReal::fin(1, 4), XReal::fin(1, 3), XReal::fin(1, 3)}, 1)) == XReal::fin(1, 3));
  // terms past the declared index do not count
  CHECK(xr_sup(XRealSeq::stabilized({1, 2, 9}, 1)) == XReal(2));
  try {
    (void)xr_sup(XRealSeq::unbounded({1, 2}));
    FAIL("expected UnboundedSequence");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrorCode::UnboundedSequence);
  }
  CHECK_THROWS_AS(xr_sup(XRealSeq::stabilized({1}, 3)), KernelError);
}

TEST_CASE("algebraic laws on nonnegative values") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const XReal x = random_nonneg(rng), y = random_nonneg(rng), z = random_nonneg(rng);
    CHECK(x + y == y + x);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(xr_max(x, y) >= x);
    CHECK(xr_min(x, y) <= y);
  }
}

TEST_CASE("sup is monotone") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<XReal> a, b;
    XReal run(0);
    for (int k = 0; k < 4; ++k) {
      run = run + random_nonneg(rng);
      a.push_back(run);
      b.push_back(run + random_nonneg(rng));
    }
    const XReal sa = xr_sup(XRealSeq::stabilized(a, 3));
    CHECK(sa == a.back());
    CHECK(sa <= xr_sup(XRealSeq::stabilized(b, 3)));
  }
}

TEST_CASE("mutation override is scoped") {
  {
    mutation::ScopedZeroTimesInfinity flip(mutation::ZeroTimesInfinity::Infinity);
    CHECK(XReal(0) * inf == inf);
  }
  CHECK(XReal(0) * inf == XReal(0));
}
