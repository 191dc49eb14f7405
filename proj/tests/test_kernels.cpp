#include <doctest.h>

#include <array>
#include <random>
#include <vector>

#include "vacmix/kernels.hpp"

using namespace vacmix;
using kern::cplx;

namespace {

std::vector<cplx> random_vec(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(uni(rng), uni(rng));
  return v;
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 1e-300;
  for (size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  if (!kern::cpu_has_avx2()) {
    MESSAGE("AVX2 unavailable; skipping equivalence tests");
    return;
  }
  std::mt19937 rng(42);
  // odd sizes exercise the vector remainders
  const std::vector<std::array<int, 3>> shapes = {
      {1, 1, 1}, {3, 5, 7}, {8, 8, 8}, {17, 31, 13}, {64, 33, 50}};
  for (const auto& [m, n, k] : shapes) {
    const auto a = random_vec(rng, m * k);
    const auto b = random_vec(rng, k * n);
    auto c1 = random_vec(rng, m * n);
    auto c2 = c1;
    const cplx alpha(0.7, -0.3), beta(-0.2, 0.9);
    kern::scalar::zgemm(m, n, k, alpha, a.data(), k, b.data(), n, beta,
                        c1.data(), n);
    kern::avx2::zgemm(m, n, k, alpha, a.data(), k, b.data(), n, beta,
                      c2.data(), n);
    CHECK(rel_diff(c1, c2) < 1e-13 * k);

    auto y1 = random_vec(rng, m);
    auto y2 = y1;
    kern::scalar::zgemv(m, k, alpha, a.data(), k, b.data(), beta, y1.data());
    kern::avx2::zgemv(m, k, alpha, a.data(), k, b.data(), beta, y2.data());
    CHECK(rel_diff(y1, y2) < 1e-13 * k);
  }

  const int n = 1001;
  const auto x = random_vec(rng, n);
  auto y1 = random_vec(rng, n);
  auto y2 = y1;
  const cplx alpha(0.3, 1.1);
  kern::scalar::zaxpy(n, alpha, x.data(), y1.data());
  kern::avx2::zaxpy(n, alpha, x.data(), y2.data());
  CHECK(rel_diff(y1, y2) < 1e-14);

  kern::scalar::zscal(n, alpha, y1.data());
  kern::avx2::zscal(n, alpha, y2.data());
  CHECK(rel_diff(y1, y2) < 1e-14);

  CHECK(kern::scalar::znrm2sq(n, x.data()) ==
        doctest::Approx(kern::avx2::znrm2sq(n, x.data())).epsilon(1e-13));
  CHECK(kern::scalar::zmaxabs(n, x.data()) ==
        doctest::Approx(kern::avx2::zmaxabs(n, x.data())).epsilon(1e-13));
}

TEST_CASE("isa dispatch") {
  const kern::Isa initial = kern::active_isa();
  kern::set_isa(kern::Isa::scalar);
  CHECK(kern::active_isa() == kern::Isa::scalar);
  kern::set_isa(kern::Isa::avx2);
  if (kern::cpu_has_avx2())
    CHECK(kern::active_isa() == kern::Isa::avx2);
  else
    CHECK(kern::active_isa() == kern::Isa::scalar);
  kern::set_isa(initial);
}

TEST_CASE("gemm semantics: beta and alpha handling") {
  std::mt19937 rng(7);
  const int m = 4, n = 3, k = 2;
  const auto a = random_vec(rng, m * k);
  const auto b = random_vec(rng, k * n);
  auto c = random_vec(rng, m * n);
  auto ref = c;
  // alpha = 0, beta = 1 must leave C untouched
  kern::zgemm(m, n, k, 0.0, a.data(), k, b.data(), n, 1.0, c.data(), n);
  CHECK(rel_diff(c, ref) == 0.0);
  // beta = 0 must overwrite even when C held garbage
  kern::zgemm(m, n, k, 1.0, a.data(), k, b.data(), n, 0.0, c.data(), n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int p = 0; p < k; ++p) acc += a[i * k + p] * b[p * n + j];
      CHECK(std::abs(c[i * n + j] - acc) < 1e-14);
    }
}
