#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vacmix/atom.hpp"
#include "vacmix/bath.hpp"
#include "vacmix/constants.hpp"

using namespace vacmix;

namespace {

SpectralModel benchmark_lorentzian() {
  return SpectralModel::lorentzian_axial(4.024922359499622e-4, 2e-3, 1.95);
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("lorentzian kernels") {
  const SpectralModel m = benchmark_lorentzian();
  const double g = m.g, kappa = m.kappa, wm = m.omega_m;
  // gamma at the peak: 4 g^2 / kappa
  CHECK(gamma_kernel(m, 0, wm) ==
        doctest::Approx(4.0 * g * g / kappa).epsilon(1e-12));
  // axial: xx components vanish
  CHECK(gamma_kernel(m, +1, wm) == 0.0);
  CHECK(lambda_kernel(m, -1, wm) == 0.0);
  // tails
  CHECK(std::abs(gamma_kernel(m, 0, wm + 1e4 * kappa)) < 1e-8 * g * g / kappa);
  CHECK(std::abs(gamma_kernel(m, 0, wm - 1e4 * kappa)) < 1e-8 * g * g / kappa);
  // lambda odd around the center
  CHECK(lambda_kernel(m, 0, wm) == 0.0);
  CHECK(lambda_kernel(m, 0, wm + 0.5 * kappa) ==
        doctest::Approx(g * g / kappa).epsilon(1e-12));
  CHECK(lambda_kernel(m, 0, wm - 0.5 * kappa) ==
        doctest::Approx(-g * g / kappa).epsilon(1e-12));
  // the unphysical tail is present below zero (needed for the oracle match)
  CHECK(gamma_kernel(m, 0, -0.1) > 0.0);
}

TEST_CASE("tabulated PV against the Lorentzian closed form") {
  const SpectralModel lor = benchmark_lorentzian();
  const double wm_ev = 1.95, kap_ev = 2e-3;
  const auto sample = [&](double spacing_ev) {
    std::vector<double> w, jx, jz;
    for (double x = wm_ev - 20.0 * kap_ev; x <= wm_ev + 20.0 * kap_ev + 1e-12;
         x += spacing_ev) {
      w.push_back(x);
      jx.push_back(0.0);
      jz.push_back(jdensity_internal_to_ev(spectral_j(lor, 0, ev_to_hartree(x))));
    }
    return SpectralModel::tabulated(w, jx, jz);
  };
  const double scale = lor.g * lor.g / lor.kappa;
  const auto worst_near_peak = [&](const SpectralModel& tab) {
    double worst = 0.0;
    for (double dk = -3.0; dk <= 3.0; dk += 0.13) {
      const double x = ev_to_hartree(wm_ev + dk * kap_ev);
      worst = std::max(worst,
                       std::abs(lambda_kernel(tab, 0, x) - lambda_kernel(lor, 0, x)));
    }
    return worst / scale;
  };
  // the linear interpolant itself limits the accuracy: O(h^2) in the spacing.
  // kappa/50 lands at ~3.7e-4; kappa/200 comfortably meets 1e-4.
  const SpectralModel tab50 = sample(kap_ev / 50.0);
  CHECK(tab50.physical);
  const double w50 = worst_near_peak(tab50);
  CHECK(w50 < 5e-4);
  const SpectralModel tab200 = sample(kap_ev / 200.0);
  const double w200 = worst_near_peak(tab200);
  CHECK(w200 < 1e-4);
  CHECK(w200 < 0.12 * w50);  // quadratic convergence in the spacing

  // physical flag suppresses gamma at negative frequencies
  CHECK(gamma_kernel(tab50, 0, ev_to_hartree(-0.1)) == 0.0);
  // lambda decays away from the support and stays finite and smooth below 0
  CHECK(std::abs(lambda_kernel(tab50, 0, ev_to_hartree(60.0))) < 2e-2 * scale);
  const double l1 = lambda_kernel(tab50, 0, ev_to_hartree(-1.0));
  const double l2 = lambda_kernel(tab50, 0, ev_to_hartree(-1.0 + 1e-4));
  CHECK(std::isfinite(l1));
  CHECK(std::abs(l1 - l2) < 1e-2 * std::abs(l1) + 1e-18);
  CHECK(l1 < 0.0);  // support is above: shift pulls down
}

TEST_CASE("tabulated grid validation and out-of-grid modes") {
  CHECK_THROWS_AS(SpectralModel::tabulated({1.0, 0.5}, {0.0, 0.0}, {0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpectralModel::tabulated({-1.0, 0.5}, {0.0, 0.0}, {0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpectralModel::tabulated({0.5, 1.0}, {0.0, -1.0}, {0.0, 0.0}),
                  std::invalid_argument);
  SpectralModel tab = SpectralModel::tabulated({1.0, 2.0}, {1e-6, 1e-6}, {1e-6, 1e-6});
  CHECK(gamma_kernel(tab, 0, ev_to_hartree(3.0)) == 0.0);  // zero extension
  tab.out_of_grid = OutOfGrid::Error;
  CHECK_THROWS_AS(gamma_kernel(tab, 0, ev_to_hartree(3.0)), std::out_of_range);
}

TEST_CASE("green tensor conversion reproduces the free-space decay rate") {
  // Im G_free = omega/(6 pi c); feeding it through the conversion must give
  // the known 2p lifetime within the interpolation error
  std::vector<double> w_ev, img;
  for (double x = 9.0; x <= 11.5; x += 0.01) {
    w_ev.push_back(x);
    const double w_si = x / kHbarEVs;
    img.push_back(w_si / (6.0 * 3.14159265358979 * kSpeedOfLight));
  }
  const SpectralModel m = spectral_from_green(w_ev, img, img);
  const double w21 =
      fine_structure_energy(2, 3) - fine_structure_energy(1, 1);
  // total dipole strength out of 2p: R(1s,2p)^2 / 3
  const double r = radial_integral(1, 0, 2, 1);
  const double rate_au = gamma_kernel(m, 0, w21) * r * r / 3.0;
  const double rate_si = rate_au * kHartreeEV / kHbarEVs;
  CHECK(rate_si == doctest::Approx(6.2649e8).epsilon(2e-3));

  // zero input -> zero J; doubling Im G doubles J
  std::vector<double> zero(w_ev.size(), 0.0);
  const SpectralModel mz = spectral_from_green(w_ev, zero, zero);
  CHECK(gamma_kernel(mz, 0, w21) == 0.0);
  CHECK(lambda_kernel(mz, 0, w21) == 0.0);
  std::vector<double> img2 = img;
  for (auto& v : img2) v *= 2.0;
  const SpectralModel m2 = spectral_from_green(w_ev, img2, img2);
  CHECK(spectral_j(m2, 0, w21) ==
        doctest::Approx(2.0 * spectral_j(m, 0, w21)).epsilon(1e-12));

  // passivity and monotonicity errors
  std::vector<double> neg = img;
  neg[3] = -1.0;
  CHECK_THROWS_AS(spectral_from_green(w_ev, neg, img), std::invalid_argument);
  std::vector<double> bad_w = w_ev;
  std::swap(bad_w[1], bad_w[2]);
  CHECK_THROWS_AS(spectral_from_green(bad_w, img, img), std::invalid_argument);
}

TEST_CASE("single-pole Im G reproduces a near-Lorentzian shift") {
  // Im G with a single Lorentzian pole gives a J whose PV shift matches the
  // closed form built from the same J within interpolation error
  const double wm = 1.95, kap = 2e-3;
  std::vector<double> w_ev, img, zero;
  for (double x = wm - 30 * kap; x <= wm + 30 * kap; x += kap / 40.0) {
    w_ev.push_back(x);
    const double d = x - wm;
    img.push_back(1e-8 * (0.5 * kap) / (d * d + 0.25 * kap * kap));
    zero.push_back(0.0);
  }
  const SpectralModel m = spectral_from_green(w_ev, zero, img);
  // equivalent analytic Lorentzian: J_peak = pref * wm^2 * ImG_peak
  const double jpeak = spectral_j(m, 0, ev_to_hartree(wm));
  const double g2 = jpeak * 3.14159265358979 * ev_to_hartree(0.5 * kap);
  SpectralModel lor;
  lor.variant = SpectralVariant::LorentzianAxial;
  lor.g = std::sqrt(g2);
  lor.kappa = ev_to_hartree(kap);
  lor.omega_m = ev_to_hartree(wm);
  const double probe = ev_to_hartree(wm + 1.7 * kap);
  CHECK(lambda_kernel(m, 0, probe) ==
        doctest::Approx(lambda_kernel(lor, 0, probe)).epsilon(2e-2));
}

TEST_CASE("spectral file loading") {
  const std::string path = temp_path("vacmix_spec_test.dat");
  {
    std::ofstream out(path);
    out << "# test spectral file\n";
    out << "1.0  1e-7  2e-7\n";
    out << "2.0  2e-7  3e-7\n";
  }
  const SpectralModel m = load_spectral_file(path);
  CHECK(m.variant == SpectralVariant::TabulatedDiagonal);
  CHECK(spectral_j(m, +1, ev_to_hartree(1.0)) ==
        doctest::Approx(jdensity_ev_to_internal(1e-7)).epsilon(1e-12));
  CHECK(spectral_j(m, 0, ev_to_hartree(1.5)) ==
        doctest::Approx(jdensity_ev_to_internal(2.5e-7)).epsilon(1e-12));

  const std::string gpath = temp_path("vacmix_green_test.dat");
  {
    std::ofstream out(gpath);
    out << "#format: imgreen\n";
    out << "10.0  1000.0  2000.0\n";
    out << "11.0  1000.0  2000.0\n";
  }
  const SpectralModel gm = load_spectral_file(gpath);
  // hand conversion of the first row
  const double expected_jxx_ev = kImGreenPrefactor * 10.0 * 10.0 * 1000.0;
  CHECK(spectral_j(gm, +1, ev_to_hartree(10.0)) ==
        doctest::Approx(jdensity_ev_to_internal(expected_jxx_ev)).epsilon(1e-12));

  CHECK_THROWS(load_spectral_file(temp_path("nonexistent_vacmix.dat")));
  const std::string empty = temp_path("vacmix_empty.dat");
  {
    std::ofstream out(empty);
    out << "# nothing but comments\n";
  }
  CHECK_THROWS(load_spectral_file(empty));
  std::remove(path.c_str());
  std::remove(gpath.c_str());
  std::remove(empty.c_str());
}
