#include "vacmix/bath.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vacmix/constants.hpp"

namespace vacmix {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

void validate_grid(const std::vector<double>& w) {
  if (w.empty()) throw std::invalid_argument("spectral grid is empty");
  if (w.front() <= 0.0)
    throw std::invalid_argument("spectral grid must be strictly positive");
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] <= w[i - 1])
      throw std::invalid_argument("spectral grid must be strictly increasing");
}

double interp_tab(const SpectralModel& m, const std::vector<double>& j,
                  double w) {
  const auto& x = m.grid;
  if (w < x.front() || w > x.back()) {
    if (m.out_of_grid == OutOfGrid::Error)
      throw std::out_of_range("frequency outside tabulated spectral grid");
    return 0.0;
  }
  const auto it = std::upper_bound(x.begin(), x.end(), w);
  const size_t hi = std::min(x.size() - 1, static_cast<size_t>(it - x.begin()));
  const size_t lo = hi - (hi > 0 ? 1 : 0);
  if (hi == lo) return j[lo];
  const double t = (w - x[lo]) / (x[hi] - x[lo]);
  return j[lo] + t * (j[hi] - j[lo]);
}

// Exact principal value of the piecewise-linear interpolant against the
// Cauchy kernel, written in nodal form so the log singularities of adjacent
// segments cancel.
double pv_tabulated(const std::vector<double>& x, const std::vector<double>& j,
                    double w) {
  const size_t nn = x.size();
  if (nn == 1) return 0.0;
  const auto safe_log = [](double v) { return std::log(std::max(v, 1e-300)); };
  double sum = 0.0;
  double slope_prev = 0.0;
  for (size_t i = 0; i + 1 < nn; ++i) {
    const double dx = x[i + 1] - x[i];
    const double s = (j[i + 1] - j[i]) / dx;
    sum -= s * dx;
    const double cj = (i == 0) ? j[0] + s * (w - x[0])
                               : (s - slope_prev) * (w - x[i]);
    if (cj != 0.0) sum += cj * safe_log(std::abs(w - x[i]));
    slope_prev = s;
  }
  const double cend = -(j[nn - 2] + slope_prev * (w - x[nn - 2]));
  if (cend != 0.0) sum += cend * safe_log(std::abs(w - x[nn - 1]));
  return sum;
}

}  // namespace

SpectralModel SpectralModel::lorentzian_isotropic(double g_ev, double kappa_ev,
                                                  double omega_m_ev) {
  SpectralModel m;
  m.variant = SpectralVariant::LorentzianIsotropic;
  m.g = ev_to_hartree(g_ev);
  m.kappa = ev_to_hartree(kappa_ev);
  m.omega_m = ev_to_hartree(omega_m_ev);
  m.physical = false;
  return m;
}

SpectralModel SpectralModel::lorentzian_axial(double g_ev, double kappa_ev,
                                              double omega_m_ev) {
  SpectralModel m = lorentzian_isotropic(g_ev, kappa_ev, omega_m_ev);
  m.variant = SpectralVariant::LorentzianAxial;
  return m;
}

SpectralModel SpectralModel::tabulated(const std::vector<double>& omega_ev,
                                       const std::vector<double>& jxx_ev,
                                       const std::vector<double>& jzz_ev) {
  if (omega_ev.size() != jxx_ev.size() || omega_ev.size() != jzz_ev.size())
    throw std::invalid_argument("tabulated spectral model: column size mismatch");
  validate_grid(omega_ev);
  SpectralModel m;
  m.variant = SpectralVariant::TabulatedDiagonal;
  m.physical = true;
  m.grid.reserve(omega_ev.size());
  m.jxx.reserve(omega_ev.size());
  m.jzz.reserve(omega_ev.size());
  for (size_t i = 0; i < omega_ev.size(); ++i) {
    if (jxx_ev[i] < 0.0 || jzz_ev[i] < 0.0)
      throw std::invalid_argument("tabulated spectral model: J must be >= 0");
    m.grid.push_back(ev_to_hartree(omega_ev[i]));
    m.jxx.push_back(jdensity_ev_to_internal(jxx_ev[i]));
    m.jzz.push_back(jdensity_ev_to_internal(jzz_ev[i]));
  }
  return m;
}

SpectralModel SpectralModel::flat(double j0_ev) {
  SpectralModel m;
  m.variant = SpectralVariant::FlatTest;
  m.flat_j = jdensity_ev_to_internal(j0_ev);
  m.physical = false;
  return m;
}

std::string SpectralModel::describe() const {
  std::ostringstream os;
  switch (variant) {
    case SpectralVariant::LorentzianIsotropic:
    case SpectralVariant::LorentzianAxial:
      os << (variant == SpectralVariant::LorentzianAxial ? "lorentzian_axial"
                                                         : "lorentzian_isotropic")
         << " g_ev=" << hartree_to_ev(g) << " kappa_ev=" << hartree_to_ev(kappa)
         << " omega_ev=" << hartree_to_ev(omega_m);
      break;
    case SpectralVariant::TabulatedDiagonal:
      os << "tabulated n=" << grid.size();
      if (!grid.empty())
        os << " range_ev=[" << hartree_to_ev(grid.front()) << ","
           << hartree_to_ev(grid.back()) << "]";
      break;
    case SpectralVariant::FlatTest:
      os << "flat j0_ev=" << jdensity_internal_to_ev(flat_j);
      break;
  }
  return os.str();
}

double spectral_j(const SpectralModel& m, int delta, double omega) {
  const bool axial_zero =
      (m.variant == SpectralVariant::LorentzianAxial && delta != 0);
  switch (m.variant) {
    case SpectralVariant::LorentzianIsotropic:
    case SpectralVariant::LorentzianAxial: {
      if (axial_zero) return 0.0;
      const double d = omega - m.omega_m;
      return m.g * m.g / 3.14159265358979323846 * (0.5 * m.kappa) /
             (d * d + 0.25 * m.kappa * m.kappa);
    }
    case SpectralVariant::TabulatedDiagonal:
      if (m.physical && omega <= 0.0) return 0.0;
      return interp_tab(m, delta == 0 ? m.jzz : m.jxx, omega);
    case SpectralVariant::FlatTest:
      return m.flat_j;
  }
  return 0.0;
}

double gamma_kernel(const SpectralModel& m, int delta, double omega) {
  if (m.physical && omega <= 0.0) return 0.0;
  return kTwoPi * spectral_j(m, delta, omega);
}

double lambda_kernel(const SpectralModel& m, int delta, double omega) {
  switch (m.variant) {
    case SpectralVariant::LorentzianIsotropic:
    case SpectralVariant::LorentzianAxial: {
      if (m.variant == SpectralVariant::LorentzianAxial && delta != 0)
        return 0.0;
      const double d = omega - m.omega_m;
      return m.g * m.g * d / (d * d + 0.25 * m.kappa * m.kappa);
    }
    case SpectralVariant::TabulatedDiagonal:
      return pv_tabulated(m.grid, delta == 0 ? m.jzz : m.jxx, omega);
    case SpectralVariant::FlatTest:
      return 0.0;
  }
  return 0.0;
}

SpectralModel spectral_from_green(const std::vector<double>& omega_ev,
                                  const std::vector<double>& imgxx,
                                  const std::vector<double>& imgzz) {
  if (omega_ev.size() != imgxx.size() || omega_ev.size() != imgzz.size())
    throw std::invalid_argument("spectral_from_green: column size mismatch");
  validate_grid(omega_ev);
  std::vector<double> jxx(omega_ev.size()), jzz(omega_ev.size());
  for (size_t i = 0; i < omega_ev.size(); ++i) {
    if (imgxx[i] < 0.0 || imgzz[i] < 0.0)
      throw std::invalid_argument(
          "spectral_from_green: negative Im G violates passivity");
    const double pref = kImGreenPrefactor * omega_ev[i] * omega_ev[i];
    jxx[i] = pref * imgxx[i];
    jzz[i] = pref * imgzz[i];
  }
  return SpectralModel::tabulated(omega_ev, jxx, jzz);
}

SpectralModel load_spectral_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectral file: " + path);
  bool imgreen = false;
  std::vector<double> w, c1, c2;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string body = line.substr(first + 1);
      body.erase(std::remove_if(body.begin(), body.end(),
                                [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
                 body.end());
      if (body == "format:imgreen") imgreen = true;
      continue;
    }
    std::istringstream row(line);
    double a, b, c;
    if (!(row >> a >> b >> c))
      throw std::runtime_error("malformed row in spectral file: " + path);
    w.push_back(a);
    c1.push_back(b);
    c2.push_back(c);
  }
  if (w.empty())
    throw std::runtime_error("spectral file has no data rows: " + path);
  return imgreen ? spectral_from_green(w, c1, c2)
                 : SpectralModel::tabulated(w, c1, c2);
}

}  // namespace vacmix
