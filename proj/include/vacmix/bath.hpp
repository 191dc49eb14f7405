#ifndef VACMIX_BATH_HPP
#define VACMIX_BATH_HPP

#include <string>
#include <vector>

namespace vacmix {

// Per-polarization spectral density of the electromagnetic environment,
// diagonal and cylindrically symmetric (J_xx = J_yy, J_zz). All stored
// quantities are in internal units: energies in Hartree, J and the kernels
// gamma = 2*pi*J, lambda = PV integral of J in Hartree/(e*a0)^2.
enum class SpectralVariant {
  LorentzianIsotropic,
  LorentzianAxial,    // J_zz Lorentzian, J_xx = J_yy = 0
  TabulatedDiagonal,
  FlatTest,           // constant gamma, lambda = 0 (Markovian test model)
};

enum class OutOfGrid { Zero, Error };

struct SpectralModel {
  SpectralVariant variant = SpectralVariant::FlatTest;

  // Lorentzian parameters (internal units)
  double g = 0.0, kappa = 0.0, omega_m = 0.0;

  // tabulated data on a strictly increasing positive grid (internal units)
  std::vector<double> grid, jxx, jzz;

  // J == 0 for omega <= 0 is guaranteed. The Lorentzian carries an unphysical
  // negative-frequency tail and is only allowed with physical == false.
  bool physical = false;
  OutOfGrid out_of_grid = OutOfGrid::Zero;
  double flat_j = 0.0;

  // constructors take I/O units (eV, eV/(e*a0)^2)
  static SpectralModel lorentzian_isotropic(double g_ev, double kappa_ev,
                                            double omega_m_ev);
  static SpectralModel lorentzian_axial(double g_ev, double kappa_ev,
                                        double omega_m_ev);
  static SpectralModel tabulated(const std::vector<double>& omega_ev,
                                 const std::vector<double>& jxx_ev,
                                 const std::vector<double>& jzz_ev);
  static SpectralModel flat(double j0_ev);

  std::string describe() const;
};

// J_dd(omega); delta = +-1 selects xx, delta = 0 selects zz.
double spectral_j(const SpectralModel& m, int delta, double omega);

// gamma_dd(omega) = 2*pi*J_dd(omega); identically zero for omega <= 0 when the
// model is physical.
double gamma_kernel(const SpectralModel& m, int delta, double omega);

// lambda_dd(omega) = PV int J(w')/(omega - w') dw'. Closed form for the
// Lorentzian; exact segment-wise principal value of the piecewise-linear
// interpolant for tabulated models (support-restricted; log arguments are
// floored at 1e-300 so edge evaluations stay finite).
double lambda_kernel(const SpectralModel& m, int delta, double omega);

// Spectral density from Im G^scatt (SI, 1/m) on a positive eV grid into a
// physical tabulated spectral model. Throws on negative Im G (passivity) and
// non-monotone grids.
SpectralModel spectral_from_green(const std::vector<double>& omega_ev,
                                  const std::vector<double>& imgxx,
                                  const std::vector<double>& imgzz);

// Text format: '#' comments; "#format: imgreen" switches the row payload from
// "omega_eV Jxx Jzz" to "omega_eV ImGxx ImGzz" (SI 1/m).
SpectralModel load_spectral_file(const std::string& path);

}  // namespace vacmix

#endif
