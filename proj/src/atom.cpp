#include "vacmix/atom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace vacmix {

namespace {

const char* kLLetters = "spdfghiklmnoqrtuvwxyz";

long double factorial_ld(int n) {
  static std::vector<long double> table = [] {
    std::vector<long double> t(171);
    t[0] = 1.0L;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 170) throw std::invalid_argument("factorial out of range");
  return table[n];
}

}  // namespace

std::string QuantumState::label() const {
  std::string s = std::to_string(n);
  s += (l < static_cast<int>(sizeof(kLLetters))) ? kLLetters[l] : '?';
  s += std::to_string(twice_j) + "/2";
  s += ",mj=";
  if (twice_mj >= 0) s += "+";
  s += std::to_string(twice_mj) + "/2";
  return s;
}

int Basis::find(int n, int l, int twice_j, int twice_mj) const {
  for (int i = 0; i < size(); ++i) {
    const QuantumState& q = states[i];
    if (q.n == n && q.l == l && q.twice_j == twice_j && q.twice_mj == twice_mj)
      return i;
  }
  return -1;
}

std::vector<int> Basis::level_indices(int n) const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (states[i].n == n) idx.push_back(i);
  return idx;
}

double fine_structure_energy(int n, int twice_j, double alpha) {
  if (n < 1) throw std::invalid_argument("fine_structure_energy: n must be >= 1");
  // valid j = l +- 1/2 for some 0 <= l < n: twice_j odd, 1 <= twice_j <= 2n-1
  if (twice_j < 1 || twice_j % 2 == 0 || twice_j > 2 * n - 1)
    throw std::invalid_argument("fine_structure_energy: invalid (n, j)");
  const double nn = n;
  const double jph = 0.5 * (twice_j + 1);  // j + 1/2
  return -1.0 / (2.0 * nn * nn) -
         (alpha * alpha / (2.0 * nn * nn * nn)) * (1.0 / jph - 3.0 / (4.0 * nn));
}

Basis enumerate_basis(int n_max, double alpha) {
  if (n_max < 1) throw std::invalid_argument("enumerate_basis: n_max must be >= 1");
  Basis b;
  b.n_max = n_max;
  b.alpha = alpha;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l)
      for (int tj : {2 * l - 1, 2 * l + 1}) {
        if (tj < 1) continue;
        const double e = fine_structure_energy(n, tj, alpha);
        for (int tmj = -tj; tmj <= tj; tmj += 2)
          b.states.push_back({n, l, tj, tmj, e});
      }
  return b;
}

// ---------------------------------------------------------------------------
// Radial matrix elements.

double hydrogen_radial(int n, int l, double r) {
  if (n < 1 || l < 0 || l >= n) throw std::invalid_argument("hydrogen_radial: bad (n, l)");
  const double x = 2.0 * r / n;
  const int k = n - l - 1, a = 2 * l + 1;
  // generalized Laguerre L^a_k(x) by recurrence
  double lm1 = 0.0, lag = 1.0;
  for (int i = 0; i < k; ++i) {
    const double lnext = ((2 * i + 1 + a - x) * lag - (i + a) * lm1) / (i + 1);
    lm1 = lag;
    lag = lnext;
  }
  const double norm =
      2.0 / (static_cast<double>(n) * n) *
      std::sqrt(static_cast<double>(factorial_ld(n - l - 1) / factorial_ld(n + l)));
  return norm * std::pow(x, l) * std::exp(-r / n) * lag;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// composite seed panels keep narrow integrands from being missed by the
// first few probe points
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  const int panels = 128;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = lo + h;
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol / panels, 40);
  }
  return total;
}

void check_dipole_pair(int n, int l, int np, int lp) {
  if (n < 1 || np < 1 || l < 0 || lp < 0 || l >= n || lp >= np)
    throw std::invalid_argument("radial_integral: invalid hydrogen state");
  if (std::abs(l - lp) != 1)
    throw std::invalid_argument("radial_integral: requires |l - l'| = 1");
}

// Terminating 2F1(a, b; c; x) with a a non-positive integer, long double.
long double hyp2f1_poly(int a, int b, int c, long double x) {
  long double term = 1.0L, sum = 1.0L;
  int k = 0;
  while (a + k != 0 && b + k != 0) {
    term *= static_cast<long double>(a + k) * (b + k) /
            (static_cast<long double>(c + k) * (k + 1)) * x;
    sum += term;
    ++k;
    if (k > 400) break;
  }
  return sum;
}

}  // namespace

double radial_integral_quadrature(int n, int l, int np, int lp, double rel_tol) {
  check_dipole_pair(n, l, np, lp);
  const double rmax = 20.0 * (n + np) + 40.0;
  const auto f = [&](double r) {
    return hydrogen_radial(n, l, r) * hydrogen_radial(np, lp, r) * r * r * r;
  };
  // scale the absolute tolerance off a first rough pass
  const double rough = std::abs(integrate_adaptive(f, 0.0, rmax, 1e-9));
  const double tol = std::max(rough, 1e-3) * rel_tol;
  return integrate_adaptive(f, 0.0, rmax, tol);
}

double radial_integral(int n, int l, int np, int lp) {
  check_dipole_pair(n, l, np, lp);
  if (lp == l + 1) return radial_integral(np, lp, n, l);
  // now lp == l - 1, l >= 1
  if (n == np) {
    // same Bohr level: closed form, sign fixed by the positive-at-origin
    // radial convention (matches the quadrature oracle)
    return -1.5 * n * std::sqrt(static_cast<double>(n) * n - static_cast<double>(l) * l);
  }
  const int nr = n - l - 1, npr = np - l;
  const long double nn = n, nnp = np;
  const long double x = -4.0L * nn * nnp / ((nn - nnp) * (nn - nnp));
  const long double f1 = hyp2f1_poly(-nr, -npr, 2 * l, x);
  const long double f2 = hyp2f1_poly(-nr - 2, -npr, 2 * l, x);
  const long double ratio = (nn - nnp) / (nn + nnp);
  const long double bracket = f1 - ratio * ratio * f2;
  long double pref = ((np - l) % 2 == 0 ? 1.0L : -1.0L) /
                     (4.0L * factorial_ld(2 * l - 1));
  pref *= std::sqrt(factorial_ld(n + l) * factorial_ld(np + l - 1) /
                    (factorial_ld(n - l - 1) * factorial_ld(np - l)));
  pref *= std::pow(4.0L * nn * nnp, l + 1);
  pref *= std::pow(nn - nnp, n + np - 2 * l - 2);
  pref /= std::pow(nn + nnp, n + np);
  return static_cast<double>(pref * bracket);
}

// ---------------------------------------------------------------------------
// Angular algebra.

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  const auto half = [](int t) { return t / 2; };
  // all factorial arguments are integers for physical inputs
  const int a1 = half(tj1 + tj2 - tJ), a2 = half(tj1 - tj2 + tJ),
            a3 = half(-tj1 + tj2 + tJ), a4 = half(tj1 + tj2 + tJ) + 1;
  const int b1 = half(tj1 + tm1), b2 = half(tj1 - tm1), b3 = half(tj2 + tm2),
            b4 = half(tj2 - tm2), b5 = half(tJ + tM), b6 = half(tJ - tM);
  if (a1 < 0 || a2 < 0 || a3 < 0 || b1 < 0 || b2 < 0 || b3 < 0 || b4 < 0 ||
      b5 < 0 || b6 < 0)
    return 0.0;
  const long double pre =
      std::sqrt((tJ + 1.0L) * factorial_ld(a1) * factorial_ld(a2) *
                factorial_ld(a3) / factorial_ld(a4) * factorial_ld(b1) *
                factorial_ld(b2) * factorial_ld(b3) * factorial_ld(b4) *
                factorial_ld(b5) * factorial_ld(b6));
  const int k1 = half(tj1 + tj2 - tJ);
  const int k2 = half(tj1 - tm1), k3 = half(tj2 + tm2);
  const int k4 = half(tJ - tj2 + tm1), k5 = half(tJ - tj1 - tm2);
  long double sum = 0.0L;
  const int kmin = std::max(0, std::max(-k4, -k5));
  const int kmax = std::min(k1, std::min(k2, k3));
  for (int k = kmin; k <= kmax; ++k) {
    const long double den = factorial_ld(k) * factorial_ld(k1 - k) *
                            factorial_ld(k2 - k) * factorial_ld(k3 - k) *
                            factorial_ld(k4 + k) * factorial_ld(k5 + k);
    sum += (k % 2 == 0 ? 1.0L : -1.0L) / den;
  }
  return static_cast<double>(pre * sum);
}

double c1_matrix_element(int lp, int mp, int l, int m, int q) {
  if (mp != m + q) return 0.0;
  if (std::abs(lp - l) != 1) return 0.0;  // C^1 parity selection
  const double cg_m = clebsch_gordan(2 * l, 2 * m, 2, 2 * q, 2 * lp, 2 * mp);
  const double cg_0 = clebsch_gordan(2 * l, 0, 2, 0, 2 * lp, 0);
  return cg_m * cg_0 * std::sqrt((2.0 * l + 1.0) / (2.0 * lp + 1.0));
}

// ---------------------------------------------------------------------------

int DipoleTable::dslot(int delta) {
  switch (delta) {
    case +1: return 0;
    case -1: return 1;
    case 0: return 2;
  }
  throw std::invalid_argument("DipoleTable: delta must be +1, -1 or 0");
}

DipoleTable build_dipole_table(const Basis& basis) {
  if (basis.size() == 0) throw std::invalid_argument("build_dipole_table: empty basis");
  const int nst = basis.size();
  DipoleTable t;
  t.dim = nst;
  for (auto& c : t.comp) c.assign(static_cast<size_t>(nst) * nst, 0.0);

  std::map<std::array<int, 4>, double> radial_cache;
  const auto radial = [&](int n, int l, int np, int lp) {
    const std::array<int, 4> key{n, l, np, lp};
    auto it = radial_cache.find(key);
    if (it != radial_cache.end()) return it->second;
    const double v = radial_integral(n, l, np, lp);
    radial_cache.emplace(key, v);
    return v;
  };

  for (int a = 0; a < nst; ++a) {
    const QuantumState& sa = basis.states[a];
    for (int b = 0; b < nst; ++b) {
      const QuantumState& sb = basis.states[b];
      if (std::abs(sa.l - sb.l) != 1) continue;
      const int tdelta = sa.twice_mj - sb.twice_mj;
      if (tdelta != 2 && tdelta != -2 && tdelta != 0) continue;
      const int delta = tdelta / 2;
      // recouple (l, s=1/2) -> (j, m_j) and apply the spherical component
      double ang = 0.0;
      for (int tms : {-1, +1}) {
        const int tmla = sa.twice_mj - tms, tmlb = sb.twice_mj - tms;
        if (std::abs(tmla) > 2 * sa.l || std::abs(tmlb) > 2 * sb.l) continue;
        const double ca = clebsch_gordan(2 * sa.l, tmla, 1, tms, sa.twice_j,
                                         sa.twice_mj);
        const double cb = clebsch_gordan(2 * sb.l, tmlb, 1, tms, sb.twice_j,
                                         sb.twice_mj);
        if (ca == 0.0 || cb == 0.0) continue;
        ang += ca * cb * c1_matrix_element(sa.l, tmla / 2, sb.l, tmlb / 2, delta);
      }
      if (ang == 0.0) continue;
      const double val = ang * radial(sa.n, sa.l, sb.n, sb.l);
      if (val == 0.0) continue;
      t.comp[DipoleTable::dslot(delta)][static_cast<size_t>(a) * nst + b] = val;
      t.entries.push_back({a, b, delta, val});
    }
  }
  return t;
}

}  // namespace vacmix
