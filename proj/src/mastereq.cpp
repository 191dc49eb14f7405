#include "vacmix/mastereq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vacmix {

namespace {

const cplx kI(0.0, 1.0);

struct DipolePair {
  int x, y;      // <x| d^delta |y>
  double value;
};

// nonzero dipole pairs per spherical slot
std::array<std::vector<DipolePair>, 3> collect_pairs(const DipoleTable& dip) {
  std::array<std::vector<DipolePair>, 3> out;
  for (const auto& e : dip.entries)
    out[DipoleTable::dslot(e.delta)].push_back({e.a, e.b, e.value});
  return out;
}

int slot_delta(int slot) { return slot == 0 ? +1 : (slot == 1 ? -1 : 0); }

}  // namespace

CMat GeneratorSet::total_hamiltonian() const {
  CMat h = h_shift.empty() ? CMat(dim(), dim()) : h_shift;
  for (int i = 0; i < dim(); ++i) h(i, i) += h_diag[i];
  return h;
}

BRTensor build_br_tensor(const Basis& basis, const DipoleTable& dip,
                         const SpectralModel& model, bool counter_rotating) {
  const auto pairs = collect_pairs(dip);
  BRTensor t;
  t.dim = basis.size();
  t.counter_rotating = counter_rotating;
  const auto& e = basis.states;
  const auto lam = [&](int delta, double w) {
    if (!counter_rotating && w < 0.0) return 0.0;
    return lambda_kernel(model, delta, w);
  };
  for (int slot = 0; slot < 3; ++slot) {
    const int delta = slot_delta(slot);
    for (const auto& ca : pairs[slot]) {    // (c, a)
      for (const auto& db : pairs[slot]) {  // (d, b)
        const int c = ca.x, a = ca.y, d = db.x, b = db.y;
        const double prod = ca.value * db.value;
        const double w_bd = e[b].energy - e[d].energy;
        const double w_ac = e[a].energy - e[c].energy;
        BRTensor::Tuple tp;
        tp.a = a; tp.b = b; tp.c = c; tp.d = d; tp.delta = delta;
        tp.lam_bd = prod * lam(delta, w_bd);
        tp.lam_ac = prod * lam(delta, w_ac);
        tp.gam_bd = prod * gamma_kernel(model, delta, w_bd);
        tp.gam_ac = prod * gamma_kernel(model, delta, w_ac);
        if (tp.lam_bd != 0.0 || tp.lam_ac != 0.0 || tp.gam_bd != 0.0 ||
            tp.gam_ac != 0.0)
          t.tuples.push_back(tp);
      }
    }
  }
  return t;
}

BRTensor partial_secularize(const BRTensor& t, const Basis& basis) {
  BRTensor out;
  out.dim = t.dim;
  out.counter_rotating = t.counter_rotating;
  out.partially_secularized = true;
  for (const auto& tp : t.tuples)
    if (basis.states[tp.a].n == basis.states[tp.b].n) out.tuples.push_back(tp);
  return out;
}

GeneratorSet geometric_mean_lindblad(const Basis& basis, const DipoleTable& dip,
                                     const SpectralModel& model,
                                     bool counter_rotating,
                                     const std::vector<int>& intermediate_levels) {
  const int nst = basis.size();
  const auto pairs = collect_pairs(dip);
  const auto& st = basis.states;
  const auto allowed = [&](int x) {
    if (intermediate_levels.empty()) return true;
    return std::find(intermediate_levels.begin(), intermediate_levels.end(),
                     st[x].n) != intermediate_levels.end();
  };

  GeneratorSet g;
  g.sec = SecMode::PartialGeometricMean;
  g.counter_rotating = counter_rotating;
  g.h_diag.resize(nst);
  for (int i = 0; i < nst; ++i) g.h_diag[i] = st[i].energy;
  g.h_shift = CMat(nst, nst);

  std::vector<int> levels;
  for (const auto& q : st)
    if (std::find(levels.begin(), levels.end(), q.n) == levels.end())
      levels.push_back(q.n);
  std::sort(levels.begin(), levels.end());

  for (int slot = 0; slot < 3; ++slot) {
    const int delta = slot_delta(slot);
    for (int n : levels) {
      CMat sig(nst, nst), shift(nst, nst);
      std::vector<double> row_sign(nst, 0.0);
      bool any_sig = false, any_shift = false;
      for (const auto& p : pairs[slot]) {
        const int x = p.x, b = p.y;
        if (st[b].n != n || !allowed(x)) continue;
        const double w = st[b].energy - st[x].energy;  // omega_bd
        const double gam = gamma_kernel(model, delta, w);
        if (gam > 0.0) {
          sig(x, b) = p.value * std::sqrt(gam);
          any_sig = true;
        }
        double lm = lambda_kernel(model, delta, w);
        if (!counter_rotating && w < 0.0) lm = 0.0;
        if (lm != 0.0) {
          const double s = lm > 0.0 ? 1.0 : -1.0;
          if (row_sign[x] == 0.0) {
            row_sign[x] = s;
          } else if (row_sign[x] != s) {
            std::ostringstream os;
            os << "geometric mean sign condition violated: lambda changes sign "
                  "between transitions from level "
               << n << " to intermediate " << st[x].label() << " (delta="
               << delta << ", offending tuple a=b in level " << n
               << ", c=d=" << st[x].label() << ")";
            throw std::runtime_error(os.str());
          }
          shift(x, b) = p.value * std::sqrt(std::abs(lm));
          any_shift = true;
        }
      }
      if (any_sig) {
        JumpOp j;
        j.op = sig;
        j.opdag_op = matmul(sig.adjoint(), sig);
        j.delta = delta;
        j.level = n;
        g.jumps.push_back(std::move(j));
      }
      if (any_shift) {
        // H_CP block: D^T diag(sign) D with the common sign factored out
        CMat signed_shift = shift;
        for (int x = 0; x < nst; ++x) {
          if (row_sign[x] == 0.0) continue;
          for (int b = 0; b < nst; ++b) signed_shift(x, b) *= row_sign[x];
        }
        CMat block = matmul(shift.adjoint(), signed_shift);
        g.h_shift += block;
        ShiftOp d;
        d.op = std::move(shift);
        d.row_sign = std::move(row_sign);
        d.delta = delta;
        d.level = n;
        g.shifts.push_back(std::move(d));
      }
    }
  }
  return g;
}

GeneratorSet full_secularize(const Basis& basis, const DipoleTable& dip,
                             const SpectralModel& model, bool counter_rotating) {
  const int nst = basis.size();
  const auto pairs = collect_pairs(dip);
  const auto& st = basis.states;
  const double ftol = 1e-12;  // Hartree, exact bound-state degeneracies only

  GeneratorSet g;
  g.sec = SecMode::Full;
  g.counter_rotating = counter_rotating;
  g.h_diag.resize(nst);
  for (int i = 0; i < nst; ++i) g.h_diag[i] = st[i].energy;
  g.h_shift = CMat(nst, nst);

  // secular shift: a,b degenerate, summed over intermediates c
  for (int slot = 0; slot < 3; ++slot) {
    const int delta = slot_delta(slot);
    for (const auto& ca : pairs[slot]) {
      for (const auto& cb : pairs[slot]) {
        if (ca.x != cb.x) continue;  // same intermediate c
        const int a = ca.y, b = cb.y, c = ca.x;
        if (std::abs(st[a].energy - st[b].energy) > ftol) continue;
        const double w = st[b].energy - st[c].energy;
        double lm = lambda_kernel(model, delta, w);
        if (!counter_rotating && w < 0.0) lm = 0.0;
        g.h_shift(a, b) += ca.value * cb.value * lm;
      }
    }
  }

  // decay: group pairs by transition frequency per spherical component
  for (int slot = 0; slot < 3; ++slot) {
    const int delta = slot_delta(slot);
    std::vector<std::pair<double, const DipolePair*>> freq;
    for (const auto& p : pairs[slot])
      freq.push_back({st[p.y].energy - st[p.x].energy, &p});
    std::sort(freq.begin(), freq.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    size_t i = 0;
    while (i < freq.size()) {
      size_t j = i + 1;
      while (j < freq.size() && freq[j].first - freq[j - 1].first <= ftol) ++j;
      const double omega = freq[i].first;
      const double gam = gamma_kernel(model, delta, omega);
      if (gam > 0.0) {
        CMat op(nst, nst);
        const double root = std::sqrt(gam);
        for (size_t k = i; k < j; ++k)
          op(freq[k].second->x, freq[k].second->y) += root * freq[k].second->value;
        JumpOp jop;
        jop.op = op;
        jop.opdag_op = matmul(op.adjoint(), op);
        jop.delta = delta;
        jop.omega = omega;
        g.jumps.push_back(std::move(jop));
      }
      i = j;
    }
  }
  return g;
}

CMat lindblad_rhs(const GeneratorSet& g, const CMat& rho, bool include_refilling) {
  const int n = g.dim();
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  const CMat h = g.total_hamiltonian();
  CMat out(n, n);
  matmul_into(h, rho, out, -kI, 0.0);
  matmul_into(rho, h, out, kI, 1.0);
  CMat tmp(n, n);
  for (const auto& j : g.jumps) {
    if (include_refilling) {
      matmul_into(j.op, rho, tmp);
      matmul_into(tmp, j.op.adjoint(), out, 1.0, 1.0);
    }
    matmul_into(j.opdag_op, rho, out, -0.5, 1.0);
    matmul_into(rho, j.opdag_op, out, -0.5, 1.0);
  }
  return out;
}

namespace {

// vec(A rho B) = (A kron B^T) vec(rho), row-major vec
void add_kron_sandwich(CMat& sup, const CMat& a, const CMat& b, cplx coeff) {
  const int n = a.rows();
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k) {
      const cplx av = coeff * a(x, k);
      if (av == cplx(0.0, 0.0)) continue;
      for (int l = 0; l < n; ++l)
        for (int y = 0; y < n; ++y) {
          const cplx bv = b(l, y);
          if (bv == cplx(0.0, 0.0)) continue;
          sup(x * n + y, k * n + l) += av * bv;
        }
    }
}

void add_left_mult(CMat& sup, const CMat& a, cplx coeff) {
  const int n = a.rows();
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k) {
      const cplx av = coeff * a(x, k);
      if (av == cplx(0.0, 0.0)) continue;
      for (int y = 0; y < n; ++y) sup(x * n + y, k * n + y) += av;
    }
}

void add_right_mult(CMat& sup, const CMat& b, cplx coeff) {
  const int n = b.rows();
  for (int l = 0; l < n; ++l)
    for (int y = 0; y < n; ++y) {
      const cplx bv = coeff * b(l, y);
      if (bv == cplx(0.0, 0.0)) continue;
      for (int x = 0; x < n; ++x) sup(x * n + y, x * n + l) += bv;
    }
}

}  // namespace

CMat lindblad_superop(const GeneratorSet& g, bool include_refilling) {
  const int n = g.dim();
  CMat sup(n * n, n * n);
  const CMat h = g.total_hamiltonian();
  add_left_mult(sup, h, -kI);
  add_right_mult(sup, h, kI);
  for (const auto& j : g.jumps) {
    if (include_refilling) add_kron_sandwich(sup, j.op, j.op.adjoint(), 1.0);
    add_left_mult(sup, j.opdag_op, -0.5);
    add_right_mult(sup, j.opdag_op, -0.5);
  }
  return sup;
}

CMat br_superop(const BRTensor& t, const Basis& basis) {
  const int n = t.dim;
  if (basis.size() != n) throw std::invalid_argument("br_superop: basis mismatch");
  CMat sup(n * n, n * n);
  // -i [H_at, rho]
  for (int a = 0; a < n; ++a)
    for (int y = 0; y < n; ++y) {
      sup(a * n + y, a * n + y) += -kI * basis.states[a].energy;
      sup(y * n + a, y * n + a) += kI * basis.states[a].energy;
    }
  for (const auto& tp : t.tuples) {
    // sandwich |d><b| rho |a><c|
    const cplx sand = kI * (tp.lam_bd - tp.lam_ac) + 0.5 * (tp.gam_bd + tp.gam_ac);
    sup(tp.d * n + tp.c, tp.b * n + tp.a) += sand;
    if (tp.c == tp.d) {
      // -i Lam(w_bd) |a><b| rho + i Lam(w_ac) rho |a><b|
      // -1/2 Gam(w_bd) |a><b| rho - 1/2 Gam(w_ac) rho |a><b|
      const cplx left = -kI * tp.lam_bd - 0.5 * tp.gam_bd;
      const cplx right = kI * tp.lam_ac - 0.5 * tp.gam_ac;
      for (int y = 0; y < n; ++y) {
        sup(tp.a * n + y, tp.b * n + y) += left;
        sup(y * n + tp.b, y * n + tp.a) += right;
      }
    }
  }
  return sup;
}

BROperator build_br_operator(const Basis& basis, const DipoleTable& dip,
                             const SpectralModel& model, bool counter_rotating,
                             bool partial) {
  const int nst = basis.size();
  const auto& st = basis.states;
  const auto pairs = collect_pairs(dip);
  BROperator br;
  br.n = nst;
  br.m_left = CMat(nst, nst);
  br.m_right = CMat(nst, nst);
  for (int i = 0; i < nst; ++i) {
    br.m_left(i, i) = -kI * st[i].energy;
    br.m_right(i, i) = kI * st[i].energy;
  }

  std::vector<int> levels;
  for (const auto& q : st)
    if (std::find(levels.begin(), levels.end(), q.n) == levels.end())
      levels.push_back(q.n);

  for (int slot = 0; slot < 3; ++slot) {
    const int delta = slot_delta(slot);
    if (pairs[slot].empty()) continue;
    CMat dmat(nst, nst), l1(nst, nst), g1(nst, nst);
    for (const auto& p : pairs[slot]) {
      const double w = st[p.y].energy - st[p.x].energy;
      dmat(p.x, p.y) = p.value;
      double lm = lambda_kernel(model, delta, w);
      if (!counter_rotating && w < 0.0) lm = 0.0;
      l1(p.x, p.y) = p.value * lm;
      g1(p.x, p.y) = p.value * gamma_kernel(model, delta, w);
    }
    // single-sided pieces M1 = d^T L1, M3 = d^T G1, masked to same-level
    // (a, b) under partial secularization
    CMat m1 = matmul(dmat.transpose(), l1);
    CMat m3 = matmul(dmat.transpose(), g1);
    if (partial) {
      for (int a = 0; a < nst; ++a)
        for (int b = 0; b < nst; ++b)
          if (st[a].n != st[b].n) {
            m1(a, b) = 0.0;
            m3(a, b) = 0.0;
          }
    }
    br.m_left += (-kI) * m1 + cplx(-0.5) * m3;
    br.m_right += kI * m1.transpose() + cplx(-0.5) * m3.transpose();

    // sandwich pieces; under partial secularization split per source level
    const auto push_sandwiches = [&](const CMat& l1p, const CMat& g1p,
                                     const CMat& dl, const CMat& dr) {
      // + i L1 rho d^T + 1/2 G1 rho d^T -> (iL1 + G1/2) rho d^T
      CMat left = kI * l1p + cplx(0.5) * g1p;
      br.sandwiches.emplace_back(std::move(left), dr.transpose());
      // - i d rho L1^T + 1/2 d rho G1^T -> d rho (-iL1 + G1/2)^T
      CMat right = (-kI) * l1p + cplx(0.5) * g1p;
      br.sandwiches.emplace_back(dl, right.transpose());
    };
    if (!partial) {
      push_sandwiches(l1, g1, dmat, dmat);
    } else {
      for (int n : levels) {
        // columns restricted to level n (the |b> / |a> index)
        CMat l1n(nst, nst), g1n(nst, nst), dn(nst, nst);
        bool any = false;
        for (const auto& p : pairs[slot]) {
          if (st[p.y].n != n) continue;
          l1n(p.x, p.y) = l1(p.x, p.y);
          g1n(p.x, p.y) = g1(p.x, p.y);
          dn(p.x, p.y) = p.value;
          any = true;
        }
        if (any) push_sandwiches(l1n, g1n, dn, dn);
      }
    }
  }
  return br;
}

CMat BROperator::rhs(const CMat& rho) const {
  CMat out(n, n);
  matmul_into(m_left, rho, out, 1.0, 0.0);
  matmul_into(rho, m_right, out, 1.0, 1.0);
  CMat tmp(n, n);
  for (const auto& s : sandwiches) {
    matmul_into(s.first, rho, tmp);
    matmul_into(tmp, s.second, out, 1.0, 1.0);
  }
  return out;
}

Kossakowski kossakowski_matrix(const GeneratorSet& g, int delta) {
  Kossakowski k;
  std::map<std::pair<int, int>, int> index;
  for (const auto& j : g.jumps) {
    if (j.delta != delta) continue;
    for (int x = 0; x < j.op.rows(); ++x)
      for (int b = 0; b < j.op.cols(); ++b)
        if (j.op(x, b) != cplx(0.0, 0.0)) {
          const auto key = std::make_pair(x, b);
          if (!index.count(key)) {
            index[key] = static_cast<int>(k.pairs.size());
            k.pairs.push_back(key);
          }
        }
  }
  const int np = static_cast<int>(k.pairs.size());
  k.matrix.assign(np, std::vector<double>(np, 0.0));
  for (const auto& j : g.jumps) {
    if (j.delta != delta) continue;
    std::vector<double> u(np, 0.0);
    for (int p = 0; p < np; ++p)
      u[p] = j.op(k.pairs[p].first, k.pairs[p].second).real();
    for (int p = 0; p < np; ++p) {
      if (u[p] == 0.0) continue;
      for (int q = 0; q < np; ++q) k.matrix[p][q] += u[p] * u[q];
    }
  }
  return k;
}

}  // namespace vacmix
