#include "epibvp/precise.hpp"

#include <algorithm>
#include <cmath>

#include "epibvp/even_iterate.hpp"

namespace epibvp {

PreciseIterate::PreciseIterate(double a, double lambda, int n_iter, DefectModel model)
    : a_(a), lambda_(lambda), n_(n_iter) {
  b_ = even::iterate<Quad>(a, lambda, n_iter, model);
  defect_ = even::defect(b_, lambda, model);
  phi_.assign(b_.size(), Quad(0));
  for (std::size_t j = 1; j < b_.size(); ++j) {
    phi_[j] = b_[j] / Quad(2 * j);
    phi_shift_ += phi_[j];
  }
}

double PreciseIterate::w(double r) const { return to_double(even::horner(b_, Quad(r) * Quad(r))); }

double PreciseIterate::w_prime(double r) const {
  // w' = 2 r sum j b_j u^(j-1)
  Quad acc = 0;
  const Quad u = Quad(r) * Quad(r);
  for (std::size_t j = b_.size(); j-- > 1;) acc = acc * u + Quad(j) * b_[j];
  return to_double(2 * Quad(r) * acc);
}

double PreciseIterate::phi(double r) const {
  return to_double(even::horner(phi_, Quad(r) * Quad(r)) - phi_shift_);
}

double PreciseIterate::residual(double r) const {
  return to_double(even::horner(defect_, Quad(r) * Quad(r)));
}

RPoly PreciseIterate::w_poly() const { return even::to_rpoly(b_); }

RPoly PreciseIterate::phi_poly() const {
  std::vector<Quad> c = phi_;
  if (!c.empty()) c[0] = -phi_shift_;
  return even::to_rpoly(c);
}

double phi_sup_norm(const PreciseIterate& it, int intervals) {
  double m = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    m = std::max(m, std::abs(it.phi(static_cast<double>(i) / intervals)));
  }
  return m;
}

}  // namespace epibvp
