#include "sel/quasiprob/husimi.hpp"

#include <cmath>
#include <string>

#include "sel/error.hpp"

namespace sel::quasiprob {

namespace {

// value / sqrt(a! b!) without forming the factorials
double over_sqrt_factorials(double value, int a, int b) {
  if (value == 0.0) return 0.0;
  return std::copysign(
      std::exp(std::log(std::abs(value)) - 0.5 * (std::lgamma(a + 1.0) + std::lgamma(b + 1.0))),
      value);
}

}  // namespace

RadialQuasiSet husimi_radial(const lindblad::DensityMatrix& rho) {
  const auto& trunc = rho.truncation();
  const auto& m = rho.matrix();

  const numerics::ComplexMatrix field = rho.reduced_field();
  double worst = 0.0;
  for (std::size_t n = 0; n < field.rows(); ++n)
    for (std::size_t k = 0; k < field.cols(); ++k)
      if (n != k) worst = std::max(worst, std::abs(field(n, k)));
  if (worst > kPhaseSymmetryTolerance) {
    throw NotPhaseSymmetric("field coherence " + num(worst) + " exceeds " +
                            num(kPhaseSymmetryTolerance));
  }

  std::vector<ExpPoly::Term> q_terms;
  std::vector<ExpPoly::Term> d_terms;
  std::vector<ExpPoly::Term> s_terms;
  for (int n = 0; n <= trunc.n_max(); ++n) {
    const double lower = m(trunc.index(1, n), trunc.index(1, n)).real();
    const double upper = m(trunc.index(2, n), trunc.index(2, n)).real();
    q_terms.push_back({over_sqrt_factorials(lower + upper, n, n), 2 * n});
    d_terms.push_back({over_sqrt_factorials(upper - lower, n, n), 2 * n});
    if (n >= 1) {
      const double coherence = m(trunc.index(1, n), trunc.index(2, n - 1)).real();
      s_terms.push_back({over_sqrt_factorials(2.0 * coherence, n, n - 1), 2 * n - 1});
    }
  }
  return {ExpPoly(std::move(q_terms)), ExpPoly(std::move(d_terms)), ExpPoly(std::move(s_terms))};
}

}  // namespace sel::quasiprob
