#pragma once

#include "sel/liouvillian.hpp"
#include "sel/quasiprob/exp_poly.hpp"

namespace sel::quasiprob {

/// Phase-averaged antinormally ordered quasi-probabilities of a U(1)
/// symmetric state as functions of I = |z|^2. Normalized so that
/// integral q dI = 1 and the vacuum gives e^{-I}.
struct RadialQuasiSet {
  ExpPoly q;          // Q = rho_11 + rho_22
  ExpPoly d;          // D = rho_22 - rho_11
  ExpPoly rho_sigma;  // rho_12(I) + rho_21(I)
};

/// Largest |<n| Tr_atom rho |m>|, n != m, tolerated by husimi_radial.
inline constexpr double kPhaseSymmetryTolerance = 1e-8;

/// q(I)  = sum_n p_n I^n e^{-I} / n!
/// d(I)  = sum_n (<2,n|rho|2,n> - <1,n|rho|1,n>) I^n e^{-I} / n!
/// rho_sigma(I) = 2 Re sum_{n>=1} <1,n|rho|2,n-1> I^{n-1/2} e^{-I} / sqrt(n!(n-1)!)
/// NotPhaseSymmetric when the reduced field has coherences above tolerance.
RadialQuasiSet husimi_radial(const lindblad::DensityMatrix& rho);

}  // namespace sel::quasiprob
