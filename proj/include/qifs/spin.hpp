#pragma once

#include "qifs/husimi.hpp"
#include "qifs/qstate.hpp"

namespace qifs {

/// Spin-j basis |j,m> ordered m = j, j-1, ..., -j (index 0 is m = j).
struct SpinBasis {
  double j = 0.5;
  int n = 2;

  explicit SpinBasis(double spin);
};

struct AngularMomentum {
  Mat jx, jy, jz;
};

/// Jz diagonal, Jx/Jy from ladder operators (hbar = 1). Satisfies
/// [Jx,Jy] = i Jz and the Casimir identity.
AngularMomentum angular_momentum(double j);

enum class Axis { X, Y, Z };

/// exp(+i theta J_axis); the sign matches F = exp(i theta J) usage.
Mat spin_rotation(Axis axis, double theta, double j);

/// Kicked top one-period unitary exp(-i beta Jz^2 / 2j) exp(-i alpha Jx).
Mat kicked_top(double alpha, double beta, double j);

/// Coherent state at direction (theta, phi): exp(-i phi Jz) exp(-i theta Jy)
/// applied to |j,j>. Computed in closed form (binomial amplitudes).
Vec spin_coherent(double j, double theta, double phi);

/// Latitude-dependent pair p1 = 1/2 + <Jz>/2j, p2 = 1/2 - <Jz>/2j.
std::pair<double, double> latitude_probabilities(double j, const Vec& state);
std::pair<double, double> latitude_probabilities(double j, const Mat& rho);

/// H(theta, phi) = <y|rho|y> on an equiangular grid; values in [0,1].
/// Cell centers; area weighting is applied only when integrating.
HusimiGrid husimi_sphere(const Mat& rho, double j, int n_theta, int n_phi);
HusimiGrid husimi_sphere_serial(const Mat& rho, double j, int n_theta, int n_phi);

}  // namespace qifs
