#pragma once

// Standard-normal primitives shared by every solver in the library.
// All functions are total on the extended reals: +-infinity maps to the
// obvious limit values instead of raising.

namespace ifp {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard normal density phi(z).
double normal_pdf(double z);

/// Standard normal distribution function Phi(z), absolute error < 1e-15.
double normal_cdf(double z);

/// Complementary distribution function Psi(z) = 1 - Phi(z), computed
/// without cancellation so the relative error stays small deep in the
/// upper tail.
double normal_sf(double z);

/// Inverse of Phi. p=0 maps to -infinity, p=1 to +infinity; p outside
/// [0,1] throws std::invalid_argument. Wichura's AS 241 (PPND16).
double normal_quantile(double p);

}  // namespace ifp
