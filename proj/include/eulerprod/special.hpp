#pragma once

namespace eulerprod {

/// Modified Bessel function I0. Power series for t <= 30, scaled asymptotic
/// expansion beyond (overflows to +inf past t ~ 713, use the log/scaled forms).
/// Even in t.
double bessel_i0(double t);

/// exp(-|t|) * I0(t).
double bessel_i0_scaled(double t);

/// log I0(t), with a 4-term series below |t| = 1e-3.
double log_bessel_i0(double t);

/// log cosh t without overflow, with a 4-term series below |t| = 1e-3.
double log_cosh(double t);

}  // namespace eulerprod
