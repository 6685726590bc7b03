#pragma once

#include <string>

namespace eulerprod {

/// A distribution constant of the form 1 + int_0^1 h(t)/t^2 dt + int_1^inf (h(t) - t)/t^2 dt,
/// with the two integral pieces kept separately.
struct ConstantReport {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    double piece_0_1 = 0.0;
    double piece_1_inf = 0.0;
};

/// C1 from m(t) = cosh t. Close to 0.8187.
ConstantReport constant_C1();

/// C2 from m(t) = I0(t). Not printed in the literature; our value is -0.0893265223435...
ConstantReport constant_C2();

/// Cached values of the two constants (computed once, thread-safe).
double C1_value();
double C2_value();

/// h_k(t) = log( (2/pi) int_0^pi exp( t/(k+1) sum_{j=0}^k cos((k-2j) theta) ) sin^2(theta) dtheta ).
/// Evaluated with e^t factored out so it is finite for any t >= 0. Throws
/// DomainError for k < 1 or t < 0.
double h_k_sato_tate(int k, double t);

/// A_k for 1 <= k <= 12.
ConstantReport constant_A_k(int k);

}  // namespace eulerprod
