#pragma once
#include <string>

#include "zetarel/bigint.hpp"

namespace zetarel {

// C = 12 N 2^r (3 + r delta)^{N+1}, exact.
Int constant_C(long N, long r, long delta);

enum class GammaMethod { Prop1, Th2, Tori };
GammaMethod gamma_method_from(const std::string& name);  // "prop1","th2","tori"

// prop1: 4g^2 + 2g + 4 (k ignored); th2: 29 k g^2; tori: 2(6 g^2 k + 1).
Int exponent_gamma(GammaMethod m, long g, long k = 1);

// L with C L^A = sqrt(q): (q C^-2)^{1/(2A)}.
double choose_L(double q, double c, double a);

// q^{d - 1/gamma} * log q; the implied constant stays symbolic ("x O(1)").
double sieve_bound(double q, double d, double gamma);

}  // namespace zetarel
