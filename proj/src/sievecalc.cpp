#include "zetarel/sievecalc.hpp"

#include <cmath>

#include "zetarel/error.hpp"

namespace zetarel {

Int constant_C(long N, long r, long delta) {
  if (N < 1 || r < 1 || delta < 1) fail(Err::InvalidInput, "need N, r, delta >= 1");
  Int base = 3 + Int(r) * delta;
  Int c = 12 * Int(N) * pow_int(Int(2), r);
  return c * pow_int(base, static_cast<unsigned long>(N + 1));
}

GammaMethod gamma_method_from(const std::string& name) {
  if (name == "prop1") return GammaMethod::Prop1;
  if (name == "th2") return GammaMethod::Th2;
  if (name == "tori") return GammaMethod::Tori;
  fail(Err::UnknownMethod, "gamma method " + name);
}

Int exponent_gamma(GammaMethod m, long g, long k) {
  if (g < 1 || k < 1) fail(Err::InvalidInput, "need g, k >= 1");
  switch (m) {
    case GammaMethod::Prop1: return Int(4) * g * g + 2 * g + 4;
    case GammaMethod::Th2: return Int(29) * k * g * g;
    case GammaMethod::Tori: return Int(2) * (6 * g * g * k + 1);
  }
  fail(Err::UnknownMethod, "gamma");
}

double choose_L(double q, double c, double a) {
  if (q <= 0 || c <= 0 || a <= 0) fail(Err::InvalidInput, "need positive inputs");
  return std::pow(q / (c * c), 1.0 / (2.0 * a));
}

double sieve_bound(double q, double d, double gamma) {
  if (q < 2 || gamma <= 0) fail(Err::InvalidInput, "need q >= 2, gamma > 0");
  return std::pow(q, d - 1.0 / gamma) * std::log(q);
}

}  // namespace zetarel
