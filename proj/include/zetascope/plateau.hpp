#pragma once

#include <cmath>

#include "zetascope/polynomial.hpp"

namespace zetascope {

/// Test function phi(x) = jet(x) * chi(|x|) with a radial plateau cutoff:
/// chi = 1 on [0, rInner], 0 on [rOuter, inf), smooth exponential blend in
/// between. The Taylor support of phi at 0 is exactly the jet's support.
struct PlateauTestFunction {
  SparsePolynomial jet;
  Rational rInner{1, 2};
  Rational rOuter{1};

  PlateauTestFunction() : jet(1) {}
  PlateauTestFunction(SparsePolynomial j, Rational ri, Rational ro)
      : jet(std::move(j)), rInner(std::move(ri)), rOuter(std::move(ro)) {
    if (rInner <= 0 || rOuter <= rInner)
      throw input_error("plateau radii must satisfy 0 < r_inner < r_outer");
  }

  double inner() const { return to_double(rInner); }
  double outer() const { return to_double(rOuter); }

  double chi(double s) const {
    double ri = inner(), ro = outer();
    if (s <= ri) return 1.0;
    if (s >= ro) return 0.0;
    double h1 = std::exp(-1.0 / (ro - s));
    double h2 = std::exp(-1.0 / (s - ri));
    return h1 / (h1 + h2);
  }

  double eval(const std::vector<double>& x) const {
    double s = 0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    if (s >= outer()) return 0.0;
    return jet.eval(x) * chi(s);
  }
};

}  // namespace zetascope
