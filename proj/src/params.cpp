#include "nsm/params.hpp"

#include <cmath>
#include <string>

#include "nsm/error.hpp"

namespace nsm {

namespace {

void require(bool ok, const char* field, const char* bound) {
  if (!ok) throw InvalidArgument(std::string("parameter ") + field + " must be " + bound);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

PhysicalParams PhysicalParams::validated() const {
  require(positive(n), "n", "> 0");
  require(positive(m_minus), "m_minus", "> 0");
  require(positive(m_plus), "m_plus", "> 0");
  require(e >= 0.0 && std::isfinite(e), "e", ">= 0");
  require(Z >= 1, "Z", "an integer >= 1");
  require(positive(eps0), "eps0", "> 0");
  require(positive(mu0), "mu0", "> 0");
  require(nu_minus >= 0.0 && std::isfinite(nu_minus), "nu_minus", ">= 0");
  require(nu_plus >= 0.0 && std::isfinite(nu_plus), "nu_plus", ">= 0");
  require(alpha >= 0.0 && std::isfinite(alpha), "alpha", ">= 0");

  PhysicalParams p = *this;
  p.mu_minus = nu_minus / (n * m_minus);
  p.mu_plus = nu_plus / (n * m_plus);
  p.a_minus = e / m_minus;
  p.a_plus = e * Z / m_plus;
  p.b_minus = alpha / (n * m_minus);
  p.b_plus = alpha / (n * m_plus);
  p.light2 = 1.0 / (eps0 * mu0);
  p.current = n * e / eps0;
  return p;
}

PhysicalParams PhysicalParams::unit(double alpha) {
  PhysicalParams p;
  p.alpha = alpha;
  return p.validated();
}

}  // namespace nsm
