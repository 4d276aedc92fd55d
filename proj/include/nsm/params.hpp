#pragma once

namespace nsm {

/// Physical constants of the two-fluid system plus the coefficients of its
/// rescaled form. Construct with validated(), which checks the invariants and
/// fills the derived fields.
struct PhysicalParams {
  double n = 1.0;        ///< number density
  double m_minus = 1.0;  ///< anion mass
  double m_plus = 1.0;   ///< cation mass
  double e = 1.0;        ///< elementary charge (0 decouples the fluids from the field)
  int Z = 1;             ///< charge number
  double eps0 = 1.0;     ///< vacuum dielectric constant
  double mu0 = 1.0;      ///< vacuum permeability
  double nu_minus = 1.0; ///< anion kinematic viscosity (0 allowed: inviscid runs)
  double nu_plus = 1.0;  ///< cation kinematic viscosity
  double alpha = 1.0;    ///< Rayleigh friction coefficient

  // Derived; filled by validated().
  double mu_minus = 0.0;  ///< nu_-/(n m_-)
  double mu_plus = 0.0;   ///< nu_+/(n m_+)
  double a_minus = 0.0;   ///< e/m_-
  double a_plus = 0.0;    ///< e Z/m_+
  double b_minus = 0.0;   ///< alpha/(n m_-)
  double b_plus = 0.0;    ///< alpha/(n m_+)
  double light2 = 0.0;    ///< 1/(eps0 mu0)
  double current = 0.0;   ///< n e/eps0

  /// Check invariants (throws InvalidArgument naming the field) and return a
  /// copy with the derived coefficients filled in.
  PhysicalParams validated() const;

  /// All constants equal to one, friction alpha.
  static PhysicalParams unit(double alpha = 1.0);
};

}  // namespace nsm
