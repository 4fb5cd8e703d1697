#pragma once

// The unified 4-vector potential
//
//   U = mu * nu / sqrt(1 - u^2/c^2) * (u1/(ic), u2/(ic), u3/(ic), 1),   nu = 1 + i*nuIm,
//
// built from a gravitational potential mu, a charge potential nu and a source
// velocity field u, together with a catalog of analytic fields.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "unigrav/constants.hpp"
#include "unigrav/jet.hpp"
#include "unigrav/tensor.hpp"

namespace unigrav {

/// Values and exact first derivatives (w.r.t. x1, x2, x3, t) of the field
/// constituents at one event. `u_imag` carries an imaginary velocity
/// (u = u_real + i*u_imag); only the real part enters the Lorentz factor.
struct FieldSample {
  RJet mu{1.0};
  RJet nu_im{0.0};
  std::array<RJet, 3> u{};
  std::array<RJet, 3> u_imag{};

  Complex mu_nu() const { return mu.v * Complex(1.0, nu_im.v); }
  Vec3 velocity() const { return {u[0].v, u[1].v, u[2].v}; }
  Vec3 imaginary_velocity() const { return {u_imag[0].v, u_imag[1].v, u_imag[2].v}; }
};

/// How first derivatives of U are obtained.
struct DiffOptions {
  bool force_finite_difference = false;
  Richardson richardson = Richardson::off;
  /// Step for finite differences; 0 selects 1e-6 * characteristic length.
  double step = 0.0;
};

class PotentialField {
 public:
  using Sampler = std::function<FieldSample(const Event&)>;

  /// `analytic` declares whether the sampler's gradients are meaningful. When
  /// false, derivatives of U are taken by central differences.
  PotentialField(Sampler sampler, PhysicalConstants constants, double char_length, bool analytic,
                 bool has_imaginary_rotation = false);

  FieldSample sample(const Event& e) const { return sampler_(e); }
  const PhysicalConstants& constants() const { return constants_; }
  double char_length() const { return char_length_; }
  bool analytic() const { return analytic_; }
  bool has_imaginary_rotation() const { return has_imaginary_rotation_; }

 private:
  Sampler sampler_;
  PhysicalConstants constants_;
  double char_length_;
  bool analytic_;
  bool has_imaginary_rotation_;
};

enum class FieldKind {
  PointMass,
  PointCharge,
  RotatingFrame,
  UniformMotion,
  UniformGravity,
  ImaginaryRotation,
  Constant,
  Product,
};

const char* to_string(FieldKind kind);
FieldKind parse_field_kind(const std::string& name);

/// Declarative description of a catalog field. Units follow the constants the
/// field is built with.
struct CatalogSpec {
  FieldKind kind = FieldKind::Constant;
  double mass = 0.0;       // PointMass M
  double charge = 0.0;     // PointCharge e
  double omega = 0.0;      // RotatingFrame angular velocity
  double big_omega = 0.0;  // ImaginaryRotation angular velocity
  Vec3 velocity{};         // UniformMotion
  Vec3 accel{};            // UniformGravity
  double scale = 1.0;      // Constant C
  double length = 1.0;     // characteristic length for difference steps
  std::vector<CatalogSpec> children;

  static CatalogSpec point_mass(double m);
  static CatalogSpec point_charge(double e);
  static CatalogSpec rotating_frame(double omega);
  static CatalogSpec uniform_motion(const Vec3& v);
  static CatalogSpec uniform_gravity(const Vec3& a);
  static CatalogSpec imaginary_rotation(double big_omega);
  static CatalogSpec constant(double c);
  static CatalogSpec product(std::vector<CatalogSpec> children);

  /// True when the field's velocity (real or imaginary) is not identically 0.
  bool moving() const;
};

PotentialField make_field(const CatalogSpec& spec, const PhysicalConstants& constants);

/// Throws Error{Composition} / Error{Domain} for an invalid spec.
void validate(const CatalogSpec& spec);

// ---------------------------------------------------------------------------

FourVector evaluate_U(const PotentialField& f, const Event& e);

/// U and its Jacobian jacobian(p, q) = dU_p / dx^q at one event. Derivatives
/// along x4 include the 1/(ic) factor.
struct PotentialJacobian {
  FourVector U;
  Complex mu_nu;
  Matrix4 jacobian;
};

PotentialJacobian potential_jacobian(const PotentialField& f, const Event& e,
                                     const DiffOptions& opts = {});

/// Recovers (u, mu, nuIm) from a unified potential.
struct PotentialDecomposition {
  Vec3 u{};
  double mu = 0.0;
  double nu_im = 0.0;
};

PotentialDecomposition decompose_U(const FourVector& U, double tol, double c);

double superpose_mu(double mu1, double mu2);

struct NuSuperposition {
  double nu_im;
  double mu_induced;
};

/// nu1 * nu2 = (1 - V1 V2) (1 + i (V1 + V2)/(1 - V1 V2)) for nu_k = 1 + i V_k.
NuSuperposition superpose_nu(double v1, double v2);

}  // namespace unigrav
