#pragma once

// Tensors derived from the unified potential U:
//
//   Phi_pq = (1/(mu nu)) (dU_p/dx^q - dU_q/dx^p)          field tensor
//   Phi    = Fgrav + i lambda Psi                          gravity / charge split
//   phi    = Phi/2 - (U_i U_k Phi_jk - U_j U_k Phi_ik) / (2 mu^2)
//   P      = orthogonal projector built from (U, V)
//   S      = -P^t phi P                                    non-linear connection
//   Gamma  = linear connection, S ~ sum_s Gamma_s V_s
//
// plus the kinematic read-out (a, w, E, H) and residual checks for the
// Maxwell-analog and vacuum Einstein equations.

#include <array>

#include "unigrav/fields.hpp"
#include "unigrav/tensor.hpp"

namespace unigrav {

Matrix4 compute_Phi(const PotentialField& f, const Event& e, const DiffOptions& opts = {});

struct PhiSplit {
  Matrix4 gravity;  // Fgrav: space-time entries real, space-space entries i*real
  Matrix4 charge;   // Psi, same entry pattern
};

PhiSplit split_Phi(const Matrix4& phi_field, double lambda);

/// Acceleration a and angular velocity w (complex: their imaginary parts carry
/// the charge sector), electric field E and magnetic field H.
struct Kinematics {
  CVec3 a{};
  CVec3 w{};
  Vec3 E{};
  Vec3 H{};
};

/// Reads a, w, E, H off Phi assuming the frame U = (0,0,0,mu nu).
Kinematics extract_kinematics(const Matrix4& phi_field, const PhysicalConstants& k);

/// Same as above after verifying u = 0 at `e`; throws Error{Frame} otherwise.
Kinematics extract_kinematics(const PotentialField& f, const Event& e, const DiffOptions& opts = {});

/// The field tensor a frame with U = (0,0,0,1) would have for the given
/// a and w (inverse of extract_kinematics on the full Phi).
Matrix4 field_tensor_from_kinematics(const CVec3& a, const CVec3& w, double c);

/// mu is the principal square root of dot(U, U).
Matrix4 compute_P(const FourVector& U, const FourVector& V);
Matrix4 compute_phi(const Matrix4& phi_field, const FourVector& U);
Matrix4 compute_S(const Matrix4& phi, const Matrix4& P);

struct LinearConnection {
  /// gamma[k](i, j) = Gamma^i_{jk}
  std::array<Matrix4, 4> gamma;

  /// sum_s Gamma_s V_s
  Matrix4 contract(const FourVector& V) const;
};

LinearConnection linear_connection(const Kinematics& k, double c);

/// Electromagnetic 4-potential A of a field with a charge sector.
FourVector em_four_potential(const PotentialField& f, const Event& e, double lambda);

/// Psi obtained from derivatives of A: Psi_pq = (1/c^2)(dA_q/dx^p - dA_p/dx^q).
Matrix4 em_tensor_from_potential(const PotentialField& f, const Event& e, double lambda);

struct MaxwellResiduals {
  double cyclic = 0.0;       // max |G_ij,k + G_jk,i + G_ki,j|, G = mu nu Phi
  FourVector divergence{};   // G_ij,j
};

MaxwellResiduals maxwell_residuals(const PotentialField& f, const Event& e, double h);

/// max-norm of R_ij - delta_ij R / 2 for the curvature of the linear
/// connection, differentiated over a stencil of half-width h. Requires u = 0
/// on the stencil.
double vacuum_ricci_residual(const PotentialField& f, const Event& e, double h);

/// All tensors at one event for one test-particle velocity.
struct FieldTensors {
  FourVector U;
  Matrix4 Phi;
  Matrix4 phi;
  Matrix4 P;
  Matrix4 S;
};

FieldTensors compute_tensors(const PotentialField& f, const Event& e, const FourVector& V,
                             const DiffOptions& opts = {});

}  // namespace unigrav
