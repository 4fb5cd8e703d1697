#include "unigrav/fields.hpp"

#include <algorithm>
#include <sstream>

namespace unigrav {

namespace {

std::string describe(const Event& e) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << e.x1 << ", " << e.x2 << ", " << e.x3 << ", t=" << e.t << ")";
  return os.str();
}

struct Coordinates {
  std::array<RJet, 3> x;
  RJet t;
};

Coordinates coordinate_jets(const Event& e) {
  return {{RJet::variable(e.x1, 0), RJet::variable(e.x2, 1), RJet::variable(e.x3, 2)},
          RJet::variable(e.t, 3)};
}

RJet radius(const Coordinates& q, const Event& e) {
  RJet r2 = q.x[0] * q.x[0] + q.x[1] * q.x[1] + q.x[2] * q.x[2];
  if (r2.v == 0.0) throw Error(ErrorKind::Singularity, "point source evaluated at r = 0, event " + describe(e));
  return sqrt(r2);
}

template <class S>
struct NuPair {
  S nu_im;
  S mu_induced;
};

template <class S>
NuPair<S> superpose_nu_impl(const S& v1, const S& v2) {
  S prod = v1 * v2;
  double p = 0.0;
  if constexpr (std::is_same_v<S, double>) {
    p = prod;
  } else {
    p = prod.v;
  }
  if (p == 1.0) throw Error(ErrorKind::Singularity, "superpose_nu: V1*V2 = 1 (singular superposition)");
  S mu_induced = S(1.0) - prod;
  return {(v1 + v2) / mu_induced, mu_induced};
}

using Sampler = PotentialField::Sampler;

Sampler make_sampler(const CatalogSpec& spec, const PhysicalConstants& k) {
  const double c2 = k.c * k.c;
  switch (spec.kind) {
    case FieldKind::PointMass: {
      const double strength = k.gamma * spec.mass / c2;
      return [strength](const Event& e) {
        auto q = coordinate_jets(e);
        FieldSample s;
        s.mu = 1.0 + strength / radius(q, e);
        return s;
      };
    }
    case FieldKind::PointCharge: {
      // The charge enters like the imaginary part of the complex mass m - i e/lambda
      // in mu = 1 + gamma M/(r c^2).
      const double strength = k.gamma * spec.charge / (k.lambda() * c2);
      return [strength](const Event& e) {
        auto q = coordinate_jets(e);
        FieldSample s;
        s.nu_im = -strength / radius(q, e);
        return s;
      };
    }
    case FieldKind::RotatingFrame: {
      const double w = spec.omega;
      return [w](const Event& e) {
        auto q = coordinate_jets(e);
        FieldSample s;
        s.u = {q.x[1] * w, q.x[0] * (-w), RJet(0.0)};
        return s;
      };
    }
    case FieldKind::ImaginaryRotation: {
      const double w = spec.big_omega;
      return [w](const Event& e) {
        auto q = coordinate_jets(e);
        FieldSample s;
        s.u_imag = {q.x[1] * w, q.x[0] * (-w), RJet(0.0)};
        return s;
      };
    }
    case FieldKind::UniformMotion: {
      const Vec3 v = spec.velocity;
      return [v](const Event&) {
        FieldSample s;
        s.u = {RJet(v[0]), RJet(v[1]), RJet(v[2])};
        return s;
      };
    }
    case FieldKind::UniformGravity: {
      const Vec3 g = (1.0 / c2) * spec.accel;
      return [g](const Event& e) {
        auto q = coordinate_jets(e);
        FieldSample s;
        s.mu = 1.0 + q.x[0] * g[0] + q.x[1] * g[1] + q.x[2] * g[2];
        return s;
      };
    }
    case FieldKind::Constant: {
      const double scale = spec.scale;
      return [scale](const Event&) {
        FieldSample s;
        s.mu = RJet(scale);
        return s;
      };
    }
    case FieldKind::Product: {
      std::vector<Sampler> parts;
      for (const auto& child : spec.children) parts.push_back(make_sampler(child, k));
      return [parts](const Event& e) {
        FieldSample out;
        for (const auto& part : parts) {
          FieldSample s = part(e);
          out.mu = out.mu * s.mu;
          auto nu = superpose_nu_impl(out.nu_im, s.nu_im);
          out.nu_im = nu.nu_im;
          out.mu = out.mu * nu.mu_induced;
          for (std::size_t i = 0; i < 3; ++i) {
            out.u[i] = out.u[i] + s.u[i];
            out.u_imag[i] = out.u_imag[i] + s.u_imag[i];
          }
        }
        return out;
      };
    }
  }
  throw Error(ErrorKind::Config, "unknown field kind");
}

bool has_imaginary_rotation(const CatalogSpec& spec) {
  if (spec.kind == FieldKind::ImaginaryRotation) return spec.big_omega != 0.0;
  return std::any_of(spec.children.begin(), spec.children.end(),
                     [](const CatalogSpec& c) { return has_imaginary_rotation(c); });
}

bool finite3(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

}  // namespace

PotentialField::PotentialField(Sampler sampler, PhysicalConstants constants, double char_length,
                               bool analytic, bool has_imaginary_rotation)
    : sampler_(std::move(sampler)),
      constants_(constants),
      char_length_(char_length),
      analytic_(analytic),
      has_imaginary_rotation_(has_imaginary_rotation) {
  if (!(char_length_ > 0.0)) throw Error(ErrorKind::Domain, "characteristic length must be positive");
}

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::PointMass: return "point_mass";
    case FieldKind::PointCharge: return "point_charge";
    case FieldKind::RotatingFrame: return "rotating_frame";
    case FieldKind::UniformMotion: return "uniform_motion";
    case FieldKind::UniformGravity: return "uniform_gravity";
    case FieldKind::ImaginaryRotation: return "imaginary_rotation";
    case FieldKind::Constant: return "constant";
    case FieldKind::Product: return "product";
  }
  return "?";
}

FieldKind parse_field_kind(const std::string& name) {
  for (auto kind : {FieldKind::PointMass, FieldKind::PointCharge, FieldKind::RotatingFrame,
                    FieldKind::UniformMotion, FieldKind::UniformGravity, FieldKind::ImaginaryRotation,
                    FieldKind::Constant, FieldKind::Product}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::Config, "unknown field kind '" + name + "'");
}

CatalogSpec CatalogSpec::point_mass(double m) {
  CatalogSpec s;
  s.kind = FieldKind::PointMass;
  s.mass = m;
  return s;
}
CatalogSpec CatalogSpec::point_charge(double e) {
  CatalogSpec s;
  s.kind = FieldKind::PointCharge;
  s.charge = e;
  return s;
}
CatalogSpec CatalogSpec::rotating_frame(double omega) {
  CatalogSpec s;
  s.kind = FieldKind::RotatingFrame;
  s.omega = omega;
  return s;
}
CatalogSpec CatalogSpec::uniform_motion(const Vec3& v) {
  CatalogSpec s;
  s.kind = FieldKind::UniformMotion;
  s.velocity = v;
  return s;
}
CatalogSpec CatalogSpec::uniform_gravity(const Vec3& a) {
  CatalogSpec s;
  s.kind = FieldKind::UniformGravity;
  s.accel = a;
  return s;
}
CatalogSpec CatalogSpec::imaginary_rotation(double big_omega) {
  CatalogSpec s;
  s.kind = FieldKind::ImaginaryRotation;
  s.big_omega = big_omega;
  return s;
}
CatalogSpec CatalogSpec::constant(double c) {
  CatalogSpec s;
  s.kind = FieldKind::Constant;
  s.scale = c;
  return s;
}
CatalogSpec CatalogSpec::product(std::vector<CatalogSpec> children) {
  CatalogSpec s;
  s.kind = FieldKind::Product;
  s.children = std::move(children);
  return s;
}

bool CatalogSpec::moving() const {
  switch (kind) {
    case FieldKind::RotatingFrame: return omega != 0.0;
    case FieldKind::ImaginaryRotation: return big_omega != 0.0;
    case FieldKind::UniformMotion: return norm(velocity) != 0.0;
    case FieldKind::Product:
      return std::any_of(children.begin(), children.end(), [](const CatalogSpec& c) { return c.moving(); });
    default: return false;
  }
}

void validate(const CatalogSpec& spec) {
  const bool finite = std::isfinite(spec.mass) && std::isfinite(spec.charge) && std::isfinite(spec.omega) &&
                      std::isfinite(spec.big_omega) && finite3(spec.velocity) && finite3(spec.accel) &&
                      std::isfinite(spec.scale) && std::isfinite(spec.length);
  if (!finite) throw Error(ErrorKind::Domain, std::string(to_string(spec.kind)) + ": non-finite parameter");
  if (!(spec.length > 0.0)) throw Error(ErrorKind::Domain, "characteristic length must be positive");
  if (spec.kind == FieldKind::Constant && !(spec.scale > 0.0))
    throw Error(ErrorKind::Domain, "constant: C must be positive");
  if (spec.kind == FieldKind::Product) {
    if (spec.children.size() < 2) throw Error(ErrorKind::Composition, "product: needs at least 2 children");
    const auto moving = std::count_if(spec.children.begin(), spec.children.end(),
                                      [](const CatalogSpec& c) { return c.moving(); });
    if (moving > 1)
      throw Error(ErrorKind::Composition,
                  "product: unsupported composition, at most one child may carry a velocity field");
    for (const auto& child : spec.children) validate(child);
  } else if (!spec.children.empty()) {
    throw Error(ErrorKind::Composition, std::string(to_string(spec.kind)) + ": only product takes children");
  }
}

PotentialField make_field(const CatalogSpec& spec, const PhysicalConstants& constants) {
  validate(spec);
  return PotentialField(make_sampler(spec, constants), constants, spec.length, true,
                        has_imaginary_rotation(spec));
}

// ---------------------------------------------------------------------------

namespace {

void check_sample(const FieldSample& s, const Event& e, double c) {
  if (!(s.mu.v > 0.0)) throw Error(ErrorKind::Domain, "mu <= 0 at event " + describe(e));
  const Vec3 u = s.velocity();
  if (!(norm(u) < c)) throw Error(ErrorKind::Domain, "source velocity |u| >= c at event " + describe(e));
  if (!std::isfinite(s.nu_im.v) || !finite3(s.imaginary_velocity()))
    throw Error(ErrorKind::Numerical, "non-finite field sample at event " + describe(e));
}

std::array<CJet, 4> potential_jets(const FieldSample& s, double c) {
  const CJet mu = to_complex(s.mu);
  const CJet nu = CJet(1.0) + to_complex(s.nu_im) * kI;
  RJet speed2 = s.u[0] * s.u[0] + s.u[1] * s.u[1] + s.u[2] * s.u[2];
  const RJet lorentz = 1.0 / sqrt(1.0 - speed2 / (c * c));
  const CJet pref = mu * nu * to_complex(lorentz);
  const Complex inv_ic = 1.0 / (kI * c);
  std::array<CJet, 4> U;
  for (std::size_t k = 0; k < 3; ++k) {
    const CJet uk = to_complex(s.u[k]) + to_complex(s.u_imag[k]) * kI;
    U[k] = pref * uk * inv_ic;
  }
  U[3] = pref;
  return U;
}

}  // namespace

FourVector evaluate_U(const PotentialField& f, const Event& e) {
  const FieldSample s = f.sample(e);
  const double c = f.constants().c;
  check_sample(s, e, c);
  const auto jets = potential_jets(s, c);
  FourVector U;
  for (std::size_t i = 0; i < 4; ++i) U[i] = jets[i].v;
  return U;
}

PotentialJacobian potential_jacobian(const PotentialField& f, const Event& e, const DiffOptions& opts) {
  const double c = f.constants().c;
  const FieldSample s = f.sample(e);
  check_sample(s, e, c);
  PotentialJacobian out;
  out.mu_nu = s.mu_nu();
  const auto jets = potential_jets(s, c);
  for (std::size_t i = 0; i < 4; ++i) out.U[i] = jets[i].v;

  if (f.analytic() && !opts.force_finite_difference) {
    const Complex inv_ic = 1.0 / (kI * c);
    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = 0; q < 3; ++q) out.jacobian(p, q) = jets[p].d[q];
      out.jacobian(p, 3) = jets[p].d[3] * inv_ic;
    }
  } else {
    const double h = opts.step > 0.0 ? opts.step : 1e-6 * f.char_length();
    auto U_at = [&f](const Event& ev) { return evaluate_U(f, ev); };
    for (int q = 0; q < 4; ++q) {
      const FourVector col = partial_derivative(U_at, e, static_cast<Axis>(q), h, c, opts.richardson);
      for (std::size_t p = 0; p < 4; ++p) out.jacobian(p, static_cast<std::size_t>(q)) = col[p];
    }
  }
  if (!out.jacobian.finite()) throw Error(ErrorKind::Numerical, "non-finite potential derivative at " + describe(e));
  return out;
}

PotentialDecomposition decompose_U(const FourVector& U, double tol, double c) {
  if (U[3] == Complex(0.0)) throw Error(ErrorKind::Singularity, "decompose_U: U4 = 0 (degenerate potential)");
  PotentialDecomposition out;
  double speed2 = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex ratio = kI * U[k] / U[3];
    if (std::abs(ratio.imag()) > tol)
      throw Error(ErrorKind::Domain, "decompose_U: i*U" + std::to_string(k + 1) +
                                         "/U4 is not real; not a valid unified potential");
    out.u[k] = c * ratio.real();
    speed2 += ratio.real() * ratio.real();
  }
  if (!(speed2 < 1.0)) throw Error(ErrorKind::Domain, "decompose_U: |u| >= c");
  const Complex p = U[3] * std::sqrt(1.0 - speed2);
  if (!(p.real() > 0.0)) throw Error(ErrorKind::Domain, "decompose_U: Re(mu*nu) <= 0");
  out.mu = p.real();
  out.nu_im = p.imag() / p.real();
  return out;
}

double superpose_mu(double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) throw Error(ErrorKind::Domain, "superpose_mu: potentials must be positive");
  return mu1 * mu2;
}

NuSuperposition superpose_nu(double v1, double v2) {
  auto r = superpose_nu_impl(v1, v2);
  return {r.nu_im, r.mu_induced};
}

}  // namespace unigrav
