#include <doctest.h>

#include "test_util.hpp"
#include "unigrav/error.hpp"
#include "unigrav/fields.hpp"

using namespace unigrav;
using testutil::rel;

namespace {
const PhysicalConstants kScaled = PhysicalConstants::scaled();
}

TEST_SUITE("fields") {
  TEST_CASE("point mass potential") {
    const PotentialField f = make_field(CatalogSpec::point_mass(1e-3), kScaled);
    const FieldSample s = f.sample(Event{2.0, 0.0, 0.0, 0.0});
    CHECK(rel(s.mu.v, 1.0005) < 1e-15);
    CHECK(rel(s.mu.d[0], -2.5e-4) < 1e-14);  // d/dx1 (M / r)
    const FourVector U = evaluate_U(f, Event{2.0, 0.0, 0.0, 0.0});
    CHECK(std::abs(U[3] - 1.0005) < 1e-15);
    CHECK(std::abs(U[0]) == 0.0);
    CHECK_THROWS_AS(f.sample(Event{0.0, 0.0, 0.0, 0.0}), Error);
  }

  TEST_CASE("point mass in SI carries gamma / c^2") {
    const auto si = PhysicalConstants::si();
    const PotentialField f = make_field(CatalogSpec::point_mass(5.972e24), si);
    const double r = 6.371e6;
    const double expected = si.gamma * 5.972e24 / (r * si.c * si.c);
    CHECK(rel(f.sample(Event{r, 0, 0, 0}).mu.v - 1.0, expected) < 1e-6);
  }

  TEST_CASE("point charge enters nu") {
    const PotentialField f = make_field(CatalogSpec::point_charge(2e-3), kScaled);
    const FieldSample s = f.sample(Event{0.0, 4.0, 0.0, 0.0});
    CHECK(rel(s.nu_im.v, -5e-4) < 1e-14);
    CHECK(s.mu.v == 1.0);
  }

  TEST_CASE("uniform motion: U = gamma (u/(ic), 1), unit norm") {
    const Vec3 u{0.6, 0.0, 0.0};
    const PotentialField f = make_field(CatalogSpec::uniform_motion(u), kScaled);
    const FourVector U = evaluate_U(f, Event{1, 2, 3, 4});
    CHECK(std::abs(U[3] - 1.25) < 1e-15);
    CHECK(std::abs(U[0] - 1.25 * 0.6 / kI) < 1e-15);
    CHECK(std::abs(dot(U, U) - 1.0) < 1e-15);
  }

  TEST_CASE("rotating frame velocity and domain") {
    const PotentialField f = make_field(CatalogSpec::rotating_frame(0.5), kScaled);
    const Vec3 u = f.sample(Event{1.0, 0.4, 0.0, 0.0}).velocity();
    CHECK(u[0] == doctest::Approx(0.2));
    CHECK(u[1] == doctest::Approx(-0.5));
    CHECK_THROWS_AS(evaluate_U(f, Event{3.0, 0.0, 0.0, 0.0}), Error);
  }

  TEST_CASE("analytic and finite-difference Jacobians agree") {
    const std::vector<CatalogSpec> specs{
        CatalogSpec::point_mass(1e-2), CatalogSpec::point_charge(1e-3), CatalogSpec::rotating_frame(0.2),
        CatalogSpec::uniform_gravity({1e-2, 0.0, -3e-3}), CatalogSpec::imaginary_rotation(0.1),
        CatalogSpec::product({CatalogSpec::point_mass(1e-2), CatalogSpec::rotating_frame(0.2)})};
    const Event at{0.7, -1.1, 0.4, 0.3};
    for (const auto& spec : specs) {
      const PotentialField f = make_field(spec, kScaled);
      const Matrix4 exact = potential_jacobian(f, at).jacobian;
      DiffOptions fd;
      fd.force_finite_difference = true;
      fd.richardson = Richardson::on;
      fd.step = 1e-3;
      const Matrix4 approx = potential_jacobian(f, at, fd).jacobian;
      CAPTURE(to_string(spec.kind));
      CHECK(max_norm(exact - approx) < 1e-9 * std::max(1.0, max_norm(exact)));
    }
  }

  TEST_CASE("decompose_U inverts the construction") {
    const PotentialField f = make_field(
        CatalogSpec::product({CatalogSpec::point_mass(1e-2), CatalogSpec::point_charge(1e-3),
                              CatalogSpec::uniform_motion({0.1, -0.2, 0.05})}),
        kScaled);
    const Event at{1.0, 1.0, 0.5, 0.0};
    const FieldSample s = f.sample(at);
    const PotentialDecomposition d = decompose_U(evaluate_U(f, at), 1e-9, 1.0);
    CHECK(rel(d.mu, s.mu.v) < 1e-14);
    CHECK(std::abs(d.nu_im - s.nu_im.v) < 1e-15);
    CHECK(norm(d.u - s.velocity()) < 1e-14);
  }

  TEST_CASE("superposition rules") {
    CHECK(superpose_mu(2.0, 3.0) == 6.0);
    // (1 + 0.5i)^2 = 0.75 + i = 0.75 (1 + i/0.75)
    const NuSuperposition n = superpose_nu(0.5, 0.5);
    CHECK(n.mu_induced == doctest::Approx(0.75));
    CHECK(n.nu_im == doctest::Approx(1.0 / 0.75));
    CHECK_THROWS_AS(superpose_nu(2.0, 0.5), Error);
  }

  TEST_CASE("product composition rules") {
    const auto two_moving = CatalogSpec::product(
        {CatalogSpec::rotating_frame(0.1), CatalogSpec::uniform_motion({0.1, 0.0, 0.0})});
    try {
      validate(two_moving);
      FAIL("expected a composition error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Composition);
      CHECK(std::string(e.what()).find("unsupported composition") != std::string::npos);
    }
    CHECK_THROWS_AS(validate(CatalogSpec::product({CatalogSpec::point_mass(1.0)})), Error);
    CHECK_NOTHROW(validate(CatalogSpec::product({CatalogSpec::point_mass(1.0), CatalogSpec::rotating_frame(0.1)})));
    CHECK_THROWS_AS(validate(CatalogSpec::constant(-1.0)), Error);
  }

  TEST_CASE("product multiplies mu and folds nu") {
    const Event at{2.0, 0.0, 0.0, 0.0};
    const PotentialField f = make_field(
        CatalogSpec::product({CatalogSpec::point_mass(1e-3), CatalogSpec::constant(3.0)}), kScaled);
    CHECK(rel(f.sample(at).mu.v, 3.0 * 1.0005) < 1e-15);
    const PotentialField q = make_field(
        CatalogSpec::product({CatalogSpec::point_charge(1.0), CatalogSpec::point_charge(1.0)}), kScaled);
    const FieldSample s = q.sample(at);
    // each child has nuIm = -1/2 at r = 2: (1 - i/2)^2 = 0.75 - i
    CHECK(std::abs(s.mu_nu() - Complex(0.75, -1.0)) < 1e-15);
  }

  TEST_CASE("field kind names round-trip") {
    for (const char* name : {"point_mass", "point_charge", "rotating_frame", "uniform_motion", "uniform_gravity",
                             "imaginary_rotation", "constant", "product"})
      CHECK(std::string(to_string(parse_field_kind(name))) == name);
    CHECK_THROWS_AS(parse_field_kind("wormhole"), Error);
  }
}
