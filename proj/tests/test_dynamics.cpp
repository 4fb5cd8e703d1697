#include <doctest.h>

#include "test_util.hpp"
#include "unigrav/dynamics.hpp"
#include "unigrav/error.hpp"

using namespace unigrav;
using testutil::rel;

namespace {
const PhysicalConstants kScaled = PhysicalConstants::scaled();

double max_state_diff(const ParticleState& a, const ParticleState& b) {
  const double dx = std::max({std::abs(a.event.x1 - b.event.x1), std::abs(a.event.x2 - b.event.x2),
                              std::abs(a.event.x3 - b.event.x3), std::abs(a.event.t - b.event.t)});
  return std::max(dx, max_norm(a.V - b.V));
}

/// Circular-orbit start at r = 1 around a point mass gm.
ParticleState circular_start(double gm) {
  return {Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0.0, std::sqrt(gm), 0.0}, 1.0)};
}
}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("four-velocity round trip and norm") {
    const Vec3 v{0.3, -0.4, 0.5};
    const FourVector V = four_velocity(v, 1.0);
    CHECK(std::abs(dot(V, V) - 1.0) < 1e-15);
    CHECK(norm(three_velocity(V, 1.0) - v) < 1e-15);
    CHECK_THROWS_AS(four_velocity({1.0, 0.0, 0.0}, 1.0), Error);
  }

  TEST_CASE("zero field: straight line x = x0 + gamma v tau") {
    const PotentialField f = make_field(CatalogSpec::constant(1.0), kScaled);
    const Vec3 v{0.6, 0.0, 0.0};
    const ParticleState init{Event{0.0, 1.0, 0.0, 0.0}, four_velocity(v, 1.0)};
    for (auto model : {MotionModel::Newtonian, MotionModel::Linear, MotionModel::Full}) {
      const Trajectory tr = integrate(init, f, make_particle(1.0, 0.0, 1.0), model, 0.1, 100);
      REQUIRE(tr.samples.size() == 101);
      const auto& last = tr.samples.back();
      CHECK(std::abs(last.state.event.x1 - 1.25 * 0.6 * 10.0) < 1e-12);
      CHECK(std::abs(last.state.event.t - 1.25 * 10.0) < 1e-12);
      CHECK(max_norm(last.state.V - init.V) == 0.0);
    }
  }

  TEST_CASE("Newtonian limit: circular orbit period matches Kepler") {
    const double gm = 1e-8;
    const PotentialField f = make_field(CatalogSpec::point_mass(gm), kScaled);
    const double period = 2.0 * M_PI / std::sqrt(gm);
    ParticleState s = circular_start(gm);
    const Particle p = make_particle(1.0, 0.0, 1.0);
    const double dtau = period / 1e4;
    double prev_y = 0.0;
    double crossing = -1.0;
    for (int i = 1; i <= 11000 && crossing < 0.0; ++i) {
      const ParticleState next = step_rk4(s, f, p, MotionModel::Newtonian, dtau);
      if (i > 5000 && prev_y < 0.0 && next.event.x2 >= 0.0) {
        const double frac = -prev_y / (next.event.x2 - prev_y);
        crossing = s.event.t + frac * (next.event.t - s.event.t);
      }
      prev_y = next.event.x2;
      s = next;
    }
    REQUIRE(crossing > 0.0);
    CHECK(rel(crossing, period) < 1e-6);
  }

  TEST_CASE("norm drift stays below 1e-10 over 1e4 steps") {
    const double gm = 1e-3;
    const PotentialField f = make_field(CatalogSpec::point_mass(gm), kScaled);
    const double period = 2.0 * M_PI / std::sqrt(gm);
    for (auto model : {MotionModel::Newtonian, MotionModel::Full}) {
      const Trajectory tr = integrate(circular_start(gm), f, make_particle(1.0, 0.0, 1.0), model, period / 1000, 10000);
      double worst = 0.0;
      for (const auto& s : tr.samples) worst = std::max(worst, s.norm_drift);
      CHECK(worst <= 1e-10);
    }
  }

  TEST_CASE("time reversal returns to the start") {
    const double gm = 1e-3;
    const PotentialField f = make_field(CatalogSpec::point_mass(gm), kScaled);
    const Particle p = make_particle(1.0, 0.0, 1.0);
    const double period = 2.0 * M_PI / std::sqrt(gm);
    for (auto model : {MotionModel::Newtonian, MotionModel::Full}) {
      const ParticleState init{Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0.005, 0.03, 0.0}, 1.0)};
      ParticleState s = init;
      for (int i = 0; i < 2000; ++i) s = step_rk4(s, f, p, model, period / 2000);
      const Vec3 v = three_velocity(s.V, 1.0);
      s.V = four_velocity(-1.0 * v, 1.0);
      for (int i = 0; i < 2000; ++i) s = step_rk4(s, f, p, model, period / 2000);
      const Vec3 back = three_velocity(s.V, 1.0);
      CHECK(norm(s.event.position() - init.event.position()) < 1e-8);
      CHECK(norm(back + three_velocity(init.V, 1.0)) < 1e-8 * norm(three_velocity(init.V, 1.0)));
    }
  }

  TEST_CASE("gauge: trajectories in mu and C mu coincide") {
    const double gm = 1e-3;
    const PotentialField f = make_field(CatalogSpec::point_mass(gm), kScaled);
    const PotentialField g =
        make_field(CatalogSpec::product({CatalogSpec::point_mass(gm), CatalogSpec::constant(4.0)}), kScaled);
    const Particle p = make_particle(1.0, 0.0, 1.0);
    for (auto model : {MotionModel::Newtonian, MotionModel::Full}) {
      const Trajectory a = integrate(circular_start(gm), f, p, model, 1.0, 500);
      const Trajectory b = integrate(circular_start(gm), g, p, model, 1.0, 500);
      CHECK(max_state_diff(a.samples.back().state, b.samples.back().state) < 1e-10);
    }
  }

  TEST_CASE("motion models agree in the weak-field slow-motion limit") {
    // The models differ by relativistic corrections of order gm/(r c^2) per orbit,
    // so the agreement is measured against that scale.
    const double gm = 1e-8;
    const PotentialField f = make_field(CatalogSpec::point_mass(gm), kScaled);
    const Particle p = make_particle(1.0, 0.0, 1.0);
    const double period = 2.0 * M_PI / std::sqrt(gm);
    const auto n = integrate(circular_start(gm), f, p, MotionModel::Newtonian, period / 2000, 2000);
    for (auto model : {MotionModel::Linear, MotionModel::Full}) {
      const auto m = integrate(circular_start(gm), f, p, model, period / 2000, 2000);
      double worst = 0.0;
      for (std::size_t i = 0; i < n.samples.size(); ++i)
        worst = std::max(worst, norm(n.samples[i].state.event.position() - m.samples[i].state.event.position()));
      CHECK(worst < 1e-6);
      CHECK(worst < 100.0 * gm);
    }
  }

  TEST_CASE("audited energy is constant in a static field") {
    const double gm = 1e-3;
    const PotentialField f = make_field(
        CatalogSpec::product({CatalogSpec::point_mass(gm), CatalogSpec::point_charge(1e-4)}), kScaled);
    const Particle p = make_particle(1.0, 0.5, 1.0);
    const ParticleState init{Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0.0, 0.025, 0.0}, 1.0)};
    for (auto model : {MotionModel::Newtonian, MotionModel::Full}) {
      const Trajectory tr = integrate(init, f, p, model, 0.25, 8000);
      const double e0 = tr.samples.front().audited_energy;
      double worst = 0.0;
      for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.audited_energy - e0));
      CHECK(worst < 1e-6 * gm);
    }
  }

  TEST_CASE("LINEAR needs a frame at rest") {
    const PotentialField f = make_field(CatalogSpec::rotating_frame(0.1), kScaled);
    const ParticleState s{Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0.0, 0.0, 0.0}, 1.0)};
    try {
      acceleration(s, f, make_particle(1.0, 0.0, 1.0), MotionModel::Linear);
      FAIL("expected a frame error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Frame);
    }
  }

  TEST_CASE("integration aborts on norm drift beyond the bound") {
    const PotentialField f = make_field(CatalogSpec::point_mass(1e-2), kScaled);
    const ParticleState init{Event{0.2, 0.0, 0.0, 0.0}, four_velocity({0.0, 0.2, 0.0}, 1.0)};
    IntegrateOptions o;
    o.norm_bound = 1e-14;
    try {
      integrate(init, f, make_particle(1.0, 0.0, 1.0), MotionModel::Newtonian, 5.0, 50, o);
      FAIL("expected a numerical error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Numerical);
      CHECK(std::string(e.what()).find("tau") != std::string::npos);
    }
  }

  TEST_CASE("renormalization keeps dot(V, V) = 1") {
    const PotentialField f = make_field(CatalogSpec::point_mass(1e-2), kScaled);
    const ParticleState init{Event{0.2, 0.0, 0.0, 0.0}, four_velocity({0.0, 0.2, 0.0}, 1.0)};
    IntegrateOptions o;
    o.renormalize = true;
    const Trajectory tr = integrate(init, f, make_particle(1.0, 0.0, 1.0), MotionModel::Newtonian, 0.5, 50, o);
    CHECK(tr.samples.back().norm_drift < 1e-14);
  }

  TEST_CASE("impulse = m v - e A / c") {
    const Vec3 p = impulse(make_particle(2.0, 3.0, 1.0), {1.0, 0.0, 0.0}, {4.0, 0.0, 0.0}, 1.0, 1.0);
    CHECK(p[0] == doctest::Approx(-10.0));
    CHECK(p[1] == 0.0);
    const Vec3 q = impulse(make_particle(2.0, 0.0, 1.0), {1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, 1.0, 1.0);
    CHECK(q[2] == 6.0);
  }

  TEST_CASE("model names") {
    CHECK(parse_motion_model("linear") == MotionModel::Linear);
    CHECK(std::string(to_string(MotionModel::Full)) == "full");
    CHECK_THROWS_AS(parse_motion_model("geodesic"), Error);
  }
}
