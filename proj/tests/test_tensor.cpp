#include <doctest.h>

#include "test_util.hpp"
#include "unigrav/error.hpp"
#include "unigrav/tensor.hpp"

using namespace unigrav;

TEST_SUITE("tensor") {
  TEST_CASE("complex coordinates use x4 = ict") {
    const FourVector x = complex_coords(Event{1.0, 2.0, 3.0, 0.5}, 2.0);
    CHECK(x[0] == Complex(1.0));
    CHECK(x[2] == Complex(3.0));
    CHECK(x[3] == Complex(0.0, 1.0));
  }

  TEST_CASE("dot is bilinear without conjugation") {
    const FourVector n{{1.0, 0.0, 0.0, kI}};
    CHECK(std::abs(dot(n, n)) == 0.0);
    const FourVector a{{Complex(1, 2), 0.0, 0.0, 0.0}};
    CHECK(dot(a, a) == Complex(-3.0, 4.0));
  }

  TEST_CASE("matrix algebra") {
    Matrix4 a;
    a(0, 1) = 2.0;
    a(1, 0) = -2.0;
    a(2, 3) = kI;
    a(3, 2) = -kI;
    CHECK(antisymmetry_defect(a) == 0.0);
    CHECK(max_norm(a) == 2.0);
    CHECK(max_norm(a * Matrix4::identity() - a) == 0.0);
    CHECK(max_norm(transpose(a) + a) == 0.0);

    Matrix4 upper;
    upper(0, 2) = 5.0;
    upper(2, 0) = 99.0;
    const Matrix4 anti = antisymmetrize_from_upper(upper);
    CHECK(anti(2, 0) == Complex(-5.0));
    CHECK(anti(0, 0) == Complex(0.0));

    const FourVector x{{1.0, 1.0, 0.0, 0.0}};
    CHECK((a * x)[0] == Complex(2.0));
    CHECK((a * x)[1] == Complex(-2.0));
  }

  TEST_CASE("orthogonality check") {
    Matrix4 r = Matrix4::identity();
    const double th = 0.3;
    r(0, 0) = std::cos(th);
    r(0, 1) = -std::sin(th);
    r(1, 0) = std::sin(th);
    r(1, 1) = std::cos(th);
    CHECK(is_orthogonal(r, 1e-14));
    // complex boost in the (x1, x4) plane is orthogonal under A A^t = I
    Matrix4 b = Matrix4::identity();
    const double g = 1.25, bg = 0.75;  // g^2 - (bg)^2 = 1
    b(0, 0) = g;
    b(0, 3) = Complex(0.0, bg);
    b(3, 0) = Complex(0.0, -bg);
    b(3, 3) = g;
    CHECK(is_orthogonal(b, 1e-14));
    r(0, 0) += 1e-6;
    CHECK_FALSE(is_orthogonal(r, 1e-9));
    CHECK_THROWS_AS(is_orthogonal(r, 0.0), Error);
  }

  TEST_CASE("central differences") {
    auto sq = [](const Event& e) { return e.x1 * e.x1; };
    CHECK(std::abs(partial_derivative(sq, Event{3.0, 0, 0, 0}, Axis::x1, 1e-3, 1.0) - 6.0) < 1e-9);
    CHECK(std::abs(partial_derivative(sq, Event{3.0, 0, 0, 0}, Axis::x2, 1e-3, 1.0)) == 0.0);

    // d/dx4 = (1/(ic)) d/dt
    auto lin_t = [](const Event& e) { return Complex(e.t); };
    const Complex dt = partial_derivative(lin_t, Event{0, 0, 0, 1.0}, Axis::x4, 1e-3, 2.0);
    CHECK(std::abs(dt - 1.0 / (kI * 2.0)) < 1e-9);

    auto quartic = [](const Event& e) { return std::pow(e.x2, 4); };
    const Event at{0.0, 1.0, 0.0, 0.0};
    const double plain = std::abs(partial_derivative(quartic, at, Axis::x2, 1e-2, 1.0) - 4.0);
    const double rich = std::abs(partial_derivative(quartic, at, Axis::x2, 1e-2, 1.0, Richardson::on) - 4.0);
    CHECK(plain > 1e-4);
    CHECK(rich < 1e-10);

    CHECK_THROWS_AS(partial_derivative(sq, at, Axis::x1, 0.0, 1.0), Error);
    auto blowup = [](const Event& e) { return 1.0 / (e.x1 * 0.0); };
    CHECK_THROWS_AS(partial_derivative(blowup, at, Axis::x1, 1e-3, 1.0), Error);
  }

  TEST_CASE("3-vector helpers") {
    const Vec3 x{1.0, 0.0, 0.0}, y{0.0, 1.0, 0.0};
    const Vec3 z = cross(x, y);
    CHECK(z[2] == 1.0);
    CHECK(dot3(x, y) == 0.0);
    CHECK(norm(Vec3{3.0, 4.0, 0.0}) == 5.0);
  }
}
