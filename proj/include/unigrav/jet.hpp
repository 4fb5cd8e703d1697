#pragma once

// First-order forward-mode derivatives with respect to the four real event
// coordinates (x1, x2, x3, t). Catalog fields are written in terms of Jet so
// their gradients are exact.

#include <array>
#include <cmath>
#include <complex>

namespace unigrav {

template <class T>
struct Jet {
  T v{};
  std::array<T, 4> d{};

  constexpr Jet() = default;
  constexpr Jet(T value) : v(value) {}  // NOLINT: implicit constant lift
  constexpr Jet(T value, const std::array<T, 4>& grad) : v(value), d(grad) {}

  /// Coordinate jet: value with unit derivative along `axis`.
  static Jet variable(T value, int axis) {
    Jet j(value);
    j.d[static_cast<std::size_t>(axis)] = T(1);
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (std::size_t i = 0; i < 4; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (std::size_t i = 0; i < 4; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (std::size_t i = 0; i < 4; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const T inv = T(1) / o.v;
    for (std::size_t i = 0; i < 4; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
  Jet operator-() const {
    Jet r = *this;
    r.v = -r.v;
    for (auto& x : r.d) x = -x;
    return r;
  }
};

template <class T> Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <class T> Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <class T> Jet<T> operator*(Jet<T> a, const Jet<T>& b) { return a *= b; }
template <class T> Jet<T> operator/(Jet<T> a, const Jet<T>& b) { return a /= b; }
template <class T> Jet<T> operator+(Jet<T> a, T b) { a.v += b; return a; }
template <class T> Jet<T> operator+(T b, Jet<T> a) { a.v += b; return a; }
template <class T> Jet<T> operator-(Jet<T> a, T b) { a.v -= b; return a; }
template <class T> Jet<T> operator-(T b, const Jet<T>& a) { return Jet<T>(b) - a; }
template <class T> Jet<T> operator*(Jet<T> a, T s) {
  a.v *= s;
  for (auto& x : a.d) x *= s;
  return a;
}
template <class T> Jet<T> operator*(T s, Jet<T> a) { return a * s; }
template <class T> Jet<T> operator/(Jet<T> a, T s) { return a * (T(1) / s); }
template <class T> Jet<T> operator/(T s, const Jet<T>& a) { return Jet<T>(s) / a; }

template <class T>
Jet<T> sqrt(const Jet<T>& a) {
  using std::sqrt;
  const T r = sqrt(a.v);
  Jet<T> out(r);
  const T k = T(0.5) / r;
  for (std::size_t i = 0; i < 4; ++i) out.d[i] = k * a.d[i];
  return out;
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  Jet<T> out(log(a.v));
  for (std::size_t i = 0; i < 4; ++i) out.d[i] = a.d[i] / a.v;
  return out;
}

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

inline CJet to_complex(const RJet& a) {
  CJet out(a.v);
  for (std::size_t i = 0; i < 4; ++i) out.d[i] = a.d[i];
  return out;
}

}  // namespace unigrav
