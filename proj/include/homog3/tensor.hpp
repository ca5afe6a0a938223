#pragma once

#include <array>

#include "homog3/rational.hpp"

namespace homog3 {

/// Fixed dimension-3 tensors over a scalar ring T (Rational, or Poly when
/// components carry unknowns / a family parameter).

template <class T>
struct Vec3 {
  std::array<T, 3> v{};
  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }
  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r.v[i] = a.v[i] + b.v[i];
    return r;
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r.v[i] = a.v[i] - b.v[i];
    return r;
  }
  friend Vec3 operator*(const T& s, const Vec3& a) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r.v[i] = s * a.v[i];
    return r;
  }
  friend bool operator==(const Vec3&, const Vec3&) = default;
  bool is_zero() const {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  T dot(const Vec3& o) const {
    T s{};
    for (int i = 0; i < 3; ++i) s = s + v[i] * o.v[i];
    return s;
  }
};

template <class T>
struct Mat3 {
  std::array<T, 9> m{};
  T& operator()(int i, int j) { return m[i * 3 + j]; }
  const T& operator()(int i, int j) const { return m[i * 3 + j]; }
  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r(i, i) = T{Rational(1)};
    return r;
  }
  friend Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend Mat3 operator*(const T& s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
  }
  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
    return r;
  }
  friend bool operator==(const Mat3&, const Mat3&) = default;
  Vec3<T> apply(const Vec3<T>& x) const {
    Vec3<T> r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i] = r[i] + (*this)(i, j) * x[j];
    return r;
  }
  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  Mat3 commutator(const Mat3& o) const { return *this * o - o * *this; }
  T trace() const { return m[0] + m[4] + m[8]; }
  bool is_zero() const {
    for (const auto& x : m)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const { return *this == transposed(); }
  bool is_skew() const {
    Mat3 s = *this + transposed();
    return s.is_zero();
  }
};

template <class T>
struct Ten3 {
  std::array<T, 27> t{};
  T& operator()(int i, int j, int k) { return t[(i * 3 + j) * 3 + k]; }
  const T& operator()(int i, int j, int k) const { return t[(i * 3 + j) * 3 + k]; }
  friend Ten3 operator+(const Ten3& a, const Ten3& b) {
    Ten3 r;
    for (int i = 0; i < 27; ++i) r.t[i] = a.t[i] + b.t[i];
    return r;
  }
  friend Ten3 operator-(const Ten3& a, const Ten3& b) {
    Ten3 r;
    for (int i = 0; i < 27; ++i) r.t[i] = a.t[i] - b.t[i];
    return r;
  }
  friend Ten3 operator*(const T& s, const Ten3& a) {
    Ten3 r;
    for (int i = 0; i < 27; ++i) r.t[i] = s * a.t[i];
    return r;
  }
  friend bool operator==(const Ten3&, const Ten3&) = default;
  bool is_zero() const {
    for (const auto& x : t)
      if (!x.is_zero()) return false;
    return true;
  }
};

template <class T>
struct Ten4 {
  std::array<T, 81> t{};
  T& operator()(int i, int j, int k, int l) { return t[((i * 3 + j) * 3 + k) * 3 + l]; }
  const T& operator()(int i, int j, int k, int l) const { return t[((i * 3 + j) * 3 + k) * 3 + l]; }
  friend Ten4 operator+(const Ten4& a, const Ten4& b) {
    Ten4 r;
    for (int i = 0; i < 81; ++i) r.t[i] = a.t[i] + b.t[i];
    return r;
  }
  friend Ten4 operator-(const Ten4& a, const Ten4& b) {
    Ten4 r;
    for (int i = 0; i < 81; ++i) r.t[i] = a.t[i] - b.t[i];
    return r;
  }
  friend bool operator==(const Ten4&, const Ten4&) = default;
  bool is_zero() const {
    for (const auto& x : t)
      if (!x.is_zero()) return false;
    return true;
  }
};

using Vec3Q = Vec3<Rational>;
using Mat3Q = Mat3<Rational>;
using Ten3Q = Ten3<Rational>;
using Ten4Q = Ten4<Rational>;

template <class T, class U, class F>
Vec3<U> map_vec3(const Vec3<T>& a, F f) {
  Vec3<U> r;
  for (int i = 0; i < 3; ++i) r[i] = f(a[i]);
  return r;
}
template <class T, class U, class F>
Mat3<U> map_mat3(const Mat3<T>& a, F f) {
  Mat3<U> r;
  for (int i = 0; i < 9; ++i) r.m[i] = f(a.m[i]);
  return r;
}
template <class T, class U, class F>
Ten3<U> map_ten3(const Ten3<T>& a, F f) {
  Ten3<U> r;
  for (int i = 0; i < 27; ++i) r.t[i] = f(a.t[i]);
  return r;
}

}  // namespace homog3
