#pragma once

#include <cstddef>
#include <vector>

namespace lfunkit::detail {

// Dense truncated power series with plain-value coefficients. Length fixes
// the truncation order; all operations truncate to the shorter input.
template <class T>
struct Series {
  std::vector<T> c;

  Series() = default;
  explicit Series(std::size_t n) : c(n, T(0)) {}

  std::size_t size() const { return c.size(); }
  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }
};

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b, std::size_t n) {
  Series<T> r(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
      r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

// a / b with b[0] != 0
template <class T>
Series<T> div(const Series<T>& a, const Series<T>& b, std::size_t n) {
  Series<T> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    T acc = i < a.size() ? a.c[i] : T(0);
    for (std::size_t j = 1; j <= i && j < b.size(); ++j) acc -= b.c[j] * r.c[i - j];
    r.c[i] = acc / b.c[0];
  }
  return r;
}

// exp(s) with s[0] = 0; exp0 supplies exp of the constant term if nonzero
template <class T>
Series<T> exp_series(const Series<T>& s, std::size_t n, const T& exp0) {
  Series<T> r(n);
  r.c[0] = exp0;
  for (std::size_t k = 1; k < n; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k && j < s.size(); ++j)
      acc += T(static_cast<long>(j)) * s.c[j] * r.c[k - j];
    r.c[k] = acc / T(static_cast<long>(k));
  }
  return r;
}

// multiply in place by the linear factor (a + eps)
template <class T>
void mul_linear(Series<T>& s, const T& a) {
  for (std::size_t i = s.size(); i-- > 0;) {
    T v = s.c[i] * a;
    if (i > 0) v += s.c[i - 1];
    s.c[i] = v;
  }
}

// divide in place by the linear factor (a + eps), a != 0
template <class T>
void div_linear(Series<T>& s, const T& a) {
  T prev(0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    T v = (s.c[i] - prev) / a;
    s.c[i] = v;
    prev = v;
  }
}

}  // namespace lfunkit::detail
