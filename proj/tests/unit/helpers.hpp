#pragma once

#include <initializer_list>
#include <vector>

#include "invt/cyclotomic.hpp"
#include "invt/finite_field.hpp"
#include "invt/matrix.hpp"

namespace testutil {

inline invt::Matrix<invt::CyclotomicField> qmat(std::initializer_list<std::initializer_list<long>> rows,
                                                 int conductor = 1) {
  invt::CyclotomicField f(conductor);
  int r = static_cast<int>(rows.size()), c = static_cast<int>(rows.begin()->size());
  invt::Matrix<invt::CyclotomicField> m(f, r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (long v : row) m(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

inline invt::Matrix<invt::FiniteField> gfmat(const invt::FiniteField& f,
                                              std::initializer_list<std::initializer_list<long>> rows) {
  int r = static_cast<int>(rows.size()), c = static_cast<int>(rows.begin()->size());
  invt::Matrix<invt::FiniteField> m(f, r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (long v : row) m(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

inline long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace testutil
