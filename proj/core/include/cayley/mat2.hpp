#pragma once

#include <array>
#include <string>

#include "cayley/field.hpp"

namespace cayley {

enum class MatShape { diagonal, upper_triangular, lower_triangular, full };

const char* shape_name(MatShape s);

/// 2x2 matrix over a field, row-major [[a, b], [c, d]]. Determinant is always
/// computed on demand; SL2 membership is a predicate, not a constructor
/// constraint (Tillich-Zemor generators have det = -1 for odd p).
class Mat2 {
 public:
  Mat2() = default;
  Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

  static Mat2 identity(const SpecPtr& spec);

  const FieldElement& a() const { return e_[0]; }
  const FieldElement& b() const { return e_[1]; }
  const FieldElement& c() const { return e_[2]; }
  const FieldElement& d() const { return e_[3]; }
  const FieldElement& at(int row, int col) const { return e_[row * 2 + col]; }
  const SpecPtr& spec() const { return e_[0].spec(); }

  Mat2 operator*(const Mat2& o) const;
  bool operator==(const Mat2& o) const;
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  FieldElement det() const;
  bool is_identity() const;
  std::string pretty() const;  // "(4812 5537; 4987 1690)" with z-notation entries
  u64 stable_hash() const;

 private:
  std::array<FieldElement, 4> e_;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_pow(Mat2 x, u64 e);
MatShape shape(const Mat2& x);

}  // namespace cayley
