#include "cayley/mat2.hpp"

#include <sstream>

namespace cayley {

const char* shape_name(MatShape s) {
  switch (s) {
    case MatShape::diagonal: return "diagonal";
    case MatShape::upper_triangular: return "upper_triangular";
    case MatShape::lower_triangular: return "lower_triangular";
    case MatShape::full: return "full";
  }
  return "unknown";
}

Mat2::Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  for (int i = 1; i < 4; ++i) {
    if (!e_[0].spec()->same(*e_[i].spec())) raise(ErrorCode::SpecMismatch, "matrix entries from different fields");
  }
}

Mat2 Mat2::identity(const SpecPtr& spec) {
  return Mat2(spec->one(), spec->zero(), spec->zero(), spec->one());
}

Mat2 Mat2::operator*(const Mat2& o) const {
  if (!spec()->same(*o.spec())) raise(ErrorCode::SpecMismatch, "matrices over different fields");
  return Mat2(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
              e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
}

bool Mat2::operator==(const Mat2& o) const {
  return e_[0] == o.e_[0] && e_[1] == o.e_[1] && e_[2] == o.e_[2] && e_[3] == o.e_[3];
}

FieldElement Mat2::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

bool Mat2::is_identity() const {
  return e_[0].is_one() && e_[1].is_zero() && e_[2].is_zero() && e_[3].is_one();
}

std::string Mat2::pretty() const {
  std::ostringstream os;
  os << '(' << e_[0].pretty() << ' ' << e_[1].pretty() << "; " << e_[2].pretty() << ' ' << e_[3].pretty() << ')';
  return os.str();
}

u64 Mat2::stable_hash() const {
  u64 h = 14695981039346656037ull;
  for (const auto& e : e_) {
    h ^= e.stable_hash();
    h *= 1099511628211ull;
  }
  return h;
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) { return x * y; }

Mat2 mat_pow(Mat2 x, u64 e) {
  Mat2 acc = Mat2::identity(x.spec());
  while (e) {
    if (e & 1) acc = acc * x;
    x = x * x;
    e >>= 1;
  }
  return acc;
}

MatShape shape(const Mat2& x) {
  bool b0 = x.b().is_zero();
  bool c0 = x.c().is_zero();
  if (b0 && c0) return MatShape::diagonal;
  if (c0) return MatShape::upper_triangular;
  if (b0) return MatShape::lower_triangular;
  return MatShape::full;
}

}  // namespace cayley
