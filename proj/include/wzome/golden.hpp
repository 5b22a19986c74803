#pragma once

// Exact arithmetic in Q(phi), phi^2 = phi + 1, with exact linear algebra.
// All values are immutable after construction and safe to share across threads.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wz {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (GMP keeps mpq_t canonical through arithmetic).
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

// True iff r is the square of a rational; the root (>= 0) is returned.
std::optional<Rational> rational_sqrt(const Rational& r);

std::size_t rational_hash(const Rational& r);

// Error codes shared across the library; the CLI maps them to exit codes.
enum class Errc { parse = 2, geometry = 3, constructibility = 4, io = 5 };

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// An element a + b*phi of Q(phi).
class Golden {
 public:
  Golden() : a_(0), b_(0) {}
  // mpq_class(p, q) does not reduce p/q; normalize here so every Golden is
  // safe to hash and compare no matter how its parts were built.
  Golden(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  Golden(long n) : a_(n), b_(0) {}  // NOLINT: implicit on purpose

  static Golden phi() { return Golden(0, 1); }
  static Golden from_string(const std::string& s);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  Golden operator+(const Golden& o) const { return {a_ + o.a_, b_ + o.b_}; }
  Golden operator-(const Golden& o) const { return {a_ - o.a_, b_ - o.b_}; }
  Golden operator-() const { return {-a_, -b_}; }
  Golden operator*(const Golden& o) const {
    Rational bd = b_ * o.b_;
    return {a_ * o.a_ + bd, a_ * o.b_ + b_ * o.a_ + bd};
  }
  Golden inverse() const;
  Golden operator/(const Golden& o) const { return *this * o.inverse(); }
  Golden& operator+=(const Golden& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Golden& operator-=(const Golden& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Golden& operator*=(const Golden& o) { *this = *this * o; return *this; }

  bool operator==(const Golden& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Golden& o) const { return !(*this == o); }

  // Sign of a + b*(1+sqrt 5)/2 as a real number, decided exactly.
  int sign() const;
  bool operator<(const Golden& o) const { return (*this - o).sign() < 0; }
  bool operator>(const Golden& o) const { return (*this - o).sign() > 0; }

  // Field automorphism phi -> 1 - phi.
  Golden conjugate() const { return {a_ + b_, -b_}; }

  // Field norm x * conj(x) = a^2 + ab - b^2; rational.
  Rational field_norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

  double to_double() const;
  std::string to_string() const;  // canonical "a+b*phi" / "a-b*phi"

 private:
  Rational a_, b_;
};

// Positive square root in Q(phi) if one exists.
std::optional<Golden> golden_sqrt(const Golden& x);

std::size_t golden_hash(const Golden& x);

using GVec = std::vector<Golden>;

GVec gvec_add(const GVec& u, const GVec& v);
GVec gvec_sub(const GVec& u, const GVec& v);
GVec gvec_scale(const Golden& c, const GVec& v);
Golden gvec_dot(const GVec& u, const GVec& v);
bool gvec_is_zero(const GVec& v);
GVec gvec_cross3(const GVec& u, const GVec& v);

std::size_t gvec_hash(const GVec& v);

struct GVecHash {
  std::size_t operator()(const GVec& v) const { return gvec_hash(v); }
};

// Dense matrix over Q(phi), row major.
class GMat {
 public:
  GMat() = default;
  GMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, GVec(cols)) {}
  static GMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GVec& row(int i) { return data_[i]; }
  const GVec& row(int i) const { return data_[i]; }
  Golden& at(int i, int j) { return data_[i][j]; }
  const Golden& at(int i, int j) const { return data_[i][j]; }

  GMat operator*(const GMat& o) const;
  GVec apply(const GVec& x) const;  // matrix * column vector
  GMat transpose() const;
  bool operator==(const GMat& o) const { return data_ == o.data_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<GVec> data_;
};

// Exact solve A x = b for square nonsingular A; throws Error(geometry)
// carrying the rank found when A is singular.
GVec solve_linear(const GMat& a, const GVec& b);

// Rank of the row span, with optional early exit once `cap` is reached.
int gmat_rank(std::vector<GVec> rows, int cap = -1);

}  // namespace wz
