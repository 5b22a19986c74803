#include "wzome/golden.hpp"

#include <cctype>
#include <cmath>

namespace wz {

namespace {

int rat_sign(const Rational& r) { return sgn(r); }

std::size_t mpz_stable_hash(const mpz_class& z) {
  // FNV-1a over the limbs; independent of platform ASLR and run order.
  const mp_limb_t* limbs = mpz_limbs_read(z.get_mpz_t());
  std::size_t n = mpz_size(z.get_mpz_t());
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(limbs[i]);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  if (sgn(z) < 0) h ^= 0x9e3779b97f4a7c15ull;
  return static_cast<std::size_t>(h);
}

std::size_t hash_combine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

}  // namespace

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw Error(Errc::parse, "bad rational: '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw Error(Errc::parse, "zero denominator: '" + s + "'");
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

std::size_t rational_hash(const Rational& r) {
  return hash_combine(mpz_stable_hash(r.get_num()), mpz_stable_hash(r.get_den()));
}

Golden Golden::inverse() const {
  Rational n = field_norm();
  if (n == 0) throw Error(Errc::geometry, "division by zero golden scalar");
  return {(a_ + b_) / n, -b_ / n};
}

int Golden::sign() const {
  // sign(a + b*phi) = sign(t + b*sqrt5) with t = 2a + b.
  Rational t = 2 * a_ + b_;
  int st = rat_sign(t), sb = rat_sign(b_);
  if (st == sb || sb == 0) return st;
  if (st == 0) return sb;
  // st and sb differ and are both nonzero: compare t^2 against 5 b^2.
  Rational lhs = t * t, rhs = 5 * b_ * b_;
  if (lhs > rhs) return st;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for rationals unless both zero
}

double Golden::to_double() const {
  static const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
  return a_.get_d() + b_.get_d() * kPhi;
}

std::string Golden::to_string() const {
  std::string s = rational_to_string(a_);
  if (sgn(b_) >= 0) {
    s += "+" + rational_to_string(b_) + "*phi";
  } else {
    s += "-" + rational_to_string(Rational(-b_)) + "*phi";
  }
  return s;
}

Golden Golden::from_string(const std::string& text) {
  // Accepts "a", "a+b*phi", "a-b*phi", "b*phi", "phi", "-phi" with rational
  // a, b written as p or p/q.
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto parse_term = [&](Rational& a, Rational& b) {
    skip_ws();
    int sign = 1;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      skip_ws();
    }
    std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    std::string digits = text.substr(start, i - start);
    skip_ws();
    bool has_phi = false;
    if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
    if (text.compare(i, 3, "phi") == 0) { has_phi = true; i += 3; }
    Rational mag = digits.empty() ? Rational(1) : rational_from_string(digits);
    if (digits.empty() && !has_phi)
      throw Error(Errc::parse, "bad golden scalar: '" + text + "'");
    if (has_phi) b += sign * mag; else a += sign * mag;
    skip_ws();
  };
  Rational a(0), b(0);
  parse_term(a, b);
  if (i < text.size()) parse_term(a, b);
  skip_ws();
  if (i != text.size()) throw Error(Errc::parse, "bad golden scalar: '" + text + "'");
  return {a, b};
}

std::optional<Golden> golden_sqrt(const Golden& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_zero()) return Golden(0);
  // Work in the u + v*sqrt5 basis: x = (a + b/2) + (b/2) sqrt5.
  Rational u = x.a() + x.b() / 2;
  Rational v = x.b() / 2;
  // (p + q sqrt5)^2 = p^2 + 5 q^2 + 2pq sqrt5  =>  p^2 = (u +- s)/2 with
  // s = sqrt(u^2 - 5 v^2).
  auto s = rational_sqrt(u * u - 5 * v * v);
  if (!s) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    Rational p2 = branch == 0 ? Rational((u + *s) / 2) : Rational((u - *s) / 2);
    if (p2 == 0) {
      auto q = rational_sqrt(u / 5);
      if (!q) continue;
      Golden root(-*q, 2 * *q);  // q*sqrt5 = -q + 2q*phi
      return root.sign() >= 0 ? root : -root;
    }
    auto p = rational_sqrt(p2);
    if (!p) continue;
    Rational q = v / (2 * *p);
    Golden root(*p - q, 2 * q);
    if ((root * root) == x) return root.sign() >= 0 ? root : -root;
  }
  return std::nullopt;
}

std::size_t golden_hash(const Golden& x) {
  return hash_combine(rational_hash(x.a()), rational_hash(x.b()));
}

GVec gvec_add(const GVec& u, const GVec& v) {
  GVec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
  return r;
}

GVec gvec_sub(const GVec& u, const GVec& v) {
  GVec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] - v[i];
  return r;
}

GVec gvec_scale(const Golden& c, const GVec& v) {
  GVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Golden gvec_dot(const GVec& u, const GVec& v) {
  Golden s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool gvec_is_zero(const GVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

GVec gvec_cross3(const GVec& u, const GVec& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

std::size_t gvec_hash(const GVec& v) {
  std::size_t h = 14695981039346656037ull;
  for (const auto& x : v) h = hash_combine(h, golden_hash(x));
  return h;
}

GMat GMat::identity(int n) {
  GMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Golden(1);
  return m;
}

GMat GMat::operator*(const GMat& o) const {
  GMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (data_[i][k].is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += data_[i][k] * o.at(k, j);
    }
  return r;
}

GVec GMat::apply(const GVec& x) const {
  GVec r(rows_);
  for (int i = 0; i < rows_; ++i) r[i] = gvec_dot(data_[i], x);
  return r;
}

GMat GMat::transpose() const {
  GMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = data_[i][j];
  return r;
}

GVec solve_linear(const GMat& a, const GVec& b) {
  if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw Error(Errc::geometry, "solve_linear: shape mismatch");
  int n = a.rows();
  std::vector<GVec> m(n);
  GVec rhs = b;
  for (int i = 0; i < n; ++i) m[i] = a.row(i);
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (!m[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    std::swap(rhs[rank], rhs[piv]);
    Golden inv = m[rank][col].inverse();
    for (auto& x : m[rank]) x *= inv;
    rhs[rank] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      Golden f = m[r][col];
      for (int j = 0; j < n; ++j) m[r][j] -= f * m[rank][j];
      rhs[r] -= f * rhs[rank];
    }
    ++rank;
  }
  if (rank < n)
    throw Error(Errc::geometry,
                "solve_linear: singular matrix, rank " + std::to_string(rank));
  // After full elimination each row has a single unit pivot; rows were kept
  // in pivot-column order, so rhs is the solution.
  return rhs;
}

int gmat_rank(std::vector<GVec> rows, int cap) {
  if (rows.empty()) return 0;
  int cols = static_cast<int>(rows[0].size());
  int n = static_cast<int>(rows.size());
  int rank = 0;
  for (int col = 0; col < cols && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (!rows[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    Golden inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x *= inv;
    for (int r = rank + 1; r < n; ++r) {
      if (rows[r][col].is_zero()) continue;
      Golden f = rows[r][col];
      for (int j = col; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
    if (cap >= 0 && rank >= cap) return rank;
  }
  return rank;
}

}  // namespace wz
