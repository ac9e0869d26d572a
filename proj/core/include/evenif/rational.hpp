#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace evenif {

/// Exact rational scalar backed by arbitrary-precision integers.
///
/// Values are always kept in lowest terms with a positive denominator, and
/// every operation (arithmetic and comparison) is exact; nothing ever
/// rounds. This matters: the step function's decision at a score of exactly
/// zero and the stability of score sorts both depend on exact sign tests.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long value) : v_(value) {}  // NOLINT: implicit by design
  Rational(long num, long den) : v_(num, den) { canonicalize(); }
  Rational(mpz_class num, mpz_class den)
      : v_(std::move(num), std::move(den)) {
    canonicalize();
  }
  explicit Rational(mpq_class value) : v_(std::move(value)) {
    v_.canonicalize();
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Lowest-terms text form: "p" when the denominator is 1, else "p/q".
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  void canonicalize() {
    if (v_.get_den() == 0) {
      throw std::invalid_argument("rational with zero denominator");
    }
    v_.canonicalize();
  }

  mpq_class v_;
};

}  // namespace evenif
