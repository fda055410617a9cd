#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "primel/errors.hpp"

namespace primel {

/// Exact ring element. Over the integers and Z/N the denominator is always 1;
/// over Q values are kept in lowest terms with positive denominator (mpq
/// canonical form). All arithmetic goes through a `ring`, which maintains the
/// canonical representative (residues in [0, N) over Z/N).
using scalar = mpq_class;

enum class ring_kind { integers, rationals, int_mod };

class ring {
 public:
  ring() : kind_(ring_kind::integers), modulus_(0) {}

  static ring integers() { return ring(ring_kind::integers, 0); }
  static ring rationals() { return ring(ring_kind::rationals, 0); }
  static ring int_mod(mpz_class n) {
    if (n < 2) fail(errc::bad_modulus, "modulus must be >= 2, got " + n.get_str());
    return ring(ring_kind::int_mod, std::move(n));
  }

  ring_kind kind() const noexcept { return kind_; }
  const mpz_class& modulus() const { return modulus_; }
  bool is_field() const {
    // Used only for pivoting shortcuts; Z/N with N composite is not one.
    return kind_ == ring_kind::rationals;
  }

  friend bool operator==(const ring& a, const ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const ring& a, const ring& b) { return !(a == b); }

  scalar zero() const { return scalar(0); }
  scalar one() const { return reduce(scalar(1)); }

  scalar from_int(long v) const { return reduce(scalar(v)); }
  scalar from_mpz(const mpz_class& v) const { return reduce(scalar(v)); }

  /// Canonical representative of v in this ring.
  scalar reduce(const scalar& v) const {
    switch (kind_) {
      case ring_kind::integers:
        if (v.get_den() != 1) fail(errc::ring_mismatch, "non-integer value over Z");
        return v;
      case ring_kind::rationals: {
        scalar c = v;
        c.canonicalize();
        return c;
      }
      case ring_kind::int_mod: {
        if (v.get_den() != 1) fail(errc::ring_mismatch, "non-integer value over Z/N");
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t());
        return scalar(r);
      }
    }
    fail(errc::internal, "bad ring kind");
  }

  scalar add(const scalar& a, const scalar& b) const { return reduce(scalar(a + b)); }
  scalar sub(const scalar& a, const scalar& b) const { return reduce(scalar(a - b)); }
  scalar mul(const scalar& a, const scalar& b) const { return reduce(scalar(a * b)); }
  scalar neg(const scalar& a) const { return reduce(scalar(-a)); }

  bool is_zero(const scalar& a) const { return sgn(a) == 0; }
  bool equal(const scalar& a, const scalar& b) const { return a == b; }

  bool is_unit(const scalar& a) const {
    switch (kind_) {
      case ring_kind::integers: return a == 1 || a == -1;
      case ring_kind::rationals: return sgn(a) != 0;
      case ring_kind::int_mod: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), modulus_.get_mpz_t());
        return g == 1;
      }
    }
    return false;
  }

  scalar inv(const scalar& a) const {
    switch (kind_) {
      case ring_kind::integers:
        if (!is_unit(a)) fail(errc::not_invertible, "not a unit in Z");
        return a;
      case ring_kind::rationals:
        if (sgn(a) == 0) fail(errc::not_invertible, "division by zero");
        return reduce(scalar(1 / a));
      case ring_kind::int_mod: {
        mpz_class r;
        if (!mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), modulus_.get_mpz_t()))
          fail(errc::not_invertible, "not a unit mod " + modulus_.get_str());
        return scalar(r);
      }
    }
    fail(errc::internal, "bad ring kind");
  }

  /// Some x with a*x = b, if one exists.
  std::optional<scalar> divide(const scalar& b, const scalar& a) const {
    switch (kind_) {
      case ring_kind::integers: {
        if (sgn(a) == 0) return is_zero(b) ? std::optional<scalar>(zero()) : std::nullopt;
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), b.get_num().get_mpz_t(),
                    a.get_num().get_mpz_t());
        if (r != 0) return std::nullopt;
        return scalar(q);
      }
      case ring_kind::rationals:
        if (sgn(a) == 0) return is_zero(b) ? std::optional<scalar>(zero()) : std::nullopt;
        return reduce(scalar(b / a));
      case ring_kind::int_mod: {
        // a*x = b mod N is solvable iff gcd(a, N) | b.
        mpz_class g, u, w;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), a.get_num().get_mpz_t(),
                   modulus_.get_mpz_t());
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), b.get_num().get_mpz_t(), g.get_mpz_t());
        if (r != 0) return std::nullopt;
        mpz_class x = (b.get_num() / g) * u;
        return reduce(scalar(x));
      }
    }
    return std::nullopt;
  }

  /// Unit u such that u*a is the canonical associate of a (|a| over Z, 1 over
  /// Q, gcd(a, N) over Z/N).
  scalar canonical_unit(const scalar& a) const {
    switch (kind_) {
      case ring_kind::integers: return scalar(sgn(a) < 0 ? -1 : 1);
      case ring_kind::rationals: return sgn(a) == 0 ? scalar(1) : inv(a);
      case ring_kind::int_mod: {
        if (is_zero(a)) return one();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), modulus_.get_mpz_t());
        mpz_class ared = a.get_num() / g, nred = modulus_ / g;
        mpz_class u0;
        mpz_invert(u0.get_mpz_t(), ared.get_mpz_t(), nred.get_mpz_t());
        // Lift u0 to a unit mod N: walk the congruence class mod N/g.
        mpz_class u = u0, gg;
        for (;;) {
          mpz_gcd(gg.get_mpz_t(), u.get_mpz_t(), modulus_.get_mpz_t());
          if (gg == 1) break;
          u += nred;
        }
        return reduce(scalar(u));
      }
    }
    fail(errc::internal, "bad ring kind");
  }

  std::string to_string(const scalar& a) const {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
  }

  /// Like to_string, but residues mod N print in the balanced range
  /// (-N/2, N/2] so e.g. 6 mod 9 reads "-3".
  std::string display(const scalar& a) const {
    if (kind_ == ring_kind::int_mod) {
      mpz_class v = a.get_num();
      if (2 * v > modulus_) v -= modulus_;
      return v.get_str();
    }
    return to_string(a);
  }

  scalar parse(const std::string& text) const {
    scalar v;
    if (kind_ == ring_kind::rationals) {
      if (mpq_set_str(v.get_mpq_t(), text.c_str(), 10) != 0)
        fail(errc::parse_error, "bad rational literal '" + text + "'");
      if (v.get_den() == 0) fail(errc::parse_error, "zero denominator in '" + text + "'");
      v.canonicalize();
      return v;
    }
    mpz_class n;
    if (mpz_set_str(n.get_mpz_t(), text.c_str(), 10) != 0)
      fail(errc::parse_error, "bad integer literal '" + text + "'");
    return reduce(scalar(n));
  }

  std::string name() const {
    switch (kind_) {
      case ring_kind::integers: return "z";
      case ring_kind::rationals: return "q";
      case ring_kind::int_mod: return "zmod:" + modulus_.get_str();
    }
    return "?";
  }

 private:
  ring(ring_kind k, mpz_class n) : kind_(k), modulus_(std::move(n)) {}

  ring_kind kind_;
  mpz_class modulus_;
};

/// A supported base-change map between catalog rings: the identity, Z -> Q,
/// Z -> Z/N, or Z/N -> Z/M with M | N.
class ring_hom {
 public:
  ring_hom(ring src, ring dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_ == dst_) return;
    if (src_.kind() == ring_kind::integers &&
        (dst_.kind() == ring_kind::rationals || dst_.kind() == ring_kind::int_mod))
      return;
    if (src_.kind() == ring_kind::int_mod && dst_.kind() == ring_kind::int_mod &&
        src_.modulus() % dst_.modulus() == 0)
      return;
    fail(errc::unsupported_hom, src_.name() + " -> " + dst_.name());
  }

  static ring_hom identity(const ring& r) { return ring_hom(r, r); }

  const ring& src() const { return src_; }
  const ring& dst() const { return dst_; }
  bool is_identity() const { return src_ == dst_; }

  scalar apply(const scalar& v) const { return dst_.reduce(v); }

 private:
  ring src_, dst_;
};

}  // namespace primel
