#pragma once

#include <string>
#include <variant>
#include <vector>

#include "primel/io.hpp"

namespace primel {

// Catalog name grammar:
//   group := "constant:" n ("x" n)* | "mu:" N | "alpha:" p
//          | "oort-tate:" p ":" a | "raynaud:" p ":" d ("," d)*
//   tower := "tower:" ("mu:" p ":" r | "constant:" p ":" r ":" h
//          | "product:" tower "+" tower)
//   ring  := "z" | "q" | "zmod:" N

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline unsigned long parse_count(const std::string& s, const char* what, unsigned long lo,
                                 unsigned long hi) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(errc::parse_error, std::string(what) + " '" + s + "' is not a positive integer");
  mpz_class n;
  mpz_set_str(n.get_mpz_t(), s.c_str(), 10);
  if (n < static_cast<long>(lo) || n > static_cast<long>(hi))
    fail(errc::parse_error,
         std::string(what) + " '" + s + "' out of range [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "]");
  return n.get_ui();
}

inline unsigned long parse_prime(const std::string& s) {
  unsigned long p = parse_count(s, "prime", 2, 97);
  mpz_class pz(static_cast<unsigned long>(p));
  if (mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
    fail(errc::parse_error, "'" + s + "' is not prime");
  return p;
}

}  // namespace detail

inline ring parse_ring(const std::string& spec) {
  if (spec == "z") return ring::integers();
  if (spec == "q") return ring::rationals();
  if (spec.rfind("zmod:", 0) == 0) {
    std::string tail = spec.substr(5);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
      fail(errc::parse_error, "bad modulus '" + tail + "'");
    mpz_class n;
    mpz_set_str(n.get_mpz_t(), tail.c_str(), 10);
    if (n < 2) fail(errc::parse_error, "modulus must be >= 2");
    return ring::int_mod(n);
  }
  fail(errc::parse_error, "unknown ring spec '" + spec + "' (want z, q, or zmod:<N>)");
}

inline group_object parse_group(const std::string& spec, const ring& k) {
  if (spec.rfind("constant:", 0) == 0) {
    std::vector<unsigned long> orders;
    for (const auto& part : detail::split(spec.substr(9), 'x'))
      orders.push_back(detail::parse_count(part, "cyclic order", 1, 256));
    return constant_group(orders, k);
  }
  if (spec.rfind("mu:", 0) == 0)
    return diagonalizable_group({detail::parse_count(spec.substr(3), "order", 1, 256)}, k);
  if (spec.rfind("alpha:", 0) == 0) return alpha_p(detail::parse_prime(spec.substr(6)), k);
  if (spec.rfind("oort-tate:", 0) == 0) {
    auto parts = detail::split(spec.substr(10), ':');
    if (parts.size() != 2) fail(errc::parse_error, "want oort-tate:<p>:<a>");
    return oort_tate_algebra(detail::parse_prime(parts[0]), k.parse(parts[1]), k);
  }
  if (spec.rfind("raynaud:", 0) == 0) {
    auto parts = detail::split(spec.substr(8), ':');
    if (parts.size() != 2) fail(errc::parse_error, "want raynaud:<p>:<d1>,...,<dn>");
    unsigned long p = detail::parse_prime(parts[0]);
    std::vector<scalar> deltas;
    for (const auto& d : detail::split(parts[1], ',')) deltas.push_back(k.parse(d));
    if (deltas.size() > 8) fail(errc::parse_error, "raynaud rank p^n too large");
    return raynaud_algebra(p, deltas, k);
  }
  fail(errc::parse_error, "unknown group spec '" + spec + "'");
}

inline tower parse_tower(const std::string& spec, const ring& k) {
  if (spec.rfind("tower:", 0) != 0)
    fail(errc::parse_error, "tower spec must start with 'tower:'");
  std::string body = spec.substr(6);
  if (body.rfind("mu:", 0) == 0) {
    auto parts = detail::split(body.substr(3), ':');
    if (parts.size() != 2) fail(errc::parse_error, "want tower:mu:<p>:<r>");
    return mu_tower(detail::parse_prime(parts[0]),
                    detail::parse_count(parts[1], "length", 1, 4), k);
  }
  if (body.rfind("constant:", 0) == 0) {
    auto parts = detail::split(body.substr(9), ':');
    if (parts.size() != 3) fail(errc::parse_error, "want tower:constant:<p>:<r>:<h>");
    return constant_tower(detail::parse_prime(parts[0]),
                          detail::parse_count(parts[1], "length", 1, 4),
                          detail::parse_count(parts[2], "height", 1, 4), k);
  }
  if (body.rfind("product:", 0) == 0) {
    std::string operands = body.substr(8);
    // The left operand is itself a tower spec; try each '+' as the split.
    for (std::size_t pos = operands.find('+'); pos != std::string::npos;
         pos = operands.find('+', pos + 1)) {
      try {
        tower left = parse_tower(operands.substr(0, pos), k);
        tower right = parse_tower(operands.substr(pos + 1), k);
        return tower_product(left, right);
      } catch (const error& e) {
        if (e.code() != errc::parse_error) throw;
      }
    }
    fail(errc::parse_error, "want tower:product:<tower>+<tower>");
  }
  fail(errc::parse_error, "unknown tower spec '" + spec + "'");
}

}  // namespace primel
