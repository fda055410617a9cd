#pragma once

#include <stdexcept>
#include <string>

namespace primel {

/// Failure codes raised by validating constructors and checked operations.
enum class errc {
  ring_mismatch,
  shape_mismatch,
  unsupported_ring,
  unsupported_hom,
  bad_modulus,
  not_invertible,
  non_commutative,
  non_associative,
  bad_unit,
  bad_counit,
  not_coassociative,
  counit_law_fails,
  not_bialgebra,
  not_cocommutative,
  antipode_fails,
  not_free,
  rank_not_one,
  rank_mismatch,
  not_injective,
  not_surjective,
  kernel_mismatch,
  not_hopf_hom,
  input_not_invariant,
  lift_failed,
  characteristic_mismatch,
  invalid_point,
  parse_error,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::ring_mismatch: return "ring_mismatch";
    case errc::shape_mismatch: return "shape_mismatch";
    case errc::unsupported_ring: return "unsupported_ring";
    case errc::unsupported_hom: return "unsupported_hom";
    case errc::bad_modulus: return "bad_modulus";
    case errc::not_invertible: return "not_invertible";
    case errc::non_commutative: return "non_commutative";
    case errc::non_associative: return "non_associative";
    case errc::bad_unit: return "bad_unit";
    case errc::bad_counit: return "bad_counit";
    case errc::not_coassociative: return "not_coassociative";
    case errc::counit_law_fails: return "counit_law_fails";
    case errc::not_bialgebra: return "not_bialgebra";
    case errc::not_cocommutative: return "not_cocommutative";
    case errc::antipode_fails: return "antipode_fails";
    case errc::not_free: return "not_free";
    case errc::rank_not_one: return "rank_not_one";
    case errc::rank_mismatch: return "rank_mismatch";
    case errc::not_injective: return "not_injective";
    case errc::not_surjective: return "not_surjective";
    case errc::kernel_mismatch: return "kernel_mismatch";
    case errc::not_hopf_hom: return "not_hopf_hom";
    case errc::input_not_invariant: return "input_not_invariant";
    case errc::lift_failed: return "lift_failed";
    case errc::characteristic_mismatch: return "characteristic_mismatch";
    case errc::invalid_point: return "invalid_point";
    case errc::parse_error: return "parse_error";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace primel
