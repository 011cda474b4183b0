#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include "qalg/errors.hpp"

namespace qalg {

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::int64_t p = 0;  // modulus, set iff kind == PrimeField

  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
  static FieldSpec prime(std::int64_t p);
  /* "Q" or "F:<p>". */
  static FieldSpec parse(const std::string& text, const std::string& at = "");
  std::string str() const;

  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }
  bool finite() const { return kind == Kind::PrimeField; }
};

bool is_prime(std::int64_t n);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);

/* Exact rational scalar. */
using Rat = mpq_class;

/* Prime-field scalar carrying its modulus. Default construction yields an
   unattached zero (p == 0); only zero may be unattached, and it acts as the
   zero of any modulus it meets. All nonzero values are minted with an explicit
   modulus. */
struct Fp {
  std::int64_t v = 0;
  std::int64_t p = 0;

  Fp() = default;
  Fp(std::int64_t val, std::int64_t mod) : p(mod) {
    check_internal(mod > 1, "Fp: modulus must exceed 1");
    v = val % mod;
    if (v < 0) v += mod;
    if (v == 0) p = mod;  // keep modulus on attached zeros too
  }

  bool attached() const { return p != 0; }
};

inline std::int64_t fp_common_mod(const Fp& a, const Fp& b) {
  if (a.p == 0) return b.p;
  if (b.p == 0) return a.p;
  check_internal(a.p == b.p, "Fp: mixed moduli");
  return a.p;
}

inline Fp operator+(const Fp& a, const Fp& b) {
  std::int64_t m = fp_common_mod(a, b);
  if (m == 0) return Fp{};
  return Fp(a.v + b.v, m);
}
inline Fp operator-(const Fp& a, const Fp& b) {
  std::int64_t m = fp_common_mod(a, b);
  if (m == 0) return Fp{};
  return Fp(a.v - b.v, m);
}
inline Fp operator-(const Fp& a) {
  if (a.p == 0) return Fp{};
  return Fp(-a.v, a.p);
}
inline Fp operator*(const Fp& a, const Fp& b) {
  std::int64_t m = fp_common_mod(a, b);
  if (m == 0) return Fp{};
  return Fp(a.v * b.v, m);
}
inline bool operator==(const Fp& a, const Fp& b) {
  if (a.p == 0 || b.p == 0) return a.v == 0 && b.v == 0;
  check_internal(a.p == b.p, "Fp: mixed moduli");
  return a.v == b.v;
}
inline bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

/* Generic field interface used by all templated code. `proto` supplies the
   field context (the modulus for Fp); its value is irrelevant. */

inline bool f_is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool f_is_zero(const Fp& x) { return x.v == 0; }

inline Rat f_zero(const Rat&) { return Rat(0); }
inline Fp f_zero(const Fp& proto) { return proto.p ? Fp(0, proto.p) : Fp{}; }

inline Rat f_one(const Rat&) { return Rat(1); }
inline Fp f_one(const Fp& proto) {
  check_internal(proto.p != 0, "Fp: cannot mint 1 without a modulus");
  return Fp(1, proto.p);
}

inline Rat f_from_int(std::int64_t n, const Rat&) { return Rat(static_cast<long>(n)); }
inline Fp f_from_int(std::int64_t n, const Fp& proto) {
  check_internal(proto.p != 0, "Fp: cannot mint a value without a modulus");
  return Fp(n, proto.p);
}

inline Rat f_inv(const Rat& x) {
  if (f_is_zero(x)) throw internal_error("division by zero");
  return Rat(1) / x;
}
inline Fp f_inv(const Fp& x) {
  if (x.v == 0) throw internal_error("division by zero");
  return Fp(inv_mod(x.v, x.p), x.p);
}

inline std::string f_str(const Rat& x) { return x.get_str(); }
inline std::string f_str(const Fp& x) { return std::to_string(x.v); }

inline std::int64_t f_characteristic(const Rat&) { return 0; }
inline std::int64_t f_characteristic(const Fp& x) { return x.p; }

/* Parse "n" or "n/d" over Q, "n" over F_p. */
Rat rat_from_string(const std::string& s, const std::string& at = "");
inline Rat f_parse(const std::string& s, const Rat&, const std::string& at = "") {
  return rat_from_string(s, at);
}
inline Fp f_parse(const std::string& s, const Fp& proto, const std::string& at = "") {
  check_internal(proto.p != 0, "Fp: parse needs a modulus");
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return Fp(v, proto.p);
  } catch (const std::exception&) {
    throw input_error("not an integer scalar: '" + s + "'", at);
  }
}

/* Small random scalars for property tests: F_p uniform, Q from a small
   integer range so determinants stay readable. */
inline Rat f_random(std::mt19937_64& rng, const Rat&) {
  std::uniform_int_distribution<int> d(-4, 4);
  return Rat(d(rng));
}
inline Fp f_random(std::mt19937_64& rng, const Fp& proto) {
  check_internal(proto.p != 0, "Fp: random needs a modulus");
  std::uniform_int_distribution<std::int64_t> d(0, proto.p - 1);
  return Fp(d(rng), proto.p);
}

/* Field-tag helpers for dispatching a runtime FieldSpec to the right
   instantiation. */
template <class K>
struct field_kind;
template <>
struct field_kind<Rat> {
  static constexpr bool finite = false;
};
template <>
struct field_kind<Fp> {
  static constexpr bool finite = true;
};

inline Rat make_proto(const FieldSpec& fs, const Rat&) {
  check_internal(fs.kind == FieldSpec::Kind::Rationals, "field mismatch");
  return Rat(0);
}
inline Fp make_proto(const FieldSpec& fs, const Fp&) {
  check_internal(fs.kind == FieldSpec::Kind::PrimeField, "field mismatch");
  return Fp(0, fs.p);
}

}  // namespace qalg
