#include "qalg/field.hpp"

namespace qalg {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  check_internal(a != 0, "inv_mod of zero");
  std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  check_internal(r0 == 1, "inv_mod: not a unit");
  if (t0 < 0) t0 += p;
  return t0;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw input_error("field modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::int64_t(1) << 31)) throw input_error("field modulus too large (p < 2^31 required)");
  return FieldSpec{Kind::PrimeField, p};
}

FieldSpec FieldSpec::parse(const std::string& text, const std::string& at) {
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.compare(0, 2, "F:") == 0) {
    try {
      return prime(std::stoll(text.substr(2)));
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("bad field spec '" + text + "'", at);
    }
  }
  throw input_error("bad field spec '" + text + "' (expected \"Q\" or \"F:<p>\")", at);
}

std::string FieldSpec::str() const {
  return kind == Kind::Rationals ? "Q" : "F:" + std::to_string(p);
}

Rat rat_from_string(const std::string& s, const std::string& at) {
  if (s.empty()) throw input_error("empty scalar", at);
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw input_error("not a rational scalar: '" + s + "'", at);
  try {
    Rat r(s);
    if (sgn(r.get_den()) == 0) throw input_error("zero denominator in '" + s + "'", at);
    r.canonicalize();
    return r;
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("not a rational scalar: '" + s + "'", at);
  }
}

}  // namespace qalg
