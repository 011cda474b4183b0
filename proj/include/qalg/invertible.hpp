#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qalg/field.hpp"

namespace qalg {

/* Three-valued verdicts for searches over infinite or over-budget spaces.
   No is always certified; ProbablyNot is an honest "searched and failed". */
enum class IsoVerdict { Yes, No, ProbablyNot };

inline const char* iso_verdict_str(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Yes: return "yes";
    case IsoVerdict::No: return "no";
    default: return "probably-not";
  }
}

struct SearchBudget {
  std::int64_t exhaustive = 200000;  // max points for a certifying scan
  int trials = 300;                  // random samples when over budget
};

enum class ComboStatus { Found, NoneCertified, Exhausted };

template <class K>
struct ComboResult {
  ComboStatus status = ComboStatus::Exhausted;
  std::vector<K> coeffs;
};

inline std::int64_t reinterpret_side(const Fp& proto) { return proto.p; }
inline std::int64_t reinterpret_side(const Rat&) { return 0; }

/* Search for a coefficient tuple (c_1..c_d) accepted by `accept`.
   Over F_p the full p^d scan certifies absence when it fits the budget.
   Over Q the scan runs on the grid {0..grid_side-1}^d; when grid_side
   exceeds the per-variable degree of the (polynomial) acceptance condition,
   a full failed scan certifies absence (multivariate interpolation bound).
   Over budget: `trials` random tuples, then Exhausted. */
template <class K, class Accept>
ComboResult<K> search_combo(int d, const K& proto, std::int64_t grid_side,
                            const SearchBudget& budget, std::mt19937_64& rng, Accept&& accept) {
  ComboResult<K> res;
  if (d == 0) {
    res.status = ComboStatus::NoneCertified;
    return res;
  }
  std::int64_t side = field_kind<K>::finite ? reinterpret_side(proto) : grid_side;
  double total = 1;
  bool fits = true;
  for (int i = 0; i < d && fits; ++i) {
    total *= static_cast<double>(side);
    if (total > static_cast<double>(budget.exhaustive)) fits = false;
  }
  if (fits) {
    std::vector<std::int64_t> odo(d, 0);
    std::vector<K> c(d, f_zero(proto));
    while (true) {
      for (int i = 0; i < d; ++i) c[i] = f_from_int(odo[i], proto);
      if (accept(c)) {
        res.status = ComboStatus::Found;
        res.coeffs = c;
        return res;
      }
      int pos = 0;
      while (pos < d && ++odo[pos] == side) odo[pos++] = 0;
      if (pos == d) break;
    }
    res.status = ComboStatus::NoneCertified;
    return res;
  }
  std::uniform_int_distribution<std::int64_t> dist(0, field_kind<K>::finite ? side - 1 : 1000000);
  std::vector<K> c(d, f_zero(proto));
  for (int t = 0; t < budget.trials; ++t) {
    for (int i = 0; i < d; ++i) c[i] = f_from_int(dist(rng), proto);
    if (accept(c)) {
      res.status = ComboStatus::Found;
      res.coeffs = c;
      return res;
    }
  }
  res.status = ComboStatus::Exhausted;
  return res;
}

}  // namespace qalg
