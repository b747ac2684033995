// Benchmark domain types: instances, their construction-time secrets and
// the ground truth derived from those secrets.

#ifndef TRAPDOOR_CONSTRUCT_TYPES_HPP_
#define TRAPDOOR_CONSTRUCT_TYPES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

enum class Family { I, II, III, IV_v1, IV_v2, IV_v3, V };

inline constexpr Family all_families[] = {Family::I,     Family::II,    Family::III, Family::IV_v1,
                                          Family::IV_v2, Family::IV_v3, Family::V};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV_v1: return "IV-v1";
    case Family::IV_v2: return "IV-v2";
    case Family::IV_v3: return "IV-v3";
    case Family::V: return "V";
  }
  fail("unreachable family");
}

inline Family parse_family(std::string_view s) {
  for (Family f : all_families)
    if (family_name(f) == s)
      return f;
  fail("unknown family '", s, "' (expected I, II, III, IV-v1, IV-v2, IV-v3, V)");
}

enum class QuestionKind { membership_list, prime_list_yesno, exact_index_or_unknown };

inline QuestionKind question_kind(Family f) {
  switch (f) {
    case Family::I: return QuestionKind::membership_list;
    case Family::II:
    case Family::III: return QuestionKind::prime_list_yesno;
    default: return QuestionKind::exact_index_or_unknown;
  }
}

inline std::string question_kind_name(QuestionKind k) {
  switch (k) {
    case QuestionKind::membership_list: return "membership_list";
    case QuestionKind::prime_list_yesno: return "prime_list_yesno";
    case QuestionKind::exact_index_or_unknown: return "exact_index_or_unknown";
  }
  fail("unreachable question kind");
}

inline QuestionKind parse_question_kind(std::string_view s) {
  for (auto k : {QuestionKind::membership_list, QuestionKind::prime_list_yesno,
                 QuestionKind::exact_index_or_unknown})
    if (question_kind_name(k) == s)
      return k;
  fail("unknown question kind '", s, "'");
}

// Public problem statement. Carries no field derived from the secret
// beyond the matrices and the prime list themselves.
struct Instance {
  std::string id;
  Family family = Family::I;
  QuestionKind question = QuestionKind::membership_list;
  int dim = 3;
  std::vector<BigMatrix> generators;
  std::vector<BigMatrix> candidates; // family I
  std::vector<u64> primes;           // families II, III
  std::string answer_grammar;

  friend bool operator==(Instance const&, Instance const&) = default;
};

// Construction-time data that pins down the answer.
struct TrapdoorSecret {
  std::string id;
  Family family = Family::I;
  u64 N = 1;                       // congruence level; 1 when unused
  std::string k_preset;            // upper_unipotent | octahedral_s4 | raw | ""
  std::vector<ModMatrix> k_gens;   // K (or the planted group of family I) mod N / mod p
  std::optional<Int> k_order;      // |K|, memoized at build time
  std::optional<u64> planted_prime;
  std::optional<ModMatrix> planted_form;
  std::vector<BigMatrix> base_generators; // before scrambling
  MoveLog scramble_log;
  std::map<std::string, Word> word_certificates; // candidate id -> word over base generators
  std::size_t candidate_count = 0;
  std::vector<u64> primes;
  std::string catalog_id; // family V
  std::uint64_t seed = 0;
  std::string prng = "mt19937_64";
  std::string scramble_preset;

  friend bool operator==(TrapdoorSecret const&, TrapdoorSecret const&) = default;
};

struct Built {
  Instance instance;
  TrapdoorSecret secret;
};

inline std::string candidate_id(std::size_t k) { return "T" + std::to_string(k + 1); }

// Exact index or the token INFINITE.
struct IndexValue {
  bool infinite = false;
  Int value = 0;

  static IndexValue finite(Int v) { return {false, std::move(v)}; }
  static IndexValue infinity() { return {true, 0}; }
  std::string str() const { return infinite ? "INFINITE" : value.str(); }

  friend bool operator==(IndexValue const&, IndexValue const&) = default;
};

struct GroundTruth {
  std::string id;
  Family family = Family::I;
  std::vector<bool> membership;  // family I, per candidate
  std::vector<bool> surjective;  // families II, III, per prime
  std::optional<IndexValue> index; // families IV, V
  bool accepted_abstain = false;

  friend bool operator==(GroundTruth const&, GroundTruth const&) = default;
};

} // namespace trapdoor

#endif
