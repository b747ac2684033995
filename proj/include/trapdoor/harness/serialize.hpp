// JSON files for instances, secrets and answer keys. Every integer that
// can exceed 2^53 is written as a decimal string.
//
//   <root>/<id>.instance.json   public, schema "trapdoor-instance/1"
//   <root>/<id>.secret.json     sidecar, schema "trapdoor-secret/1"

#ifndef TRAPDOOR_HARNESS_SERIALIZE_HPP_
#define TRAPDOOR_HARNESS_SERIALIZE_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trapdoor/construct/types.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

using Json = nlohmann::ordered_json;

inline constexpr char instance_schema[] = "trapdoor-instance/1";
inline constexpr char secret_schema[] = "trapdoor-secret/1";
inline constexpr char key_schema[] = "trapdoor-key/1";

// The only keys a public instance file may carry.
inline std::vector<std::string> const& public_instance_fields() {
  static std::vector<std::string> const fields{"schema",     "id",     "family",        "question", "dim",
                                               "generators", "primes", "candidates", "answer_grammar"};
  return fields;
}

namespace detail {

inline std::string const& need_string(Json const& j, char const* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    fail("missing or non-string field '", key, "'");
  return j.at(key).get_ref<std::string const&>();
}

inline u64 parse_u64(std::string const& s) {
  Int v = parse_int(s);
  if (!fits_u64(v))
    fail("value ", s, " does not fit in 64 bits");
  return static_cast<u64>(v);
}

inline void check_schema(Json const& j, char const* expected) {
  if (need_string(j, "schema") != expected)
    fail("unsupported schema '", need_string(j, "schema"), "', expected ", expected);
}

} // namespace detail

inline Json to_json(BigMatrix const& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim; ++j)
      row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline BigMatrix big_matrix_from_json(Json const& j) {
  if (!j.is_array())
    fail("matrix must be an array of rows");
  int const n = static_cast<int>(j.size());
  check_dim(n);
  BigMatrix m(n);
  for (int i = 0; i < n; ++i) {
    auto const& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail("matrix row ", i, " has the wrong length");
    for (int k = 0; k < n; ++k) {
      auto const& cell = row.at(static_cast<std::size_t>(k));
      if (!cell.is_string())
        fail("matrix entries must be decimal strings");
      m(i, k) = parse_int(cell.get<std::string>());
    }
  }
  return m;
}

inline Json to_json(ModMatrix const& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim; ++j)
      row.push_back(std::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"modulus", std::to_string(m.modulus)}, {"rows", rows}};
}

inline ModMatrix mod_matrix_from_json(Json const& j) {
  u64 const m = detail::parse_u64(detail::need_string(j, "modulus"));
  BigMatrix b = big_matrix_from_json(j.at("rows"));
  ModMatrix out(b.dim, m);
  for (int i = 0; i < b.dim; ++i)
    for (int k = 0; k < b.dim; ++k) {
      if (b(i, k) < 0 || b(i, k) >= m)
        fail("residue ", b(i, k), " out of range for modulus ", m);
      out(i, k) = static_cast<u64>(b(i, k));
    }
  return out;
}

template <typename M>
Json matrices_to_json(std::vector<M> const& ms) {
  Json a = Json::array();
  for (auto const& m : ms)
    a.push_back(to_json(m));
  return a;
}

inline std::vector<BigMatrix> big_matrices_from_json(Json const& j) {
  std::vector<BigMatrix> out;
  for (auto const& m : j)
    out.push_back(big_matrix_from_json(m));
  return out;
}

inline Json primes_to_json(std::vector<u64> const& ps) {
  Json a = Json::array();
  for (u64 p : ps)
    a.push_back(std::to_string(p));
  return a;
}

inline std::vector<u64> primes_from_json(Json const& j) {
  std::vector<u64> out;
  for (auto const& p : j) {
    if (!p.is_string())
      fail("primes must be decimal strings");
    out.push_back(detail::parse_u64(p.get<std::string>()));
  }
  return out;
}

inline Json to_json(Instance const& inst) {
  Json j;
  j["schema"] = instance_schema;
  j["id"] = inst.id;
  j["family"] = family_name(inst.family);
  j["question"] = question_kind_name(inst.question);
  j["dim"] = inst.dim;
  j["generators"] = matrices_to_json(inst.generators);
  if (!inst.candidates.empty())
    j["candidates"] = matrices_to_json(inst.candidates);
  if (!inst.primes.empty())
    j["primes"] = primes_to_json(inst.primes);
  j["answer_grammar"] = inst.answer_grammar;
  return j;
}

inline Instance instance_from_json(Json const& j) {
  detail::check_schema(j, instance_schema);
  for (auto const& [key, value] : j.items())
    if (std::find(public_instance_fields().begin(), public_instance_fields().end(), key)
        == public_instance_fields().end())
      fail("unexpected field '", key, "' in a public instance file");
  Instance inst;
  inst.id = detail::need_string(j, "id");
  inst.family = parse_family(detail::need_string(j, "family"));
  inst.question = parse_question_kind(detail::need_string(j, "question"));
  inst.dim = j.at("dim").get<int>();
  check_dim(inst.dim);
  inst.generators = big_matrices_from_json(j.at("generators"));
  if (j.contains("candidates"))
    inst.candidates = big_matrices_from_json(j.at("candidates"));
  if (j.contains("primes"))
    inst.primes = primes_from_json(j.at("primes"));
  inst.answer_grammar = detail::need_string(j, "answer_grammar");
  for (auto const& g : inst.generators)
    if (g.dim != inst.dim)
      fail("generator dimension does not match dim");
  return inst;
}

inline Json to_json(ScrambleMove const& mv) {
  return Json{{"target", mv.target}, {"source", mv.source}, {"exponent", mv.exponent},
              {"side", mv.side == Side::left ? "left" : "right"}};
}

inline ScrambleMove move_from_json(Json const& j) {
  ScrambleMove mv;
  mv.target = j.at("target").get<std::size_t>();
  mv.source = j.at("source").get<std::size_t>();
  mv.exponent = j.at("exponent").get<int>();
  std::string const& side = detail::need_string(j, "side");
  if (side != "left" && side != "right")
    fail("move side must be left or right");
  mv.side = side == "left" ? Side::left : Side::right;
  if (mv.exponent != 1 && mv.exponent != -1)
    fail("move exponent must be +-1");
  return mv;
}

inline Json to_json(TrapdoorSecret const& s) {
  Json j;
  j["schema"] = secret_schema;
  j["id"] = s.id;
  j["family"] = family_name(s.family);
  j["N"] = std::to_string(s.N);
  j["k_preset"] = s.k_preset;
  j["k_gens"] = matrices_to_json(s.k_gens);
  j["k_order"] = s.k_order ? Json(s.k_order->str()) : Json(nullptr);
  j["planted_prime"] = s.planted_prime ? Json(std::to_string(*s.planted_prime)) : Json(nullptr);
  j["planted_form"] = s.planted_form ? to_json(*s.planted_form) : Json(nullptr);
  j["base_generators"] = matrices_to_json(s.base_generators);
  Json log = Json::array();
  for (auto const& mv : s.scramble_log)
    log.push_back(to_json(mv));
  j["scramble_log"] = std::move(log);
  Json certs = Json::object();
  for (auto const& [id, w] : s.word_certificates)
    certs[id] = w;
  j["word_certificates"] = std::move(certs);
  j["candidate_count"] = s.candidate_count;
  j["primes"] = primes_to_json(s.primes);
  j["catalog_id"] = s.catalog_id;
  j["seed"] = std::to_string(s.seed);
  j["prng"] = s.prng;
  j["scramble_preset"] = s.scramble_preset;
  return j;
}

inline TrapdoorSecret secret_from_json(Json const& j) {
  detail::check_schema(j, secret_schema);
  TrapdoorSecret s;
  s.id = detail::need_string(j, "id");
  s.family = parse_family(detail::need_string(j, "family"));
  s.N = detail::parse_u64(detail::need_string(j, "N"));
  s.k_preset = detail::need_string(j, "k_preset");
  for (auto const& m : j.at("k_gens"))
    s.k_gens.push_back(mod_matrix_from_json(m));
  if (!j.at("k_order").is_null())
    s.k_order = parse_int(j.at("k_order").get<std::string>());
  if (!j.at("planted_prime").is_null())
    s.planted_prime = detail::parse_u64(j.at("planted_prime").get<std::string>());
  if (!j.at("planted_form").is_null())
    s.planted_form = mod_matrix_from_json(j.at("planted_form"));
  s.base_generators = big_matrices_from_json(j.at("base_generators"));
  for (auto const& mv : j.at("scramble_log"))
    s.scramble_log.push_back(move_from_json(mv));
  for (auto const& [id, w] : j.at("word_certificates").items())
    s.word_certificates[id] = w.get<Word>();
  s.candidate_count = j.at("candidate_count").get<std::size_t>();
  s.primes = primes_from_json(j.at("primes"));
  s.catalog_id = detail::need_string(j, "catalog_id");
  s.seed = detail::parse_u64(detail::need_string(j, "seed"));
  s.prng = detail::need_string(j, "prng");
  s.scramble_preset = detail::need_string(j, "scramble_preset");
  return s;
}

inline Json to_json(GroundTruth const& t) {
  Json j;
  j["id"] = t.id;
  j["family"] = family_name(t.family);
  if (question_kind(t.family) == QuestionKind::membership_list)
    j["membership"] = t.membership;
  if (question_kind(t.family) == QuestionKind::prime_list_yesno)
    j["surjective"] = t.surjective;
  if (t.index)
    j["index"] = t.index->str();
  j["accepted_abstain"] = t.accepted_abstain;
  return j;
}

inline GroundTruth truth_from_json(Json const& j) {
  GroundTruth t;
  t.id = detail::need_string(j, "id");
  t.family = parse_family(detail::need_string(j, "family"));
  if (j.contains("membership"))
    t.membership = j.at("membership").get<std::vector<bool>>();
  if (j.contains("surjective"))
    t.surjective = j.at("surjective").get<std::vector<bool>>();
  if (j.contains("index")) {
    std::string const& v = detail::need_string(j, "index");
    t.index = v == "INFINITE" ? IndexValue::infinity() : IndexValue::finite(parse_int(v));
  }
  t.accepted_abstain = j.value("accepted_abstain", false);
  return t;
}

inline Json key_to_json(std::vector<GroundTruth> const& truths) {
  Json entries = Json::array();
  for (auto const& t : truths)
    entries.push_back(to_json(t));
  return Json{{"schema", key_schema}, {"entries", entries}};
}

inline std::vector<GroundTruth> key_from_json(Json const& j) {
  detail::check_schema(j, key_schema);
  std::vector<GroundTruth> out;
  for (auto const& e : j.at("entries"))
    out.push_back(truth_from_json(e));
  return out;
}

// ---- files ----

inline Json read_json_file(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in)
    fail("cannot open ", path.string());
  try {
    return Json::parse(in);
  } catch (nlohmann::json::exception const& e) {
    fail("malformed JSON in ", path.string(), ": ", e.what());
  }
}

inline void write_json_file(std::filesystem::path const& path, Json const& j) {
  std::ofstream out(path);
  if (!out)
    fail("cannot write ", path.string());
  out << j.dump(2) << '\n';
}

inline std::filesystem::path instance_path(std::filesystem::path const& root, std::string const& id) {
  return root / (id + ".instance.json");
}

inline std::filesystem::path secret_path(std::filesystem::path const& root, std::string const& id) {
  return root / (id + ".secret.json");
}

// Writes the public file and the secret sidecar. Refuses to overwrite an
// existing id unless `force`.
inline void write_instance(Instance const& inst, TrapdoorSecret const& secret, std::filesystem::path const& root,
                           bool force = false) {
  if (inst.id != secret.id)
    fail("instance id '", inst.id, "' does not match secret id '", secret.id, "'");
  if (inst.id.empty() || inst.id.find_first_of("/\\") != std::string::npos)
    fail("invalid instance id '", inst.id, "'");
  std::filesystem::create_directories(root);
  auto const pub = instance_path(root, inst.id), sec = secret_path(root, inst.id);
  if (!force && (std::filesystem::exists(pub) || std::filesystem::exists(sec)))
    fail("instance '", inst.id, "' already exists in ", root.string(), " (use force to overwrite)");
  write_json_file(pub, to_json(inst));
  write_json_file(sec, to_json(secret));
}

inline Instance read_instance(std::filesystem::path const& path) { return instance_from_json(read_json_file(path)); }
inline TrapdoorSecret read_secret(std::filesystem::path const& path) { return secret_from_json(read_json_file(path)); }

// Ids of every *.instance.json under root, sorted.
inline std::vector<std::string> list_instance_ids(std::filesystem::path const& root) {
  if (!std::filesystem::is_directory(root))
    fail("not a directory: ", root.string());
  std::vector<std::string> ids;
  std::string const suffix = ".instance.json";
  for (auto const& entry : std::filesystem::directory_iterator(root)) {
    std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      ids.push_back(name.substr(0, name.size() - suffix.size()));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

} // namespace trapdoor

#endif
