// The `trapdoor` command line: generate, validate, truth, prompt, solve,
// score, bench. Every subcommand prints one JSON document on stdout and
// returns 0 on success, 1 on any failure.

#ifndef TRAPDOOR_HARNESS_CLI_HPP_
#define TRAPDOOR_HARNESS_CLI_HPP_

#include <algorithm>
#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trapdoor/analyze/solve.hpp"
#include "trapdoor/construct/builders.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/harness/answer.hpp"
#include "trapdoor/harness/bench.hpp"
#include "trapdoor/harness/prompt.hpp"
#include "trapdoor/harness/serialize.hpp"
#include "trapdoor/verify/verify.hpp"

namespace trapdoor {

struct GenerateArgs {
  std::string family;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string out;
  bool force = false;
  u64 N = 1009;
  std::string k;
  std::optional<u64> p;
  std::vector<u64> decoys;
  std::size_t candidates = 8;
  std::string preset;
  std::size_t scramble_depth = 0;
};

namespace detail {

inline std::vector<u64> default_decoys(Family f) {
  if (f == Family::II)
    return {2, 3, 5, 7, 11, 1000003, 1000000000000037ull};
  return {2, 3, 5, 7, 11, 13, 1000003, 1000000000000037ull};
}

inline std::vector<Built> generate(GenerateArgs const& a) {
  Family const f = parse_family(a.family);
  std::vector<Built> out;
  if (f == Family::V)
    return build_family5(a.scramble_depth, a.seed);
  std::vector<u64> decoys = a.decoys.empty() ? default_decoys(f) : a.decoys;
  for (std::size_t k = 0; k < a.count; ++k) {
    std::uint64_t const seed = a.seed + k;
    switch (f) {
      case Family::I: {
        Family1Options opt;
        out.push_back(build_family1(a.p.value_or(1000003), KSpec::named(a.k.empty() ? "octahedral_s4" : a.k),
                                    a.candidates, seed, opt));
        break;
      }
      case Family::II:
        out.push_back(build_family2(a.p.value_or(1245509), decoys, seed));
        break;
      case Family::III:
        out.push_back(build_family3(a.N, KSpec::named(a.k.empty() ? "upper_unipotent" : a.k), decoys, seed,
                                    a.preset.empty() ? "paper-C01" : a.preset));
        break;
      case Family::IV_v1:
      case Family::IV_v2:
      case Family::IV_v3: {
        Family4Options opt;
        if (!a.preset.empty())
          opt.preset = a.preset;
        Variant v = f == Family::IV_v1 ? Variant::v1 : (f == Family::IV_v2 ? Variant::v2 : Variant::v3);
        out.push_back(build_family4(v, a.N, KSpec::named(a.k.empty() ? "octahedral_s4" : a.k), seed, opt));
        break;
      }
      case Family::V: break;
    }
  }
  return out;
}

inline Json sanity_to_json(SanityReport const& r) {
  Json j;
  j["ok"] = r.ok();
  j["mod_image_ok"] = r.mod_image_ok;
  j["det_ok"] = r.det_ok;
  j["replay_ok"] = r.replay_ok;
  j["freeness_ok"] = r.freeness_ok ? Json(*r.freeness_ok) : Json(nullptr);
  j["certificates_ok"] = r.certificates_ok ? Json(*r.certificates_ok) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

inline std::vector<std::string> selected_ids(std::string const& dir, std::string const& only) {
  auto ids = list_instance_ids(dir);
  if (!only.empty()) {
    if (std::find(ids.begin(), ids.end(), only) == ids.end())
      fail("no instance '", only, "' in ", dir);
    ids = {only};
  }
  if (ids.empty())
    fail("no instances found in ", dir);
  return ids;
}

inline std::string yes_no_tuple(std::vector<bool> const& bits) {
  std::string s = "(";
  for (std::size_t k = 0; k < bits.size(); ++k)
    s += (k ? ", " : "") + std::string(bits[k] ? "YES" : "NO");
  return s + ")";
}

inline Json solve_one(Instance const& inst) {
  Json j;
  j["id"] = inst.id;
  j["family"] = family_name(inst.family);
  switch (inst.question) {
    case QuestionKind::prime_list_yesno: {
      auto sol = solve_prime_list(inst);
      std::vector<bool> bits;
      Json verdicts = Json::array();
      for (auto const& v : sol.verdicts) {
        bits.push_back(v.surjective);
        verdicts.push_back(Json{{"p", std::to_string(v.p)},
                                {"surjective", v.surjective},
                                {"certified", v.certified},
                                {"method", v.method}});
      }
      Json tv = Json::array();
      for (auto const& t : sol.transvections)
        tv.push_back(Json{{"generator", t.index + 1}, {"c", t.c.str()}});
      j["answer"] = yes_no_tuple(bits);
      j["verdicts"] = verdicts;
      j["transvections"] = tv;
      return j;
    }
    case QuestionKind::exact_index_or_unknown:
      if (inst.family == Family::V) {
        auto sol = solve_family5(inst);
        j["answer"] = !sol.index ? "unknown" : (sol.index->infinite ? "infinite" : sol.index->value.str());
        j["level"] = sol.level ? Json(sol.level->str()) : Json(nullptr);
        Json words = Json::array();
        for (auto const& w : sol.words)
          words.push_back(w.str());
        j["words"] = words;
        j["reason"] = sol.reason;
        return j;
      } else {
        auto r = index_report(inst);
        Json rep;
        rep["level"] = r.level ? Json(r.level->str()) : Json(nullptr);
        Json tv = Json::array();
        for (auto const& t : r.transvections)
          tv.push_back(Json{{"generator", t.index + 1}, {"c", t.c.str()}});
        rep["transvections"] = tv;
        rep["image_order"] = r.image_order ? Json(*r.image_order) : Json(nullptr);
        rep["cokernel_index"] = r.cokernel_index ? Json(r.cokernel_index->str()) : Json(nullptr);
        rep["generators_in_kernel_of_reduction"] = r.image_trivial;
        rep["descent"] = Json{{"start_score", r.descent_start}, {"end_score", r.descent_end}, {"stop", r.descent_stop}};
        rep["notes"] = r.notes;
        j["answer"] = nullptr;
        j["committed"] = false;
        j["report"] = rep;
        return j;
      }
    case QuestionKind::membership_list:
      j["answer"] = nullptr;
      j["committed"] = false;
      j["note"] = "membership questions are not decided by the solver";
      return j;
  }
  return j;
}

// A key file turned into the answers that match it exactly.
inline std::vector<AnswerRecord> answers_from_key(std::vector<GroundTruth> const& key, Grammar g) {
  std::vector<AnswerRecord> out;
  for (auto const& t : key) {
    std::string raw;
    std::size_t expected = 0;
    if (t.family == Family::I || question_kind(t.family) == QuestionKind::prime_list_yesno) {
      auto const& bits = t.family == Family::I ? t.membership : t.surjective;
      raw = yes_no_tuple(bits);
      expected = bits.size();
    } else {
      raw = t.index->infinite ? (g == Grammar::split_infinite ? "infinite" : "infinite_or_unknown")
                              : t.index->value.str();
    }
    auto rec = parse_answer(raw, t.family, expected, g);
    rec.instance_id = t.id;
    rec.solver = "key";
    out.push_back(std::move(rec));
  }
  return out;
}

// JSON lines: {"id": ..., "raw": ..., "wall_time_s": optional, "solver": optional}.
inline std::vector<AnswerRecord> read_answers(std::string const& path, std::vector<GroundTruth> const& key,
                                              Grammar g) {
  std::ifstream in(path);
  if (!in)
    fail("cannot open ", path);
  std::stringstream whole;
  whole << in.rdbuf();
  std::string const text = whole.str();
  // A key file is accepted as its own answer sheet.
  try {
    Json j = Json::parse(text);
    if (j.is_object() && j.value("schema", "") == key_schema)
      return answers_from_key(key_from_json(j), g);
  } catch (nlohmann::json::exception const&) {
  }
  std::vector<AnswerRecord> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (nlohmann::json::exception const& e) {
      fail(path, ":", n, ": malformed answer record: ", e.what());
    }
    std::string const id = need_string(j, "id");
    auto it = std::find_if(key.begin(), key.end(), [&](GroundTruth const& t) { return t.id == id; });
    if (it == key.end())
      fail(path, ":", n, ": no key entry for '", id, "'");
    std::size_t expected = it->family == Family::I ? it->membership.size() : it->surjective.size();
    std::string raw = j.contains("raw") && j.at("raw").is_string() ? j.at("raw").get<std::string>() : "";
    auto rec = parse_answer(raw, it->family, expected, g);
    rec.instance_id = id;
    if (j.contains("wall_time_s") && j.at("wall_time_s").is_number())
      rec.wall_time_s = j.at("wall_time_s").get<double>();
    if (j.contains("solver") && j.at("solver").is_string())
      rec.solver = j.at("solver").get<std::string>();
    out.push_back(std::move(rec));
  }
  return out;
}

inline Json cells_to_json(std::array<std::size_t, 4> const& counts) {
  Json j;
  for (Cell c : all_cells)
    j[cell_name(c)] = counts[static_cast<std::size_t>(c)];
  return j;
}

inline Json scorecard_to_json(Scorecard const& card) {
  Json j;
  j["records"] = card.records();
  j["total"] = cells_to_json(card.total);
  Json fam = Json::object();
  for (auto const& [f, counts] : card.per_family)
    fam[family_name(f)] = cells_to_json(counts);
  j["per_family"] = fam;
  Json ids = Json::object();
  for (auto const& [c, v] : card.ids)
    ids[cell_name(c)] = v;
  j["ids"] = ids;
  j["notes"] = card.notes;
  return j;
}

} // namespace detail

inline int run_cli(int argc, char const* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Build, verify, solve and score trapdoor subgroup benchmark instances", "trapdoor"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Build instances and write instance/secret files");
  g->add_option("--family", gen.family, "I, II, III, IV-v1, IV-v2, IV-v3 or V")->required();
  g->add_option("--seed", gen.seed, "Seed of the first instance");
  g->add_option("--count", gen.count, "Number of instances (seeds seed, seed+1, ...)");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_flag("--force", gen.force, "Overwrite existing instance files");
  g->add_option("--N", gen.N, "Prime level for III and IV");
  g->add_option("--k", gen.k, "upper_unipotent or octahedral_s4");
  g->add_option("--p", gen.p, "Prime of family I, planted prime of family II");
  g->add_option("--decoys", gen.decoys, "Decoy primes for II/III")->delimiter(',');
  g->add_option("--candidates", gen.candidates, "Candidate count for family I");
  g->add_option("--preset", gen.preset, "Scramble preset: none, desk, paper-C01, paper-X10");
  g->add_option("--scramble-depth", gen.scramble_depth, "Nielsen scramble depth for family V");

  std::string dir, only, key_out, answers_path, key_path, answers_out;
  bool split = false;
  std::size_t repeat = 20;
  auto* v = app.add_subcommand("validate", "Re-run construction checks on every instance in a directory");
  v->add_option("--dir", dir, "Instance directory")->required();
  auto* t = app.add_subcommand("truth", "Emit the answer key derived from the secrets");
  t->add_option("--dir", dir, "Instance directory")->required();
  t->add_option("--out", key_out, "Write the key to this file instead of stdout");
  auto* p = app.add_subcommand("prompt", "Render prompts");
  p->add_option("--dir", dir, "Instance directory")->required();
  p->add_option("--id", only, "Only this instance");
  p->add_flag("--split-infinite", split, "Offer 'infinite' and 'unknown' as separate tokens");
  auto* s = app.add_subcommand("solve", "Run the solver pipelines on the public files");
  s->add_option("--dir", dir, "Instance directory")->required();
  s->add_option("--id", only, "Only this instance");
  s->add_option("--answers-out", answers_out, "Also write committed answers as JSON lines");
  auto* sc = app.add_subcommand("score", "Score an answers file against a key");
  sc->add_option("--answers", answers_path, "JSON-lines answers, or a key file")->required();
  sc->add_option("--key", key_path, "Key file from `truth`")->required();
  sc->add_flag("--split-infinite", split, "Score 'infinite' as a commitment");
  auto* b = app.add_subcommand("bench", "Time ground-truth derivation over a directory");
  b->add_option("--dir", dir, "Instance directory")->required();
  b->add_option("--repeat", repeat, "Calls per instance");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  Grammar const grammar = split ? Grammar::split_infinite : Grammar::merged;
  try {
    if (g->parsed()) {
      Json written = Json::array();
      for (auto const& built : detail::generate(gen)) {
        write_instance(built.instance, built.secret, gen.out, gen.force);
        written.push_back(Json{{"id", built.instance.id},
                               {"family", family_name(built.instance.family)},
                               {"instance", instance_path(gen.out, built.instance.id).string()},
                               {"secret", secret_path(gen.out, built.instance.id).string()}});
      }
      out << Json{{"generated", written}}.dump(2) << '\n';
      return 0;
    }
    if (v->parsed()) {
      Json results = Json::array();
      std::size_t failed = 0;
      auto const ids = detail::selected_ids(dir, "");
      for (auto const& id : ids) {
        Json r;
        try {
          auto inst = read_instance(instance_path(dir, id));
          auto sec = read_secret(secret_path(dir, id));
          r = detail::sanity_to_json(verify_instance(inst, sec));
          ground_truth(sec);
        } catch (Error const& e) {
          r = Json{{"ok", false}, {"notes", {std::string(e.what())}}};
        }
        failed += r["ok"].get<bool>() ? 0 : 1;
        r["id"] = id;
        results.push_back(r);
      }
      out << Json{{"instances", ids.size()}, {"failed", failed}, {"results", results}}.dump(2) << '\n';
      return failed == 0 && !ids.empty() ? 0 : 1;
    }
    if (t->parsed()) {
      std::vector<GroundTruth> truths;
      for (auto const& id : detail::selected_ids(dir, ""))
        truths.push_back(ground_truth(read_secret(secret_path(dir, id))));
      Json key = key_to_json(truths);
      if (key_out.empty()) {
        out << key.dump(2) << '\n';
      } else {
        write_json_file(key_out, key);
        out << Json{{"written", key_out}, {"entries", truths.size()}}.dump(2) << '\n';
      }
      return 0;
    }
    if (p->parsed()) {
      Json prompts = Json::array();
      bool clean = true;
      for (auto const& id : detail::selected_ids(dir, only)) {
        auto inst = read_instance(instance_path(dir, id));
        std::string text = render_prompt(inst, grammar);
        auto problems = audit_prompt(text, inst, grammar);
        clean = clean && problems.empty();
        prompts.push_back(Json{{"id", id}, {"prompt", text}, {"audit", problems}});
      }
      out << Json{{"prompts", prompts}}.dump(2) << '\n';
      return clean ? 0 : 1;
    }
    if (s->parsed()) {
      Json results = Json::array();
      std::ostringstream lines;
      for (auto const& id : detail::selected_ids(dir, only)) {
        auto inst = read_instance(instance_path(dir, id));
        auto const t0 = std::chrono::steady_clock::now();
        Json r = detail::solve_one(inst);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r["wall_time_s"] = secs;
        if (r["answer"].is_string())
          lines << Json{{"id", id}, {"raw", r["answer"]}, {"wall_time_s", secs}, {"solver", "trapdoor-solve"}}.dump()
                << '\n';
        results.push_back(r);
      }
      if (!answers_out.empty()) {
        std::ofstream f(answers_out);
        if (!f)
          fail("cannot write ", answers_out);
        f << lines.str();
      }
      out << Json{{"results", results}}.dump(2) << '\n';
      return 0;
    }
    if (sc->parsed()) {
      auto key = key_from_json(read_json_file(key_path));
      auto answers = detail::read_answers(answers_path, key, grammar);
      std::vector<ScoredRecord> scored;
      Json records = Json::array();
      for (auto const& a : answers) {
        auto const& truth = *std::find_if(key.begin(), key.end(), [&](GroundTruth const& k) { return k.id == a.instance_id; });
        ScoreOutcome o = score(a, truth, grammar);
        records.push_back(Json{{"id", a.instance_id},
                               {"family", family_name(a.family)},
                               {"solver", a.solver},
                               {"parse_ok", a.parse_ok},
                               {"cell", cell_name(o.cell)},
                               {"detail", o.detail}});
        scored.push_back({a, o});
      }
      out << Json{{"records", records},
                  {"scorecard", detail::scorecard_to_json(aggregate(scored))},
                  {"crosstab", render_crosstab(scored)}}
                 .dump(2)
          << '\n';
      return 0;
    }
    if (b->parsed()) {
      std::vector<TrapdoorSecret> secrets;
      for (auto const& id : detail::selected_ids(dir, ""))
        secrets.push_back(read_secret(secret_path(dir, id)));
      auto rep = bench_ground_truth(secrets, repeat);
      Json per = Json::array();
      for (auto const& e : rep.entries)
        per.push_back(Json{{"id", e.id}, {"family", family_name(e.family)}, {"ms", e.ms}});
      out << Json{{"instances", rep.entries.size()}, {"repeat", repeat},     {"mean_ms", rep.mean_ms},
                  {"max_ms", rep.max_ms},          {"budget_ms", verifier_budget_ms},
                  {"within_budget", rep.within_budget()}, {"per_instance", per}}
                 .dump(2)
          << '\n';
      return rep.within_budget() ? 0 : 1;
    }
  } catch (std::exception const& e) {
    out << Json{{"error", e.what()}}.dump(2) << '\n';
    err << "trapdoor: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

} // namespace trapdoor

#endif
