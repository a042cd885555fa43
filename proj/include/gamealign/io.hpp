#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gamealign/embedding.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/localization.hpp"
#include "gamealign/metrics.hpp"
#include "gamealign/sampling.hpp"
#include "gamealign/synthetic.hpp"

namespace gamealign::io {

// Canonical float formatting: shortest decimal string that round-trips to the
// same double. Used for every CSV cell so outputs diff cleanly across runs and
// platforms. (JSON output gets the same property from the JSON library.)
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

struct PredictionRecord {
  std::string id;
  std::vector<TimedMoment> moments;
};

struct NamedSequence {
  std::string id;
  EmbeddingSequence sequence;
};

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

// Applies `fn` to each nonblank line. Throws EmptyRecords when nothing was
// consumed: every JSONL reader here feeds an operation that needs records.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in = open_in(path);
  std::string line;
  long long consumed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    fn(line);
    ++consumed;
  }
  if (consumed == 0) throw EmptyRecords("no records in " + path);
}

inline nlohmann::json vectors_json(const std::vector<std::vector<double>>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vs) arr.push_back(v);
  return arr;
}

}  // namespace detail

inline void write_dataset(const std::string& path, const std::vector<GroundingCase>& cases) {
  std::ofstream out = detail::open_out(path);
  for (const GroundingCase& c : cases) {
    nlohmann::json j;
    j["id"] = c.id;
    j["duration_s"] = c.duration_s;
    j["truth"] = {{"start", c.truth.start}, {"end", c.truth.end}};
    j["visual"] = detail::vectors_json(c.visual.vectors());
    j["words"] = detail::vectors_json(c.words.vectors());
    j["phrases"] = detail::vectors_json(c.phrases.vectors());
    j["sentence"] = c.sentence;
    out << j.dump() << '\n';
  }
}

inline std::vector<GroundingCase> read_dataset(const std::string& path) {
  std::vector<GroundingCase> cases;
  detail::for_each_line(path, [&](const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    const auto& truth = j.at("truth");
    cases.push_back(GroundingCase{
        j.at("id").get<std::string>(),
        EmbeddingSequence(j.at("visual").get<std::vector<std::vector<double>>>(),
                          Modality::Visual),
        EmbeddingSequence(j.at("words").get<std::vector<std::vector<double>>>(),
                          Modality::Textual),
        EmbeddingSequence(j.at("phrases").get<std::vector<std::vector<double>>>(),
                          Modality::Textual),
        j.at("sentence").get<std::vector<double>>(),
        Moment{truth.at("start").get<int>(), truth.at("end").get<int>(), 0.0},
        j.at("duration_s").get<double>(),
    });
  });
  return cases;
}

inline void write_predictions(const std::string& path,
                              const std::vector<PredictionRecord>& records) {
  std::ofstream out = detail::open_out(path);
  for (const PredictionRecord& rec : records) {
    nlohmann::json moments = nlohmann::json::array();
    for (const TimedMoment& m : rec.moments)
      moments.push_back({{"start_s", m.start_s}, {"end_s", m.end_s}, {"score", m.score}});
    const nlohmann::json j = {{"id", rec.id}, {"moments", moments}};
    out << j.dump() << '\n';
  }
}

inline std::vector<PredictionRecord> read_predictions(const std::string& path) {
  std::vector<PredictionRecord> records;
  detail::for_each_line(path, [&](const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    PredictionRecord rec;
    rec.id = j.at("id").get<std::string>();
    for (const auto& m : j.at("moments")) {
      TimedMoment tm;
      tm.start_s = m.at("start_s").get<double>();
      tm.end_s = m.at("end_s").get<double>();
      tm.score = m.at("score").get<double>();
      rec.moments.push_back(tm);
    }
    records.push_back(std::move(rec));
  });
  return records;
}

inline void write_embeddings(const std::string& path, const std::vector<NamedSequence>& records) {
  std::ofstream out = detail::open_out(path);
  for (const NamedSequence& rec : records) {
    const nlohmann::json j = {{"id", rec.id},
                              {"modality", to_string(rec.sequence.modality())},
                              {"vectors", detail::vectors_json(rec.sequence.vectors())}};
    out << j.dump() << '\n';
  }
}

inline std::vector<NamedSequence> read_embeddings(const std::string& path) {
  std::vector<NamedSequence> records;
  detail::for_each_line(path, [&](const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    const std::string modality = j.at("modality").get<std::string>();
    if (modality != "visual" && modality != "textual")
      throw std::runtime_error("unknown modality '" + modality + "' in " + path);
    records.push_back(NamedSequence{
        j.at("id").get<std::string>(),
        EmbeddingSequence(j.at("vectors").get<std::vector<std::vector<double>>>(),
                          modality == "visual" ? Modality::Visual : Modality::Textual),
    });
  });
  return records;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "count,mean_rel_error,std_rel_error\n";
  for (const SweepRow& r : rows)
    out << r.count << ',' << format_double(r.mean_rel_error) << ','
        << format_double(r.std_rel_error) << '\n';
}

// Ground-truth moment of a dataset case, converted to seconds the same way
// predictions are.
inline std::pair<double, double> truth_seconds(const GroundingCase& c) {
  const int t = c.visual.size();
  return {c.truth.start * c.duration_s / t, (c.truth.end + 1) * c.duration_s / t};
}

// Joins predictions with dataset ground truth by id, preserving dataset order.
inline std::vector<EvalRecord> join_for_eval(const std::vector<PredictionRecord>& predictions,
                                             const std::vector<GroundingCase>& cases) {
  std::vector<EvalRecord> records;
  records.reserve(cases.size());
  for (const GroundingCase& c : cases) {
    const PredictionRecord* match = nullptr;
    for (const PredictionRecord& p : predictions)
      if (p.id == c.id) {
        match = &p;
        break;
      }
    if (!match) throw std::runtime_error("no predictions for case id '" + c.id + "'");
    EvalRecord rec;
    rec.id = c.id;
    for (const TimedMoment& m : match->moments) rec.predictions.emplace_back(m.start_s, m.end_s);
    rec.ground_truth = truth_seconds(c);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace gamealign::io
