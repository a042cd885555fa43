// Command-line surface over the gamealign library: dataset generation,
// value/interaction tables, grounding, evaluation, and sampling benchmarks.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamealign/gamealign.hpp"

namespace {

using namespace gamealign;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string samples = "5500";
  std::string kind = "banzhaf";
  double threshold = 0.8;
  double tau = 0.1;
  std::string out;
};

ValueKind parse_kind(const std::string& s) {
  return s == "shapley" ? ValueKind::Shapley : ValueKind::Banzhaf;
}

std::vector<int> parse_counts(const std::string& s) {
  std::vector<int> counts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const int value = std::stoi(item);
    if (value < 1) throw std::runtime_error("--samples entries must be positive, got " + item);
    counts.push_back(value);
  }
  if (counts.empty()) throw std::runtime_error("--samples needs at least one count");
  return counts;
}

int single_count(const GlobalOptions& g) {
  const std::vector<int> counts = parse_counts(g.samples);
  if (counts.size() != 1)
    throw std::runtime_error("this subcommand takes a single --samples count");
  return counts[0];
}

// Sampled mode with its own stream for the given record/pair index; exact mode
// passes through untouched.
ComputeMode mode_for(const GlobalOptions& g, std::uint64_t index) {
  if (g.mode == "exact") return Exact{};
  SamplingPlan plan;
  plan.sample_count = single_count(g);
  plan.seed = derive_seed(g.seed, index + 1);
  plan.kind = parse_kind(g.kind);
  return plan;
}

// Stream destination: --out file when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open for writing: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void run_generate(const GlobalOptions& g, const SyntheticConfig& base,
                  const std::string& moment_str) {
  SyntheticConfig config = base;
  config.seed = g.seed;
  if (!moment_str.empty()) {
    const auto sep = moment_str.find_first_of(":,");
    if (sep == std::string::npos)
      throw std::runtime_error("--moment expects start:end, got " + moment_str);
    config.moment = {{std::stoi(moment_str.substr(0, sep)),
                      std::stoi(moment_str.substr(sep + 1))}};
  }
  if (g.out.empty()) throw std::runtime_error("generate needs --out");
  io::write_dataset(g.out, generate(config));
  std::cerr << "wrote " << config.pairs << " cases to " << g.out << '\n';
}

void run_values(const GlobalOptions& g, const std::string& input) {
  const auto records = io::read_embeddings(input);
  const ValueKind kind = parse_kind(g.kind);
  Output out(g.out);
  out.stream() << "id,modality,player,kind,value,standard_error\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const io::NamedSequence& rec = records[r];
    const CharacteristicGame game = self_modal_game(rec.sequence);
    for (int p = 0; p < rec.sequence.size(); ++p) {
      double value = 0.0;
      double se = 0.0;
      if (g.mode == "exact") {
        value = exact_value(game, p, kind);
      } else {
        SamplingPlan plan;
        plan.sample_count = single_count(g);
        plan.seed = derive_seed(g.seed, r + 1, static_cast<std::uint64_t>(p) + 1);
        plan.kind = kind;
        const EstimateReport report = sampled_value(game, p, plan);
        value = report.estimate;
        se = report.standard_error;
      }
      out.stream() << rec.id << ',' << to_string(rec.sequence.modality()) << ',' << p << ','
                   << to_string(kind) << ',' << io::format_double(value) << ','
                   << io::format_double(se) << '\n';
    }
  }
}

void run_interactions(const GlobalOptions& g, const std::string& input,
                      const std::string& features) {
  const auto records = io::read_embeddings(input);

  // Pair a visual and a textual record sharing an id, in first-seen id order.
  std::vector<std::string> order;
  std::map<std::string, std::pair<const io::NamedSequence*, const io::NamedSequence*>> by_id;
  for (const io::NamedSequence& rec : records) {
    if (by_id.find(rec.id) == by_id.end()) order.push_back(rec.id);
    auto& slot = by_id[rec.id];
    (rec.sequence.modality() == Modality::Visual ? slot.first : slot.second) = &rec;
  }

  const ValueKind kind = parse_kind(g.kind);
  Output out(g.out);
  out.stream() << "id,frame,word,kind,value\n";
  std::size_t paired = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& slot = by_id[order[k]];
    if (!slot.first || !slot.second) continue;
    ++paired;

    const ComputeMode pair_mode = mode_for(g, k);
    EmbeddingSequence visual = slot.first->sequence;
    EmbeddingSequence textual = slot.second->sequence;
    if (features == "enhanced") {
      visual = EmbeddingSequence(
          enhance(visual, detail::stage_mode(pair_mode, detail::kStageEnhanceVisual)).vectors,
          Modality::Visual);
      textual = EmbeddingSequence(
          enhance(textual, detail::stage_mode(pair_mode, detail::kStageEnhanceWords)).vectors,
          Modality::Textual);
    }
    const InteractionGrid grid =
        pairwise_interaction_grid(CrossModalGameSpec{visual, textual},
                                  detail::stage_mode(pair_mode, detail::kStageWordGrid), kind);
    for (int i = 0; i < grid.frames; ++i)
      for (int j = 0; j < grid.words; ++j)
        out.stream() << order[k] << ',' << i << ',' << j << ',' << to_string(kind) << ','
                     << io::format_double(grid.at(i, j)) << '\n';
  }
  if (paired == 0)
    throw std::runtime_error("no visual/textual record pairs share an id in " + input);
}

void run_ground(const GlobalOptions& g, const std::string& input, int max_moments,
                bool report_losses) {
  if (g.out.empty()) throw std::runtime_error("ground needs --out");
  const auto cases = io::read_dataset(input);
  LocalizerConfig localizer;
  localizer.threshold = g.threshold;
  localizer.max_moments = max_moments;
  const ValueKind kind = parse_kind(g.kind);

  std::vector<io::PredictionRecord> predictions;
  predictions.reserve(cases.size());
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const PipelineResult result = run_pipeline(cases[k], mode_for(g, k), localizer, kind);
    predictions.push_back({cases[k].id, result.timed});
  }
  io::write_predictions(g.out, predictions);
  std::cerr << "wrote predictions for " << cases.size() << " cases to " << g.out << '\n';

  if (!report_losses) return;
  // In-batch contrastive loss: score every video against every query by
  // rerunning the scoring path on the mixed pair. Quadratic in dataset size.
  const int n = static_cast<int>(cases.size());
  Matrix scores = Matrix::zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GroundingCase mixed = cases[static_cast<std::size_t>(i)];
      const GroundingCase& query = cases[static_cast<std::size_t>(j)];
      mixed.words = query.words;
      mixed.phrases = query.phrases;
      mixed.sentence = query.sentence;
      const ComputeMode pair_mode =
          mode_for(g, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + j + 1000);
      scores.at(i, j) = run_pipeline(mixed, pair_mode, localizer, kind).profile.video_score;
    }
  const nlohmann::json summary = {{"cases", n},
                                  {"tau", g.tau},
                                  {"contrastive_loss", contrastive_loss(scores, g.tau)}};
  std::cout << summary.dump() << '\n';
}

void run_eval(const GlobalOptions& g, const std::string& pred_path, const std::string& data_path,
              const std::vector<int>& ns, const std::vector<double>& ious) {
  const auto records = io::join_for_eval(io::read_predictions(pred_path),
                                         io::read_dataset(data_path));
  nlohmann::json table;
  for (int n : ns)
    for (double m : ious)
      table["R@" + std::to_string(n) + ",IoU=" + io::format_double(m)] = recall_at(records, n, m);
  Output out(g.out);
  out.stream() << table.dump() << '\n';
}

void run_bench(const GlobalOptions& g, int players, int dimension, int trials) {
  if (players < 2 || players > 20)
    throw std::runtime_error("bench-sampling supports 2..20 players");
  if (trials < 1) throw std::runtime_error("--trials must be positive");

  // A cosine game over unit vectors sharing a common direction, so the values
  // being estimated sit well away from zero and relative error is stable.
  Rng rng(derive_seed(g.seed, 424242));
  const std::vector<double> base = rng.unit_vector(dimension);
  std::vector<std::vector<double>> vectors;
  vectors.reserve(static_cast<std::size_t>(players));
  for (int i = 0; i < players; ++i) {
    std::vector<double> v = base;
    const std::vector<double> noise = rng.unit_vector(dimension);
    for (int d = 0; d < dimension; ++d)
      v[static_cast<std::size_t>(d)] += 1.2 * noise[static_cast<std::size_t>(d)];
    vectors.push_back(std::move(v));
  }
  const CharacteristicGame game =
      self_modal_game(EmbeddingSequence(std::move(vectors), Modality::Visual));

  // Track the half of the players with the largest exact values; relative
  // error is ill defined for players whose exact value is near zero.
  std::vector<double> exact(static_cast<std::size_t>(players));
  for (int p = 0; p < players; ++p)
    exact[static_cast<std::size_t>(p)] = exact_value(game, p, parse_kind(g.kind));
  std::vector<int> order(static_cast<std::size_t>(players));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&exact](int a, int b) {
    return std::abs(exact[static_cast<std::size_t>(a)]) >
           std::abs(exact[static_cast<std::size_t>(b)]);
  });
  std::vector<SweepTarget> targets(order.begin(), order.begin() + (players + 1) / 2);
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < trials; ++k)
    seeds.push_back(derive_seed(g.seed, static_cast<std::uint64_t>(k) + 1, 9001));

  const auto rows = convergence_sweep(game, targets, parse_counts(g.samples), seeds,
                                      parse_kind(g.kind));
  Output out(g.out);
  io::write_sweep_csv(out.stream(), rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic video grounding toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
  app.add_option("--mode", g.mode, "value computation mode")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  app.add_option("--samples", g.samples,
                 "sample count for sampled mode; bench-sampling takes a comma list")
      ->capture_default_str();
  app.add_option("--kind", g.kind, "value kind")
      ->check(CLI::IsMember({"banzhaf", "shapley"}))
      ->capture_default_str();
  app.add_option("--threshold", g.threshold, "localizer expansion threshold")
      ->capture_default_str();
  app.add_option("--tau", g.tau, "contrastive temperature")->capture_default_str();
  app.add_option("--out", g.out, "output file (stdout for tables when omitted)");

  auto* gen = app.add_subcommand("generate", "emit a synthetic planted-moment dataset (JSONL)");
  SyntheticConfig gen_config;
  std::string moment_str;
  gen->add_option("--pairs", gen_config.pairs, "number of cases")->capture_default_str();
  gen->add_option("--frames", gen_config.frames, "frames per video")->capture_default_str();
  gen->add_option("--words", gen_config.words, "words per query")->capture_default_str();
  gen->add_option("--phrases", gen_config.phrases, "phrases per query")->capture_default_str();
  gen->add_option("--dim", gen_config.dimension, "embedding dimension")->capture_default_str();
  gen->add_option("--sigma", gen_config.noise_sigma, "in-moment noise scale")
      ->capture_default_str();
  gen->add_option("--duration", gen_config.duration_s, "video duration in seconds")
      ->capture_default_str();
  gen->add_option("--moment", moment_str, "planted interval start:end (random when omitted)");
  gen->fallthrough();

  auto* values = app.add_subcommand("values", "per-player game values for embedding records (CSV)");
  std::string values_input;
  values->add_option("input", values_input, "embeddings JSONL")->required()
      ->check(CLI::ExistingFile);
  values->fallthrough();

  auto* interactions =
      app.add_subcommand("interactions", "frame-word interaction grids for paired records (CSV)");
  std::string interactions_input;
  std::string features = "enhanced";
  interactions->add_option("input", interactions_input, "embeddings JSONL")->required()
      ->check(CLI::ExistingFile);
  interactions->add_option("--features", features, "grid input features")
      ->check(CLI::IsMember({"raw", "enhanced"}))
      ->capture_default_str();
  interactions->fallthrough();

  auto* ground = app.add_subcommand("ground", "run the grounding pipeline over a dataset (JSONL)");
  std::string ground_input;
  int max_moments = 5;
  bool report_losses = false;
  ground->add_option("input", ground_input, "dataset JSONL")->required()
      ->check(CLI::ExistingFile);
  ground->add_option("--max-moments", max_moments, "moments per case")->capture_default_str();
  ground->add_flag("--losses", report_losses,
                   "also print the in-batch contrastive loss (quadratic cost)");
  ground->fallthrough();

  auto* eval = app.add_subcommand("eval", "recall table for predictions against ground truth");
  std::string pred_path;
  std::string data_path;
  std::vector<int> ns = {1, 5};
  std::vector<double> ious = {0.3, 0.5, 0.7};
  eval->add_option("predictions", pred_path, "predictions JSONL")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("dataset", data_path, "dataset JSONL")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--n", ns, "rank depths");
  eval->add_option("--iou", ious, "IoU thresholds");
  eval->fallthrough();

  auto* bench = app.add_subcommand("bench-sampling", "convergence sweep on a reference game (CSV)");
  int bench_players = 12;
  int bench_dim = 16;
  int bench_trials = 20;
  bench->add_option("--players", bench_players, "game size")->capture_default_str();
  bench->add_option("--dim", bench_dim, "embedding dimension")->capture_default_str();
  bench->add_option("--trials", bench_trials, "independent seeds per count")
      ->capture_default_str();
  bench->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) run_generate(g, gen_config, moment_str);
    if (*values) run_values(g, values_input);
    if (*interactions) run_interactions(g, interactions_input, features);
    if (*ground) run_ground(g, ground_input, max_moments, report_losses);
    if (*eval) run_eval(g, pred_path, data_path, ns, ious);
    if (*bench) run_bench(g, bench_players, bench_dim, bench_trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
