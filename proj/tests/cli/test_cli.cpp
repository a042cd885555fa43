// End-to-end tests of the command-line binary; each case shells out to the
// built executable and inspects its files and exit status.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamealign/gamealign.hpp"

namespace {

using namespace gamealign;

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gamealign_cli_" + name)).string();
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + GAMEALIGN_CLI_PATH + "\" " + args;
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long count_lines(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  long long n = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("generate, ground, and eval chain together") {
  const std::string dataset = tmp_path("chain_d.jsonl");
  const std::string preds = tmp_path("chain_p.jsonl");
  const std::string table = tmp_path("chain_eval.json");

  REQUIRE(run("generate --pairs 6 --seed 7 --dim 16 --sigma 0.05 --moment 2:4 --out " + dataset +
              " 2>/dev/null") == 0);
  CHECK(count_lines(dataset) == 6);

  REQUIRE(run("ground " + dataset + " --threshold 0.8 --out " + preds + " 2>/dev/null") == 0);
  CHECK(count_lines(preds) == 6);

  REQUIRE(run("eval " + preds + " " + dataset + " --out " + table) == 0);
  const nlohmann::json parsed = nlohmann::json::parse(slurp(table));
  REQUIRE(parsed.contains("R@1,IoU=0.5"));
  REQUIRE(parsed.contains("R@5,IoU=0.7"));
  const double r1 = parsed["R@1,IoU=0.5"].get<double>();
  CHECK(r1 >= 0.0);
  CHECK(r1 <= 1.0);
  CHECK(parsed["R@5,IoU=0.5"].get<double>() >= r1);

  // The clean planted signal should be easy to ground.
  CHECK(parsed["R@1,IoU=0.3"].get<double>() > 0.5);

  std::remove(dataset.c_str());
  std::remove(preds.c_str());
  std::remove(table.c_str());
}

TEST_CASE("generated datasets are seed-reproducible") {
  const std::string a = tmp_path("repro_a.jsonl");
  const std::string b = tmp_path("repro_b.jsonl");
  REQUIRE(run("generate --pairs 3 --seed 42 --dim 8 --out " + a + " 2>/dev/null") == 0);
  REQUIRE(run("generate --pairs 3 --seed 42 --dim 8 --out " + b + " 2>/dev/null") == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string c = tmp_path("repro_c.jsonl");
  REQUIRE(run("generate --pairs 3 --seed 43 --dim 8 --out " + c + " 2>/dev/null") == 0);
  CHECK(slurp(a) != slurp(c));
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
}

TEST_CASE("values emits one row per player with a header") {
  SyntheticConfig config;
  config.frames = 5;
  config.words = 3;
  config.dimension = 8;
  config.seed = 9;
  const GroundingCase c = generate(config)[0];
  const std::string embeddings = tmp_path("values_e.jsonl");
  io::write_embeddings(embeddings, {{"clip", c.visual}, {"query", c.words}});

  const std::string exact_csv = tmp_path("values_exact.csv");
  REQUIRE(run("values " + embeddings + " --kind shapley --out " + exact_csv) == 0);
  const auto exact_rows = read_csv(exact_csv);
  REQUIRE(exact_rows.size() == 1 + 5 + 3);
  CHECK(exact_rows[0] == std::vector<std::string>{"id", "modality", "player", "kind", "value",
                                                  "standard_error"});
  CHECK(exact_rows[1][0] == "clip");
  CHECK(exact_rows[1][1] == "visual");
  CHECK(exact_rows[1][3] == "shapley");
  for (std::size_t r = 1; r < exact_rows.size(); ++r) CHECK(exact_rows[r][5] == "0");

  const std::string sampled_csv = tmp_path("values_sampled.csv");
  REQUIRE(run("values " + embeddings + " --mode sampled --samples 400 --seed 5 --out " +
              sampled_csv) == 0);
  const auto sampled_rows = read_csv(sampled_csv);
  REQUIRE(sampled_rows.size() == exact_rows.size());
  bool some_se = false;
  for (std::size_t r = 1; r < sampled_rows.size(); ++r)
    if (sampled_rows[r][5] != "0") some_se = true;
  CHECK(some_se);

  std::remove(embeddings.c_str());
  std::remove(exact_csv.c_str());
  std::remove(sampled_csv.c_str());
}

TEST_CASE("interactions pairs records by id and fills the grid") {
  SyntheticConfig config;
  config.frames = 4;
  config.words = 2;
  config.dimension = 8;
  config.seed = 21;
  const GroundingCase c = generate(config)[0];
  const std::string embeddings = tmp_path("inter_e.jsonl");
  io::write_embeddings(embeddings, {{"pair-0", c.visual}, {"pair-0", c.words}});

  const std::string raw_csv = tmp_path("inter_raw.csv");
  REQUIRE(run("interactions " + embeddings + " --features raw --out " + raw_csv) == 0);
  const auto rows = read_csv(raw_csv);
  REQUIRE(rows.size() == 1 + 4 * 2);
  CHECK(rows[0] == std::vector<std::string>{"id", "frame", "word", "kind", "value"});
  CHECK(rows[1][0] == "pair-0");
  CHECK(rows[1][3] == "banzhaf");

  const std::string enhanced_csv = tmp_path("inter_enh.csv");
  REQUIRE(run("interactions " + embeddings + " --out " + enhanced_csv) == 0);
  CHECK(read_csv(enhanced_csv).size() == rows.size());
  CHECK(slurp(enhanced_csv) != slurp(raw_csv));  // enhancement changes the grid

  // A file with no matching visual/textual ids is an error.
  const std::string unpaired = tmp_path("inter_unpaired.jsonl");
  io::write_embeddings(unpaired, {{"only-visual", c.visual}});
  CHECK(run("interactions " + unpaired + " --out " + tmp_path("unused.csv") +
            " 2>/dev/null") != 0);

  std::remove(embeddings.c_str());
  std::remove(raw_csv.c_str());
  std::remove(enhanced_csv.c_str());
  std::remove(unpaired.c_str());
}

TEST_CASE("ground reports the in-batch contrastive loss on request") {
  const std::string dataset = tmp_path("loss_d.jsonl");
  const std::string preds = tmp_path("loss_p.jsonl");
  const std::string stdout_file = tmp_path("loss_out.json");
  REQUIRE(run("generate --pairs 4 --seed 11 --dim 16 --sigma 0.0 --out " + dataset +
              " 2>/dev/null") == 0);
  REQUIRE(run("ground " + dataset + " --losses --tau 0.1 --out " + preds + " > " + stdout_file +
              " 2>/dev/null") == 0);

  const nlohmann::json summary = nlohmann::json::parse(slurp(stdout_file));
  CHECK(summary["cases"].get<int>() == 4);
  CHECK(summary["tau"].get<double>() == 0.1);
  CHECK(summary["contrastive_loss"].get<double>() >= 0.0);

  std::remove(dataset.c_str());
  std::remove(preds.c_str());
  std::remove(stdout_file.c_str());
}

TEST_CASE("bench-sampling errors shrink as counts grow") {
  const std::string csv = tmp_path("bench.csv");
  REQUIRE(run("bench-sampling --samples 500,2000,8000 --trials 8 --players 8 --seed 3 --out " +
              csv) == 0);
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"count", "mean_rel_error", "std_rel_error"});
  CHECK(rows[1][0] == "500");
  CHECK(rows[3][0] == "8000");
  const double e0 = std::stod(rows[1][1]);
  const double e1 = std::stod(rows[2][1]);
  const double e2 = std::stod(rows[3][1]);
  CHECK(e0 >= e1);
  CHECK(e1 >= e2);
  CHECK(e2 > 0.0);
  std::remove(csv.c_str());
}

TEST_CASE("bad invocations exit nonzero") {
  CHECK(run("generate --bogus-flag 2>/dev/null") != 0);
  CHECK(run("2>/dev/null") != 0);                       // missing subcommand
  CHECK(run("eval missing.jsonl also-missing.jsonl 2>/dev/null") != 0);
  CHECK(run("generate --pairs 2 --dim 8 2>/dev/null") != 0);  // no --out
  CHECK(run("ground nonexistent.jsonl --out x.jsonl 2>/dev/null") != 0);
  CHECK(run("generate --pairs 1 --moment 5:9 --frames 6 --dim 8 --out " +
            tmp_path("never.jsonl") + " 2>/dev/null") != 0);  // invalid moment
}
