#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "embedq/alloc_tracker.hpp"

EMBEDQ_INSTALL_ALLOCATION_TRACKER()

namespace {

using namespace embedq::cli;

void add_common(CLI::App* cmd, CommonOptions& c, std::string& format) {
  cmd->add_option("--original", c.original, "Original point cloud (CSV)")->required();
  cmd->add_option("--embedding", c.embedding, "Embedded point cloud (CSV, same row order)")->required();
  cmd->add_option("--labels-col", c.labels_col, "Name of the integer label column")->capture_default_str();
  cmd->add_option("--mode", c.mode, "auto | supervised | unsupervised")
      ->check(CLI::IsMember({"auto", "supervised", "unsupervised"}))
      ->capture_default_str();
  cmd->add_option("--linkage", c.linkage, "Agglomerative linkage")
      ->check(CLI::IsMember({"ward", "average", "complete", "single"}))
      ->capture_default_str();
  cmd->add_option("--max-cluster-samples", c.clustering_cap, "Sample cap for agglomerative clustering")
      ->capture_default_str();
  cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed recorded in the report")->capture_default_str();
  cmd->add_option("--out", c.out, "Output file (default stdout)");
}

Format parse_format(const std::string& s) { return s == "csv" ? Format::Csv : Format::Json; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"embedq: cluster-guided shape preservation scores for embeddings"};
  app.require_subcommand(1);

  std::string format = "json";

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Score an embedding against its original data");
  add_common(score_cmd, score.common, format);
  score_cmd->add_option("--clusters", score.clusters, "Cluster count; forces unsupervised mode");
  score_cmd->add_option("--svg", score.svg, "Write a 2-D scatter of the embedding coloured by cluster");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Unsupervised scores for several cluster counts");
  add_common(sweep_cmd, sweep.common, format);
  sweep_cmd->add_option("--clusters", sweep.clusters, "Cluster counts, e.g. --clusters 3,4,5,6,7")
      ->delimiter(',')
      ->required();

  BaselineOptions baseline;
  auto* baseline_cmd = app.add_subcommand("baseline", "Trustworthiness, continuity and LCMC");
  add_common(baseline_cmd, baseline.common, format);
  baseline_cmd->add_option("--k", baseline.k, "Neighbourhood size (default max(1, n/100))");
  baseline_cmd->add_option("--metrics", baseline.metrics, "Subset of trustworthiness,continuity,lcmc")
      ->delimiter(',')
      ->capture_default_str();
  baseline_cmd->add_option("--max-rank-samples", baseline.rank_cap, "Sample cap for rank metrics")
      ->capture_default_str();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic labelled dataset as CSV");
  gen_cmd->add_option("name", gen.name, "rings | swissroll")->required();
  gen_cmd->add_option("--size", gen.size, "Points per ring (rings, default 500) or total points (swissroll, default 1500)");
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "Produce a fixture embedding of a CSV point cloud");
  embed_cmd->add_option("--input", embed.input)->required();
  embed_cmd->add_option("--method", embed.method, "pca | random | shuffle | jitter | lift")->required();
  embed_cmd->add_option("--dims", embed.dims, "Target dimension for pca/random")->capture_default_str();
  embed_cmd->add_option("--sigma", embed.sigma, "Noise level for jitter")->capture_default_str();
  embed_cmd->add_option("--labels-col", embed.labels_col)->capture_default_str();
  embed_cmd->add_option("--seed", embed.seed)->capture_default_str();
  embed_cmd->add_option("--out", embed.out, "Output file (default stdout)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time CMET against rank metrics as n grows (CSV to stdout)");
  bench_cmd->add_option("--n", bench.sizes, "Sample counts, e.g. --n 1000,2000,4000")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--p", bench.dims)->capture_default_str();
  bench_cmd->add_option("--c", bench.clusters)->capture_default_str();
  bench_cmd->add_option("--max-rank-samples", bench.rank_cap)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  auto labels_explicit = [](CLI::App* cmd) { return cmd->count("--labels-col") > 0; };

  if (*score_cmd) {
    score.common.format = parse_format(format);
    score.common.labels_col_explicit = labels_explicit(score_cmd);
    return run_guarded([&] { emit({cmd_score(score)}, score.common.format, score.common.out, std::cout, false); },
                       std::cerr);
  }
  if (*sweep_cmd) {
    sweep.common.format = parse_format(format);
    sweep.common.labels_col_explicit = labels_explicit(sweep_cmd);
    return run_guarded([&] { emit(cmd_sweep(sweep), sweep.common.format, sweep.common.out, std::cout, true); },
                       std::cerr);
  }
  if (*baseline_cmd) {
    baseline.common.format = parse_format(format);
    baseline.common.labels_col_explicit = labels_explicit(baseline_cmd);
    return run_guarded(
        [&] { emit({cmd_baseline(baseline)}, baseline.common.format, baseline.common.out, std::cout, false); },
        std::cerr);
  }
  if (*gen_cmd) return run_guarded([&] { cmd_gen(gen); }, std::cerr);
  if (*embed_cmd) return run_guarded([&] { cmd_embed(embed); }, std::cerr);
  if (*bench_cmd) return run_guarded([&] { cmd_bench(bench, std::cout); }, std::cerr);
  return kInputError;
}
