#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <new>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "embedq/embedq.hpp"

namespace embedq::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kShapeMismatch = 3,
  kResourceCap = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

enum class Format { Json, Csv };

struct CommonOptions {
  std::string original;
  std::string embedding;
  std::string labels_col = "label";
  bool labels_col_explicit = false;
  std::string mode = "auto";  // auto | supervised | unsupervised
  std::string linkage = "ward";
  std::size_t clustering_cap = kDefaultClusteringCap;
  Format format = Format::Json;
  std::uint64_t seed = 42;
  std::string out;  // empty = stdout
};

struct ScoreOptions {
  CommonOptions common;
  std::optional<std::size_t> clusters;
  std::string svg;  // optional scatter of the embedding
};

struct SweepOptions {
  CommonOptions common;
  std::vector<std::size_t> clusters;
};

struct BaselineOptions {
  CommonOptions common;
  std::optional<std::size_t> k;
  std::vector<std::string> metrics{"trustworthiness", "continuity", "lcmc"};
  std::size_t rank_cap = kDefaultRankCap;
};

struct GenOptions {
  std::string name;
  std::optional<std::size_t> size;  // points per ring (rings) or total points (swissroll)
  std::uint64_t seed = 42;
  std::string out;
};

struct EmbedOptions {
  std::string input;
  std::string method;  // pca | random | shuffle | jitter | lift
  std::size_t dims = 2;
  double sigma = 0.1;
  std::string labels_col = "label";
  std::uint64_t seed = 42;
  std::string out;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::size_t dims = 50;
  std::size_t clusters = 10;
  std::size_t rank_cap = kDefaultRankCap;
  std::uint64_t seed = 42;
};

/// Library entry points behind each subcommand. They throw embedq::Error;
/// `run_guarded` turns that into an exit code and a stderr message.
ScoreReport cmd_score(const ScoreOptions& opts);
std::vector<ScoreReport> cmd_sweep(const SweepOptions& opts);
ScoreReport cmd_baseline(const BaselineOptions& opts);
void cmd_gen(const GenOptions& opts);
void cmd_embed(const EmbedOptions& opts);
void cmd_bench(const BenchOptions& opts, std::ostream& out);

/// Writes reports to `out_path` (or `fallback` when empty) in the chosen format.
void emit(const std::vector<ScoreReport>& reports, Format format, const std::string& out_path,
          std::ostream& fallback, bool as_array);

template <typename Fn>
int run_guarded(Fn&& fn, std::ostream& err) {
  try {
    fn();
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace embedq::cli
