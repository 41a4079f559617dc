#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "embedq/alloc_tracker.hpp"

namespace embedq::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RowCountMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::WrongInputDimension:
      return kShapeMismatch;
    case ErrorKind::TooLargeForRankMetrics:
    case ErrorKind::ClusteringTooLarge:
      return kResourceCap;
    case ErrorKind::SvdNonConvergence:
      return kInternal;
    default:
      return kInputError;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string millis(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct LoadedPair {
  LabeledDataset original;
  LabeledDataset embedding;
};

LoadedPair load_pair(const CommonOptions& c, bool require_labels) {
  if (c.original.empty()) throw Error(ErrorKind::InvalidArgument, "--original is required");
  if (c.embedding.empty()) throw Error(ErrorKind::InvalidArgument, "--embedding is required");

  std::optional<std::string> orig_labels;
  if (require_labels || c.labels_col_explicit || has_column(c.original, c.labels_col)) orig_labels = c.labels_col;
  std::optional<std::string> emb_labels;
  if (has_column(c.embedding, c.labels_col)) emb_labels = c.labels_col;

  LoadedPair out{load_point_cloud(c.original, orig_labels), load_point_cloud(c.embedding, emb_labels)};
  out.original.name = stem(c.original);
  out.embedding.name = stem(c.embedding);
  if (out.original.x.rows() != out.embedding.x.rows())
    throw Error(ErrorKind::RowCountMismatch, "original has " + std::to_string(out.original.x.rows()) +
                                                 " rows, embedding has " + std::to_string(out.embedding.x.rows()));
  return out;
}

bool wants_supervised(const CommonOptions& c, const std::optional<std::size_t>& clusters) {
  if (clusters) return false;
  if (c.mode == "supervised" || c.mode == "auto") return true;
  if (c.mode == "unsupervised") throw Error(ErrorKind::InvalidArgument, "unsupervised mode needs --clusters");
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + c.mode + "'");
}

ScoreReport base_report(const LoadedPair& data, const CommonOptions& c) {
  ScoreReport r;
  r.dataset = data.original.name;
  r.embedding = data.embedding.name;
  r.mode = "none";
  r.n = data.original.x.rows();
  r.p = data.original.x.cols();
  r.q = data.embedding.x.cols();
  r.seed = c.seed;
  return r;
}

}  // namespace

ScoreReport cmd_score(const ScoreOptions& opts) {
  const auto& c = opts.common;
  const bool supervised = wants_supervised(c, opts.clusters);
  const auto data = load_pair(c, c.mode == "supervised");
  if (supervised && !data.original.has_labels)
    throw Error(ErrorKind::MissingLabelColumn, "no column named '" + c.labels_col + "' in " + c.original +
                                                   "; pass --clusters for unsupervised scoring");

  ScoreReport report = base_report(data, c);
  ClusterAssignment assignment;
  CmetScore score;
  {
    alloc::Scope scope;
    const auto start = Clock::now();
    if (supervised) {
      assignment = data.original.labels;
      score = cmet_score(data.original.x, data.embedding.x, assignment, Mode::Supervised);
    } else {
      const Unsupervised req{*opts.clusters, parse_linkage(c.linkage), c.clustering_cap};
      assignment = unsupervised_assignment(data.original.x, req);
      score = cmet_score(data.original.x, data.embedding.x, assignment, Mode::Unsupervised);
      report.linkage = c.linkage;
    }
    report.cmet_ms = elapsed_ms(start);
    report.peak_memory_bytes = scope.peak_bytes();
  }
  report.set_score(score);

  if (!opts.svg.empty()) {
    std::ofstream svg(opts.svg);
    if (!svg) throw Error(ErrorKind::IoError, "cannot write '" + opts.svg + "'");
    write_svg_scatter(svg, data.embedding.x, assignment, report.embedding);
  }
  return report;
}

std::vector<ScoreReport> cmd_sweep(const SweepOptions& opts) {
  if (opts.clusters.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one cluster count");
  const auto& c = opts.common;
  const auto data = load_pair(c, false);
  const std::size_t n = data.original.x.rows();
  for (auto k : opts.clusters)
    if (k < 1 || k > n)
      throw Error(ErrorKind::InvalidClusterCount, "cluster count " + std::to_string(k) + " outside 1.." + std::to_string(n));

  const auto linkage = parse_linkage(c.linkage);
  std::optional<Dendrogram> tree;
  std::vector<ScoreReport> reports;
  for (auto k : opts.clusters) {
    ScoreReport report = base_report(data, c);
    alloc::Scope scope;
    const auto start = Clock::now();
    ClusterAssignment assignment;
    if (k == 1) {
      assignment = ClusterAssignment::single(n);
    } else {
      if (!tree) tree = agglomerate(data.original.x, linkage, c.clustering_cap);
      assignment = cut(*tree, k);
    }
    report.set_score(cmet_score(data.original.x, data.embedding.x, assignment, Mode::Unsupervised));
    report.cmet_ms = elapsed_ms(start);
    report.peak_memory_bytes = scope.peak_bytes();
    report.linkage = c.linkage;
    reports.push_back(std::move(report));
  }
  return reports;
}

ScoreReport cmd_baseline(const BaselineOptions& opts) {
  const auto& c = opts.common;
  const auto data = load_pair(c, false);
  const auto& x = data.original.x;
  const auto& xp = data.embedding.x;
  ScoreReport report = base_report(data, c);
  const std::size_t k = opts.k.value_or(default_neighborhood(x.rows()));
  report.k = k;

  if (opts.metrics.empty()) throw Error(ErrorKind::InvalidArgument, "no baseline metrics requested");
  for (const auto& m : opts.metrics)
    if (m != "trustworthiness" && m != "continuity" && m != "lcmc")
      throw Error(ErrorKind::InvalidArgument, "unknown metric '" + m + "'");
  auto wanted = [&](std::string_view name) {
    return std::find(opts.metrics.begin(), opts.metrics.end(), name) != opts.metrics.end();
  };

  std::size_t peak = 0;
  auto timed = [&](auto&& fn, std::optional<double>& value, std::optional<double>& ms) {
    alloc::Scope scope;
    const auto start = Clock::now();
    value = fn();
    ms = elapsed_ms(start);
    peak = std::max(peak, scope.peak_bytes());
  };
  if (wanted("trustworthiness"))
    timed([&] { return trustworthiness(x, xp, k, opts.rank_cap); }, report.trustworthiness, report.trustworthiness_ms);
  if (wanted("continuity"))
    timed([&] { return continuity(x, xp, k, opts.rank_cap); }, report.continuity, report.continuity_ms);
  if (wanted("lcmc")) timed([&] { return lcmc(x, xp, k, opts.rank_cap); }, report.lcmc, report.lcmc_ms);
  report.peak_memory_bytes = peak;
  return report;
}

void cmd_gen(const GenOptions& opts) {
  LabeledDataset data;
  if (opts.name == "rings")
    data = gen_rings(opts.size.value_or(500), opts.seed);
  else if (opts.name == "swissroll")
    data = gen_swiss_roll(opts.size.value_or(1500), opts.seed);
  else
    throw Error(ErrorKind::InvalidArgument, "unknown dataset '" + opts.name + "' (expected rings or swissroll)");
  if (opts.out.empty())
    write_point_cloud(std::cout, data.x, &data.labels, data.feature_names);
  else
    save_point_cloud(opts.out, data.x, &data.labels, data.feature_names);
}

void cmd_embed(const EmbedOptions& opts) {
  std::optional<std::string> label_col;
  if (has_column(opts.input, opts.labels_col)) label_col = opts.labels_col;
  const auto data = load_point_cloud(opts.input, label_col);

  DataMatrix result;
  std::vector<std::string> names;
  if (opts.method == "pca") {
    result = transform(fit_pca(data.x, opts.dims), data.x);
  } else if (opts.method == "random") {
    result = transform(fit_random_projection(data.x, opts.dims, opts.seed), data.x);
  } else if (opts.method == "shuffle") {
    result = shuffle_embedding(data.x, opts.seed);
  } else if (opts.method == "jitter") {
    result = jitter_embedding(data.x, opts.sigma, opts.seed);
  } else if (opts.method == "lift") {
    result = lift_2_9(data.x);
    names = {"s", "d", "xy", "x2", "y2", "x2y", "xy2", "x3", "y3"};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown embedding method '" + opts.method + "'");
  }
  const ClusterAssignment* labels = data.has_labels ? &data.labels : nullptr;
  if (opts.out.empty())
    write_point_cloud(std::cout, result, labels, names);
  else
    save_point_cloud(opts.out, result, labels, names);
}

void cmd_bench(const BenchOptions& opts, std::ostream& out) {
  if (opts.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "bench needs at least one size");
  out << "n,p,c,cmet_ms,cmet_peak_bytes,trustworthiness_ms,trustworthiness_peak_bytes\n";
  for (auto requested : opts.sizes) {
    const std::size_t per = std::max<std::size_t>(1, requested / opts.clusters);
    const auto data = gen_blobs(opts.clusters, per, opts.dims, 1.0, 10.0, opts.seed);
    const auto emb = transform(fit_random_projection(data.x, std::min<std::size_t>(2, opts.dims), opts.seed), data.x);
    const std::size_t n = data.x.rows();

    double cmet_ms = 0.0;
    std::size_t cmet_peak = 0;
    {
      alloc::Scope scope;
      const auto start = Clock::now();
      (void)cmet_score(data.x, emb, data.labels, Mode::Supervised);
      cmet_ms = elapsed_ms(start);
      cmet_peak = scope.peak_bytes();
    }
    out << n << ',' << opts.dims << ',' << opts.clusters << ',' << millis(cmet_ms) << ',' << cmet_peak
        << ',';
    if (n > opts.rank_cap || n < 3) {
      out << "capped,capped\n";
      continue;
    }
    alloc::Scope scope;
    const auto start = Clock::now();
    (void)trustworthiness(data.x, emb, default_neighborhood(n), opts.rank_cap);
    out << millis(elapsed_ms(start)) << ',' << scope.peak_bytes() << '\n';
  }
}

void emit(const std::vector<ScoreReport>& reports, Format format, const std::string& out_path,
          std::ostream& fallback, bool as_array) {
  std::string text;
  if (format == Format::Csv)
    text = to_csv(reports);
  else if (as_array)
    text = to_json(reports) + "\n";
  else
    text = to_json(reports.front()) + "\n";
  if (out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error(ErrorKind::IoError, "cannot write '" + out_path + "'");
  f << text;
}

}  // namespace embedq::cli
