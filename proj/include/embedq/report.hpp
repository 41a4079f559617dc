#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "embedq/cmet.hpp"

namespace embedq {

/// One scoring run, serialized with a fixed key set. Absent values are
/// written as null; floats carry 17 significant digits so they read back
/// bit-for-bit.
struct ScoreReport {
  std::string dataset;
  std::string embedding;
  std::string mode;  // "supervised", "unsupervised", or "none" when CMET was not run
  std::optional<std::string> linkage;
  std::size_t clusters = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::uint64_t seed = 42;

  std::optional<double> cmet_local;
  std::optional<double> cmet_global;
  std::optional<double> cmet_local_raw;
  std::optional<double> cmet_global_raw;

  std::optional<std::size_t> k;
  std::optional<double> trustworthiness;
  std::optional<double> continuity;
  std::optional<double> lcmc;

  std::optional<double> cmet_ms;
  std::optional<double> trustworthiness_ms;
  std::optional<double> continuity_ms;
  std::optional<double> lcmc_ms;
  std::size_t peak_memory_bytes = 0;

  void set_score(const CmetScore& s) {
    mode = std::string(to_string(s.mode));
    clusters = s.clusters;
    n = s.n;
    p = s.p;
    q = s.q;
    cmet_local = s.local;
    cmet_global = s.global;
    cmet_local_raw = s.local_raw;
    cmet_global_raw = s.global_raw;
  }
};

namespace detail {

inline std::string json_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

inline std::string json_opt(const std::optional<double>& v) { return v ? json_number(*v) : "null"; }
inline std::string json_opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "null"; }
inline std::string json_opt(const std::optional<std::string>& v) { return v ? json_string(*v) : "null"; }

inline std::string csv_opt(const std::optional<double>& v) { return v ? json_number(*v) : ""; }
inline std::string csv_opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_json(const ScoreReport& r, int indent = 2) {
  using namespace detail;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string pad2 = pad + pad;
  const char* nl = indent > 0 ? "\n" : "";
  const char* sp = indent > 0 ? " " : "";
  std::ostringstream o;
  auto field = [&](const std::string& p, std::string_view key, const std::string& value, bool last = false) {
    o << p << json_string(key) << ':' << sp << value << (last ? "" : ",") << nl;
  };
  o << '{' << nl;
  field(pad, "dataset", json_string(r.dataset));
  field(pad, "embedding", json_string(r.embedding));
  field(pad, "mode", json_string(r.mode));
  field(pad, "linkage", json_opt(r.linkage));
  field(pad, "c", std::to_string(r.clusters));
  field(pad, "n", std::to_string(r.n));
  field(pad, "p", std::to_string(r.p));
  field(pad, "q", std::to_string(r.q));
  field(pad, "seed", std::to_string(r.seed));
  field(pad, "cmet_local", json_opt(r.cmet_local));
  field(pad, "cmet_global", json_opt(r.cmet_global));
  o << pad << json_string("diagnostics") << ':' << sp << '{' << nl;
  field(pad2, "cmet_local_raw", json_opt(r.cmet_local_raw));
  field(pad2, "cmet_global_raw", json_opt(r.cmet_global_raw), true);
  o << pad << "}," << nl;
  o << pad << json_string("baselines") << ':' << sp << '{' << nl;
  field(pad2, "k", json_opt(r.k));
  field(pad2, "trustworthiness", json_opt(r.trustworthiness));
  field(pad2, "continuity", json_opt(r.continuity));
  field(pad2, "lcmc", json_opt(r.lcmc), true);
  o << pad << "}," << nl;
  o << pad << json_string("timings_ms") << ':' << sp << '{' << nl;
  field(pad2, "cmet", json_opt(r.cmet_ms));
  field(pad2, "trustworthiness", json_opt(r.trustworthiness_ms));
  field(pad2, "continuity", json_opt(r.continuity_ms));
  field(pad2, "lcmc", json_opt(r.lcmc_ms), true);
  o << pad << "}," << nl;
  field(pad, "peak_memory_bytes", std::to_string(r.peak_memory_bytes), true);
  o << '}';
  return o.str();
}

/// JSON array of reports, one object per element.
inline std::string to_json(const std::vector<ScoreReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += i ? ",\n" : "\n";
    out += to_json(reports[i], 2);
  }
  return out + (reports.empty() ? "]" : "\n]");
}

inline constexpr std::string_view kReportCsvHeader =
    "dataset,embedding,mode,linkage,c,n,p,q,seed,cmet_local,cmet_global,cmet_local_raw,cmet_global_raw,"
    "k,trustworthiness,continuity,lcmc,cmet_ms,trustworthiness_ms,continuity_ms,lcmc_ms,peak_memory_bytes";

inline std::string to_csv_row(const ScoreReport& r) {
  using namespace detail;
  std::ostringstream o;
  o << csv_field(r.dataset) << ',' << csv_field(r.embedding) << ',' << r.mode << ','
    << (r.linkage ? *r.linkage : "") << ',' << r.clusters << ',' << r.n << ',' << r.p << ',' << r.q << ','
    << r.seed << ',' << csv_opt(r.cmet_local) << ',' << csv_opt(r.cmet_global) << ','
    << csv_opt(r.cmet_local_raw) << ',' << csv_opt(r.cmet_global_raw) << ',' << csv_opt(r.k) << ','
    << csv_opt(r.trustworthiness) << ',' << csv_opt(r.continuity) << ',' << csv_opt(r.lcmc) << ','
    << csv_opt(r.cmet_ms) << ',' << csv_opt(r.trustworthiness_ms) << ',' << csv_opt(r.continuity_ms) << ','
    << csv_opt(r.lcmc_ms) << ',' << r.peak_memory_bytes;
  return o.str();
}

inline std::string to_csv(const std::vector<ScoreReport>& reports) {
  std::string out(kReportCsvHeader);
  out += '\n';
  for (const auto& r : reports) out += to_csv_row(r) + '\n';
  return out;
}

}  // namespace embedq
