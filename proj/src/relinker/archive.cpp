#include "relinker/archive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "relinker/error.hpp"
#include "relinker/log.hpp"
#include "relinker/similarity.hpp"
#include "relinker/uri.hpp"

namespace relinker {

using namespace std::chrono;

YearMonth parse_year_month(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  char tail = 0;
  const std::string s(text);
  if (s.size() != 7 || std::sscanf(s.c_str(), "%4d-%2u%c", &y, &m, &tail) != 2 || m < 1 || m > 12) {
    throw Error(ErrorCode::InvalidArgument, "expected YYYY-MM, got '" + s + "'");
  }
  return {y, m};
}

std::string format_year_month(YearMonth ym) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", ym.year, ym.month);
  return buf;
}

std::vector<TimeWindow> make_windows(YearMonth newest, std::size_t count) {
  if (newest.month != 2 && newest.month != 8) {
    throw Error(ErrorCode::InvalidArgument,
                "window anchor must be a February or August month, got " + format_year_month(newest));
  }
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "window count must be at least 1");
  std::vector<TimeWindow> windows;
  YearMonth ym = newest;
  for (std::size_t i = 0; i < count; ++i) {
    const sys_days day{year{ym.year} / month{ym.month} / 1};
    windows.push_back({format_year_month(ym), Timestamp{day}});
    if (ym.month == 8) {
      ym.month = 2;
    } else {
      ym.month = 8;
      --ym.year;
    }
  }
  return windows;
}

Snapshot make_snapshot(Timestamp timestamp, std::string raw_html) {
  PageDocument doc = make_document("", "", timestamp, std::move(raw_html));
  return {timestamp, std::move(doc.raw_html), std::move(doc.title), std::move(doc.terms)};
}

SnapshotSeries::SnapshotSeries(std::string uri, PageDocument baseline)
    : uri_(std::move(uri)), baseline_(std::move(baseline)) {}

void SnapshotSeries::add(Snapshot snapshot) {
  auto it = std::lower_bound(snapshots_.begin(), snapshots_.end(), snapshot.timestamp,
                             [](const Snapshot& s, Timestamp t) { return s.timestamp < t; });
  if (it != snapshots_.end() && it->timestamp == snapshot.timestamp) {
    if (snapshot.raw_html < it->raw_html) *it = std::move(snapshot);
    return;
  }
  snapshots_.insert(it, std::move(snapshot));
}

const Snapshot* representative(const SnapshotSeries& series, const TimeWindow& window) {
  const auto& snaps = series.snapshots();
  const auto it = std::lower_bound(snaps.begin(), snaps.end(), window.start,
                                   [](const Snapshot& s, Timestamp t) { return s.timestamp < t; });
  if (it == snaps.end() || !window.contains(it->timestamp)) return nullptr;
  return &*it;
}

std::size_t evolution_bin(double d) {
  if (d <= 0.0) return 0;
  if (d <= 0.3) return 1;
  if (d <= 0.5) return 2;
  if (d <= 0.8) return 3;
  return 4;
}

EvolutionReport title_evolution(std::span<const SnapshotSeries> corpus, std::span<const TimeWindow> windows,
                                double minor_threshold) {
  EvolutionReport report;
  for (const auto& w : windows) {
    WindowEvolution we;
    we.window = w;
    std::size_t unchanged = 0, minor = 0;
    for (const auto& series : corpus) {
      const Snapshot* rep = representative(series, w);
      if (!rep) continue;
      ++we.representatives;
      if (!series.baseline().title || !rep->title) {
        ++we.excluded;
        continue;
      }
      const double d = levenshtein_norm(series.baseline().title->raw, rep->title->raw);
      ++we.available;
      ++we.histogram[evolution_bin(d)];
      if (d == 0.0) ++unchanged;
      if (d <= minor_threshold) ++minor;
    }
    if (we.available) {
      we.p_unchanged = static_cast<double>(unchanged) / static_cast<double>(we.available);
      we.p_minor = static_cast<double>(minor) / static_cast<double>(we.available);
    }
    report.windows.push_back(std::move(we));
  }
  return report;
}

int round_to_tenth(double v) {
  // The epsilon absorbs representation error so 0.25 and 0.35 round up alike.
  return static_cast<int>(std::floor(v * 10.0 + 0.5 + 1e-9));
}

CorrelationGrid title_vs_content(std::span<const SnapshotSeries> corpus, std::span<const TimeWindow> windows,
                                 std::size_t shingle_w) {
  CorrelationGrid grid;
  for (const auto& series : corpus) {
    const ShingleSet baseline(series.baseline().terms, shingle_w);
    double title_sum = 0.0, content_sum = 0.0;
    std::size_t title_n = 0, content_n = 0;
    for (const auto& w : windows) {
      const Snapshot* rep = representative(series, w);
      if (!rep) continue;
      content_sum += 1.0 - resemblance(baseline, ShingleSet(rep->terms, shingle_w));
      ++content_n;
      if (series.baseline().title && rep->title) {
        title_sum += levenshtein_norm(series.baseline().title->raw, rep->title->raw);
        ++title_n;
      }
    }
    if (content_n == 0) {
      ++grid.no_window;
      continue;
    }
    if (title_n == 0) {
      ++grid.no_title;
      continue;
    }
    const int x = round_to_tenth(title_sum / static_cast<double>(title_n));
    const int y = round_to_tenth(content_sum / static_cast<double>(content_n));
    ++grid.points[{x, y}];
    ++grid.included;
  }
  return grid;
}

std::string sha1_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha1(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "SHA-1 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

SnapshotStore::SnapshotStore(std::filesystem::path root) : root_(std::move(root)) {}

namespace {

constexpr const char* kManifestName = "manifest.json";

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, "malformed snapshot manifest '" + path.string() + "': " + e.what());
  }
}

}  // namespace

void SnapshotStore::put(std::string_view uri, Timestamp timestamp, std::string_view raw_html) const {
  const std::string canonical = canonicalize_uri(uri);
  const auto dir = root_ / sha1_hex(canonical);
  std::filesystem::create_directories(dir);
  const std::string stamp = format_timestamp(timestamp);
  const std::string file = stamp + ".html";
  {
    std::ofstream out(dir / file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write snapshot '" + (dir / file).string() + "'");
    out.write(raw_html.data(), static_cast<std::streamsize>(raw_html.size()));
  }
  const auto manifest_path = dir / kManifestName;
  nlohmann::json manifest = std::filesystem::exists(manifest_path)
                                ? read_json(manifest_path)
                                : nlohmann::json{{"uri", canonical}, {"snapshots", nlohmann::json::array()}};
  auto& entries = manifest["snapshots"];
  const bool known = std::any_of(entries.begin(), entries.end(),
                                 [&](const nlohmann::json& e) { return e.value("timestamp", "") == stamp; });
  if (!known) {
    entries.push_back({{"timestamp", stamp}, {"file", file}});
    std::sort(entries.begin(), entries.end(), [](const nlohmann::json& a, const nlohmann::json& b) {
      return a.at("timestamp").get<std::string>() < b.at("timestamp").get<std::string>();
    });
  }
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + manifest_path.string() + "'");
  out << manifest.dump(2) << '\n';
}

SnapshotStore::Loaded SnapshotStore::load(std::span<const PageDocument> baselines) const {
  if (!std::filesystem::is_directory(root_)) {
    throw Error(ErrorCode::Io, "snapshot store '" + root_.string() + "' is not a directory");
  }
  std::map<std::string, const PageDocument*> by_uri;
  for (const auto& d : baselines) {
    const std::string key = canonicalize_uri(d.uri);
    auto& slot = by_uri[key];
    if (!slot || slot->fetched_at < d.fetched_at) slot = &d;
  }

  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root_)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / kManifestName)) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());

  Loaded loaded;
  for (const auto& dir : dirs) {
    const auto manifest = read_json(dir / kManifestName);
    std::string uri;
    try {
      uri = canonicalize_uri(manifest.at("uri").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, "snapshot manifest in '" + dir.string() + "' lacks a uri: " + e.what());
    }
    const auto base = by_uri.find(uri);
    if (base == by_uri.end()) {
      log_warning("no baseline page for archived URI " + uri);
      loaded.missing_baseline.push_back(uri);
      continue;
    }
    SnapshotSeries series(uri, *base->second);
    try {
      for (const auto& e : manifest.at("snapshots")) {
        const Timestamp ts = parse_timestamp(e.at("timestamp").get<std::string>());
        series.add(make_snapshot(ts, read_file(dir / e.at("file").get<std::string>())));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, "malformed snapshot manifest in '" + dir.string() + "': " + e.what());
    }
    loaded.series.push_back(std::move(series));
  }
  std::sort(loaded.series.begin(), loaded.series.end(),
            [](const SnapshotSeries& a, const SnapshotSeries& b) { return a.uri() < b.uri(); });
  std::sort(loaded.missing_baseline.begin(), loaded.missing_baseline.end());
  return loaded;
}

}  // namespace relinker
