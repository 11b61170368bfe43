#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relinker/corpus.hpp"
#include "relinker/timestamp.hpp"

namespace relinker {

struct YearMonth {
  int year = 2009;
  unsigned month = 2;

  bool operator==(const YearMonth&) const = default;
};

YearMonth parse_year_month(std::string_view text);  // "YYYY-MM"
std::string format_year_month(YearMonth ym);

inline constexpr std::chrono::days kWindowSpan{60};
inline constexpr std::size_t kDefaultWindowCount = 27;

// [start, start + 60 days), starting on February 1 or August 1 (UTC).
struct TimeWindow {
  std::string label;  // e.g. "2007-02"
  Timestamp start{};

  Timestamp end() const { return start + kWindowSpan; }
  bool contains(Timestamp t) const { return t >= start && t < end(); }
};

// `count` windows, newest first, stepping back half a year at a time from
// `newest`. Throws Error(InvalidArgument) unless newest.month is 2 or 8.
std::vector<TimeWindow> make_windows(YearMonth newest, std::size_t count = kDefaultWindowCount);

struct Snapshot {
  Timestamp timestamp{};
  std::string raw_html;
  std::optional<TitleRecord> title;
  Terms terms;
};

Snapshot make_snapshot(Timestamp timestamp, std::string raw_html);

// Archive copies of one URI plus the live baseline they are compared with.
class SnapshotSeries {
 public:
  SnapshotSeries(std::string uri, PageDocument baseline);

  // Keeps snapshots strictly time-ordered. Of two copies with the same
  // timestamp the one whose raw bytes compare lower is kept, so the result
  // does not depend on insertion order.
  void add(Snapshot snapshot);

  const std::string& uri() const { return uri_; }
  const PageDocument& baseline() const { return baseline_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }

 private:
  std::string uri_;
  PageDocument baseline_;
  std::vector<Snapshot> snapshots_;
};

// Earliest snapshot inside the window, or null.
const Snapshot* representative(const SnapshotSeries& series, const TimeWindow& window);

// Title distance histogram bins: 0, (0, 0.3], (0.3, 0.5], (0.5, 0.8], (0.8, 1].
inline constexpr std::size_t kEvolutionBins = 5;
std::size_t evolution_bin(double distance);

struct WindowEvolution {
  TimeWindow window;
  std::size_t representatives = 0;  // URIs with a copy in the window
  std::size_t available = 0;        // ... whose title exists at both ends
  std::size_t excluded = 0;         // representatives - available
  std::array<std::size_t, kEvolutionBins> histogram{};
  double p_unchanged = 0.0;  // 0 when nothing is available
  double p_minor = 0.0;
};

struct EvolutionReport {
  std::vector<WindowEvolution> windows;
};

inline constexpr double kMinorChangeThreshold = 0.3;

EvolutionReport title_evolution(std::span<const SnapshotSeries> corpus, std::span<const TimeWindow> windows,
                                double minor_threshold = kMinorChangeThreshold);

// Nearest tenth, ties upward; result in tenths (0..10).
int round_to_tenth(double v);

// Points are (title distance, content dissimilarity) in tenths.
struct CorrelationGrid {
  std::map<std::pair<int, int>, std::size_t> points;
  std::size_t included = 0;
  std::size_t no_window = 0;  // URIs without any populated window
  std::size_t no_title = 0;   // populated, but never a title at both ends
};

CorrelationGrid title_vs_content(std::span<const SnapshotSeries> corpus, std::span<const TimeWindow> windows,
                                 std::size_t shingle_w = 5);

std::string sha1_hex(std::string_view data);

// On-disk layout: <root>/<sha1(canonical uri)>/<ISO-8601 timestamp>.html
// plus <root>/<sha1>/manifest.json listing {"uri", "snapshots": [{"timestamp", "file"}]}.
class SnapshotStore {
 public:
  explicit SnapshotStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Writes the copy and records it in the URI's manifest.
  void put(std::string_view uri, Timestamp timestamp, std::string_view raw_html) const;

  struct Loaded {
    std::vector<SnapshotSeries> series;  // canonical URI order
    std::vector<std::string> missing_baseline;
  };

  // Baselines come from `baselines` by canonical URI; URIs without one are
  // reported and left out.
  Loaded load(std::span<const PageDocument> baselines) const;

 private:
  std::filesystem::path root_;
};

}  // namespace relinker
