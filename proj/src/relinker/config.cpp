#include "relinker/config.hpp"

#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>

#include "relinker/error.hpp"

namespace relinker {
namespace {

[[noreturn]] void invalid(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::InvalidArgument,
              "config " + std::string(key) + " = '" + std::string(value) + "': " + std::string(why));
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) invalid(key, value, "expected a non-negative integer");
  return v;
}

double parse_ratio(std::string_view key, std::string_view value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(std::string(value), &used);
  } catch (const std::exception&) {
    invalid(key, value, "expected a number");
  }
  if (used != value.size()) invalid(key, value, "expected a number");
  if (!(v >= 0.0 && v <= 1.0)) invalid(key, value, "must lie in [0, 1]");
  return v;
}

}  // namespace

const std::vector<std::string_view>& Config::keys() {
  static const std::vector<std::string_view> kKeys = {
      "min_terms",        "ls_k",         "shingle_w",          "quality_threshold", "minor_change_threshold",
      "max_results",      "discovered_depth", "index_size_estimate", "stop_title_path",   "window_anchor",
      "window_count",
  };
  return kKeys;
}

void Config::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  Config next = *this;
  if (key == "min_terms") {
    next.min_terms = parse_count(key, value);
  } else if (key == "ls_k") {
    next.ls_k.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      next.ls_k.push_back(parse_count(key, trim(rest.substr(0, comma))));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  } else if (key == "shingle_w") {
    next.shingle_w = parse_count(key, value);
  } else if (key == "quality_threshold") {
    next.quality_threshold = parse_ratio(key, value);
  } else if (key == "minor_change_threshold") {
    next.minor_change_threshold = parse_ratio(key, value);
  } else if (key == "max_results") {
    next.max_results = parse_count(key, value);
  } else if (key == "discovered_depth") {
    next.discovered_depth = parse_count(key, value);
  } else if (key == "index_size_estimate") {
    if (value.empty() || value == "none") {
      next.index_size_estimate.reset();
    } else {
      next.index_size_estimate = parse_count(key, value);
    }
  } else if (key == "stop_title_path") {
    if (value.empty()) {
      next.stop_title_path.reset();
    } else {
      next.stop_title_path = std::string(value);
    }
  } else if (key == "window_anchor") {
    next.window_anchor = parse_year_month(value);
  } else if (key == "window_count") {
    next.window_count = parse_count(key, value);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
  next.check_ranges();
  *this = std::move(next);
}

void Config::validate() const {
  check_ranges();
  if (discovered_depth > max_results) {
    throw Error(ErrorCode::InvalidArgument, "config: discovered_depth must not exceed max_results");
  }
}

void Config::check_ranges() const {
  const auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "config: " + msg); };
  if (ls_k.empty()) fail("ls_k must list at least one length");
  for (auto k : ls_k) {
    if (k < 1) fail("ls_k entries must be at least 1");
  }
  if (shingle_w < 1) fail("shingle_w must be at least 1");
  if (max_results < 1 || max_results > 100) fail("max_results must lie in [1, 100]");
  if (discovered_depth < 1) fail("discovered_depth must be at least 1");
  if (index_size_estimate && *index_size_estimate < 1) fail("index_size_estimate must be at least 1");
  if (window_anchor.month != 2 && window_anchor.month != 8) fail("window_anchor must be a February or August month");
  if (window_count < 1) fail("window_count must be at least 1");
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path.string() + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    set(trim(l.substr(0, eq)), trim(l.substr(eq + 1)));
  }
}

void to_json(nlohmann::json& j, const Config& c) {
  j = nlohmann::json{
      {"min_terms", c.min_terms},
      {"ls_k", c.ls_k},
      {"shingle_w", c.shingle_w},
      {"quality_threshold", c.quality_threshold},
      {"minor_change_threshold", c.minor_change_threshold},
      {"max_results", c.max_results},
      {"discovered_depth", c.discovered_depth},
      {"index_size_estimate", c.index_size_estimate ? nlohmann::json(*c.index_size_estimate) : nlohmann::json()},
      {"stop_title_path", c.stop_title_path ? nlohmann::json(*c.stop_title_path) : nlohmann::json()},
      {"window_anchor", format_year_month(c.window_anchor)},
      {"window_count", c.window_count},
  };
}

}  // namespace relinker
