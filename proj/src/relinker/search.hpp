#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relinker/timestamp.hpp"
#include "relinker/tokenize.hpp"

namespace relinker {

inline constexpr std::size_t kMaxResults = 100;

struct ResultEntry {
  std::size_t rank = 0;  // 1-based
  std::string uri;
  std::optional<std::uint32_t> doc;  // local document id, when known
  double score = 0.0;
};

// Ranked answer to one query; ranks run 1..n without gaps.
struct ResultList {
  Terms query;
  std::vector<ResultEntry> entries;
  Timestamp issued_at{};
};

// Seam for search engines. The only implementation here is the local
// index; a live HTTP client would implement the same contract.
// Implementations must be safe for concurrent search() calls.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  // At most max_results entries, rank 1 first.
  virtual ResultList search(const Terms& query, std::size_t max_results) const = 0;
};

}  // namespace relinker
