#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "cdpsim/term_vector.hpp"
#include "cdpsim/workload.hpp"

namespace cdpsim {

// Query copy travelling outward. `path` records the traversed peers starting
// with the origin and ending with the copy's holder; ttl_remaining drops by
// exactly one per forwarding hop and a copy is never forwarded at 0.
struct QueryMsg {
  QueryId query_id = 0;
  PeerId origin = 0;
  TermVector terms;
  int ttl_remaining = 0;
  std::vector<PeerId> path;
  double issue_time = 0.0;
};

// Reply travelling back along the query's reverse path. reverse_path is the
// full reversed query path (responder first, origin last); hop_cursor indexes
// the peer currently holding the message.
struct QueryHitMsg {
  QueryId query_id = 0;
  PeerId responder = 0;
  std::vector<DocId> matched_docs;  // non-empty, sorted
  std::vector<PeerId> reverse_path;
  std::size_t hop_cursor = 0;
};

using Message = std::variant<QueryMsg, QueryHitMsg>;

inline bool is_hit(const Message& m) {
  return std::holds_alternative<QueryHitMsg>(m);
}

}  // namespace cdpsim
