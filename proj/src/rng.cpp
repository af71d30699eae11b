#include "cdpsim/rng.hpp"

#include <algorithm>

namespace cdpsim {

RngStream::RngStream(std::uint64_t master_seed, const std::string& label)
    : label_(label) {
  // Fold the label into the seed material so each (seed, label) pair gets its
  // own reproducible sequence. std::seed_seq mixing is fully specified by the
  // standard, hence stable across platforms.
  std::vector<std::uint32_t> material;
  material.push_back(static_cast<std::uint32_t>(master_seed));
  material.push_back(static_cast<std::uint32_t>(master_seed >> 32));
  for (unsigned char c : label) {
    material.push_back(static_cast<std::uint32_t>(c) + 0x9e3779b9u);
  }
  std::seed_seq seq(material.begin(), material.end());
  engine_.seed(seq);
}

std::vector<std::size_t> RngStream::sample_without_replacement(std::size_t n,
                                                               std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  k = std::min(k, n);
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = uniform_index(pool.size());
    out.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

RngStream& RngRegistry::stream(const std::string& label) {
  auto it = streams_.find(label);
  if (it == streams_.end()) {
    it = streams_.emplace(label, RngStream(master_seed_, label)).first;
  }
  return it->second;
}

}  // namespace cdpsim
