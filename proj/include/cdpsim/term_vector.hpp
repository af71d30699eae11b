#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cdpsim {

using TermId = std::uint32_t;

// Sparse weighted term vector for documents, queries and profile entries.
// Entries are kept sorted by term id with strictly positive weights; zero or
// negative weights are never stored.
class TermVector {
 public:
  using Entry = std::pair<TermId, double>;

  TermVector() = default;
  explicit TermVector(std::vector<Entry> entries);

  static TermVector from_counts(const std::vector<TermId>& terms);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Adds `weight` to the term, dropping the entry if the result is <= 0.
  void add(TermId term, double weight);
  double weight(TermId term) const;
  double norm() const;

  bool operator==(const TermVector& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
};

double dot(const TermVector& a, const TermVector& b);

// Cosine similarity in [0, 1] for non-negative weights.
// Throws EmptyVectorError if either vector is empty.
double cosine(const TermVector& a, const TermVector& b);

}  // namespace cdpsim
