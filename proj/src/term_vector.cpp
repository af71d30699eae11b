#include "cdpsim/term_vector.hpp"

#include <algorithm>
#include <cmath>

#include "cdpsim/errors.hpp"

namespace cdpsim {

TermVector::TermVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  // Merge duplicate ids, drop non-positive weights.
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& [term, w] : entries_) {
    if (!merged.empty() && merged.back().first == term) {
      merged.back().second += w;
    } else {
      merged.emplace_back(term, w);
    }
  }
  entries_.clear();
  for (const auto& e : merged) {
    if (e.second > 0.0) entries_.push_back(e);
  }
}

TermVector TermVector::from_counts(const std::vector<TermId>& terms) {
  std::vector<Entry> entries;
  entries.reserve(terms.size());
  for (TermId t : terms) entries.emplace_back(t, 1.0);
  return TermVector(std::move(entries));
}

void TermVector::add(TermId term, double weight) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const Entry& e, TermId t) { return e.first < t; });
  if (it != entries_.end() && it->first == term) {
    it->second += weight;
    if (it->second <= 0.0) entries_.erase(it);
  } else if (weight > 0.0) {
    entries_.insert(it, {term, weight});
  }
}

double TermVector::weight(TermId term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const Entry& e, TermId t) { return e.first < t; });
  if (it != entries_.end() && it->first == term) return it->second;
  return 0.0;
}

double TermVector::norm() const {
  double s = 0.0;
  for (const auto& [term, w] : entries_) s += w * w;
  return std::sqrt(s);
}

double dot(const TermVector& a, const TermVector& b) {
  double s = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

double cosine(const TermVector& a, const TermVector& b) {
  if (a.empty() || b.empty()) {
    throw EmptyVectorError("cosine: empty term vector");
  }
  const double d = dot(a, b);
  if (d == 0.0) return 0.0;
  return d / (a.norm() * b.norm());
}

}  // namespace cdpsim
