#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace planrec {

using FactId = int;
using ActionId = int;

// A grounded atom. Canonical text form "(pred arg1 ... argk)" identifies it.
struct GroundFact {
  std::string predicate;
  std::vector<std::string> args;
};

std::string canonical_text(const GroundFact &fact);
GroundFact fact_from_text(const std::string &text);

// Sorted set of fact ids. Because the fact table assigns ids in lexicographic
// order of the canonical text, iterating a FactSet is iterating facts in
// canonical order, which keeps every downstream computation deterministic.
class FactSet {
 public:
  FactSet() = default;
  static FactSet from_unsorted(std::vector<FactId> ids);

  bool contains(FactId id) const;
  void insert(FactId id);
  void erase(FactId id);

  bool subset_of(const FactSet &other) const;
  FactSet set_union(const FactSet &other) const;
  FactSet set_intersection(const FactSet &other) const;
  FactSet set_difference(const FactSet &other) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<FactId> &ids() const { return ids_; }

  bool operator==(const FactSet &other) const = default;

 private:
  std::vector<FactId> ids_;
};

// Immutable id <-> fact mapping, ids assigned in lexicographic text order.
class FactTable {
 public:
  FactTable() = default;
  explicit FactTable(std::vector<std::string> canonical_texts);

  FactId id_of(const std::string &text) const;  // -1 when absent
  const std::string &text(FactId id) const { return texts_[id]; }
  const GroundFact &fact(FactId id) const { return facts_[id]; }
  int size() const { return static_cast<int>(texts_.size()); }

 private:
  std::vector<std::string> texts_;
  std::vector<GroundFact> facts_;
  std::unordered_map<std::string, FactId> index_;
};

}  // namespace planrec
