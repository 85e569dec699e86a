#include "planrec/fact.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace planrec {

std::string canonical_text(const GroundFact &fact) {
  std::string out = "(" + fact.predicate;
  for (const auto &a : fact.args) {
    out += " ";
    out += a;
  }
  out += ")";
  return out;
}

GroundFact fact_from_text(const std::string &text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("not a canonical fact: " + text);
  std::istringstream in(text.substr(1, text.size() - 2));
  GroundFact fact;
  in >> fact.predicate;
  std::string arg;
  while (in >> arg) fact.args.push_back(arg);
  return fact;
}

FactSet FactSet::from_unsorted(std::vector<FactId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  FactSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool FactSet::contains(FactId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void FactSet::insert(FactId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

void FactSet::erase(FactId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id) ids_.erase(it);
}

bool FactSet::subset_of(const FactSet &other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

FactSet FactSet::set_union(const FactSet &other) const {
  FactSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

FactSet FactSet::set_intersection(const FactSet &other) const {
  FactSet out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(),
                        other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

FactSet FactSet::set_difference(const FactSet &other) const {
  FactSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

FactTable::FactTable(std::vector<std::string> canonical_texts)
    : texts_(std::move(canonical_texts)) {
  std::sort(texts_.begin(), texts_.end());
  texts_.erase(std::unique(texts_.begin(), texts_.end()), texts_.end());
  facts_.reserve(texts_.size());
  for (std::size_t i = 0; i < texts_.size(); ++i) {
    facts_.push_back(fact_from_text(texts_[i]));
    index_.emplace(texts_[i], static_cast<FactId>(i));
  }
}

FactId FactTable::id_of(const std::string &text) const {
  auto it = index_.find(text);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace planrec
