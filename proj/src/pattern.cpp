// Copyright 2026 The fedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedmine/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fedmine {

namespace {

std::vector<ItemId> sorted_unique(std::vector<ItemId> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

ItemId parse_item_id(std::string_view token) {
  ItemId value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("invalid item id token: '" +
                                std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text,
                                    std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

}  // namespace

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::kItem:
      return "item";
    case PatternKind::kItemset:
      return "itemset";
    case PatternKind::kSequence:
      return "sequence";
  }
  throw std::invalid_argument("unknown pattern kind");
}

PatternKind pattern_kind_from_string(std::string_view text) {
  if (text == "item") return PatternKind::kItem;
  if (text == "itemset") return PatternKind::kItemset;
  if (text == "sequence") return PatternKind::kSequence;
  throw std::invalid_argument("unknown pattern kind: '" + std::string(text) +
                              "'");
}

Pattern::Pattern(PatternKind kind, std::vector<ItemId> elements)
    : kind_(kind), elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("pattern must be non-empty");
  }
}

Pattern Pattern::item(ItemId id) { return Pattern(PatternKind::kItem, {id}); }

Pattern Pattern::itemset(std::vector<ItemId> items) {
  return Pattern(PatternKind::kItemset, sorted_unique(std::move(items)));
}

Pattern Pattern::sequence(std::vector<ItemId> items) {
  return Pattern(PatternKind::kSequence, std::move(items));
}

Pattern Pattern::parse(PatternKind kind, std::string_view text) {
  std::vector<ItemId> ids;
  switch (kind) {
    case PatternKind::kItem:
      return Pattern::item(parse_item_id(text));
    case PatternKind::kItemset:
      for (std::string_view token : split(text, ",")) {
        ids.push_back(parse_item_id(token));
      }
      return Pattern::itemset(std::move(ids));
    case PatternKind::kSequence:
      for (std::string_view token : split(text, "->")) {
        ids.push_back(parse_item_id(token));
      }
      return Pattern::sequence(std::move(ids));
  }
  throw std::invalid_argument("unknown pattern kind");
}

std::string Pattern::to_string() const {
  const char* sep = kind_ == PatternKind::kSequence ? "->" : ",";
  std::string out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(elements_[i]);
  }
  return out;
}

LocalData::LocalData(PatternKind kind, std::vector<ItemId> payload)
    : kind_(kind), payload_(std::move(payload)) {}

LocalData LocalData::items(std::vector<ItemId> payload) {
  return LocalData(PatternKind::kItem, sorted_unique(std::move(payload)));
}

LocalData LocalData::itemset(std::vector<ItemId> payload) {
  return LocalData(PatternKind::kItemset, sorted_unique(std::move(payload)));
}

LocalData LocalData::sequence(std::vector<ItemId> payload) {
  return LocalData(PatternKind::kSequence, std::move(payload));
}

LocalData LocalData::of(PatternKind kind, std::vector<ItemId> payload) {
  switch (kind) {
    case PatternKind::kItem:
      return items(std::move(payload));
    case PatternKind::kItemset:
      return itemset(std::move(payload));
    case PatternKind::kSequence:
      return sequence(std::move(payload));
  }
  throw std::invalid_argument("unknown pattern kind");
}

void PatternUniverse::validate() const {
  if (max_length < 1) {
    throw std::invalid_argument("universe max_length must be >= 1");
  }
}

bool contains(const LocalData& data, const Pattern& pattern) {
  if (data.kind() != pattern.kind()) {
    throw std::invalid_argument("pattern kind does not match data kind");
  }
  const auto& payload = data.payload();
  const auto& elems = pattern.elements();
  switch (pattern.kind()) {
    case PatternKind::kItem:
      return std::binary_search(payload.begin(), payload.end(), elems[0]);
    case PatternKind::kItemset:
      // Both sides sorted; subset test.
      return std::includes(payload.begin(), payload.end(), elems.begin(),
                           elems.end());
    case PatternKind::kSequence:
      return std::search(payload.begin(), payload.end(), elems.begin(),
                         elems.end()) != payload.end();
  }
  return false;
}

std::vector<Pattern> immediate_subpatterns(const Pattern& pattern) {
  const auto& elems = pattern.elements();
  std::vector<Pattern> subs;
  if (elems.size() <= 1) return subs;
  switch (pattern.kind()) {
    case PatternKind::kItem:
      return subs;
    case PatternKind::kItemset:
      for (std::size_t skip = 0; skip < elems.size(); ++skip) {
        std::vector<ItemId> rest;
        rest.reserve(elems.size() - 1);
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (i != skip) rest.push_back(elems[i]);
        }
        subs.push_back(Pattern::itemset(std::move(rest)));
      }
      break;
    case PatternKind::kSequence: {
      std::vector<ItemId> prefix(elems.begin(), elems.end() - 1);
      std::vector<ItemId> suffix(elems.begin() + 1, elems.end());
      subs.push_back(Pattern::sequence(std::move(prefix)));
      subs.push_back(Pattern::sequence(std::move(suffix)));
      break;
    }
  }
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  return subs;
}

namespace {

// Union of two sorted itemsets; empty result when the union exceeds
// max_size (join partners must differ in exactly one element).
std::vector<ItemId> itemset_union(const std::vector<ItemId>& a,
                                  const std::vector<ItemId>& b,
                                  std::size_t max_size) {
  std::vector<ItemId> out;
  out.reserve(max_size);
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    ItemId next;
    if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
      next = *ia++;
    } else if (ia == a.end() || *ib < *ia) {
      next = *ib++;
    } else {
      next = *ia;
      ++ia;
      ++ib;
    }
    if (out.size() == max_size) return {};
    out.push_back(next);
  }
  return out;
}

bool all_subpatterns_accepted(const Pattern& candidate,
                              const std::set<Pattern>& accepted) {
  for (const Pattern& sub : immediate_subpatterns(candidate)) {
    if (!accepted.contains(sub)) return false;
  }
  return true;
}

}  // namespace

std::vector<Pattern> generate_candidates(const std::set<Pattern>& accepted,
                                         const std::set<Pattern>& already_explored,
                                         const PatternUniverse& universe) {
  if (universe.kind == PatternKind::kItem) return {};

  std::map<std::size_t, std::vector<const Pattern*>> by_length;
  for (const Pattern& p : accepted) {
    if (p.kind() == universe.kind) by_length[p.length()].push_back(&p);
  }

  std::set<Pattern> found;
  auto consider = [&](Pattern candidate) {
    if (already_explored.contains(candidate)) return;
    if (found.contains(candidate)) return;
    if (all_subpatterns_accepted(candidate, accepted)) {
      found.insert(std::move(candidate));
    }
  };

  for (const auto& [length, group] : by_length) {
    if (length + 1 > universe.max_length) continue;
    if (universe.kind == PatternKind::kItemset) {
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          std::vector<ItemId> merged = itemset_union(
              group[i]->elements(), group[j]->elements(), length + 1);
          if (merged.size() == length + 1) {
            consider(Pattern::itemset(std::move(merged)));
          }
        }
      }
    } else {
      // Suffix-prefix join: s + t extends s by t's last element whenever
      // s[1..] == t[..n-1]. For length 1 this yields all ordered pairs.
      for (const Pattern* s : group) {
        for (const Pattern* t : group) {
          const auto& se = s->elements();
          const auto& te = t->elements();
          if (std::equal(se.begin() + 1, se.end(), te.begin(),
                         te.end() - 1)) {
            std::vector<ItemId> joined = se;
            joined.push_back(te.back());
            consider(Pattern::sequence(std::move(joined)));
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Pattern> basic_patterns(const PatternUniverse& universe) {
  universe.validate();
  std::vector<Pattern> out;
  out.reserve(universe.size);
  for (ItemId id = 0; id < universe.size; ++id) {
    switch (universe.kind) {
      case PatternKind::kItem:
        out.push_back(Pattern::item(id));
        break;
      case PatternKind::kItemset:
        out.push_back(Pattern::itemset({id}));
        break;
      case PatternKind::kSequence:
        out.push_back(Pattern::sequence({id}));
        break;
    }
  }
  return out;
}

std::int64_t support_count(const std::vector<LocalData>& dataset,
                           const Pattern& pattern) {
  std::int64_t count = 0;
  for (const LocalData& data : dataset) {
    if (contains(data, pattern)) ++count;
  }
  return count;
}

std::int64_t support_threshold(double frequency, std::size_t owners) {
  // The small slack absorbs binary representation error in f * N (e.g.
  // 0.1 * 30) without changing any genuinely fractional threshold.
  double raw = std::ceil(frequency * static_cast<double>(owners) - 1e-9);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(raw));
}

std::set<Pattern> exact_fpm(const std::vector<LocalData>& dataset,
                            double frequency, const PatternUniverse& universe) {
  if (dataset.empty()) {
    throw std::invalid_argument("exact_fpm requires a non-empty dataset");
  }
  universe.validate();
  const std::int64_t threshold = support_threshold(frequency, dataset.size());

  std::set<Pattern> frequent;
  std::set<Pattern> explored;
  for (const Pattern& p : basic_patterns(universe)) {
    explored.insert(p);
    if (support_count(dataset, p) >= threshold) frequent.insert(p);
  }
  while (true) {
    std::vector<Pattern> candidates =
        generate_candidates(frequent, explored, universe);
    if (candidates.empty()) break;
    for (Pattern& p : candidates) {
      explored.insert(p);
      if (support_count(dataset, p) >= threshold) frequent.insert(std::move(p));
    }
  }
  return frequent;
}

}  // namespace fedmine
