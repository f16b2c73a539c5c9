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

#ifndef FEDMINE_PATTERN_HPP_
#define FEDMINE_PATTERN_HPP_

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fedmine {

using ItemId = std::uint32_t;

enum class PatternKind { kItem, kItemset, kSequence };

std::string to_string(PatternKind kind);
PatternKind pattern_kind_from_string(std::string_view text);

// The unit being mined: a single item, a set of items, or an ordered run
// of items. Itemsets are kept in strictly increasing canonical form;
// sequences preserve order and may repeat items. Patterns are immutable
// after construction and compare by (kind, length, elements), which is
// the canonical order used for all tie-breaking in the pipeline.
class Pattern {
 public:
  static Pattern item(ItemId id);
  static Pattern itemset(std::vector<ItemId> items);   // sorts + dedups
  static Pattern sequence(std::vector<ItemId> items);  // order preserved

  // Inverse of to_string(). Itemsets: "1,2,3"; sequences: "1->2->3";
  // items: "7".
  static Pattern parse(PatternKind kind, std::string_view text);

  PatternKind kind() const { return kind_; }
  const std::vector<ItemId>& elements() const { return elements_; }
  std::size_t length() const { return elements_.size(); }

  std::string to_string() const;

  friend bool operator==(const Pattern& a, const Pattern& b) = default;
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.elements_.size() != b.elements_.size())
      return a.elements_.size() <=> b.elements_.size();
    return a.elements_ <=> b.elements_;
  }

 private:
  Pattern(PatternKind kind, std::vector<ItemId> elements);

  PatternKind kind_;
  std::vector<ItemId> elements_;
};

// One data owner's private record. For item/itemset mining the payload is
// a deduplicated sorted item set; for sequence mining it is a single
// ordered run of items. A payload may be empty (an owner with no data).
class LocalData {
 public:
  static LocalData items(std::vector<ItemId> payload);     // kind kItem
  static LocalData itemset(std::vector<ItemId> payload);   // kind kItemset
  static LocalData sequence(std::vector<ItemId> payload);  // kind kSequence
  static LocalData of(PatternKind kind, std::vector<ItemId> payload);

  PatternKind kind() const { return kind_; }
  const std::vector<ItemId>& payload() const { return payload_; }

  friend bool operator==(const LocalData& a, const LocalData& b) = default;

 private:
  LocalData(PatternKind kind, std::vector<ItemId> payload);

  PatternKind kind_;
  std::vector<ItemId> payload_;
};

// Bounds of the pattern search space. max_length caps candidate growth;
// patterns at the cap are never used to generate longer candidates.
struct PatternUniverse {
  std::uint32_t size = 0;  // item ids are dense in [0, size)
  PatternKind kind = PatternKind::kItemset;
  std::size_t max_length = 10;

  void validate() const;  // throws std::invalid_argument
};

// True when `pattern` occurs in `data`. Item: membership. Itemset:
// subset. Sequence: contiguous substring — the suffix/prefix join rule
// used for candidate generation is only support-anti-monotone under
// contiguous matching, so that is the semantics throughout.
// Throws std::invalid_argument on kind mismatch.
bool contains(const LocalData& data, const Pattern& pattern);

// The maximal proper subpatterns: all (n-1)-subsets of an itemset, the
// length-(n-1) prefix and suffix of a sequence. Length-1 patterns have
// none. Result is deduplicated, in canonical order.
std::vector<Pattern> immediate_subpatterns(const Pattern& pattern);

// Every unexplored pattern (not in `already_explored`, length within the
// universe cap) whose immediate subpatterns are all in `accepted`.
// Item mining generates nothing: the full candidate space is the basic
// patterns. Result is in canonical order.
std::vector<Pattern> generate_candidates(const std::set<Pattern>& accepted,
                                         const std::set<Pattern>& already_explored,
                                         const PatternUniverse& universe);

// All length-1 patterns over the universe, in canonical order.
std::vector<Pattern> basic_patterns(const PatternUniverse& universe);

// Number of owners whose data contains the pattern.
std::int64_t support_count(const std::vector<LocalData>& dataset,
                           const Pattern& pattern);

// Integer support threshold for frequency f over `owners` records:
// ceil(f * owners), clamped to at least 1 so that f = 0 means "present
// in at least one owner".
std::int64_t support_threshold(double frequency, std::size_t owners);

// Exact levelwise frequent pattern mining over the full dataset. Ground
// truth for evaluating the private pipeline. Throws on empty dataset.
std::set<Pattern> exact_fpm(const std::vector<LocalData>& dataset,
                            double frequency, const PatternUniverse& universe);

}  // namespace fedmine

#endif  // FEDMINE_PATTERN_HPP_
