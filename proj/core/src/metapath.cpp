#include "hetgraph/metapath.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "hetgraph/errors.hpp"

namespace hetgraph {

TypeId step_source(const Schema& schema, MetapathStep step) {
  const Relation& r = schema.relation(step.relation);
  return step.direction == StepDirection::Forward ? r.src : r.dst;
}

TypeId step_target(const Schema& schema, MetapathStep step) {
  const Relation& r = schema.relation(step.relation);
  return step.direction == StepDirection::Forward ? r.dst : r.src;
}

Metapath::Metapath(std::vector<MetapathStep> steps) : steps_(std::move(steps)) {}

Metapath Metapath::reversed() const {
  std::vector<MetapathStep> out(steps_.rbegin(), steps_.rend());
  for (auto& s : out) {
    s.direction = s.direction == StepDirection::Forward ? StepDirection::Reverse : StepDirection::Forward;
  }
  return Metapath(std::move(out));
}

Metapath Metapath::canonical() const {
  Metapath rev = reversed();
  return rev < *this ? rev : *this;
}

bool Metapath::type_checks(const Schema& schema, TypeId endpoint) const {
  if (steps_.empty()) return false;
  for (const auto& s : steps_) {
    if (s.relation >= schema.num_relations()) return false;
  }
  if (step_source(schema, steps_.front()) != endpoint) return false;
  for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
    if (step_target(schema, steps_[i]) != step_source(schema, steps_[i + 1])) return false;
  }
  return step_target(schema, steps_.back()) == endpoint;
}

TypeId Metapath::source_type(const Schema& schema) const { return step_source(schema, steps_.at(0)); }
TypeId Metapath::target_type(const Schema& schema) const { return step_target(schema, steps_.at(steps_.size() - 1)); }

std::strong_ordering Metapath::operator<=>(const Metapath& other) const {
  if (auto c = steps_.size() <=> other.steps_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(steps_.begin(), steps_.end(), other.steps_.begin(),
                                                other.steps_.end());
}

std::string to_arrow_string(const Metapath& path, const Schema& schema) {
  if (path.empty()) return "";
  std::string out = schema.type_name(path.source_type(schema));
  for (const auto& s : path.steps()) {
    const std::string& name = schema.relation(s.relation).name;
    out += s.direction == StepDirection::Forward ? " -" + name + "-> " : " <-" + name + "- ";
    out += schema.type_name(step_target(schema, s));
  }
  return out;
}

std::string to_compact_string(const Metapath& path, const Schema& schema) {
  std::string out;
  for (std::size_t i = 0; i < path.length(); ++i) {
    const auto& s = path.steps()[i];
    if (i) out += '.';
    if (s.direction == StepDirection::Reverse) out += '~';
    const std::string& name = schema.relation(s.relation).name;
    out += schema.relations_named(name).size() == 1 ? name : schema.relation_label(s.relation);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<RelationId> resolve_relation_token(std::string_view token, const Schema& schema) {
  if (token.find('/') != std::string_view::npos) {
    const auto parts = split_on(token, '/');
    if (parts.size() != 3) throw UnknownName("malformed relation '" + std::string(token) + "', expected src/name/dst");
    if (auto id = schema.find_relation(parts[0], parts[1], parts[2])) return {*id};
    throw UnknownName("unknown relation '" + std::string(token) + "'");
  }
  auto ids = schema.relations_named(token);
  if (ids.empty()) throw UnknownName("unknown relation '" + std::string(token) + "'");
  return ids;
}

Metapath parse_compact(std::string_view text, const Schema& schema) {
  struct Token {
    StepDirection direction;
    std::vector<RelationId> candidates;
  };
  std::vector<Token> tokens;
  for (std::string_view part : split_on(text, '.')) {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) throw UsageError("empty step in metapath '" + std::string(text) + "'");
    StepDirection dir = StepDirection::Forward;
    if (part.front() == '~') {
      dir = StepDirection::Reverse;
      part.remove_prefix(1);
    }
    tokens.push_back({dir, resolve_relation_token(part, schema)});
  }

  std::vector<Metapath> matches;
  std::vector<MetapathStep> current;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == tokens.size()) {
      matches.emplace_back(current);
      return;
    }
    for (RelationId r : tokens[i].candidates) {
      const MetapathStep step{r, tokens[i].direction};
      if (!current.empty() && step_target(schema, current.back()) != step_source(schema, step)) continue;
      current.push_back(step);
      search(i + 1);
      current.pop_back();
    }
  };
  search(0);

  if (matches.empty()) throw TypeMismatch("metapath '" + std::string(text) + "' does not chain");
  if (matches.size() > 1) {
    // Prefer closed paths; metapaths of interest start and end at one type.
    std::erase_if(matches, [&](const Metapath& p) { return p.source_type(schema) != p.target_type(schema); });
    if (matches.size() != 1) {
      throw UsageError("metapath '" + std::string(text) + "' is ambiguous; qualify relations as src/name/dst");
    }
  }
  return matches.front();
}

Metapath parse_arrow(std::string_view text, const Schema& schema) {
  std::vector<std::string> words;
  {
    std::istringstream in{std::string(text)};
    for (std::string w; in >> w;) words.push_back(std::move(w));
  }
  if (words.size() < 3 || words.size() % 2 == 0) {
    throw UsageError("malformed metapath '" + std::string(text) + "'");
  }
  std::vector<MetapathStep> steps;
  for (std::size_t i = 1; i < words.size(); i += 2) {
    const std::string& from = words[i - 1];
    const std::string& arrow = words[i];
    const std::string& to = words[i + 1];
    schema.type_id(from);
    schema.type_id(to);
    std::optional<RelationId> id;
    StepDirection dir;
    if (arrow.size() > 3 && arrow.starts_with("-") && arrow.ends_with("->")) {
      dir = StepDirection::Forward;
      id = schema.find_relation(from, arrow.substr(1, arrow.size() - 3), to);
    } else if (arrow.size() > 3 && arrow.starts_with("<-") && arrow.ends_with("-")) {
      dir = StepDirection::Reverse;
      id = schema.find_relation(to, arrow.substr(2, arrow.size() - 3), from);
    } else {
      throw UsageError("malformed arrow '" + arrow + "' in metapath '" + std::string(text) + "'");
    }
    if (!id) throw UnknownName("no relation matches '" + from + " " + arrow + " " + to + "'");
    steps.push_back({*id, dir});
  }
  return Metapath(std::move(steps));
}

}  // namespace

Metapath parse_metapath(std::string_view text, const Schema& schema) {
  if (text.find("->") != std::string_view::npos || text.find("<-") != std::string_view::npos) {
    return parse_arrow(text, schema);
  }
  return parse_compact(text, schema);
}

MetapathSet enumerate_metapaths(const Schema& schema, TypeId target_type, std::span<const std::size_t> lengths) {
  if (target_type >= schema.num_node_types()) {
    throw UnknownName("unknown target type id " + std::to_string(target_type));
  }
  MetapathSet set;
  set.target_type = target_type;
  set.lengths.assign(lengths.begin(), lengths.end());
  std::sort(set.lengths.begin(), set.lengths.end());
  set.lengths.erase(std::unique(set.lengths.begin(), set.lengths.end()), set.lengths.end());
  if (set.lengths.empty() || set.lengths.front() == 0) throw UsageError("metapath lengths must be >= 1");

  const std::size_t max_len = set.lengths.back();
  std::vector<MetapathStep> current;
  std::function<void(TypeId)> extend = [&](TypeId at) {
    if (std::binary_search(set.lengths.begin(), set.lengths.end(), current.size()) && at == target_type) {
      Metapath p(current);
      if (p.is_canonical()) set.paths.push_back(std::move(p));
    }
    if (current.size() == max_len) return;
    for (RelationId r = 0; r < schema.num_relations(); ++r) {
      for (StepDirection d : {StepDirection::Forward, StepDirection::Reverse}) {
        const MetapathStep step{r, d};
        if (step_source(schema, step) != at) continue;
        current.push_back(step);
        extend(step_target(schema, step));
        current.pop_back();
      }
    }
  };
  extend(target_type);
  std::sort(set.paths.begin(), set.paths.end());
  return set;
}

MetapathSet enumerate_metapaths(const Schema& schema, TypeId target_type, std::size_t max_length) {
  if (max_length < 1) throw UsageError("metapath length must be >= 1");
  std::vector<std::size_t> lengths(max_length);
  for (std::size_t i = 0; i < max_length; ++i) lengths[i] = i + 1;
  return enumerate_metapaths(schema, target_type, lengths);
}

}  // namespace hetgraph
