// Copyright 2026 The SSP Annotator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "ssp/annotator.hpp"
#include "ssp/error.hpp"

namespace ssp {

MatchInput::MatchInput(const AnnotatedDoc& doc) : text_(doc.text) {
  bool spaced = false;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (doc.tokens[i].is_boundary()) {
      spaced = true;
      continue;
    }
    tokens_.push_back(&doc.tokens[i]);
    spaced_.push_back(spaced);
    original_.push_back(i);
    spaced = false;
  }
  cache_.resize(tokens_.size());
}

const MatchInput::Surfaces& MatchInput::surfaces(std::size_t i,
                                                 const Lexicon& lexicon) const {
  auto& slot = cache_[i];
  if (slot) return *slot;
  slot.emplace();
  std::vector<std::pair<std::size_t, std::size_t>> ends;  // byte end, tokens
  for (std::size_t j = i; j < tokens_.size() && (j == i || !spaced_[j]); ++j) {
    ends.emplace_back(tokens_[j]->offset + tokens_[j]->length, j - i + 1);
  }
  const std::size_t limit = ends.back().first;
  for (const PrefixMatch& m :
       lexicon.prefix_matches(text_, tokens_[i]->offset, limit)) {
    const auto it = std::find_if(ends.begin(), ends.end(),
                                 [&](const auto& e) { return e.first == m.end; });
    if (it != ends.end()) slot->emplace_back(it->second, m.analyses);
  }
  return *slot;
}

namespace {

struct ConfigKey {
  int graph;
  int state;
  int stack;
  std::size_t wait;

  bool operator==(const ConfigKey&) const = default;
};

struct ConfigKeyHash {
  std::size_t operator()(const ConfigKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.graph);
    h = h * 1000003u ^ static_cast<std::size_t>(k.state);
    h = h * 1000003u ^ static_cast<std::size_t>(k.stack + 1);
    h = h * 1000003u ^ k.wait;
    return h;
  }
};

struct FrameKey {
  int parent;
  int graph;
  int ret;

  bool operator==(const FrameKey&) const = default;
};

struct FrameKeyHash {
  std::size_t operator()(const FrameKey& k) const {
    return (static_cast<std::size_t>(k.parent + 1) * 1000003u ^
            static_cast<std::size_t>(k.graph)) *
               1000003u ^
           static_cast<std::size_t>(k.ret);
  }
};

}  // namespace

// One left-to-right simulation from a fixed start position. Entries of a
// list are kept in path-priority order; a configuration reached twice at
// the same position keeps only its first (highest-priority) arrival.
struct Matcher::Run {
  struct Frame {
    int parent;
    int graph;
    int ret;
    int depth;
  };
  struct EmitNode {
    int parent;
    std::size_t position;
    const std::string* text;
  };
  struct Entry {
    int graph;
    int state;
    int arc;
    int stack;
    int emit;
    std::size_t wait;  // tokens still to skip inside a multi-token mask match
  };
  using Seen = std::unordered_set<ConfigKey, ConfigKeyHash>;

  const Matcher& m;
  const MatchInput& in;
  std::size_t start;

  std::vector<Frame> frames;
  std::unordered_map<FrameKey, int, FrameKeyHash> frame_ids;
  std::vector<EmitNode> emits;
  std::vector<std::size_t> ends;
  std::optional<std::size_t> best_end;
  int best_emit = -1;

  Run(const Matcher& matcher, const MatchInput& input, std::size_t from)
      : m(matcher), in(input), start(from) {}

  int push_frame(int parent, int graph, int ret) {
    const FrameKey key{parent, graph, ret};
    if (auto it = frame_ids.find(key); it != frame_ids.end()) return it->second;
    const int depth = parent < 0 ? 1 : frames[parent].depth + 1;
    frames.push_back({parent, graph, ret, depth});
    const int id = static_cast<int>(frames.size()) - 1;
    frame_ids.emplace(key, id);
    return id;
  }

  int emit(int parent, std::size_t position, const std::string& text) {
    if (text.empty()) return parent;
    emits.push_back({parent, position, &text});
    return static_cast<int>(emits.size()) - 1;
  }

  void accept(std::size_t position, int emit_id) {
    if (!ends.empty() && ends.back() == position) return;
    ends.push_back(position);
    if (position > start) {
      best_end = position;
      best_emit = emit_id;
    }
  }

  void closure(std::vector<Entry>& list, Seen& seen, int graph, int state,
               int stack, int emit_id, std::size_t position) {
    if (!seen.insert({graph, state, stack, 0}).second) return;
    const auto& arcs = m.rtn_.graphs[graph].states[state].arcs;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& arc = arcs[i];
      switch (arc.kind) {
        case ArcKind::kLiteral:
        case ArcKind::kMask:
          list.push_back({graph, state, static_cast<int>(i), stack, emit_id, 0});
          break;
        case ArcKind::kCall: {
          const int depth = stack < 0 ? 0 : frames[stack].depth;
          if (depth + 1 > m.options_.max_call_depth) break;
          const int frame = push_frame(stack, graph, arc.target);
          closure(list, seen, arc.index, m.rtn_.graphs[arc.index].initial, frame,
                  emit(emit_id, position, arc.output), position);
          break;
        }
        case ArcKind::kFinal: {
          const int e = emit(emit_id, position, arc.output);
          if (stack < 0) {
            accept(position, e);
          } else {
            const Frame f = frames[stack];
            closure(list, seen, f.graph, f.ret, f.parent, e, position);
          }
          break;
        }
        case ArcKind::kEpsilon:
          throw Error("matcher: epsilon arc in compiled automaton");
      }
    }
  }

  void run() {
    std::vector<Entry> current;
    std::vector<Entry> next;
    Seen seen_current;
    Seen seen_next;
    const auto main = static_cast<int>(m.rtn_.main);
    closure(current, seen_current, main, m.rtn_.graphs[main].initial, -1, -1,
            start);
    for (std::size_t p = start; !current.empty(); ++p) {
      next.clear();
      seen_next.clear();
      for (const Entry& entry : current) {
        if (entry.wait > 0) {
          if (entry.wait == 1) {
            closure(next, seen_next, entry.graph, entry.state, entry.stack,
                    entry.emit, p + 1);
          } else if (seen_next.insert({entry.graph, entry.state, entry.stack,
                                       entry.wait - 1})
                         .second) {
            Entry waiting = entry;
            --waiting.wait;
            next.push_back(waiting);
          }
          continue;
        }
        if (p >= in.size()) continue;
        const Arc& arc = m.rtn_.graphs[entry.graph].states[entry.state].arcs[entry.arc];
        if (!arc.soft && p != start && in.spaced_before(p)) continue;
        if (arc.kind == ArcKind::kLiteral) {
          if (in.token(p).text == arc.literal) {
            closure(next, seen_next, entry.graph, arc.target, entry.stack,
                    emit(entry.emit, p, arc.output), p + 1);
          }
          continue;
        }
        const MaskConstraint& constraint = m.constraints_[arc.index];
        if (constraint.special == LexicalMask::Special::kToken) {
          closure(next, seen_next, entry.graph, arc.target, entry.stack,
                  emit(entry.emit, p, arc.output), p + 1);
          continue;
        }
        for (const auto& [length, analyses] : in.surfaces(p, *m.lexicon_)) {
          if (!std::any_of(analyses.begin(), analyses.end(),
                           [&](const SurfaceForm& f) { return constraint.accepts(f); })) {
            continue;
          }
          const int e = emit(entry.emit, p, arc.output);
          if (length == 1) {
            closure(next, seen_next, entry.graph, arc.target, entry.stack, e,
                    p + 1);
          } else if (seen_next.insert({entry.graph, arc.target, entry.stack,
                                       length - 1})
                         .second) {
            next.push_back({entry.graph, arc.target, -1, entry.stack, e,
                            length - 1});
          }
        }
      }
      std::swap(current, next);
      std::swap(seen_current, seen_next);
    }
  }

  std::vector<Emission> emissions(int emit_id) const {
    std::vector<Emission> out;
    for (int e = emit_id; e >= 0; e = emits[e].parent) {
      out.push_back({emits[e].position, *emits[e].text});
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

Matcher::Matcher(Rtn rtn, const Lexicon& lexicon, MatchOptions options)
    : rtn_(std::move(rtn)), lexicon_(&lexicon), options_(options) {
  for (const auto& mask : rtn_.masks) {
    constraints_.push_back(resolve_constraint(mask, lexicon));
  }
}

std::optional<Match> Matcher::longest_at(const MatchInput& input,
                                         std::size_t start) const {
  Run run(*this, input, start);
  run.run();
  if (!run.best_end) return std::nullopt;
  return Match{start, *run.best_end, run.emissions(run.best_emit)};
}

std::vector<std::size_t> Matcher::match_ends(const MatchInput& input,
                                             std::size_t start) const {
  Run run(*this, input, start);
  run.run();
  return run.ends;
}

}  // namespace ssp
