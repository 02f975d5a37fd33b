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
#include <future>
#include <istream>

#include "ssp/annotator.hpp"
#include "ssp/error.hpp"
#include "ssp/text.hpp"

namespace ssp {

std::vector<Annotation> emissions_to_annotations(const Match& match,
                                                 const MatchInput& input,
                                                 std::string_view graph) {
  auto fail = [&](const std::string& what) {
    throw AnnotationError("graph " + std::string(graph) + ": " + what);
  };
  std::vector<Annotation> out;
  std::optional<std::pair<Tag, std::size_t>> open;
  for (const Emission& e : match.emissions) {
    std::size_t pos = 0;
    while (pos < e.text.size()) {
      std::size_t end = 0;
      auto tag = scan_tag(e.text, pos, end);
      if (!tag) fail("output is not a tag sequence: \"" + e.text + "\"");
      pos = end;
      if (!tag->closing) {
        if (open) fail("nested tag <" + tag->name + "> inside <" + open->first.name + ">");
        open.emplace(*tag, e.position);
        continue;
      }
      if (!open) fail("closing tag </" + tag->name + "> without opening tag");
      if (open->first.name != tag->name) {
        fail("tag <" + open->first.name + "> closed by </" + tag->name + ">");
      }
      if (e.position > open->second) {
        Annotation a;
        a.start = input.original_index(open->second);
        a.end = input.original_index(e.position - 1);
        a.label = open->first.name;
        a.attribute = open->first.value;
        out.push_back(std::move(a));
      }
      open.reset();
    }
  }
  if (open) fail("unclosed tag <" + open->first.name + ">");
  return out;
}

Annotator::Annotator(Rtn rtn, const Lexicon& lexicon, MatchOptions options)
    : matcher_(std::move(rtn), lexicon, options) {}

AnnotatedDoc Annotator::annotate(std::string_view text) const {
  AnnotatedDoc doc = make_document(text);
  const MatchInput input(doc);
  const std::string& graph = matcher_.rtn().main_graph().name;
  std::size_t p = 0;
  while (p < input.size()) {
    auto match = matcher_.longest_at(input, p);
    if (!match) {
      ++p;
      continue;
    }
    for (auto& a : emissions_to_annotations(*match, input, graph)) {
      doc.annotations.push_back(std::move(a));
    }
    p = match->end;
  }
  check_annotations(doc);
  return doc;
}

AnnotatedDoc annotate(std::string_view text, const Rtn& rtn,
                      const Lexicon& lexicon) {
  return Annotator(rtn, lexicon).annotate(text);
}

namespace {

CorpusResult annotate_line(const Annotator& annotator, std::size_t line,
                           std::string source) {
  CorpusResult r;
  r.line = line;
  r.source = std::move(source);
  try {
    r.doc = annotator.annotate(r.source);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<CorpusResult> annotate_batch(const std::vector<std::string>& lines,
                                         std::size_t first_line,
                                         const Annotator& annotator,
                                         int workers) {
  std::vector<CorpusResult> results(lines.size());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      results[i] = annotate_line(annotator, first_line + i, lines[i]);
    }
  };
  const std::size_t n = lines.size();
  const auto w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || n < 2) {
    work(0, n);
    return results;
  }
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (n + w - 1) / w;
  for (std::size_t from = 0; from < n; from += chunk) {
    jobs.push_back(std::async(std::launch::async, work, from,
                              std::min(n, from + chunk)));
  }
  for (auto& j : jobs) j.get();
  return results;
}

}  // namespace

void annotate_corpus(std::istream& in, const Annotator& annotator, int workers,
                     const std::function<void(const CorpusResult&)>& sink) {
  const std::size_t batch_size = 512 * static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::string> batch;
  std::size_t next_line = 1;
  auto flush = [&] {
    for (const auto& r : annotate_batch(batch, next_line, annotator, workers)) sink(r);
    next_line += batch.size();
    batch.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    batch.push_back(std::move(line));
    if (batch.size() == batch_size) flush();
  }
  if (!batch.empty()) flush();
}

std::vector<CorpusResult> annotate_corpus(std::span<const std::string> lines,
                                          const Annotator& annotator,
                                          int workers) {
  return annotate_batch({lines.begin(), lines.end()}, 1, annotator, workers);
}

NgramCounter::NgramCounter(int n) : n_(n) {
  if (n < 1) throw Error("n-gram size must be at least 1");
}

void NgramCounter::add(const AnnotatedDoc& doc) {
  std::vector<bool> covered(doc.tokens.size(), false);
  for (const auto& a : doc.annotations) {
    for (std::size_t i = a.start; i <= a.end && i < covered.size(); ++i) covered[i] = true;
  }
  const auto n = static_cast<std::size_t>(n_);
  std::vector<std::size_t> run;  // original indices of consecutive free tokens
  auto count_run = [&] {
    for (std::size_t i = 0; i + n <= run.size(); ++i) {
      std::string gram = doc.tokens[run[i]].text;
      for (std::size_t j = i + 1; j < i + n; ++j) {
        if (run[j] != run[j - 1] + 1) gram += ' ';
        gram += doc.tokens[run[j]].text;
      }
      ++counts_[gram];
    }
    run.clear();
  };
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (doc.tokens[i].is_boundary()) continue;
    if (covered[i]) {
      count_run();
      continue;
    }
    run.push_back(i);
  }
  count_run();
}

std::vector<NgramCount> NgramCounter::table() const {
  std::vector<NgramCount> out;
  for (const auto& [gram, count] : counts_) out.push_back({gram, count});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.count > b.count;
  });
  return out;
}

std::vector<NgramCount> suggest(std::span<const AnnotatedDoc> docs, int n) {
  NgramCounter counter(n);
  for (const auto& d : docs) counter.add(d);
  return counter.table();
}

}  // namespace ssp
