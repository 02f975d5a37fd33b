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


#ifndef SSP_EVAL_HPP_
#define SSP_EVAL_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ssp/document.hpp"

namespace ssp {

struct Counts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;

  // Zero whenever the denominator is zero.
  double precision() const;
  double recall() const;
  double f1() const;

  Counts& operator+=(const Counts& other);
  bool operator==(const Counts&) const = default;
};

struct Alignment {
  std::vector<Annotation> true_positives;
  std::vector<Annotation> false_positives;
  std::vector<Annotation> false_negatives;
};

// Exact (start, end, label, attribute) matching; each gold annotation
// absorbs at most one prediction. Throws Error when the raw texts differ.
Alignment align(const AnnotatedDoc& gold, const AnnotatedDoc& pred);

struct EvalReport {
  Counts total;
  std::map<std::string, Counts> per_label;  // keyed by Annotation::key()
  std::size_t documents = 0;
};

// Micro-averaged over all documents. Throws Error naming the 1-based
// document index on a count or text mismatch.
EvalReport score(std::span<const AnnotatedDoc> gold,
                 std::span<const AnnotatedDoc> pred);

// Recall / Precision / F1-Score columns, one row per label plus a total.
std::string format_table(const EvalReport& report);
// key=value lines.
std::string format_key_values(const EvalReport& report);

}  // namespace ssp

#endif  // SSP_EVAL_HPP_
