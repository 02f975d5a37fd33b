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


#include "ssp/eval.hpp"

#include <algorithm>
#include <cstdio>

#include "ssp/error.hpp"

namespace ssp {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

double Counts::precision() const {
  return ratio(true_positive, true_positive + false_positive);
}

double Counts::recall() const {
  return ratio(true_positive, true_positive + false_negative);
}

double Counts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
}

Counts& Counts::operator+=(const Counts& other) {
  true_positive += other.true_positive;
  false_positive += other.false_positive;
  false_negative += other.false_negative;
  return *this;
}

Alignment align(const AnnotatedDoc& gold, const AnnotatedDoc& pred) {
  if (gold.text != pred.text) throw Error("raw text differs between gold and prediction");
  Alignment out;
  std::vector<bool> used(gold.annotations.size(), false);
  for (const Annotation& p : pred.annotations) {
    bool matched = false;
    for (std::size_t i = 0; i < gold.annotations.size() && !matched; ++i) {
      if (!used[i] && gold.annotations[i] == p) used[i] = matched = true;
    }
    (matched ? out.true_positives : out.false_positives).push_back(p);
  }
  for (std::size_t i = 0; i < gold.annotations.size(); ++i) {
    if (!used[i]) out.false_negatives.push_back(gold.annotations[i]);
  }
  return out;
}

EvalReport score(std::span<const AnnotatedDoc> gold,
                 std::span<const AnnotatedDoc> pred) {
  if (gold.size() != pred.size()) {
    throw Error("gold has " + std::to_string(gold.size()) + " documents, prediction has " +
                std::to_string(pred.size()));
  }
  EvalReport report;
  report.documents = gold.size();
  for (std::size_t d = 0; d < gold.size(); ++d) {
    Alignment a;
    try {
      a = align(gold[d], pred[d]);
    } catch (const Error& e) {
      throw Error("document " + std::to_string(d + 1) + ": " + e.what());
    }
    for (const auto& x : a.true_positives) ++report.per_label[x.key()].true_positive;
    for (const auto& x : a.false_positives) ++report.per_label[x.key()].false_positive;
    for (const auto& x : a.false_negatives) ++report.per_label[x.key()].false_negative;
  }
  for (const auto& [label, c] : report.per_label) report.total += c;
  return report;
}

std::string format_table(const EvalReport& report) {
  std::size_t width = 5;
  for (const auto& [label, c] : report.per_label) width = std::max(width, label.size());
  width += 2;
  auto row = [&](const std::string& name, const std::string& r, const std::string& p,
                 const std::string& f) {
    std::string line = name;
    line.resize(width, ' ');
    std::string cell = r;
    cell.resize(8, ' ');
    line += cell;
    cell = p;
    cell.resize(11, ' ');
    line += cell;
    line += f;
    return line + "\n";
  };
  std::string out = row("", "Recall", "Precision", "F1-Score");
  for (const auto& [label, c] : report.per_label) {
    out += row(label, fixed4(c.recall()), fixed4(c.precision()), fixed4(c.f1()));
  }
  out += row("Total", fixed4(report.total.recall()), fixed4(report.total.precision()),
             fixed4(report.total.f1()));
  return out;
}

std::string format_key_values(const EvalReport& report) {
  std::string out;
  auto put = [&](const std::string& prefix, const Counts& c) {
    out += prefix + "true_positive=" + std::to_string(c.true_positive) + "\n";
    out += prefix + "false_positive=" + std::to_string(c.false_positive) + "\n";
    out += prefix + "false_negative=" + std::to_string(c.false_negative) + "\n";
    out += prefix + "precision=" + fixed4(c.precision()) + "\n";
    out += prefix + "recall=" + fixed4(c.recall()) + "\n";
    out += prefix + "f1=" + fixed4(c.f1()) + "\n";
  };
  out += "documents=" + std::to_string(report.documents) + "\n";
  put("", report.total);
  for (const auto& [label, c] : report.per_label) put("label." + label + ".", c);
  return out;
}

}  // namespace ssp
