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


#ifndef SSP_TESTS_FIXTURES_HPP_
#define SSP_TESTS_FIXTURES_HPP_

#include <string>

#include "ssp/compiler.hpp"
#include "ssp/graph.hpp"
#include "ssp/lexicon.hpp"
#include "ssp/text.hpp"

namespace fixtures {

inline std::string path(const std::string& relative) {
  return std::string(SSP_SOURCE_DIR) + "/" + relative;
}

inline std::string read(const std::string& relative) {
  return ssp::text::read_file(path(relative));
}

inline ssp::Lexicon demo_lexicon() {
  return ssp::build_index(ssp::parse_lexicon(read("data/demo/lexicon.dic")),
                          ssp::parse_inflection_rules(read("data/demo/rules.inf")));
}

inline ssp::GraphSet demo_graphs() {
  return ssp::load_graph_set(path("data/demo/graphs"), "MAIN");
}

inline ssp::GraphSet recursive_graphs() {
  return ssp::load_graph_set(path("data/demo/recursive"), "EMPH");
}

}  // namespace fixtures

#endif  // SSP_TESTS_FIXTURES_HPP_
