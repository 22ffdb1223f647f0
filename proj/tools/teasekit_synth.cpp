// Copyright 2026 The teasekit Authors.
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

// Writes a synthetic corpus as NDJSON.
//
//   teasekit-synth --records 10000 --seed 7 --out corpus.ndjson

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "teasekit/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic teaser corpus generator"};
  teasekit::SyntheticSpec spec;
  std::string out;
  app.add_option("--records", spec.records)->capture_default_str();
  app.add_option("--domains", spec.domains)->capture_default_str();
  app.add_option("--seed", spec.seed)->capture_default_str();
  app.add_option("--out", out, "Output file (default stdout)");
  CLI11_PARSE(app, argc, argv);
  if (spec.domains == 0) {
    std::cerr << "--domains must be >= 1\n";
    return 2;
  }
  const auto corpus = teasekit::synthetic_corpus(spec);
  if (out.empty()) {
    teasekit::write_synthetic_ndjson(std::cout, corpus);
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << out << '\n';
    return 4;
  }
  teasekit::write_synthetic_ndjson(f, corpus);
  return f ? 0 : 4;
}
