// Copyright 2026 The rankenum Authors
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

// rankenum command line: enumerate, bench, validate, sort.
//
// Exit codes: 0 success, 1 other failure, 2 parse error, 3 validation failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "rankenum/enumerate.hpp"
#include "rankenum/errors.hpp"
#include "rankenum/io.hpp"
#include "rankenum/nsum_sort.hpp"
#include "rankenum/transducer.hpp"

namespace {

using namespace rankenum;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

struct RunConfig {
  std::string transducer;
  std::string doc;
  std::string algo = "simple";
  std::int64_t limit = -1;
  std::uint64_t seed = 0;
  std::string backend = "auto";
  std::size_t max_len = 8;
  std::string format = "ndjson";
  bool instrument = false;
  std::string dot;
  std::string input;
};

EnumerationOptions MakeOptions(const RunConfig& cfg) {
  EnumerationOptions opts;
  opts.algorithm = ParseAlgorithm(cfg.algo);
  opts.limit = cfg.limit;
  opts.epoch.backend = ParseBackend(cfg.backend);
  opts.epoch.sort.seed = cfg.seed;
  return opts;
}

template <OrderedAbelianGroup G>
std::string TupleText(const OutputTuple<G>& out, const std::vector<std::string>& markers) {
  std::string s;
  for (const auto& e : out.entries) {
    if (!s.empty()) s += ' ';
    s += markers[static_cast<std::size_t>(e.marker)] + "@" + std::to_string(e.position);
  }
  return s;
}

template <OrderedAbelianGroup G>
void Instrument(const RankedEnumeration<G>& run, const RunConfig& cfg) {
  const auto& info = run.info();
  std::cerr << "algorithm=" << cfg.algo << " emitted=" << run.emitted() << " product_nodes=" << info.product_nodes
            << " product_edges=" << info.product_edges << " nodes=" << info.nodes << " edges=" << info.edges
            << " heap_nodes=" << info.heap_nodes << " heap_edges=" << info.heap_edges;
  if (const auto* s = run.simple()) {
    std::cerr << " max_aux_heap=" << s->stats().max_aux_heap << " aux_heap_bound=" << s->aux_heap_bound();
  }
  if (const auto* e = run.epoch()) {
    std::cerr << " n=" << e->n() << " epochs=" << e->epochs().size() << " underruns=" << e->underruns();
    for (const auto& ep : e->epochs()) {
      std::cerr << " [epoch " << ep.epoch << ": ranks " << ep.first_rank << ".." << ep.last_rank
                << " budget=" << ep.budget << " work=" << ep.work << "]";
    }
  }
  std::cerr << "\n";
}

template <OrderedAbelianGroup G>
int Enumerate(const CostTransducer<G>& t, const RunConfig& cfg) {
  const Document d = LoadDocumentFile(cfg.doc, t.alphabet);
  RankedEnumeration<G> run(t, d, MakeOptions(cfg));
  if (!cfg.dot.empty() && run.dag() != nullptr) {
    std::ofstream os(cfg.dot);
    WriteDot(run.dag()->graph(), os, NormalizeSingleFinal(t).state_names, t.markers);
  }
  const bool csv = cfg.format == "csv";
  if (csv) std::cout << "rank,weight,tuple\n";
  OutputTuple<G> out;
  while (run.Next(out)) {
    if (csv) {
      std::cout << run.emitted() << ',' << ToString(out.weight) << ",\"" << TupleText(out, t.markers) << "\"\n";
    } else {
      std::cout << NdjsonLine(run.emitted(), out, t.markers) << '\n';
    }
  }
  std::cout.flush();
  if (cfg.instrument) Instrument(run, cfg);
  return kExitOk;
}

template <OrderedAbelianGroup G>
int Bench(const CostTransducer<G>& t, const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const Document d = LoadDocumentFile(cfg.doc, t.alphabet);
  const auto t0 = Clock::now();
  RankedEnumeration<G> run(t, d, MakeOptions(cfg));
  const auto t1 = Clock::now();
  const auto& info = run.info();
  std::cout << "# preprocessing_ns=" << std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()
            << " nodes=" << info.nodes << " edges=" << info.edges << " heap_nodes=" << info.heap_nodes
            << " heap_edges=" << info.heap_edges << "\n";
  const bool simple = run.simple() != nullptr || run.epoch() == nullptr;
  std::cout << "rank,size,delay_ns," << (simple ? "aux_heap" : "epoch") << "\n";
  OutputTuple<G> out;
  auto last = Clock::now();
  while (run.Next(out)) {
    const auto now = Clock::now();
    std::cout << run.emitted() << ',' << out.entries.size() << ','
              << std::chrono::duration_cast<std::chrono::nanoseconds>(now - last).count() << ',';
    if (run.simple() != nullptr) {
      std::cout << run.simple()->aux_heap_size();
    } else if (run.epoch() != nullptr) {
      std::cout << run.epoch()->epoch();
    } else {
      std::cout << 0;
    }
    std::cout << '\n';
    last = Clock::now();
  }
  if (cfg.instrument) Instrument(run, cfg);
  return kExitOk;
}

template <OrderedAbelianGroup G>
int Validate(const CostTransducer<G>& t, const RunConfig& cfg) {
  const auto w = CheckUnambiguous(t, cfg.max_len);
  if (w.unambiguous) {
    std::cout << "unambiguous up to length " << cfg.max_len << "\n";
    return kExitOk;
  }
  std::cout << "ambiguous: document \"" << EncodeUtf8(std::u32string_view(w.document)) << "\"\n"
            << "  run 1: " << DescribeRun(t, w.run1) << "\n"
            << "  run 2: " << DescribeRun(t, w.run2) << "\n";
  return kExitValidation;
}

int Sort(const RunConfig& cfg) {
  const SortInput in = ParseSortInput(ReadTextFile(cfg.input));
  SortOptions opts;
  opts.seed = cfg.seed;
  SortReport report;
  const SortBackend backend = ParseBackend(cfg.backend);
  const auto perm = std::visit(
      [&](const auto& basis) { return SortNSums(in.sums, basis, backend, opts, &report); }, in.basis);
  std::cout << '[';
  for (std::size_t i = 0; i < perm.size(); ++i) std::cout << (i ? "," : "") << perm[i] + 1;
  std::cout << "]\n";
  if (cfg.instrument) {
    std::cerr << "requested=" << BackendName(report.requested) << " used=" << BackendName(report.used)
              << " comparisons=" << report.comparisons << " attempts=" << report.attempts
              << " restarts=" << report.restarts << " fell_back=" << (report.fell_back ? 1 : 0)
              << " distinct=" << report.distinct << " buckets=" << report.buckets;
    if (!report.fallback_reason.empty()) std::cerr << " reason=\"" << report.fallback_reason << "\"";
    std::cerr << "\n";
  }
  return kExitOk;
}

void AddCommon(CLI::App* cmd, RunConfig& cfg, bool need_doc) {
  cmd->add_option("--transducer", cfg.transducer, "transducer JSON file")->required()->envname("RANKENUM_TRANSDUCER");
  if (need_doc) cmd->add_option("--doc", cfg.doc, "UTF-8 document file")->required()->envname("RANKENUM_DOC");
}

void AddRun(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--algo", cfg.algo, "simple or epoch")
      ->check(CLI::IsMember({"simple", "epoch"}))
      ->envname("RANKENUM_ALGO");
  cmd->add_option("--limit", cfg.limit, "emit at most this many results (negative: all)")->envname("RANKENUM_LIMIT");
  cmd->add_option("--seed", cfg.seed, "seed for the randomized sorter")->envname("RANKENUM_SEED");
  cmd->add_option("--backend", cfg.backend, "n-sum sort backend for the epoch algorithm")
      ->check(CLI::IsMember({"auto", "baseline", "radix", "rounding"}))
      ->envname("RANKENUM_BACKEND");
  cmd->add_flag("--instrument", cfg.instrument, "print instrumentation to stderr")->envname("RANKENUM_INSTRUMENT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankenum: ranked enumeration of weighted transducer outputs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* en = app.add_subcommand("enumerate", "stream ranked results as NDJSON");
  AddCommon(en, cfg, true);
  AddRun(en, cfg);
  en->add_option("--format", cfg.format, "ndjson or csv")
      ->check(CLI::IsMember({"ndjson", "csv"}))
      ->envname("RANKENUM_FORMAT");
  en->add_option("--dot", cfg.dot, "write the pruned product DAG in Graphviz format");

  auto* bench = app.add_subcommand("bench", "per-output delay as CSV");
  AddCommon(bench, cfg, true);
  AddRun(bench, cfg);

  auto* val = app.add_subcommand("validate", "search for an ambiguity witness");
  AddCommon(val, cfg, false);
  val->add_option("--max-len", cfg.max_len, "longest document to consider")->envname("RANKENUM_MAX_LEN");

  auto* sort = app.add_subcommand("sort", "sort n-sums; prints a 1-based permutation");
  sort->add_option("input,--input", cfg.input, "sort input JSON")->required()->envname("RANKENUM_INPUT");
  sort->add_option("--backend", cfg.backend, "auto, baseline, radix or rounding")
      ->check(CLI::IsMember({"auto", "baseline", "radix", "rounding"}))
      ->envname("RANKENUM_BACKEND");
  sort->add_option("--seed", cfg.seed, "seed")->envname("RANKENUM_SEED");
  sort->add_flag("--instrument", cfg.instrument, "print the sort report to stderr")->envname("RANKENUM_INSTRUMENT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (sort->parsed()) return Sort(cfg);
    const AnyTransducer t = LoadTransducerFile(cfg.transducer);
    return std::visit(
        [&](const auto& td) {
          if (en->parsed()) return Enumerate(td, cfg);
          if (bench->parsed()) return Bench(td, cfg);
          return Validate(td, cfg);
        },
        t);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const AmbiguityDetected& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PreconditionViolation& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
