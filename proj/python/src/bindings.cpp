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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>
#include <memory>
#include <algorithm>
#include <optional>
#include <string>
#include <variant>

#include "rankenum/enumerate.hpp"
#include "rankenum/errors.hpp"
#include "rankenum/io.hpp"
#include "rankenum/nsum_sort.hpp"

namespace py = pybind11;
using namespace rankenum;

namespace {

py::object ToPython(const Int64& w) { return py::int_(w.value()); }
py::object ToPython(const BigInt& w) { return py::int_(py::str(w.ToString())); }
py::object ToPython(const LexVector& w) { return py::cast(w.coords()); }

py::list TupleToPython(const std::vector<TupleEntry>& entries, const std::vector<std::string>& markers) {
  py::list out;
  for (const auto& e : entries) out.append(py::make_tuple(markers[static_cast<std::size_t>(e.marker)], e.position));
  return out;
}

// Type-erased ranked enumeration over any weight group.
class Enumeration {
 public:
  Enumeration(const std::string& transducer_json, const std::string& document, const std::string& algorithm,
              std::int64_t limit, std::uint64_t seed, std::int64_t n, const std::string& backend) {
    EnumerationOptions opts;
    opts.algorithm = ParseAlgorithm(algorithm);
    opts.limit = limit;
    opts.epoch.n = n;
    opts.epoch.backend = ParseBackend(backend);
    opts.epoch.sort.seed = seed;
    std::visit(
        [&](auto& t) {
          using G = std::decay_t<decltype(t.transitions[0].weight)>;
          markers_ = t.markers;
          auto impl = std::make_shared<RankedEnumeration<G>>(t, Document::FromUtf8(document), opts);
          next_ = [this, impl]() -> std::optional<py::tuple> {
            OutputTuple<G> o;
            if (!impl->Next(o)) return std::nullopt;
            return py::make_tuple(ToPython(o.weight), TupleToPython(o.entries, markers_));
          };
          emitted_ = [impl] { return impl->emitted(); };
        },
        transducer_ = ParseTransducer(transducer_json));
  }

  py::tuple Next() {
    auto v = next_();
    if (!v) throw py::stop_iteration();
    return *v;
  }
  std::int64_t emitted() const { return emitted_(); }

 private:
  AnyTransducer transducer_;
  std::vector<std::string> markers_;
  std::function<std::optional<py::tuple>()> next_;
  std::function<std::int64_t()> emitted_;
};

py::object Validate(const std::string& transducer_json, std::size_t max_len) {
  const auto any = ParseTransducer(transducer_json);
  return std::visit(
      [&](const auto& t) -> py::object {
        const auto w = CheckUnambiguous(t, max_len);
        if (w.unambiguous) return py::none();
        py::dict d;
        d["document"] = EncodeUtf8(std::u32string_view(w.document));
        d["run1"] = w.run1;
        d["run2"] = w.run2;
        return d;
      },
      any);
}

py::list BruteForce(const std::string& transducer_json, const std::string& document, std::size_t max_len) {
  const auto any = ParseTransducer(transducer_json);
  return std::visit(
      [&](const auto& t) {
        auto outs = BruteForceOutputs(t, Document::FromUtf8(document), max_len);
        std::stable_sort(outs.begin(), outs.end(), [](const auto& a, const auto& b) { return a.weight < b.weight; });
        py::list out;
        for (const auto& o : outs) out.append(py::make_tuple(ToPython(o.weight), TupleToPython(o.entries, t.markers)));
        return out;
      },
      any);
}

py::tuple SortSums(const std::string& input_json, const std::string& backend, std::uint64_t seed) {
  const SortInput in = ParseSortInput(input_json);
  SortOptions opts;
  opts.seed = seed;
  SortReport rep;
  const SortBackend b = ParseBackend(backend);
  const auto perm =
      std::visit([&](const auto& basis) { return SortNSums(in.sums, basis, b, opts, &rep); }, in.basis);
  py::dict r;
  r["requested"] = std::string(BackendName(rep.requested));
  r["used"] = std::string(BackendName(rep.used));
  r["comparisons"] = rep.comparisons;
  r["attempts"] = rep.attempts;
  r["restarts"] = rep.restarts;
  r["fell_back"] = rep.fell_back;
  r["fallback_reason"] = rep.fallback_reason;
  r["distinct"] = rep.distinct;
  r["buckets"] = rep.buckets;
  return py::make_tuple(perm, r);
}

}  // namespace

PYBIND11_MODULE(_rankenum, m) {
  m.doc() = "Ranked enumeration of weighted transducer outputs";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<AmbiguityDetected>(m, "AmbiguityDetected", PyExc_RuntimeError);
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_ValueError);
  py::register_exception<SizeBoundExceeded>(m, "SizeBoundExceeded", PyExc_ValueError);

  py::class_<Enumeration>(m, "Enumeration")
      .def(py::init<const std::string&, const std::string&, const std::string&, std::int64_t, std::uint64_t,
                    std::int64_t, const std::string&>(),
           py::arg("transducer_json"), py::arg("document"), py::arg("algorithm") = "simple", py::arg("limit") = -1,
           py::arg("seed") = 0, py::arg("n") = 0, py::arg("backend") = "auto")
      .def("__iter__", [](Enumeration& e) -> Enumeration& { return e; }, py::return_value_policy::reference_internal)
      .def("__next__", &Enumeration::Next)
      .def_property_readonly("emitted", &Enumeration::emitted);

  m.def("validate", &Validate, py::arg("transducer_json"), py::arg("max_len") = 8);
  m.def("brute_force", &BruteForce, py::arg("transducer_json"), py::arg("document"), py::arg("max_len") = 12);
  m.def("sort_nsums_json", &SortSums, py::arg("input_json"), py::arg("backend") = "auto", py::arg("seed") = 0);
}
