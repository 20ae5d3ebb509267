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

#include "rankenum/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rankenum/errors.hpp"

namespace rankenum {

namespace {

using nlohmann::json;

// 1-based line of every element of the top-level "transitions" array.
struct TransitionLoc {
  int line = 0;
  std::map<std::string, int> fields;  // key -> line of the key
};

std::vector<TransitionLoc> TransitionLines(std::string_view text) {
  std::vector<TransitionLoc> locs;
  const auto key = text.find("\"transitions\"");
  if (key == std::string_view::npos) return locs;
  std::size_t i = text.find('[', key);
  if (i == std::string_view::npos) return locs;
  int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(i), '\n'));
  int depth = 0;
  bool in_string = false;
  std::size_t string_start = 0;
  int string_line = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
        // A string at object depth followed by ':' is a key.
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (depth == 2 && !locs.empty() && j < text.size() && text[j] == ':') {
          locs.back().fields.emplace(std::string(text.substr(string_start, i - string_start)), string_line);
        }
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      string_start = i + 1;
      string_line = line;
    } else if (c == '[' || c == '{') {
      if (depth == 1 && c == '{') locs.push_back({line, {}});
      ++depth;
    } else if (c == ']' || c == '}') {
      if (--depth == 0) break;
    }
  }
  return locs;
}

// "line L: transitions[i].field", naming the field's line when known.
std::string Where(const std::vector<TransitionLoc>& locs, std::size_t index, const std::string& field = "") {
  std::string s;
  if (index < locs.size()) {
    int line = locs[index].line;
    if (auto it = locs[index].fields.find(field); !field.empty() && it != locs[index].fields.end()) line = it->second;
    s = "line " + std::to_string(line) + ": ";
  }
  s += "transitions[" + std::to_string(index) + "]";
  if (!field.empty()) s += "." + field;
  return s;
}

const json& Field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) throw ParseError(where + ": missing field '" + name + "'");
  return obj.at(name);
}

std::string Str(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::int64_t Int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  throw ParseError(where + ": expected an integer");
}

Symbol OneSymbol(const std::string& s, const std::string& where) {
  std::u32string u;
  try {
    u = DecodeUtf8(s);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  if (u.size() != 1) throw ParseError(where + ": expected exactly one symbol, got '" + s + "'");
  return u[0];
}

Int64 ReadWeight(const json& v, const GroupSpec&, const std::string& where, Int64*) { return Int64(Int(v, where)); }

BigInt ReadWeight(const json& v, const GroupSpec&, const std::string& where, BigInt*) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return BigInt(mpz_class(std::to_string(v.get<std::uint64_t>()), 10));
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const bool ok = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    }) && s != "-";
    if (!ok) throw ParseError(where + ": '" + s + "' is not a decimal integer");
    return BigInt(s);
  }
  throw ParseError(where + ": expected an integer or a decimal string");
}

LexVector ReadWeight(const json& v, const GroupSpec& g, const std::string& where, LexVector*) {
  if (!v.is_array() || static_cast<int>(v.size()) != g.dim) {
    throw ParseError(where + ": expected an array of " + std::to_string(g.dim) + " integers");
  }
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(Int(v[i], where + "[" + std::to_string(i) + "]"));
  return LexVector(std::move(c));
}

template <OrderedAbelianGroup G>
CostTransducer<G> Build(const json& doc, const GroupSpec& group, const std::vector<TransitionLoc>& lines) {
  CostTransducer<G> t;
  std::map<std::string, StateId> state_id;
  std::map<std::string, MarkerId> marker_id;

  const json& alpha = Field(doc, "alphabet", "alphabet");
  if (alpha.is_string()) {
    try {
      t.alphabet = DecodeUtf8(alpha.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(std::string("alphabet: ") + e.what());
    }
  } else if (alpha.is_array()) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const std::string w = "alphabet[" + std::to_string(i) + "]";
      t.alphabet.push_back(OneSymbol(Str(alpha[i], w), w));
    }
  } else {
    throw ParseError("alphabet: expected a string or an array of strings");
  }
  std::sort(t.alphabet.begin(), t.alphabet.end());
  if (std::adjacent_find(t.alphabet.begin(), t.alphabet.end()) != t.alphabet.end()) {
    throw ParseError("alphabet: duplicate symbol");
  }

  const json& markers = Field(doc, "markers", "markers");
  if (!markers.is_array()) throw ParseError("markers: expected an array");
  for (std::size_t i = 0; i < markers.size(); ++i) {
    const std::string m = Str(markers[i], "markers[" + std::to_string(i) + "]");
    if (!marker_id.emplace(m, static_cast<MarkerId>(t.markers.size())).second) {
      throw ParseError("markers: duplicate marker '" + m + "'");
    }
    t.markers.push_back(m);
  }
  const std::string empty = Str(Field(doc, "empty_marker", "empty_marker"), "empty_marker");
  if (!marker_id.count(empty)) throw ParseError("empty_marker: '" + empty + "' is not a declared marker");
  t.empty_marker = marker_id[empty];

  const json& states = Field(doc, "states", "states");
  if (!states.is_array() || states.empty()) throw ParseError("states: expected a non-empty array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string s = Str(states[i], "states[" + std::to_string(i) + "]");
    if (!state_id.emplace(s, static_cast<StateId>(t.state_names.size())).second) {
      throw ParseError("states: duplicate state '" + s + "'");
    }
    t.state_names.push_back(s);
  }
  auto lookup_state = [&](const json& v, const std::string& where) {
    const std::string s = Str(v, where);
    auto it = state_id.find(s);
    if (it == state_id.end()) throw ParseError(where + ": unknown state '" + s + "'");
    return it->second;
  };
  t.initial = lookup_state(Field(doc, "initial", "initial"), "initial");
  const json& finals = Field(doc, "finals", "finals");
  if (!finals.is_array()) throw ParseError("finals: expected an array");
  for (std::size_t i = 0; i < finals.size(); ++i) {
    t.finals.push_back(lookup_state(finals[i], "finals[" + std::to_string(i) + "]"));
  }
  std::sort(t.finals.begin(), t.finals.end());
  t.finals.erase(std::unique(t.finals.begin(), t.finals.end()), t.finals.end());

  const json& trans = Field(doc, "transitions", "transitions");
  if (!trans.is_array()) throw ParseError("transitions: expected an array");
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const std::string w = Where(lines, i);
    const json& tr = trans[i];
    if (!tr.is_object()) throw ParseError(w + ": expected an object");
    Transition<G> x;
    x.from = lookup_state(Field(tr, "from", w), Where(lines, i, "from"));
    x.to = lookup_state(Field(tr, "to", w), Where(lines, i, "to"));
    const std::string ws = Where(lines, i, "symbol");
    x.symbol = OneSymbol(Str(Field(tr, "symbol", w), ws), ws);
    if (t.SymbolIndex(x.symbol) < 0) throw ParseError(ws + ": not in the alphabet");
    const std::string wm = Where(lines, i, "marker");
    const std::string m = Str(Field(tr, "marker", w), wm);
    auto it = marker_id.find(m);
    if (it == marker_id.end()) throw ParseError(wm + ": undeclared marker '" + m + "'");
    x.marker = it->second;
    x.weight = ReadWeight(Field(tr, "weight", w), group, Where(lines, i, "weight"), static_cast<G*>(nullptr));
    t.transitions.push_back(std::move(x));
  }
  try {
    t.Validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return t;
}

json WeightValue(const Int64& w) { return w.value(); }
json WeightValue(const BigInt& w) {
  if (mpz_fits_slong_p(w.value().get_mpz_t())) return static_cast<std::int64_t>(w.value().get_si());
  return w.ToString();
}
json WeightValue(const LexVector& w) { return w.coords(); }

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto pos = std::min<std::size_t>(e.byte, text.size());
    const auto upto = text.substr(0, pos);
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ParseError("line " + std::to_string(line) + ": malformed JSON: " + e.what(),
                     static_cast<std::int64_t>(pos));
  }
}

}  // namespace

std::string GroupSpec::ToString() const {
  switch (kind) {
    case Kind::kInt64:
      return "int64";
    case Kind::kBigInt:
      return "bigint";
    case Kind::kLex:
      return "lex:" + std::to_string(dim);
  }
  return "?";
}

GroupSpec ParseGroupSpec(std::string_view text) {
  GroupSpec g;
  if (text == "int64") return g;
  if (text == "bigint") {
    g.kind = GroupSpec::Kind::kBigInt;
    return g;
  }
  if (text.substr(0, 4) == "lex:") {
    const auto digits = text.substr(4);
    int d = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && p == digits.data() + digits.size() && d >= 1) {
      g.kind = GroupSpec::Kind::kLex;
      g.dim = d;
      return g;
    }
  }
  throw ParseError("group: unknown group '" + std::string(text) + "' (expected int64, bigint or lex:D)");
}

AnyTransducer ParseTransducer(std::string_view json_text) {
  const json doc = ParseJson(json_text);
  if (!doc.is_object()) throw ParseError("transducer: expected a JSON object");
  const GroupSpec group = ParseGroupSpec(Str(Field(doc, "group", "group"), "group"));
  const auto lines = TransitionLines(json_text);
  try {
    switch (group.kind) {
      case GroupSpec::Kind::kInt64:
        return Build<Int64>(doc, group, lines);
      case GroupSpec::Kind::kBigInt:
        return Build<BigInt>(doc, group, lines);
      case GroupSpec::Kind::kLex:
        return Build<LexVector>(doc, group, lines);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("transducer: ") + e.what());
  }
  throw ParseError("transducer: unknown group");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyTransducer LoadTransducerFile(const std::string& path) { return ParseTransducer(ReadTextFile(path)); }

Document DocumentFromText(std::string_view bytes, const std::u32string& alphabet) {
  if (std::find(alphabet.begin(), alphabet.end(), U'\n') == alphabet.end() && !bytes.empty() && bytes.back() == '\n') {
    bytes.remove_suffix(1);
    if (!bytes.empty() && bytes.back() == '\r' &&
        std::find(alphabet.begin(), alphabet.end(), U'\r') == alphabet.end()) {
      bytes.remove_suffix(1);
    }
  }
  return Document::FromUtf8(bytes);
}

Document LoadDocumentFile(const std::string& path, const std::u32string& alphabet) {
  return DocumentFromText(ReadTextFile(path), alphabet);
}

template <OrderedAbelianGroup G>
std::string TransducerToJson(const CostTransducer<G>& t, const GroupSpec& group) {
  json doc;
  doc["group"] = group.ToString();
  json alpha = json::array();
  for (Symbol c : t.alphabet) alpha.push_back(EncodeUtf8(c));
  doc["alphabet"] = alpha;
  doc["markers"] = t.markers;
  doc["empty_marker"] = t.markers[static_cast<std::size_t>(t.empty_marker)];
  doc["states"] = t.state_names;
  doc["initial"] = t.state_names[static_cast<std::size_t>(t.initial)];
  json finals = json::array();
  for (StateId f : t.finals) finals.push_back(t.state_names[static_cast<std::size_t>(f)]);
  doc["finals"] = finals;
  json trans = json::array();
  for (const auto& x : t.transitions) {
    trans.push_back({{"from", t.state_names[static_cast<std::size_t>(x.from)]},
                     {"symbol", EncodeUtf8(x.symbol)},
                     {"weight", WeightValue(x.weight)},
                     {"marker", t.markers[static_cast<std::size_t>(x.marker)]},
                     {"to", t.state_names[static_cast<std::size_t>(x.to)]}});
  }
  doc["transitions"] = trans;
  return doc.dump(2);
}

std::string WeightToJson(const Int64& w) { return WeightValue(w).dump(); }
std::string WeightToJson(const BigInt& w) { return WeightValue(w).dump(); }
std::string WeightToJson(const LexVector& w) { return WeightValue(w).dump(); }

template <OrderedAbelianGroup G>
std::string NdjsonLine(std::int64_t rank, const OutputTuple<G>& out, const std::vector<std::string>& markers) {
  json tuple = json::array();
  for (const auto& e : out.entries) {
    tuple.push_back(json::array({markers.at(static_cast<std::size_t>(e.marker)), e.position}));
  }
  json line;
  line["rank"] = rank;
  line["weight"] = WeightValue(out.weight);
  line["tuple"] = tuple;
  return line.dump();
}

SortInput ParseSortInput(std::string_view json_text) {
  const json doc = ParseJson(json_text);
  if (!doc.is_object()) throw ParseError("sort input: expected a JSON object");
  SortInput in;
  in.group = ParseGroupSpec(Str(Field(doc, "group", "group"), "group"));
  const json& basis = Field(doc, "basis", "basis");
  if (!basis.is_array()) throw ParseError("basis: expected an array");
  auto fill = [&](auto* tag) {
    using G = std::remove_pointer_t<decltype(tag)>;
    GeneratorBasis<G> b;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      b.generators.push_back(ReadWeight(basis[i], in.group, "basis[" + std::to_string(i) + "]", tag));
    }
    in.basis = std::move(b);
  };
  switch (in.group.kind) {
    case GroupSpec::Kind::kInt64:
      fill(static_cast<Int64*>(nullptr));
      break;
    case GroupSpec::Kind::kBigInt:
      fill(static_cast<BigInt*>(nullptr));
      break;
    case GroupSpec::Kind::kLex:
      fill(static_cast<LexVector*>(nullptr));
      break;
  }
  const auto t = static_cast<int>(basis.size());
  if (t == 0) throw ParseError("basis: expected at least one generator");
  const std::int64_t bound = Int(Field(doc, "bound", "bound"), "bound");
  if (bound < 0) throw ParseError("bound: must be non-negative");
  const json& sums = Field(doc, "sums", "sums");
  if (!sums.is_array()) throw ParseError("sums: expected an array");
  in.sums = NSumBatch(t, bound);
  in.sums.Reserve(sums.size());
  std::vector<std::int64_t> row(static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const std::string w = "sums[" + std::to_string(i) + "]";
    if (!sums[i].is_array() || static_cast<int>(sums[i].size()) != t) {
      throw ParseError(w + ": expected " + std::to_string(t) + " coefficients");
    }
    std::int64_t total = 0;
    for (int j = 0; j < t; ++j) {
      row[static_cast<std::size_t>(j)] = Int(sums[i][static_cast<std::size_t>(j)], w);
      if (row[static_cast<std::size_t>(j)] < 0) throw ParseError(w + ": coefficients must be non-negative");
      total += row[static_cast<std::size_t>(j)];
      if (total > bound) throw ParseError(w + ": coefficients exceed the bound " + std::to_string(bound));
    }
    in.sums.Add(row);
  }
  return in;
}

template std::string TransducerToJson<Int64>(const CostTransducer<Int64>&, const GroupSpec&);
template std::string TransducerToJson<BigInt>(const CostTransducer<BigInt>&, const GroupSpec&);
template std::string TransducerToJson<LexVector>(const CostTransducer<LexVector>&, const GroupSpec&);
template std::string NdjsonLine<Int64>(std::int64_t, const OutputTuple<Int64>&, const std::vector<std::string>&);
template std::string NdjsonLine<BigInt>(std::int64_t, const OutputTuple<BigInt>&, const std::vector<std::string>&);
template std::string NdjsonLine<LexVector>(std::int64_t, const OutputTuple<LexVector>&,
                                           const std::vector<std::string>&);

}  // namespace rankenum
