#pragma once

// JSON and CSV plumbing.
//
//   graph:    {"n": 3, "edges": [[0,1],[1,2]], "fields": [[re_num,re_den,im_num,im_den], ...]}
//   pinning:  {"pins": {"2": "+", "0": "-"}}
//   complex:  {"re": "p/q", "im": "p/q"} or a bare "p/q" string

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/params.hpp"

namespace ssm {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Malformed input files or flags.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class J>
long json_integer(const J& j, const char* what) {
  if (j.is_number_integer()) return j.template get<long>();
  if (j.is_string()) {
    const std::string s = j.template get<std::string>();
    long x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec == std::errc() && ptr == s.data() + s.size()) return x;
  }
  throw InputError(std::string("expected an integer for ") + what);
}

template <class J>
Rational json_fraction(const J& num, const J& den) {
  const long d = json_integer(den, "field denominator");
  if (d == 0) throw InputError("zero denominator in field value");
  Rational q(json_integer(num, "field numerator"), 1);
  q /= d;
  return q;
}

}  // namespace detail

template <class J = Json>
J complex_to_json(const ExactComplex& z) {
  J j;
  j["re"] = to_string(z.re());
  j["im"] = to_string(z.im());
  return j;
}

template <class J>
ExactComplex complex_from_json(const J& j) {
  try {
    if (j.is_string()) return ExactComplex(parse_rational(j.template get<std::string>()));
    if (j.is_number_integer()) return ExactComplex(j.template get<long>());
    if (j.is_object()) {
      const std::string re = j.contains("re") ? j.at("re").template get<std::string>() : "0";
      const std::string im = j.contains("im") ? j.at("im").template get<std::string>() : "0";
      return ExactComplex::parse(re, im);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed complex value: ") + e.what());
  }
  throw InputError("malformed complex value");
}

template <class J = Json>
J graph_to_json(const Graph& g) {
  J j;
  j["n"] = g.vertex_count();
  J edges = J::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  if (g.has_fields()) {
    J fields = J::array();
    for (const auto& f : g.fields())
      fields.push_back({f.re().get_num().get_str(), f.re().get_den().get_str(), f.im().get_num().get_str(),
                        f.im().get_den().get_str()});
    j["fields"] = fields;
  }
  return j;
}

template <class J>
Graph graph_from_json(const J& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw InputError("graph needs \"n\" and \"edges\"");
  const long n = detail::json_integer(j.at("n"), "n");
  if (n < 0) throw InputError("negative vertex count");
  const auto& edges = j.at("edges");
  if (!edges.is_array()) throw InputError("\"edges\" must be an array");
  Graph g(static_cast<std::size_t>(n));
  try {
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair");
      const long u = detail::json_integer(e[0], "edge endpoint"), v = detail::json_integer(e[1], "edge endpoint");
      if (u < 0 || v < 0) throw InputError("negative vertex id");
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (j.contains("fields")) {
      std::vector<ExactComplex> fields;
      for (const auto& f : j.at("fields")) {
        if (!f.is_array() || f.size() != 4) throw InputError("each field is [re_num, re_den, im_num, im_den]");
        fields.emplace_back(detail::json_fraction(f[0], f[1]), detail::json_fraction(f[2], f[3]));
      }
      g.set_fields(std::move(fields));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return g;
}

inline Graph parse_graph(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed graph document: ") + e.what());
  }
  return graph_from_json(j);
}

template <class J = Json>
J pinning_to_json(const Pinning& p) {
  J pins = J::object();
  for (auto [v, s] : p) pins[std::to_string(v)] = std::string(1, spin_char(s));
  J j;
  j["pins"] = pins;
  return j;
}

template <class J>
Pinning pinning_from_json(const J& j) {
  if (!j.is_object() || !j.contains("pins") || !j.at("pins").is_object()) throw InputError("pinning needs a \"pins\" object");
  Pinning p;
  for (const auto& [key, value] : j.at("pins").items()) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc() || ptr != key.data() + key.size() || v < 0) throw InputError("bad pinned vertex id: " + key);
    const std::string s = value.template get<std::string>();
    if (s != "+" && s != "-") throw InputError("spin must be \"+\" or \"-\"");
    try {
      p.pin(static_cast<Vertex>(v), s == "+" ? Spin::Plus : Spin::Minus);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  return p;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

template <class J = Json>
J read_json_file(const std::string& path) {
  try {
    return J::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Shortest round-trip decimal, independent of the locale.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

/// Parses "p/q" or "p/q,r/s" (real and imaginary parts).
inline ExactComplex parse_complex_flag(const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return ExactComplex(parse_rational(text));
    return ExactComplex::parse(text.substr(0, comma), text.substr(comma + 1));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline std::string complex_flag(const ExactComplex& z) {
  return z.is_real() ? to_string(z.re()) : to_string(z.re()) + "," + to_string(z.im());
}

}  // namespace ssm
