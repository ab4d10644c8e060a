#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/core/error.hpp"
#include "hgm/core/rational.hpp"

#ifndef HGM_DATA_DIR
#define HGM_DATA_DIR "data"
#endif

namespace hgm {

/// c * (i if imag) * sqrt(radicand)
struct AlgebraicCoeff {
  Rational c{1};
  bool imag = false;
  long long radicand = 1;
};

inline AlgebraicCoeff parse_coeff(const std::string& text) {
  AlgebraicCoeff out;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, '*');) parts.push_back(tok);
  require(!parts.empty(), ErrorKind::parse, "empty coefficient");
  out.c = parse_rational(parts[0]);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k] == "i") {
      out.imag = true;
    } else if (parts[k].rfind("sqrt", 0) == 0) {
      out.radicand = to_ll(parse_rational(parts[k].substr(4)));
      require(out.radicand > 0, ErrorKind::parse, "sqrt of nonpositive value");
    } else {
      fail(ErrorKind::parse, "bad coefficient factor '" + parts[k] + "'");
    }
  }
  return out;
}

struct FamilyRow {
  std::vector<int> js;
  int D = 0;
  int M = 0;
  std::string f2_label;
  std::string f3_labels;
};

struct FormMember {
  int D = 0;
  int N = 0;
  std::string label;
  std::string variant;
  int i = 0;
  Rational r;
  Rational s;
  AlgebraicCoeff coeff;
};

struct TwistRow {
  int D = 0;
  std::string label;
  std::string base;
  int character = 1;
};

struct FixtureSet {
  int version = 0;
  std::vector<FamilyRow> families;
  std::vector<FormMember> f3;
  std::vector<FormMember> f2;
  std::vector<TwistRow> twists;

  // Members of one eigenform combination in file order.
  std::vector<FormMember> combination(int weight, int D, const std::string& variant = "") const {
    std::vector<FormMember> out;
    for (const auto& m : weight == 3 ? f3 : f2)
      if (m.D == D && (variant.empty() ? (m.variant.empty() || m.variant == "plus") : m.variant == variant))
        out.push_back(m);
    require(!out.empty(), ErrorKind::parameter, "no fixture combination for D=" + std::to_string(D));
    return out;
  }

  FormMember leading(int weight, int D) const { return combination(weight, D).front(); }

  const FamilyRow& family_of(int j) const {
    for (const auto& f : families)
      for (int x : f.js)
        if (x == j) return f;
    fail(ErrorKind::parameter, "no family row for j=" + std::to_string(j));
  }
};

inline FixtureSet parse_fixtures(std::istream& in) {
  FixtureSet fx;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty()) continue;

    std::map<std::string, std::string> kv;
    std::string kind;
    std::size_t first = 0;
    if (toks[0].find('=') == std::string::npos) {
      kind = toks[0];
      first = 1;
    }
    for (std::size_t k = first; k < toks.size(); ++k) {
      auto eq = toks[k].find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::parse, "fixture line " + std::to_string(lineno) + ": expected key=value");
      kv[toks[k].substr(0, eq)] = toks[k].substr(eq + 1);
    }
    auto get = [&](const std::string& key) -> const std::string& {
      auto it = kv.find(key);
      if (it == kv.end()) fail(ErrorKind::parse, "fixture line " + std::to_string(lineno) + ": missing " + key);
      return it->second;
    };
    auto get_int = [&](const std::string& key) { return static_cast<int>(to_ll(parse_rational(get(key)))); };

    if (kind.empty()) {
      require(get("format") == "hgm-fixtures", ErrorKind::parse, "unknown fixture format");
      fx.version = get_int("version");
    } else if (kind == "family") {
      FamilyRow row;
      std::stringstream js(get("j"));
      for (std::string t; std::getline(js, t, ',');) row.js.push_back(static_cast<int>(to_ll(parse_rational(t))));
      row.D = get_int("D");
      row.M = get_int("M");
      row.f2_label = get("f2");
      row.f3_labels = get("f3");
      fx.families.push_back(row);
    } else if (kind == "f2" || kind == "f3") {
      FormMember m;
      m.D = get_int("D");
      m.N = get_int("N");
      m.label = get("label");
      if (kv.count("variant")) m.variant = kv["variant"];
      m.i = get_int("i");
      m.r = parse_rational(get("r"));
      m.s = parse_rational(get("s"));
      m.coeff = parse_coeff(get("coeff"));
      (kind == "f2" ? fx.f2 : fx.f3).push_back(m);
    } else if (kind == "twist") {
      fx.twists.push_back({get_int("D"), get("label"), get("base"), get_int("char")});
    } else {
      fail(ErrorKind::parse, "fixture line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
    }
  }
  require(fx.version == 1, ErrorKind::parse, "fixture file lacks a version 1 header");
  return fx;
}

inline std::string data_dir() {
  if (const char* env = std::getenv("HGM_DATA_DIR")) return env;
  return HGM_DATA_DIR;
}

inline FixtureSet load_fixtures(const std::string& path = data_dir() + "/g2_fixtures.txt") {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open fixture file " + path);
  return parse_fixtures(in);
}

// Parsed once per process.
inline const FixtureSet& fixtures() {
  static const FixtureSet fx = load_fixtures();
  return fx;
}

}  // namespace hgm
