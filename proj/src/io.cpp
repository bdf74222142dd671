#include "isodrum/io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

YAML::Node load(std::string_view text) {
  try {
    YAML::Node doc = YAML::Load(std::string(text));
    if (!doc.IsMap()) throw ParseError("spec: expected a mapping of keys");
    return doc;
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
}

template <class T>
T scalar(const YAML::Node& node, const char* key) {
  if (!node[key]) throw ParseError(std::string("spec: missing '") + key + "'");
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(std::string("spec: bad value for '") + key + "'");
  }
}

std::vector<Permutation> cycle_list(const YAML::Node& node, const char* key, std::size_t degree) {
  const YAML::Node list = node[key];
  if (!list) throw ParseError(std::string("spec: missing '") + key + "'");
  if (!list.IsSequence()) throw ParseError(std::string("spec: '") + key + "' must be a list");
  std::vector<Permutation> out;
  for (const auto& item : list) {
    if (!item.IsScalar()) throw ParseError(std::string("spec: '") + key + "' holds a non-string");
    out.push_back(Permutation::from_cycles(item.as<std::string>(), degree, true));
  }
  return out;
}

PermGroup group_from(const YAML::Node& node) {
  auto degree = scalar<long>(node, "degree");
  if (degree <= 0) throw ParseError("spec: degree must be positive");
  auto d = static_cast<std::size_t>(degree);
  return PermGroup(d, cycle_list(node, "generators", d));
}

std::string quoted_list(const std::vector<Permutation>& gens) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < gens.size(); ++i)
    os << (i ? ", " : "") << '"' << gens[i].to_cycle_string(true) << '"';
  os << ']';
  return os.str();
}

std::string group_lines(const PermGroup& G, const std::string& indent) {
  return indent + "degree: " + std::to_string(G.degree()) + "\n" + indent +
         "generators: " + quoted_list(G.generators()) + "\n";
}

DiagonalSpec diagonal_from(const YAML::Node& node, std::size_t degree) {
  if (!node.IsSequence()) throw ParseError("spec: diagonal must be a list of lists");
  DiagonalSpec spec;
  for (const auto& coord : node) {
    if (!coord.IsSequence()) throw ParseError("spec: diagonal map must be a list");
    std::vector<Permutation> images;
    for (const auto& item : coord)
      images.push_back(Permutation::from_cycles(item.as<std::string>(), degree, true));
    spec.maps.push_back(std::move(images));
  }
  return spec;
}

std::string diagonal_line(const DiagonalSpec& spec) {
  std::string out = "[";
  for (std::size_t i = 0; i < spec.maps.size(); ++i) out += (i ? ", " : "") + quoted_list(spec.maps[i]);
  return out + "]";
}

// Invalid groups or subgroups surface as parse errors for file input.
template <class F>
auto as_parse(F&& f) {
  try {
    return f();
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("spec: ") + e.what());
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
}

}  // namespace

PermGroup parse_group_spec(std::string_view text) {
  return as_parse([&] { return group_from(load(text)); });
}

std::string write_group_spec(const PermGroup& G) { return group_lines(G, ""); }

Triple parse_triple_spec(std::string_view text) {
  return as_parse([&] {
    YAML::Node doc = load(text);
    PermGroup G = group_from(doc);
    PermGroup H(G.degree(), cycle_list(doc, "H", G.degree()));
    PermGroup K(G.degree(), cycle_list(doc, "K", G.degree()));
    std::string label = doc["label"] ? doc["label"].as<std::string>() : "";
    return Triple(G, H, K, label);
  });
}

std::optional<std::vector<Permutation>> parse_pair_candidate(std::string_view text) {
  return as_parse([&]() -> std::optional<std::vector<Permutation>> {
    YAML::Node doc = load(text);
    if (!doc["pair"]) return std::nullopt;
    return cycle_list(doc, "pair", static_cast<std::size_t>(scalar<long>(doc, "degree")));
  });
}

std::string write_triple_spec(const Triple& t, const std::vector<Permutation>& pair) {
  std::string out;
  if (!t.label.empty()) out += "label: \"" + t.label + "\"\n";
  out += group_lines(t.G, "");
  out += "H: " + quoted_list(t.H.generators()) + "\n";
  out += "K: " + quoted_list(t.K.generators()) + "\n";
  if (!pair.empty()) out += "pair: " + quoted_list(pair) + "\n";
  return out;
}

ConstructionData parse_construct_spec(std::string_view text) {
  return as_parse([&] {
    YAML::Node doc = load(text);
    const YAML::Node c = doc["construct"];
    if (!c || !c.IsMap()) throw ParseError("spec: missing 'construct' stanza");
    ConstructionData d;
    switch (scalar<int>(c, "variant")) {
      case 1: d.variant = Variant::TypeI; break;
      case 2: d.variant = Variant::TypeII; break;
      case 3: d.variant = Variant::TypeIII; break;
      default: throw ParseError("spec: variant must be 1, 2 or 3");
    }
    PermGroup G = group_from(doc);
    if (d.variant == Variant::TypeI || (doc["H"] && doc["K"])) {
      PermGroup H(G.degree(), cycle_list(doc, "H", G.degree()));
      PermGroup K(G.degree(), cycle_list(doc, "K", G.degree()));
      d.base = Triple(G, H, K, doc["label"] ? doc["label"].as<std::string>() : "");
    } else {
      d.base = Triple(G, G, G, doc["label"] ? doc["label"].as<std::string>() : "");
    }
    if (d.variant == Variant::TypeIII) {
      d.l = scalar<std::size_t>(c, "l");
      d.k = scalar<std::size_t>(c, "k");
      d.n = d.l * d.k;
    } else {
      d.n = scalar<std::size_t>(c, "n");
    }
    if (!c["T"] || !c["T"].IsMap()) throw ParseError("spec: construct needs a 'T' group");
    d.T = group_from(c["T"]);
    std::size_t m = d.variant == Variant::TypeIII ? d.k : d.n;
    d.diag_h = c["diag_h"] ? diagonal_from(c["diag_h"], G.degree()) : DiagonalSpec::plain(m);
    d.diag_k = c["diag_k"] ? diagonal_from(c["diag_k"], G.degree()) : DiagonalSpec::plain(m);
    if (c["require_ff"]) d.require_ff = scalar<bool>(c, "require_ff");
    return d;
  });
}

std::string write_construct_spec(const ConstructionData& d) {
  std::string out = write_triple_spec(d.base);
  out += "construct:\n";
  int variant = d.variant == Variant::TypeI ? 1 : d.variant == Variant::TypeII ? 2 : 3;
  out += "  variant: " + std::to_string(variant) + "\n";
  if (d.variant == Variant::TypeIII) {
    out += "  l: " + std::to_string(d.l) + "\n";
    out += "  k: " + std::to_string(d.k) + "\n";
  } else {
    out += "  n: " + std::to_string(d.n) + "\n";
  }
  out += "  T:\n" + group_lines(d.T, "    ");
  if (d.variant != Variant::TypeI) {
    out += "  diag_h: " + diagonal_line(d.diag_h) + "\n";
    out += "  diag_k: " + diagonal_line(d.diag_k) + "\n";
  }
  if (!d.require_ff) out += "  require_ff: false\n";
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return ParseError("not a rational number: " + s); };
  if (s.empty()) throw bad();
  try {
    if (s.find('/') != std::string::npos) {
      Rational r(s, 10);
      if (sgn(r.get_den()) == 0) throw bad();
      r.canonicalize();
      return r;
    }
    // Decimal with optional exponent, read exactly.
    std::size_t e = s.find_first_of("eE");
    std::string mant = s.substr(0, e);
    long exp10 = 0;
    if (e != std::string::npos) {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw bad();
    }
    std::size_t dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw bad();
    if (mant[0] == '+') mant.erase(0, 1);
    mpz_class num(mant, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace isodrum
