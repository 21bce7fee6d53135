#include "fockida/cli/catalog.hpp"

#include <cctype>
#include <cstdio>
#include <map>

#include "fockida/error.hpp"

namespace fockida::cli {
namespace {

struct KindInfo {
  int arity;
  Growth growth;
  const char* expectation;
};

const std::map<std::string, KindInfo>& kinds() {
  static const std::map<std::string, KindInfo> table = {
      {"z", {0, Growth::PolynomialGrowth, "holomorphic: H_f = 0"}},
      {"zbar", {0, Growth::PolynomialGrowth, "H_f^* H_f = I: bounded, not compact"}},
      {"abs2", {0, Growth::PolynomialGrowth, "unbounded Hankel operator"}},
      {"bump", {3, Growth::CompactlySupported, "compact support: H_f in every S_p"}},
      {"cbump", {4, Growth::CompactlySupported, "compact support: H_f in every S_p"}},
      {"radstep", {2, Growth::Bounded, "constant outside a disk: H_f in every S_p"}},
      {"random", {3, Growth::Bounded, "bounded, not vanishing at infinity: H_f not compact"}},
      {"zbar_gauss", {0, Growth::Bounded, "rapid decay: H_f in every S_p"}},
  };
  return table;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Parser {
 public:
  Parser(const std::string& text, std::uint64_t seed) : s_(text), seed_(seed) {}

  SymbolSpec parse() {
    SymbolSpec spec = parse_spec();
    skip_space();
    if (pos_ != s_.size()) fail("trailing characters");
    return spec;
  }

 private:
  SymbolSpec parse_spec() {
    const std::string id = ident();
    if (id == "conj") {
      expect('(');
      SymbolSpec inner = parse_spec();
      expect(')');
      return inner.conj();
    }
    const auto it = kinds().find(id);
    if (it == kinds().end()) fail("unknown symbol '" + id + "'");
    std::vector<double> args;
    skip_space();
    if (peek() == '(') {
      ++pos_;
      skip_space();
      if (peek() != ')') {
        args.push_back(number());
        skip_space();
        while (peek() == ',') {
          ++pos_;
          args.push_back(number());
          skip_space();
        }
      }
      expect(')');
    }
    if (id == "random" && args.empty()) args = {static_cast<double>(seed_), 16.0, 2.0};
    const int n = static_cast<int>(args.size());
    const bool amplitude = id == "bump" && n == 4;
    if (n != it->second.arity && !amplitude)
      fail("'" + id + "' takes " + std::to_string(it->second.arity) + " arguments");
    SymbolSpec spec;
    spec.kind = id;
    spec.params = std::move(args);
    spec.growth = it->second.growth;
    spec.expectation = it->second.expectation;
    spec.name = id;
    if (!spec.params.empty()) {
      spec.name += '(';
      for (std::size_t i = 0; i < spec.params.size(); ++i) spec.name += (i ? "," : "") + format_number(spec.params[i]);
      spec.name += ')';
    }
    return spec;
  }

  std::string ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a symbol name");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    skip_space();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("symbol '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  const std::string& s_;
  std::uint64_t seed_;
  std::size_t pos_ = 0;
};

}  // namespace

Symbol SymbolSpec::build() const {
  const auto& p = params;
  Symbol s;
  if (kind == "z") s = symbols::z();
  else if (kind == "zbar") s = symbols::zbar();
  else if (kind == "abs2") s = symbols::abs_squared();
  else if (kind == "bump") s = symbols::bump({p[0], p[1]}, p[2], p.size() > 3 ? p[3] : 1.0);
  else if (kind == "cbump") s = symbols::complex_bump({p[0], p[1]}, p[2], p[3]);
  else if (kind == "radstep") s = symbols::radial_step(p[0], p[1]);
  else if (kind == "random") {
    if (p[0] < 0.0 || p[1] < 1.0) throw InvalidInput("random: seed must be >= 0 and terms >= 1");
    s = symbols::random_field(static_cast<std::uint64_t>(p[0]), static_cast<int>(p[1]), p[2]);
  } else if (kind == "zbar_gauss") s = symbols::zbar_gaussian();
  else throw InvalidInput("unknown symbol kind '" + kind + "'");
  if (conjugated) s = s.conj();
  return s.renamed(name);
}

SymbolSpec SymbolSpec::conj() const {
  SymbolSpec out = *this;
  out.conjugated = !conjugated;
  if (conjugated) {
    out.name = name.substr(5, name.size() - 6);
  } else {
    out.name = "conj(" + name + ")";
  }
  if (kind == "z" || kind == "zbar") {
    // conj(z) is zbar and vice versa
    out.kind = kind == "z" ? "zbar" : "z";
    out.conjugated = false;
    out.name = out.kind;
    out.expectation = kinds().at(out.kind).expectation;
  }
  return out;
}

SymbolSpec parse_symbol(const std::string& text, std::uint64_t default_seed) {
  return Parser(text, default_seed).parse();
}

std::vector<SymbolSpec> catalog(std::uint64_t seed) {
  const std::string rnd = "random(" + std::to_string(seed) + ",16,2)";
  std::vector<SymbolSpec> out;
  for (const char* text : {"z", "zbar", "abs2", "bump(0,0,1)", "cbump(0,0,1,2)", "radstep(1,2)", "zbar_gauss"})
    out.push_back(parse_symbol(text, seed));
  out.push_back(parse_symbol(rnd, seed));
  for (const char* text : {"bump(0,0,1)", "cbump(0,0,1,2)", "radstep(1,2)", "zbar_gauss"})
    out.push_back(parse_symbol(text, seed).conj());
  out.push_back(parse_symbol(rnd, seed).conj());
  return out;
}

GrowthCheck verify_growth(const SymbolSpec& spec, double radius) { return check_growth(spec.build(), radius); }

}  // namespace fockida::cli
