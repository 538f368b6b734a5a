#include "harmvol/tensor_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "harmvol/error.hpp"

namespace harmvol {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError("tensor JSON: " + where + ": " + what);
}

long long as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<long long>();
}

}  // namespace

HTensor parse_tensor(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte offset; convert it to line and column.
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < pos; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("tensor JSON: malformed input at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + " (byte " + std::to_string(e.byte) + ")");
  }
  if (!doc.is_object()) fail("$", "expected an object");
  if (!doc.contains("g")) fail("$", "missing key \"g\"");
  const long long g = as_int(doc["g"], "$.g");
  if (g < 2 || g > 64) fail("$.g", "genus must lie in 2…64");
  if (!doc.contains("terms") || !doc["terms"].is_array()) fail("$.terms", "expected an array");
  const json& terms = doc["terms"];

  int degree = 0;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "$.terms[" + std::to_string(t) + "]";
    if (!terms[t].is_object() || !terms[t].contains("factors") || !terms[t]["factors"].is_array())
      fail(where, "expected {\"coeff\": int, \"factors\": [...]}");
    const int d = static_cast<int>(terms[t]["factors"].size());
    if (d < 1 || d > 3) fail(where + ".factors", "a term needs 1 to 3 factors");
    if (degree != 0 && d != degree) fail(where + ".factors", "factor count differs from earlier terms");
    degree = d;
  }
  HTensor out(static_cast<int>(g), degree == 0 ? 3 : degree);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "$.terms[" + std::to_string(t) + "]";
    const json& term = terms[t];
    const long long c = term.contains("coeff") ? as_int(term["coeff"], where + ".coeff") : 1;
    HTensor::Key key;
    for (std::size_t f = 0; f < term["factors"].size(); ++f) {
      const std::string fw = where + ".factors[" + std::to_string(f) + "]";
      const json& fac = term["factors"][f];
      if (!fac.is_array() || fac.size() != 2 || !fac[0].is_string()) fail(fw, "expected [\"x\"|\"y\", index]");
      const std::string sym = fac[0].get<std::string>();
      if (sym != "x" && sym != "y") fail(fw, "symbol must be \"x\" or \"y\"");
      const long long i = as_int(fac[1], fw + "[1]");
      if (i < 1 || i > g) fail(fw + "[1]", "index " + std::to_string(i) + " outside 1…" + std::to_string(g));
      key.push_back({sym == "x" ? Sym::x : Sym::y, static_cast<int>(i)});
    }
    out.add(key, c);
  }
  return out;
}

HTensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tensor file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tensor(ss.str());
}

std::string tensor_to_json(const HTensor& t, int indent) {
  json terms = json::array();
  for (const auto& [key, c] : t.terms()) {
    json factors = json::array();
    for (const Gen& z : key) factors.push_back({z.sym == Sym::x ? "x" : "y", z.index});
    terms.push_back({{"coeff", c}, {"factors", factors}});
  }
  json doc = {{"g", t.genus()}, {"terms", terms}};
  return doc.dump(indent);
}

}  // namespace harmvol
