#include "harmvol/commands.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "harmvol/error.hpp"

namespace harmvol {
namespace {

using ordered_json = nlohmann::ordered_json;

/// A numeric I_ν together with its distance to the nearest of 0, 1/2.
struct NumericValue {
  double value;
  double distance;
};

double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1 - d);
}

NumericValue numeric_i_nu(const NumericCurve& numeric, const ExactCurve& curve, const HTensor& a, int nu) {
  const NumericIQ0 q0 = numeric.numeric_I_Q0(a);
  double v = q0.value + curve.lambda_nu(a, nu).value().to_double();
  v -= std::floor(v);
  return {v, std::min(circle_distance(v, 0.0), circle_distance(v, 0.5))};
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

/// Values of one row: exact engines as strings, numeric optional.
struct Row {
  std::string element;
  std::string third;
  std::string tensor;
  int kase = 0;
  std::map<std::string, std::string> exact;
  std::optional<NumericValue> numeric;
  bool agree = true;
};

bool settle_agreement(Row& row, double tol) {
  std::optional<std::string> first;
  for (const auto& [name, v] : row.exact) {
    if (!first) first = v;
    else if (v != *first) row.agree = false;
  }
  if (row.numeric) {
    const double reference = first ? Rational::parse(*first)->to_double() : (row.numeric->value < 0.25 || row.numeric->value > 0.75 ? 0.0 : 0.5);
    if (circle_distance(row.numeric->value, reference) > tol) row.agree = false;
  }
  return row.agree;
}

std::vector<std::string> exact_columns(const EngineSet& e) {
  std::vector<std::string> out;
  if (e.combinatorial) out.push_back("combinatorial");
  if (e.composed) out.push_back("composed");
  if (e.table) out.push_back("table");
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (genus < 2) throw DomainError("genus must be at least 2");
  if (engines.exact_count() > 0 && genus > max_genus_exact)
    throw DomainError("genus " + std::to_string(genus) + " exceeds the exact-engine limit " +
                      std::to_string(max_genus_exact));
  if (engines.numeric && genus > max_genus_numeric)
    throw DomainError("genus " + std::to_string(genus) + " exceeds the numeric-engine limit " +
                      std::to_string(max_genus_numeric));
  if (nu && (*nu < 0 || *nu > 2 * genus + 1))
    throw DomainError("ν must lie in 0…" + std::to_string(2 * genus + 1));
  if (quadrature.precision_bits < 53) throw DomainError("precision must be at least 53 bits");
  if (!(tol_modz > 0)) throw DomainError("--tol-modz must be positive");
}

VerifyConfig RunConfig::verify_config() const {
  VerifyConfig v;
  v.genus = genus;
  v.nu = nu;
  v.engines = engines;
  v.seed = seed;
  v.random_count = random_count;
  v.quadrature = quadrature;
  v.tol_modz = tol_modz;
  v.exec = exec;
  return v;
}

CommandResult cmd_table(const RunConfig& config) {
  config.validate();
  const ExactCurve curve(config.genus);
  std::optional<NumericCurve> numeric;
  if (config.engines.numeric) numeric.emplace(config.genus, config.quadrature, config.exec);
  const auto columns = exact_columns(config.engines);
  const std::vector<int> nus = config.verify_config().nus();

  std::vector<std::vector<Row>> tables;
  bool all_agree = true;
  for (int nu : nus) {
    const auto sweep = basis_sweep(curve, nu, config.exec);
    std::vector<Row> rows;
    for (const BasisRow& b : sweep) {
      const KBasisElement& el = curve.basis().elements()[b.element];
      Row row;
      row.element = el.label();
      row.third = b.third.str();
      row.tensor = row.element + "⊗" + row.third;
      row.kase = static_cast<int>(el.kase);
      if (config.engines.combinatorial) row.exact["combinatorial"] = b.kappa.str();
      if (config.engines.composed) row.exact["composed"] = b.composed.str();
      if (config.engines.table) row.exact["table"] = b.table.str();
      if (numeric) row.numeric = numeric_i_nu(*numeric, curve, curve.basis().element_tensor(b.element, b.third), nu);
      all_agree &= settle_agreement(row, config.tol_modz);
      rows.push_back(std::move(row));
    }
    tables.push_back(std::move(rows));
  }

  std::ostringstream os;
  switch (config.format) {
    case ReportFormat::json: {
      ordered_json doc;
      doc["version"] = 1;
      doc["g"] = config.genus;
      doc["engines"] = config.engines.names();
      doc["tables"] = ordered_json::array();
      for (std::size_t t = 0; t < tables.size(); ++t) {
        ordered_json jt;
        jt["nu"] = nus[t];
        jt["rows"] = ordered_json::array();
        for (const Row& r : tables[t]) {
          ordered_json jr;
          jr["element"] = r.element;
          jr["third"] = r.third;
          jr["case"] = r.kase;
          ordered_json values;
          for (const auto& c : columns) values[c] = r.exact.at(c);
          if (r.numeric) values["numeric"] = {{"value", r.numeric->value}, {"distance", r.numeric->distance}};
          jr["values"] = values;
          jr["agree"] = r.agree;
          jt["rows"].push_back(jr);
        }
        doc["tables"].push_back(jt);
      }
      os << doc.dump(2) << "\n";
      break;
    }
    case ReportFormat::markdown: {
      for (std::size_t t = 0; t < tables.size(); ++t) {
        if (t) os << "\n";
        os << "## g = " << config.genus << ", ν = " << nus[t] << "\n\n| element | case |";
        for (const auto& c : columns) os << " " << c << " |";
        if (numeric) os << " numeric |";
        os << " agree |\n|---|---|";
        for (std::size_t c = 0; c < columns.size() + (numeric ? 1 : 0); ++c) os << "---|";
        os << "---|\n";
        for (const Row& r : tables[t]) {
          os << "| " << r.tensor << " | " << r.kase << " |";
          for (const auto& c : columns) os << " " << r.exact.at(c) << " |";
          if (r.numeric) os << " " << fixed(r.numeric->value, 10) << " (Δ " << sci(r.numeric->distance) << ") |";
          os << " " << (r.agree ? "yes" : "**NO**") << " |\n";
        }
      }
      break;
    }
    case ReportFormat::csv: {
      os << "nu,element,third,case";
      for (const auto& c : columns) os << "," << c;
      if (numeric) os << ",numeric,numeric_distance";
      os << ",agree\n";
      for (std::size_t t = 0; t < tables.size(); ++t)
        for (const Row& r : tables[t]) {
          os << nus[t] << ",\"" << r.element << "\"," << r.third << "," << r.kase;
          for (const auto& c : columns) os << "," << r.exact.at(c);
          if (r.numeric) os << "," << fixed(r.numeric->value, 12) << "," << sci(r.numeric->distance);
          os << "," << (r.agree ? "true" : "false") << "\n";
        }
      break;
    }
  }
  return {os.str(), all_agree ? 0 : 1};
}

CommandResult cmd_eval(const RunConfig& base, const HTensor& tensor) {
  RunConfig config = base;
  config.genus = tensor.genus();
  config.validate();
  if (tensor.degree() != 3) throw DomainError("eval needs a degree-3 tensor");
  require_in_KH(tensor);
  const ExactCurve curve(config.genus);
  std::optional<NumericCurve> numeric;
  if (config.engines.numeric) numeric.emplace(config.genus, config.quadrature, config.exec);
  const std::vector<int> nus = config.verify_config().nus();

  std::vector<std::vector<QmodZ>> composed_all, table_all;
  if (config.engines.composed) composed_all.push_back(curve.harmonic_volume_all(tensor, Engine::composed));
  if (config.engines.table) table_all.push_back(curve.harmonic_volume_all(tensor, Engine::table));

  struct EvalRow {
    int nu;
    Row row;
  };
  std::vector<EvalRow> rows;
  bool all_agree = true;
  for (int nu : nus) {
    Row r;
    if (config.engines.combinatorial) {
      r.exact["combinatorial"] = kappa(tensor, nu).str();
      r.exact["kappa_prime"] = kappa_prime(tensor, nu).str();
    }
    if (config.engines.composed) r.exact["composed"] = composed_all[0][nu].str();
    if (config.engines.table) r.exact["table"] = table_all[0][nu].str();
    if (numeric) r.numeric = numeric_i_nu(*numeric, curve, tensor, nu);
    all_agree &= settle_agreement(r, config.tol_modz);
    rows.push_back({nu, std::move(r)});
  }

  std::vector<std::string> columns;
  if (config.engines.combinatorial) columns = {"combinatorial", "kappa_prime"};
  for (const auto& c : exact_columns(config.engines))
    if (c != "combinatorial") columns.push_back(c);
  const auto column_name = [](const std::string& c) { return c == "combinatorial" ? std::string("kappa") : c; };

  std::ostringstream os;
  switch (config.format) {
    case ReportFormat::json: {
      ordered_json doc;
      doc["version"] = 1;
      doc["g"] = config.genus;
      doc["tensor"] = tensor.str();
      doc["results"] = ordered_json::array();
      for (const auto& [nu, r] : rows) {
        ordered_json jr;
        jr["nu"] = nu;
        for (const auto& c : columns) jr[column_name(c)] = r.exact.at(c);
        if (r.numeric) jr["numeric"] = {{"value", r.numeric->value}, {"distance", r.numeric->distance}};
        jr["agree"] = r.agree;
        doc["results"].push_back(jr);
      }
      os << doc.dump(2) << "\n";
      break;
    }
    case ReportFormat::markdown: {
      os << "A = " << tensor.str() << "\n\n| ν |";
      for (const auto& c : columns) os << " " << column_name(c) << " |";
      if (numeric) os << " numeric |";
      os << " agree |\n|---|";
      for (std::size_t c = 0; c < columns.size() + (numeric ? 1 : 0); ++c) os << "---|";
      os << "---|\n";
      for (const auto& [nu, r] : rows) {
        os << "| " << nu << " |";
        for (const auto& c : columns) os << " " << r.exact.at(c) << " |";
        if (r.numeric) os << " " << fixed(r.numeric->value, 10) << " (Δ " << sci(r.numeric->distance) << ") |";
        os << " " << (r.agree ? "yes" : "**NO**") << " |\n";
      }
      break;
    }
    case ReportFormat::csv: {
      os << "nu";
      for (const auto& c : columns) os << "," << column_name(c);
      if (numeric) os << ",numeric,numeric_distance";
      os << ",agree\n";
      for (const auto& [nu, r] : rows) {
        os << nu;
        for (const auto& c : columns) os << "," << r.exact.at(c);
        if (r.numeric) os << "," << fixed(r.numeric->value, 12) << "," << sci(r.numeric->distance);
        os << "," << (r.agree ? "true" : "false") << "\n";
      }
      break;
    }
  }
  return {os.str(), all_agree ? 0 : 1};
}

CommandResult cmd_verify(const RunConfig& config) {
  config.validate();
  const VerifyConfig v = config.verify_config();
  const auto suites = run_verification(v);
  const bool ok = std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  return {verification_report(v, suites, config.format, config.timing), ok ? 0 : 1};
}

}  // namespace harmvol
