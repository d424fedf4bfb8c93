#include "cvwerner/certificate_io.hpp"

#include <cstdio>
#include <sstream>

#include "cvwerner/error.hpp"
#include "json.hpp"

namespace cvwerner {

namespace {

using nlohmann::ordered_json;

ordered_json metadata_json(const Metadata& metadata) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : metadata) out[k] = v;
  return out;
}

ordered_json ket_json(const SingleModeVector& v) {
  ordered_json out = ordered_json::array();
  for (int k = 0; k < v.dim(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

SingleModeVector ket_from_json(const ordered_json& j) {
  DenseVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = Complex(j[k].at(0).get<double>(), j[k].at(1).get<double>());
  }
  return SingleModeVector(std::move(v));
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string metadata_header(const Metadata& metadata) {
  std::string out;
  for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string table_to_csv(const Table& table, const Metadata& metadata, const Metadata& footer) {
  std::string out = metadata_header(metadata);
  for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_double(row[c]);
    out += "\n";
  }
  for (const auto& [k, v] : footer) out += "#" + k + "," + v + "\n";
  return out;
}

std::string table_to_json(const Table& table, const Metadata& metadata, const Metadata& footer) {
  ordered_json out;
  out["metadata"] = metadata_json(metadata);
  out["columns"] = table.columns;
  out["rows"] = table.rows;
  if (!footer.empty()) out["footer"] = metadata_json(footer);
  return out.dump(2) + "\n";
}

std::string certificate_to_json(const SeparableDecomposition& decomposition, const Metadata& parameters) {
  ordered_json out;
  out["parameters"] = metadata_json(parameters);
  out["dim_a"] = decomposition.dim_a;
  out["dim_b"] = decomposition.dim_b;
  out["target_trace"] = decomposition.target_trace;
  out["total_trace"] = decomposition.total_trace();
  out["term_count"] = decomposition.terms.size();
  out["min_weight"] = decomposition.min_weight();
  out["reconstruction_error"] = decomposition.reconstruction_error;
  ordered_json terms = ordered_json::array();
  for (const auto& t : decomposition.terms) {
    ordered_json term;
    term["weight"] = t.weight;
    term["ket_a"] = ket_json(t.ket_a);
    term["ket_b"] = ket_json(t.ket_b);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out.dump(2) + "\n";
}

SeparableDecomposition certificate_from_json(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    SeparableDecomposition out;
    out.dim_a = j.at("dim_a").get<int>();
    out.dim_b = j.at("dim_b").get<int>();
    out.target_trace = j.at("target_trace").get<double>();
    out.reconstruction_error = j.at("reconstruction_error").get<double>();
    for (const auto& t : j.at("terms")) {
      out.terms.push_back(ProductTerm{t.at("weight").get<double>(), ket_from_json(t.at("ket_a")),
                                      ket_from_json(t.at("ket_b"))});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedInput, std::string("malformed certificate: ") + e.what());
  }
}

Table discord_table(const std::vector<DiscordReport>& reports) {
  Table t;
  t.columns = {"lambda", "n_levels", "cutoff", "s_global", "s_local_b", "s_cond_nvec", "p_zero",
               "discord_povm", "discord_photon", "delta"};
  for (const auto& r : reports) {
    t.rows.push_back({r.lambda, static_cast<double>(r.n_levels), static_cast<double>(r.cutoff), r.s_global,
                      r.s_local_b, r.s_cond_nvec, r.p_zero, r.discord_povm, r.discord_photon, r.delta});
  }
  return t;
}

std::string checks_to_text(const std::vector<CheckResult>& checks, const Metadata& metadata) {
  std::ostringstream out;
  out << metadata_header(metadata);
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.passed) ++passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << format_double(c.residual)
        << " tolerance=" << format_double(c.tolerance);
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

std::string checks_to_csv(const std::vector<CheckResult>& checks, const Metadata& metadata) {
  std::string out = metadata_header(metadata) + "name,residual,tolerance,passed,detail\n";
  for (const auto& c : checks) {
    std::string detail;
    for (char ch : c.detail) detail += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    out += c.name + "," + format_double(c.residual) + "," + format_double(c.tolerance) + "," +
           (c.passed ? "1" : "0") + ",\"" + detail + "\"\n";
  }
  return out;
}

std::string checks_to_json(const std::vector<CheckResult>& checks, const Metadata& metadata) {
  ordered_json out;
  out["metadata"] = metadata_json(metadata);
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    list.push_back({{"name", c.name},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  }
  out["checks"] = std::move(list);
  out["all_passed"] = all;
  return out.dump(2) + "\n";
}

}  // namespace cvwerner
