#include "quadext/instance_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace quadext {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool is_flat(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void dump(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_number_float()) {
    out += format_number(j.get<double>());
  } else if (j.is_primitive()) {
    out += j.dump();
  } else if (j.is_array() && is_flat(j)) {
    out += '[';
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ", ";
      first = false;
      dump(e, depth + 1, out);
    }
    out += ']';
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump(j[i], depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close_pad + ']';
  } else {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      dump(value, depth + 1, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += close_pad + '}';
  }
}

std::string dump(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string(what) + ": malformed JSON: " + e.what());
  }
}

const Json& field(const Json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key))
    throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  return doc[key];
}

void check_format(const Json& doc, const char* what) {
  const Json& f = field(doc, "format", what);
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion)
    throw InvalidInput(std::string(what) + ": unsupported \"format\" (expected 1)");
}

Matrix json_to_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* name) {
  const auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << name << ": " << why << " (expected " << rows << "x" << cols << " numeric array)";
    throw InvalidInput(os.str());
  };
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) fail("wrong number of rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("wrong row length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) fail("non-numeric entry");
      m(i, c) = e.get<double>();
    }
  }
  return m;
}

Eigen::Index json_rows(const Json& j, const char* name) {
  if (!j.is_array() || j.empty()) throw InvalidInput(std::string(name) + ": expected a non-empty array of rows");
  return static_cast<Eigen::Index>(j.size());
}

template <typename Make>
auto named(const char* name, Make make) {
  try {
    return make();
  } catch (const Error& e) {
    throw InvalidInput(std::string(name) + ": " + e.what());
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string serialize_instance(const TwoEllipsoidSpace& space, const QuadOnSubspace& quad) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["dim"] = space.dim();
  doc["pi1"] = matrix_to_json(space.pi1().matrix());
  doc["pi2"] = matrix_to_json(space.pi2().matrix());
  doc["subspace_basis"] = matrix_to_json(quad.subspace().basis());
  doc["form"] = matrix_to_json(quad.form().matrix());
  return dump(doc);
}

Instance parse_instance(const std::string& text) {
  const char* what = "instance file";
  const Json doc = parse_json(text, what);
  check_format(doc, what);
  const Json& dim = field(doc, "dim", what);
  if (!dim.is_number_integer() || dim.get<long long>() < 1)
    throw InvalidInput("instance file: \"dim\" must be a positive integer");
  const auto n = static_cast<Eigen::Index>(dim.get<long long>());

  const Matrix pi1 = json_to_matrix(field(doc, "pi1", what), n, n, "pi1");
  const Matrix pi2 = json_to_matrix(field(doc, "pi2", what), n, n, "pi2");
  const Json& basis_json = field(doc, "subspace_basis", what);
  const Eigen::Index k = json_rows(basis_json, "subspace_basis");
  if (k > n) throw InvalidInput("subspace_basis: more rows than dim");
  const Matrix basis = json_to_matrix(basis_json, k, n, "subspace_basis");
  const Matrix form = json_to_matrix(field(doc, "form", what), k, k, "form");

  TwoEllipsoidSpace space(named("pi1", [&] { return InnerProduct(SymForm(pi1)); }),
                          named("pi2", [&] { return InnerProduct(SymForm(pi2)); }));
  QuadOnSubspace quad(named("subspace_basis", [&] { return Subspace(n, basis); }),
                      named("form", [&] { return SymForm(form); }));
  return {std::move(space), std::move(quad)};
}

std::string serialize_extension(const ExtensionReport& report) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["dim"] = report.extended.dim();
  doc["extended"] = matrix_to_json(report.extended.matrix());
  doc["original_norm"] = report.original_norm.value;
  doc["extended_norm"] = report.extended_norm.value;
  doc["agreement_residual"] = report.agreement_residual;
  doc["certificate"] = {{"alpha", report.extended_norm.certificate.alpha},
                        {"beta", report.extended_norm.certificate.beta},
                        {"scale", report.extended_norm.value}};
  Json steps = Json::array();
  for (const StepSummary& s : report.steps) {
    steps.push_back({{"dim", s.dim},
                     {"scale", s.scale},
                     {"alpha", s.alpha},
                     {"beta", s.beta},
                     {"phi_z", s.phi_z},
                     {"dims_y", {s.dim_y1, s.dim_y2, s.dim_y3, s.dim_y4}},
                     {"dims_m", {s.dim_m1, s.dim_m2}},
                     {"intersection_dim", s.intersection_dim}});
  }
  doc["steps"] = std::move(steps);
  return dump(doc);
}

ExtensionFile parse_extension(const std::string& text) {
  const char* what = "extension file";
  const Json doc = parse_json(text, what);
  check_format(doc, what);
  const Json& extended = field(doc, "extended", what);
  const Eigen::Index n = json_rows(extended, "extended");
  ExtensionFile out;
  out.extended = json_to_matrix(extended, n, n, "extended");
  if (!out.extended.allFinite()) throw InvalidInput("extended: non-finite entry");
  const Json& orig = field(doc, "original_norm", what);
  const Json& ext = field(doc, "extended_norm", what);
  if (!orig.is_number() || !ext.is_number()) throw InvalidInput("extension file: norms must be numeric");
  out.original_norm = orig.get<double>();
  out.extended_norm = ext.get<double>();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace quadext
