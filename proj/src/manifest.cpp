#include "hyperaudit/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperaudit/errors.hpp"

namespace hyperaudit {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

FieldExpr expr_at(const json& v, int dim, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected an expression string");
  return parse_scalar_field(v.get<std::string>(), dim);
}

int index_at(const json& v, int dim, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer index");
  const int k = v.get<int>();
  if (k < 1 || k > dim) throw SchemaError(path, "index out of range 1.." + std::to_string(dim));
  return k - 1;
}

FieldMatrix read_metric(const json& m, int dim) {
  const std::string path = "metric";
  if (!m.is_array() || m.size() != static_cast<std::size_t>(dim))
    throw SchemaError(path, "expected " + std::to_string(dim) + " rows");
  FieldMatrix g(dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    const std::string rpath = child(path, static_cast<std::size_t>(i));
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      throw SchemaError(rpath, "expected " + std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      const std::string epath = child(rpath, static_cast<std::size_t>(j));
      if (e.is_null()) {
        if (j >= i) throw SchemaError(epath, "upper-triangle entries are required");
        continue;
      }
      g(i, j) = expr_at(e, dim, epath);
    }
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j)
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_null()) g(i, j) = g(j, i);
  return g;
}

FieldMatrix read_structure(const json& list, int dim, const std::string& path) {
  if (!list.is_array()) throw SchemaError(path, "expected a list of {i, j, expr}");
  FieldMatrix J(dim);
  std::vector<bool> seen(static_cast<std::size_t>(dim * dim), false);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string epath = child(path, k);
    const json& e = list[k];
    const int i = index_at(require(e, "i", epath), dim, epath + ".i");
    const int j = index_at(require(e, "j", epath), dim, epath + ".j");
    auto slot = static_cast<std::size_t>(i * dim + j);
    if (seen[slot]) throw SchemaError(epath, "duplicate entry");
    seen[slot] = true;
    J(i, j) = expr_at(require(e, "expr", epath), dim, epath + ".expr");
  }
  return J;
}

}  // namespace

ManifoldSpec parse_manifest(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "expected a top-level object");

  ManifoldSpec spec;
  const json& name = require(doc, "name", "");
  if (!name.is_string()) throw SchemaError("name", "expected a string");
  spec.name = name.get<std::string>();

  const json& n = require(doc, "n", "");
  if (!n.is_number_integer() || n.get<int>() < 1) throw SchemaError("n", "expected a positive integer");
  spec.n = n.get<int>();
  const int dim = spec.dim();

  spec.metric = read_metric(require(doc, "metric", ""), dim);
  for (std::size_t a = 0; a < 3; ++a) {
    const std::string key = "J" + std::to_string(a + 1);
    spec.structures[a] = read_structure(require(doc, key, ""), dim, key);
  }

  const json& domain = require(doc, "domain", "");
  if (!domain.is_array()) throw SchemaError("domain", "expected a list of constraint strings");
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (!domain[k].is_string()) throw SchemaError(child("domain", k), "expected a constraint string");
    spec.domain.push_back(parse_constraint(domain[k].get<std::string>(), dim));
  }

  const json& box = require(doc, "box", "");
  if (!box.is_array() || box.size() != static_cast<std::size_t>(dim))
    throw SchemaError("box", "expected " + std::to_string(dim) + " intervals");
  for (std::size_t k = 0; k < box.size(); ++k) {
    const json& iv = box[k];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw SchemaError(child("box", k), "expected [lo, hi]");
    const Interval interval{iv[0].get<double>(), iv[1].get<double>()};
    if (!(interval.lo < interval.hi)) throw SchemaError(child("box", k), "empty interval");
    spec.box.push_back(interval);
  }

  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("metadata", "expected an object of strings");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) throw SchemaError("metadata." + key, "expected a string");
      spec.metadata[key] = value.get<std::string>();
    }
  }

  validate(spec);
  return spec;
}

ManifoldSpec load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace hyperaudit
