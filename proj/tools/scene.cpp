#include "scene.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rhol/error.hpp"

namespace rhol::cli {

namespace {

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + ": number is not finite");
  return x;
}

long whole_number(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<long>();
  const double x = finite_number(v, where);
  if (x != std::floor(x) || std::abs(x) > 1e15) throw SchemaError(where + ": expected an integer");
  return static_cast<long>(x);
}

std::string quote_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

cplx as_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {finite_number(v, where), 0.0};
  if (v.is_array() && v.size() == 2) return {finite_number(v[0], where + "[0]"), finite_number(v[1], where + "[1]")};
  throw SchemaError(where + ": expected a number or [re, im]");
}

Params::Params(const json& obj, std::string path) : obj_(&obj), path_(std::move(path)) {
  if (!obj.is_object()) throw SchemaError(path_ + ": expected an object");
}

bool Params::has(const std::string& key) const { return obj_->contains(key); }

const json& Params::at(const std::string& key) const {
  if (!obj_->contains(key)) throw SchemaError(path_ + "." + key + ": missing");
  used_.insert(key);
  return (*obj_)[key];
}

double Params::number(const std::string& key) const { return finite_number(at(key), path_ + "." + key); }
double Params::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }
long Params::integer(const std::string& key) const { return whole_number(at(key), path_ + "." + key); }
long Params::integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

bool Params::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_boolean()) throw SchemaError(path_ + "." + key + ": expected true or false");
  return v.get<bool>();
}

std::string Params::string(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_string()) throw SchemaError(path_ + "." + key + ": expected a string");
  return v.get<std::string>();
}

cplx Params::complex(const std::string& key) const { return as_complex(at(key), path_ + "." + key); }
cplx Params::complex(const std::string& key, cplx fallback) const { return has(key) ? complex(key) : fallback; }

std::vector<cplx> Params::complex_list(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw SchemaError(path_ + "." + key + ": expected a list");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_complex(v[i], path_ + "." + key + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> Params::number_list(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw SchemaError(path_ + "." + key + ": expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(finite_number(v[i], path_ + "." + key + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<long> Params::integer_list(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw SchemaError(path_ + "." + key + ": expected a list");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(whole_number(v[i], path_ + "." + key + "[" + std::to_string(i) + "]"));
  return out;
}

Params Params::object(const std::string& key) const { return Params(at(key), path_ + "." + key); }

std::vector<Params> Params::object_list(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw SchemaError(path_ + "." + key + ": expected a list");
  std::vector<Params> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], path_ + "." + key + "[" + std::to_string(i) + "]");
  return out;
}

void Params::finish() const {
  for (const auto& [key, value] : obj_->items()) {
    if (!used_.count(key)) throw SchemaError(path_ + "." + key + ": unknown key");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table::Row& Table::Row::operator<<(double v) {
  cells_.push_back(format_double(v));
  return *this;
}

Table::Row& Table::Row::operator<<(long v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

Table::Row& Table::Row::operator<<(cplx v) {
  cells_.push_back(format_double(v.real()));
  cells_.push_back(format_double(v.imag()));
  return *this;
}

Table::Row& Table::Row::operator<<(const std::string& v) {
  cells_.push_back(quote_cell(v));
  return *this;
}

Table::Row& Table::row() {
  rows_.emplace_back();
  return rows_.back();
}

std::string Table::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  };
  std::vector<std::string> head;
  for (const std::string& h : header_) head.push_back(quote_cell(h));
  line(head);
  for (const Row& r : rows_) line(r.cells_);
  return out;
}

Scene parse_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  Params top(doc, "scene");
  Scene scene;
  scene.command = top.string("command");
  scene.output_prefix = top.string("output_prefix");
  if (scene.output_prefix.empty()) throw SchemaError("scene.output_prefix: must not be empty");
  scene.params = json::object();
  scene.tolerances = json::object();
  if (top.has("params")) {
    top.object("params");
    scene.params = doc["params"];
  }
  if (top.has("tolerances")) {
    top.object("tolerances");
    scene.tolerances = doc["tolerances"];
  }
  top.finish();
  return scene;
}

int run_scene_file(const std::string& path, bool validate_only, std::ostream& err) {
  Job job;
  Scene scene;
  try {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read scene file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    scene = parse_scene(text.str());
    job = prepare(scene);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return 2;
  }
  if (validate_only) return 0;

  Artifacts out;
  try {
    out = job();
  } catch (const NumericError& e) {
    err << e.what() << '\n';
    return 3;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  const std::filesystem::path prefix(scene.output_prefix);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  for (const auto& [suffix, bytes] : out.files) {
    std::ofstream f(scene.output_prefix + suffix, std::ios::binary);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
      err << "io error: cannot write " << scene.output_prefix + suffix << '\n';
      return 3;
    }
  }
  return 0;
}

}  // namespace rhol::cli
