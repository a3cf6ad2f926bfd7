#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rhol/moebius.hpp"

namespace rhol::cli {

using json = nlohmann::json;

/// Scene does not match the schema (exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed access to a JSON object. Every key read is recorded; finish()
/// rejects the keys nobody asked for.
class Params {
 public:
  Params(const json& obj, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  /// A number or [re, im].
  cplx complex(const std::string& key) const;
  cplx complex(const std::string& key, cplx fallback) const;
  std::vector<cplx> complex_list(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
  std::vector<long> integer_list(const std::string& key) const;
  Params object(const std::string& key) const;
  std::vector<Params> object_list(const std::string& key) const;
  const json& raw(const std::string& key) const { return at(key); }

  void finish() const;
  const std::string& path() const { return path_; }

 private:
  const json& at(const std::string& key) const;

  const json* obj_;
  std::string path_;
  mutable std::set<std::string> used_;
};

cplx as_complex(const json& v, const std::string& where);

/// RFC-4180 table with a header row; doubles print with 17 significant digits.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row {
   public:
    Row& operator<<(double v);
    Row& operator<<(long v);
    Row& operator<<(int v) { return *this << static_cast<long>(v); }
    Row& operator<<(std::size_t v) { return *this << static_cast<long>(v); }
    Row& operator<<(bool v) { return *this << static_cast<long>(v); }
    Row& operator<<(cplx v);  // two cells
    Row& operator<<(const std::string& v);
    Row& operator<<(const char* v) { return *this << std::string(v); }

   private:
    friend class Table;
    std::vector<std::string> cells_;
  };

  Row& row();
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

std::string format_double(double v);

/// Files a command produces, keyed by suffix (".csv", "_summary.csv", ".ppm").
struct Artifacts {
  std::map<std::string, std::string> files;
};

struct Scene {
  std::string command;
  std::string output_prefix;
  json params;
  json tolerances;
};

/// Parses top-level structure; throws SchemaError.
Scene parse_scene(const std::string& text);

/// A validated command, ready to run.
using Job = std::function<Artifacts()>;

/// Validates the params of `scene` and returns the job. Throws SchemaError.
Job prepare(const Scene& scene);

const std::vector<std::string>& command_names();

/// Full CLI behaviour on one scene file: exit 0, 2 (schema) or 3 (numeric).
/// Diagnostics go to `err`.
int run_scene_file(const std::string& path, bool validate_only, std::ostream& err);

}  // namespace rhol::cli
