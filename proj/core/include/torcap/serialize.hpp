#pragma once

#include "torcap/capacity.hpp"
#include "torcap/coeffs.hpp"
#include "torcap/kernels.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace torcap {

// Contract: floats carry 17 significant digits in JSON, 10 in CSV, written
// locale-independently. Writers emit keys in insertion order so reruns are
// byte-identical.
std::string format_json_double(double v);
std::string format_csv_double(double v);

class JsonWriter {
public:
  JsonWriter& num(const std::string& key, double v);
  JsonWriter& integer(const std::string& key, long long v);
  JsonWriter& boolean(const std::string& key, bool v);
  JsonWriter& str(const std::string& key, const std::string& v);
  JsonWriter& raw(const std::string& key, const std::string& raw_json);
  std::string finish() const;

private:
  void key(const std::string& k);
  std::ostringstream body_;
  bool first_ = true;
};

std::string json_num_array(const std::vector<double>& v);
std::string json_int_array(const std::vector<std::size_t>& v);

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  std::string cell(double v) const { return format_csv_double(v); }
  const std::string& text() const { return out_; }

private:
  std::size_t width_;
  std::string out_;
};

// CoeffArray file format:
//   {"n": int, "shape": [..], "d": int, "values": [[re, im], ...]}
// values row-major in alpha, the d components of one coefficient adjacent.
// An optional "meta" object is preserved for provenance (seed, decay, norm).
std::string coeff_array_to_json(const CoeffArray& f,
                                const std::map<std::string, std::string>& meta = {});
CoeffArray coeff_array_from_json(const std::string& text);

std::string kernel_table_to_json(const KernelTable& t);

std::string equilibrium_result_to_json(const EquilibriumResult& r);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace torcap
