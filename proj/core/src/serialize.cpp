#include "torcap/serialize.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace torcap {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

} // namespace

std::string format_json_double(double v) { return fmt(v, "%.17g"); }
std::string format_csv_double(double v) { return fmt(v, "%.10g"); }

void JsonWriter::key(const std::string& k) {
  if (!first_) body_ << ",";
  first_ = false;
  body_ << '"' << escape(k) << "\":";
}

JsonWriter& JsonWriter::num(const std::string& k, double v) {
  key(k);
  body_ << format_json_double(v);
  return *this;
}
JsonWriter& JsonWriter::integer(const std::string& k, long long v) {
  key(k);
  body_ << v;
  return *this;
}
JsonWriter& JsonWriter::boolean(const std::string& k, bool v) {
  key(k);
  body_ << (v ? "true" : "false");
  return *this;
}
JsonWriter& JsonWriter::str(const std::string& k, const std::string& v) {
  key(k);
  body_ << '"' << escape(v) << '"';
  return *this;
}
JsonWriter& JsonWriter::raw(const std::string& k, const std::string& raw_json) {
  key(k);
  body_ << raw_json;
  return *this;
}
std::string JsonWriter::finish() const { return "{" + body_.str() + "}"; }

std::string json_num_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_json_double(v[i]);
  }
  return out + "]";
}

std::string json_int_array(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ += ",";
    out_ += columns[i];
  }
  out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ",";
    out_ += cells[i];
  }
  out_ += "\n";
}

std::string coeff_array_to_json(const CoeffArray& f,
                                const std::map<std::string, std::string>& meta) {
  std::string values = "[";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) values += ",";
    values += "[" + format_json_double(f.values[i].real()) + "," +
              format_json_double(f.values[i].imag()) + "]";
  }
  values += "]";

  JsonWriter w;
  w.integer("n", static_cast<long long>(f.n));
  w.raw("shape", json_int_array(f.shape));
  w.integer("d", static_cast<long long>(f.d));
  w.raw("values", values);
  if (!meta.empty()) {
    JsonWriter mw;
    for (const auto& [k, v] : meta) mw.raw(k, v);
    w.raw("meta", mw.finish());
  }
  return w.finish();
}

CoeffArray coeff_array_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("coeff file: invalid JSON: ") + e.what());
  }
  const auto n = j.at("n").get<std::size_t>();
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  const auto d = j.at("d").get<std::size_t>();
  CoeffArray f(n, shape, d);
  const auto& vals = j.at("values");
  if (vals.size() != f.values.size())
    throw std::invalid_argument("coeff file: values length != prod(shape)*d");
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const auto& pair = vals[i];
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("coeff file: values entries must be [re, im]");
    f.values[i] = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  return f;
}

std::string kernel_table_to_json(const KernelTable& t) {
  JsonWriter w;
  w.integer("m", static_cast<long long>(t.grid_resolution));
  w.raw("h", json_num_array(t.h_samples));
  w.num("h_diag", t.h_diag);
  w.integer("K", static_cast<long long>(t.truncation_K));
  return w.finish();
}

std::string equilibrium_result_to_json(const EquilibriumResult& r) {
  JsonWriter w;
  w.num("capacity", r.capacity);
  w.num("mass", r.mass);
  w.num("energy", r.energy);
  w.num("residual", r.potential_residual_on_support);
  w.num("violation_fraction", r.constraint_violation_fraction);
  w.integer("iterations", static_cast<long long>(r.iterations));
  w.boolean("converged", r.converged);
  return w.finish();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input path: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace torcap
