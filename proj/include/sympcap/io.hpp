#pragma once

// File formats owned by the command-line front end:
//
//   * MatrixFile: JSON {"n": int, "entries": row-major 2n x 2n (flat or
//     nested), "hbar": optional, "level": optional}.
//   * WavefunctionFile: CSV with a "# hbar=<value>" metadata line, header
//     "x,re,im", uniformly spaced x column.
//   * Grid emission: CSV "x,p,value" rows in row-major order plus a JSON
//     sidecar <path>.meta.json with the axis metadata.
//   * Report: JSON with sorted keys and fixed "%.12e" float formatting, so
//     identical inputs produce identical bytes.
//
// Parsing uses nlohmann/json; emission is a small ordered writer because the
// report contract pins the exact float formatting.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sympcap/grid.hpp"
#include "sympcap/types.hpp"

namespace sympcap::io {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw NumericalError("report: non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

/// strtod with validation; underflow to zero or a subnormal is accepted
/// (std::stod would throw on it), overflow is rejected.
inline double parse_double(const std::string& cell, const std::string& context) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin)
    throw ValidationError(context + ": cannot parse number \"" + cell + "\"");
  if (std::isinf(v) || std::isnan(v))
    throw ValidationError(context + ": number out of range \"" + cell + "\"");
  return v;
}

// ---------------------------------------------------------------------------
// Deterministic JSON emitter. Objects keep keys sorted (std::map), floats are
// always "%.12e".

class Json {
 public:
  Json() : kind_(Kind::Null) {}
  static Json object() { return Json(Kind::Object); }
  static Json array() { return Json(Kind::Array); }
  Json(bool b) : kind_(Kind::Bool), bool_(b) {}
  Json(int i) : kind_(Kind::Int), int_(i) {}
  Json(long long i) : kind_(Kind::Int), int_(i) {}
  Json(Eigen::Index i) : kind_(Kind::Int), int_(i) {}
  Json(double v) : kind_(Kind::Real), real_(v) {}
  Json(const char* s) : kind_(Kind::String), str_(s) {}
  Json(std::string s) : kind_(Kind::String), str_(std::move(s)) {}

  Json& operator[](const std::string& key) {
    kind_ = Kind::Object;
    return object_[key];
  }
  void push_back(Json v) {
    kind_ = Kind::Array;
    array_.push_back(std::move(v));
  }

  static Json from_vector(const Vector& v) {
    Json a = array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
  }
  static Json from_matrix(const Matrix& m) {
    Json rows = array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::string dump(int indent = 0) const {
    std::ostringstream out;
    write(out, indent);
    return out.str();
  }

 private:
  enum class Kind { Null, Bool, Int, Real, String, Array, Object };
  explicit Json(Kind k) : kind_(k) {}

  static void write_escaped(std::ostream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
      switch (c) {
        case '"': out << "\\\""; break;
        case '\\': out << "\\\\"; break;
        case '\n': out << "\\n"; break;
        case '\t': out << "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out << buf;
          } else {
            out << c;
          }
      }
    }
    out << '"';
  }

  void write(std::ostream& out, int indent) const {
    const std::string pad(static_cast<std::size_t>(2 * indent), ' ');
    const std::string pad_in(static_cast<std::size_t>(2 * (indent + 1)), ' ');
    switch (kind_) {
      case Kind::Null: out << "null"; break;
      case Kind::Bool: out << (bool_ ? "true" : "false"); break;
      case Kind::Int: out << int_; break;
      case Kind::Real: out << format_double(real_); break;
      case Kind::String: write_escaped(out, str_); break;
      case Kind::Array: {
        if (array_.empty()) {
          out << "[]";
          break;
        }
        out << "[\n";
        for (std::size_t i = 0; i < array_.size(); ++i) {
          out << pad_in;
          array_[i].write(out, indent + 1);
          out << (i + 1 < array_.size() ? ",\n" : "\n");
        }
        out << pad << ']';
        break;
      }
      case Kind::Object: {
        if (object_.empty()) {
          out << "{}";
          break;
        }
        out << "{\n";
        std::size_t i = 0;
        for (const auto& [key, value] : object_) {
          out << pad_in;
          write_escaped(out, key);
          out << ": ";
          value.write(out, indent + 1);
          out << (++i < object_.size() ? ",\n" : "\n");
        }
        out << pad << '}';
        break;
      }
    }
  }

  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double real_ = 0.0;
  std::string str_;
  std::vector<Json> array_;
  std::map<std::string, Json> object_;
};

// ---------------------------------------------------------------------------
// Matrix files.

struct MatrixFile {
  Eigen::Index n = 0;
  Matrix entries;
  double hbar = 1.0;
  double level = 1.0;
};

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  MatrixFile out;
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ValidationError(path + ": field \"n\" must be a positive integer");
  out.n = j["n"].get<Eigen::Index>();
  const Eigen::Index dim = 2 * out.n;
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ValidationError(path + ": field \"entries\" must be an array");

  std::vector<double> flat;
  for (const auto& item : j["entries"]) {
    if (item.is_array())
      for (const auto& cell : item) flat.push_back(cell.get<double>());
    else
      flat.push_back(item.get<double>());
  }
  if (flat.size() != static_cast<std::size_t>(dim * dim))
    throw ValidationError(path + ": entries must hold (2n)^2 = " + std::to_string(dim * dim) +
                          " values, got " + std::to_string(flat.size()));
  out.entries.resize(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out.entries(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
  require_finite(out.entries, path.c_str());

  if (j.contains("hbar")) out.hbar = j["hbar"].get<double>();
  if (j.contains("level")) out.level = j["level"].get<double>();
  if (!(out.hbar > 0)) throw ValidationError(path + ": hbar must be positive");
  return out;
}

// ---------------------------------------------------------------------------
// Wavefunction CSV.

inline SampledWavefunction read_wavefunction_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open wavefunction file: " + path);
  double hbar = 1.0;
  bool saw_header = false;
  std::vector<double> xs;
  std::vector<std::complex<double>> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("hbar=");
      if (pos != std::string::npos) hbar = parse_double(line.substr(pos + 5), path);
      continue;
    }
    if (!saw_header) {
      if (line.rfind("x,re,im", 0) != 0)
        throw ValidationError(path + ": expected header \"x,re,im\"");
      saw_header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    double parts[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, cell, ','))
        throw ValidationError(path + ": malformed row \"" + line + "\"");
      parts[i] = parse_double(cell, path);
    }
    xs.push_back(parts[0]);
    values.emplace_back(parts[1], parts[2]);
  }
  if (xs.size() < 2) throw ValidationError(path + ": too few samples");

  const double dx = xs[1] - xs[0];
  if (!(dx > 0)) throw ValidationError(path + ": x column must increase");
  for (std::size_t j = 1; j < xs.size(); ++j)
    if (std::abs(xs[j] - xs[j - 1] - dx) > 1e-9 * std::abs(dx))
      throw ValidationError(path + ": x column is not uniformly spaced");

  SampledWavefunction psi;
  psi.values.resize(static_cast<Eigen::Index>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j)
    psi.values(static_cast<Eigen::Index>(j)) = values[j];
  psi.x0 = xs[0];
  psi.dx = dx;
  psi.hbar = hbar;
  validate(psi, path.c_str());
  return psi;
}

inline void write_wavefunction_csv(const std::string& path, const SampledWavefunction& psi) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write wavefunction file: " + path);
  out << "# hbar=" << format_double(psi.hbar) << "\n";
  out << "x,re,im\n";
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    out << format_double(psi.coord(j)) << ',' << format_double(psi.values(j).real()) << ','
        << format_double(psi.values(j).imag()) << "\n";
}

// ---------------------------------------------------------------------------
// Grid emission: CSV plus sidecar. The value column carries the real part or
// the modulus, recorded in the sidecar's "content" field.

inline void write_grid_csv(const std::string& path, const PhaseSpaceGrid& grid,
                           const std::string& content = "re") {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write grid file: " + path);
  out << "x,p,value\n";
  for (Eigen::Index i = 0; i < grid.x_axis.count; ++i) {
    for (Eigen::Index k = 0; k < grid.p_axis.count; ++k) {
      const double value = content == "abs" ? std::abs(grid.values(i, k))
                                            : grid.values(i, k).real();
      out << format_double(grid.x_axis.coord(i)) << ',' << format_double(grid.p_axis.coord(k))
          << ',' << format_double(value) << "\n";
    }
  }
  out.close();

  // Axis metadata carries full precision (%.17g) so a parsed grid re-emits
  // the exact same coordinate bytes.
  const auto precise = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ofstream side(path + ".meta.json");
  if (!side) throw ValidationError("cannot write grid sidecar: " + path + ".meta.json");
  side << "{\n"
       << "  \"content\": \"" << content << "\",\n"
       << "  \"dp\": " << precise(grid.p_axis.step) << ",\n"
       << "  \"dx\": " << precise(grid.x_axis.step) << ",\n"
       << "  \"hbar\": " << precise(grid.hbar) << ",\n"
       << "  \"np\": " << grid.p_axis.count << ",\n"
       << "  \"nx\": " << grid.x_axis.count << ",\n"
       << "  \"p0\": " << precise(grid.p_axis.origin) << ",\n"
       << "  \"x0\": " << precise(grid.x_axis.origin) << "\n"
       << "}\n";
}

inline PhaseSpaceGrid read_grid_csv(const std::string& path) {
  std::ifstream side_in(path + ".meta.json");
  if (!side_in) throw ValidationError("cannot open grid sidecar: " + path + ".meta.json");
  nlohmann::json meta;
  try {
    side_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed grid sidecar for " + path + ": " + e.what());
  }
  PhaseSpaceGrid grid;
  grid.x_axis = {meta.at("x0").get<double>(), meta.at("dx").get<double>(),
                 meta.at("nx").get<Eigen::Index>()};
  grid.p_axis = {meta.at("p0").get<double>(), meta.at("dp").get<double>(),
                 meta.at("np").get<Eigen::Index>()};
  grid.hbar = meta.at("hbar").get<double>();
  grid.values.resize(grid.x_axis.count, grid.p_axis.count);

  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open grid file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,p,value", 0) != 0)
    throw ValidationError(path + ": expected header \"x,p,value\"");
  for (Eigen::Index i = 0; i < grid.x_axis.count; ++i) {
    for (Eigen::Index k = 0; k < grid.p_axis.count; ++k) {
      if (!std::getline(in, line))
        throw ValidationError(path + ": truncated grid (missing rows)");
      std::istringstream row(line);
      std::string cell;
      double parts[3];
      for (int c = 0; c < 3; ++c) {
        if (!std::getline(row, cell, ','))
          throw ValidationError(path + ": malformed row \"" + line + "\"");
        parts[c] = parse_double(cell, path);
      }
      grid.values(i, k) = parts[2];
    }
  }
  return grid;
}

}  // namespace sympcap::io
