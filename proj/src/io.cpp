#include "nsm/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nsm/error.hpp"

namespace nsm {

namespace {

constexpr const char* kMagic = "nsm-snapshot 1";
const char* const kFieldNames[] = {"v_minus", "v_plus", "E", "B"};

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw Error("bad number '" + s + "' in snapshot");
  return x;
}

void put_le(std::ostream& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.write(buf, 8);
}

double get_le(std::istream& in) {
  char buf[8];
  if (!in.read(buf, 8)) throw Error("snapshot payload truncated");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

nlohmann::json number(double x) {
  // JSON has no infinities; keep them readable
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_series(const std::filesystem::path& path, const std::vector<std::string>& columns,
                  const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw Error("series row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void write_snapshot(const std::filesystem::path& path, const NsmState& s) {
  std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
  const Grid& g = s.grid();
  out << kMagic << '\n'
      << "endianness little\n"
      << "dimension " << g.dimension() << '\n'
      << "N " << g.n() << '\n'
      << "L " << format_double(g.length()) << '\n'
      << "t " << format_double(s.t) << '\n'
      << "fields v_minus v_plus E B\n"
      << "components 3\n"
      << "END\n";
  for (const auto& f : s.fields) {
    for (const cplx z : f.coeffs()) {
      put_le(out, z.real());
      put_le(out, z.imag());
    }
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

NsmState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw Error("not an nsm snapshot: '" + path.string() + "'");
  int dim = 0, n = 0, comps = 0;
  double L = 0.0, t = 0.0;
  std::string endian, fields;
  while (std::getline(in, line) && line != "END") {
    std::istringstream ls(line);
    std::string key, value;
    ls >> key;
    std::getline(ls >> std::ws, value);
    if (key == "endianness") endian = value;
    else if (key == "dimension") dim = std::stoi(value);
    else if (key == "N") n = std::stoi(value);
    else if (key == "L") L = parse_double(value);
    else if (key == "t") t = parse_double(value);
    else if (key == "fields") fields = value;
    else if (key == "components") comps = std::stoi(value);
    else throw Error("unknown snapshot header key '" + key + "'");
  }
  if (line != "END") throw Error("snapshot header is not terminated");
  if (endian != "little") throw Error("unsupported snapshot endianness '" + endian + "'");
  if (fields != "v_minus v_plus E B" || comps != 3) throw Error("unsupported snapshot field layout");
  NsmState s = NsmState::zero(Grid(dim, n, L));
  s.t = t;
  for (auto& f : s.fields) {
    for (cplx& z : f.coeffs()) {
      const double re = get_le(in);
      z = {re, get_le(in)};
    }
  }
  return s;
}

nlohmann::json to_json(const EnergyReport& r) {
  return {{"t", r.t},
          {"kinetic_minus", r.kinetic_minus},
          {"kinetic_plus", r.kinetic_plus},
          {"electric", r.electric},
          {"magnetic", r.magnetic},
          {"viscous_minus", r.viscous_minus},
          {"viscous_plus", r.viscous_plus},
          {"friction", r.friction},
          {"total", r.total()},
          {"initial_total", r.initial_total},
          {"residual", r.residual},
          {"relative_residual", r.relative_residual()}};
}

nlohmann::json to_json(const AprioriReport& r) {
  return {{"t", r.t},
          {"v_sup_l2", r.v_sup_l2},
          {"v_l2_h1dot", r.v_l2_h1dot},
          {"v_l1_h", r.v_l1_h},
          {"e_sup_l2", r.e_sup_l2},
          {"b_sup_l2", r.b_sup_l2},
          {"c0", r.c0},
          {"bound_eb", r.bound_eb},
          {"ratio_eb", r.ratio_eb},
          {"ratio_v", r.ratio_v},
          {"xv", r.xv},
          {"xv_max", r.xv_max}};
}

nlohmann::json to_json(const ThresholdReport& r) {
  return {{"lambda1", r.constants.lambda1},
          {"lambda2", r.constants.lambda2},
          {"C", r.constants.C},
          {"c", r.constants.c},
          {"case", to_string(r.regime)},
          {"threshold", r.threshold},
          {"combined_norm", r.combined_norm},
          {"combined_norm_homogeneous", r.combined_norm_homogeneous},
          {"C0", r.c0},
          {"satisfied", r.satisfied},
          {"xv_bound", r.xv_bound},
          {"T_star", r.t_star ? number(*r.t_star) : nlohmann::json(nullptr)}};
}

nlohmann::json to_json(const RatioStudy& r) {
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  nlohmann::json j = {{"tag", r.tag},
                      {"corpus",
                       {{"family", r.corpus.family},
                        {"dimension", r.corpus.dimension},
                        {"N", r.corpus.n},
                        {"count", r.corpus.count}}},
                      {"retained", r.samples.size()},
                      {"discarded", r.discarded},
                      {"extras", extras}};
  if (!r.samples.empty()) {
    j["max_ratio"] = r.max_ratio();
    j["median_ratio"] = r.median_ratio();
  }
  return j;
}

void write_ratio_study(const std::filesystem::path& path, const RatioStudy& r) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    rows.push_back({static_cast<double>(i), s.lhs, s.rhs, s.ratio});
  }
  write_series(path, {"sample", "lhs", "rhs", "ratio"}, rows);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace nsm
