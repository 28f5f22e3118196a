#include "qifs/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qifs {

json matrix_to_json(const Mat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Mat matrix_from_json(const json& j) {
  const int n = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
    throw std::invalid_argument("matrix_from_json: row count differs from dim");
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(re[r].size()) != n || static_cast<int>(im[r].size()) != n)
      throw std::invalid_argument("matrix_from_json: column count differs from dim");
    for (int c = 0; c < n; ++c)
      m(r, c) = Cx(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return m;
}

json ket_to_json(const Vec& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return json{{"dim", v.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Vec ket_from_json(const json& j) {
  const int n = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
    throw std::invalid_argument("ket_from_json: size differs from dim");
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = Cx(re[i].get<double>(), im[i].get<double>());
  return v;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  return f;
}

void format_double(std::ostream& os, double v) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());  // dot decimal separator
  ss.precision(17);
  ss << v;
  os << ss.str();
}

}  // namespace

void write_csv_measure(const std::filesystem::path& path, const EmpiricalMeasure& mu) {
  auto f = open_out(path);
  const bool two_d = mu.space != SpaceKind::Interval;
  f << (two_d ? "i,j,weight" : "i,weight");
  if (!mu.counts.empty()) f << ",count";
  f << "\n";
  for (int c = 0; c < mu.n_cells(); ++c) {
    if (two_d)
      f << c / mu.grid << ',' << c % mu.grid << ',';
    else
      f << c << ',';
    format_double(f, mu.weights[c]);
    if (!mu.counts.empty()) f << ',' << mu.counts[c];
    f << "\n";
  }
}

void write_csv_grid(const std::filesystem::path& path, const HusimiGrid& grid) {
  auto f = open_out(path);
  f << "row,col,value\n";
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      f << r << ',' << c << ',';
      format_double(f, grid.values(r, c));
      f << "\n";
    }
}

void write_csv_profile(const std::filesystem::path& path, const std::string& label,
                       const Eigen::VectorXd& values) {
  auto f = open_out(path);
  f << csv_field(label) << ",value\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    f << i << ',';
    format_double(f, values[i]);
    f << "\n";
  }
}

void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const PgmOptions& opt) {
  if (opt.bits != 8 && opt.bits != 16)
    throw std::invalid_argument("write_pgm: bits must be 8 or 16");
  const int maxval = opt.bits == 8 ? 255 : 65535;
  const double peak = values.maxCoeff();
  const double scale = peak > 0 ? maxval / peak : 0.0;
  auto f = open_out(path, opt.binary);
  f << (opt.binary ? "P5" : "P2") << "\n";
  if (!opt.comment.empty()) f << "# " << opt.comment << "\n";
  f << values.cols() << " " << values.rows() << "\n" << maxval << "\n";
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const int v = static_cast<int>(std::lround(std::max(0.0, values(r, c)) * scale));
      const int clipped = std::min(v, maxval);
      if (opt.binary) {
        if (opt.bits == 16) f.put(static_cast<char>(clipped >> 8));
        f.put(static_cast<char>(clipped & 0xff));
      } else {
        f << clipped << (c + 1 == values.cols() ? "" : " ");
      }
    }
    if (!opt.binary) f << "\n";
  }
}

json pgm_sidecar(const Eigen::MatrixXd& values, const PgmOptions& opt) {
  return json{{"format", opt.binary ? "P5" : "P2"},
              {"bits", opt.bits},
              {"max_gray", opt.bits == 8 ? 255 : 65535},
              {"data_max", values.maxCoeff()},
              {"normalization", "gray = round(value / data_max * max_gray)"}};
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  open_out(path) << content;
}

void write_json(const std::filesystem::path& path, const json& j) {
  open_out(path) << j.dump(2) << "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace qifs
