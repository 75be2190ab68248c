#include "ripl/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ripl {

namespace {

constexpr char kMagic[8] = {'R', 'I', 'P', 'L', 'M', 'A', 'T', '1'};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      fail(ErrorCode::CorruptFile, "bad CSV field '" + field + "'");
    }
  }
  return out;
}

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::CorruptFile, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_csv_line(line));
    require(rows.back().size() == rows.front().size(), ErrorCode::CorruptFile,
            "ragged CSV rows in " + path.string());
  }
  require(!rows.empty(), ErrorCode::CorruptFile, "empty CSV file " + path.string());
  return rows;
}

void put_u32_le(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_f64_le(std::vector<unsigned char>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32_le(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return std::bit_cast<double>(v);
}

}  // namespace

void write_complex_csv(const std::filesystem::path& path, const cmat& A) {
  std::string out;
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (j) out += ',';
      out += format_double(A(i, j).real());
      out += ',';
      out += format_double(A(i, j).imag());
    }
    out += '\n';
  }
  atomic_write(path, out);
}

cmat read_complex_csv(const std::filesystem::path& path) {
  const auto rows = read_csv_rows(path);
  require(rows.front().size() % 2 == 0, ErrorCode::CorruptFile,
          "complex CSV needs an even field count (re,im pairs)");
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.front().size() / 2);
  cmat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = std::complex<double>(rows[i][2 * j], rows[i][2 * j + 1]);
  return A;
}

void write_real_csv(const std::filesystem::path& path, const rmat& A) {
  std::string out;
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (j) out += ',';
      out += format_double(A(i, j));
    }
    out += '\n';
  }
  atomic_write(path, out);
}

rmat read_real_csv(const std::filesystem::path& path) {
  const auto rows = read_csv_rows(path);
  rmat A(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j) A(i, j) = rows[i][j];
  return A;
}

void write_complex_binary(const std::filesystem::path& path, const cmat& A) {
  std::vector<unsigned char> out;
  out.insert(out.end(), kMagic, kMagic + 8);
  put_u32_le(out, static_cast<std::uint32_t>(A.rows()));
  put_u32_le(out, static_cast<std::uint32_t>(A.cols()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      put_f64_le(out, A(i, j).real());
      put_f64_le(out, A(i, j).imag());
    }
  atomic_write(path, out);
}

cmat read_complex_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::CorruptFile, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  require(bytes.size() >= 16 && std::memcmp(bytes.data(), kMagic, 8) == 0,
          ErrorCode::UnsupportedFormat, "missing matrix magic in " + path.string());
  const std::uint32_t rows = get_u32_le(bytes.data() + 8);
  const std::uint32_t cols = get_u32_le(bytes.data() + 12);
  const std::size_t need = 16 + static_cast<std::size_t>(rows) * cols * 16;
  require(bytes.size() == need, ErrorCode::CorruptFile, "truncated matrix file " + path.string());
  cmat A(rows, cols);
  const unsigned char* p = bytes.data() + 16;
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) {
      A(i, j) = std::complex<double>(get_f64_le(p), get_f64_le(p + 8));
      p += 16;
    }
  return A;
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::CorruptFile, "cannot open " + path.string());
  std::string magic;
  in >> magic;
  require(magic == "P5", ErrorCode::UnsupportedFormat, "only binary PGM (P5) is supported");

  auto next_int = [&in, &path]() {
    // skip whitespace and '#' comment lines
    for (;;) {
      const int c = in.peek();
      require(c != EOF, ErrorCode::CorruptFile, "truncated PGM header in " + path.string());
      if (c == '#') {
        std::string comment;
        std::getline(in, comment);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    int v = 0;
    in >> v;
    require(in.good(), ErrorCode::CorruptFile, "bad PGM header in " + path.string());
    return v;
  };

  PgmImage img;
  img.width = next_int();
  img.height = next_int();
  img.maxval = next_int();
  require(img.width >= 1 && img.height >= 1, ErrorCode::CorruptFile, "bad PGM dimensions");
  require(img.maxval >= 1 && img.maxval <= 65535, ErrorCode::UnsupportedFormat,
          "PGM maxval must lie in 1..65535");
  in.get();  // single whitespace after maxval

  const bool wide = img.maxval > 255;  // 16-bit samples, big-endian per the standard
  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  std::vector<unsigned char> raw(count * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  require(static_cast<std::size_t>(in.gcount()) == raw.size(), ErrorCode::CorruptFile,
          "truncated PGM pixel data in " + path.string());

  img.pixels = rvec(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int v = wide ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
    img.pixels[static_cast<int>(i)] = static_cast<double>(v) / img.maxval;
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const PgmImage& image) {
  require(image.pixels.size() == static_cast<long>(image.width) * image.height,
          ErrorCode::DimensionMismatch, "pixel count does not match dimensions");
  const bool wide = image.maxval > 255;
  std::vector<unsigned char> out;
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n" + std::to_string(image.maxval) +
                             "\n";
  out.insert(out.end(), header.begin(), header.end());
  for (int i = 0; i < image.pixels.size(); ++i) {
    const double clamped = std::min(1.0, std::max(0.0, image.pixels[i]));
    const int v = static_cast<int>(std::lround(clamped * image.maxval));
    if (wide) {
      out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
      out.push_back(static_cast<unsigned char>(v & 0xff));
    } else {
      out.push_back(static_cast<unsigned char>(v & 0xff));
    }
  }
  atomic_write(path, out);
}

namespace {

void atomic_write_impl(const std::filesystem::path& path, const void* data, std::size_t size) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::CorruptFile, "cannot write " + tmp.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    require(out.good(), ErrorCode::CorruptFile, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  atomic_write_impl(path, content.data(), content.size());
}

void atomic_write(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  atomic_write_impl(path, bytes.data(), bytes.size());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const SparsityPattern& p) {
  return json{{"s", p.budgets()}, {"M", p.boundaries()}};
}

json to_json(const RatioConstant& eta) {
  json j{{"infinite", eta.infinite}};
  if (!eta.infinite) {
    j["num"] = eta.num;
    j["den"] = eta.den;
    j["value"] = eta.value();
  }
  return j;
}

json to_json(const CertificateReport& r) {
  json j{{"kind", to_string(r.kind)},       {"method", to_string(r.method)},
         {"value", r.value},                {"is_lower_bound", r.is_lower_bound},
         {"satisfied", r.satisfied},        {"work", r.work}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness_support) j["witness_support"] = *r.witness_support;
  if (r.witness_vector) {
    json v = json::array();
    for (int i = 0; i < r.witness_vector->size(); ++i)
      v.push_back({(*r.witness_vector)[i].real(), (*r.witness_vector)[i].imag()});
    j["witness_vector"] = v;
  }
  return j;
}

json to_json(const FlipReport& r) {
  return json{{"perm_index", r.permutation_index},
              {"perm_kind", r.permutation_kind},
              {"perm_seed", r.permutation_seed},
              {"err_original_l1", r.err_original_l1},
              {"err_original_l2", r.err_original_l2},
              {"err_flipped_l1", r.err_flipped_l1},
              {"err_flipped_l2", r.err_flipped_l2},
              {"iterations_original", r.iterations_original},
              {"iterations_flipped", r.iterations_flipped},
              {"converged_original", r.converged_original},
              {"converged_flipped", r.converged_flipped}};
}

json to_json(const SweepSummary& s) {
  return json{{"count", s.count},
              {"max", s.max_err},
              {"min", s.min_err},
              {"mean", s.mean_err},
              {"stddev", s.stddev_err}};
}

json to_json(const ClaimCheck& c) {
  json j{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"expected", c.expected}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

json to_json(const VerificationReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  return json{{"instance", r.instance}, {"all_pass", r.all_pass}, {"claims", claims}};
}

json to_json(const CounterexampleInstance& inst) {
  json j{{"name", inst.name},
         {"rows", inst.U.rows()},
         {"cols", inst.U.cols()},
         {"pattern", to_json(inst.pattern)},
         {"claims", inst.claims}};
  j["params"] = {{"a", inst.params.a},     {"C", inst.params.C},
                 {"rho", inst.params.rho}, {"tau", inst.params.tau},
                 {"lambda", inst.params.lambda}, {"omega", inst.params.omega}};
  return j;
}

}  // namespace ripl
