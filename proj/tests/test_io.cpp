#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ripl/io.hpp"
#include "ripl/rng.hpp"

using namespace ripl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ripl_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("complex csv round trip") {
  TempDir tmp;
  Rng rng(81);
  cmat A(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      A(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  const auto p = tmp.path / "a.csv";
  write_complex_csv(p, A);
  const cmat B = read_complex_csv(p);
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);  // 17 digits reproduce doubles
}

TEST_CASE("real csv reads plain matrices") {
  TempDir tmp;
  const auto p = tmp.path / "i.csv";
  atomic_write(p, std::string("1,0\n0,1\n"));
  const rmat I = read_real_csv(p);
  CHECK(I.rows() == 2);
  CHECK((I - rmat::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("binary matrix format is bit exact") {
  TempDir tmp;
  Rng rng(82);
  cmat A(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j)
      A(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  const auto p = tmp.path / "a.mat";
  write_complex_binary(p, A);
  const cmat B = read_complex_binary(p);
  REQUIRE(B.rows() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(A(i, j).real() == B(i, j).real());
      CHECK(A(i, j).imag() == B(i, j).imag());
    }

  // header size sanity: 16 bytes + 5*2*16 payload
  CHECK(fs::file_size(p) == 16 + 5 * 2 * 16);

  // corrupted magic is rejected
  const auto bad = tmp.path / "bad.mat";
  atomic_write(bad, std::string("NOTAMATRIXFILE--"));
  CHECK_THROWS_WITH_AS(read_complex_binary(bad), doctest::Contains("UnsupportedFormat"), Error);
}

TEST_CASE("pgm ingestion") {
  TempDir tmp;
  const auto p = tmp.path / "img.pgm";
  const unsigned char bytes[] = {0, 255, 255, 0};
  std::string content = "P5\n# comment\n2 2\n255\n";
  content.append(reinterpret_cast<const char*>(bytes), 4);
  atomic_write(p, content);

  const PgmImage img = read_pgm(p);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels[0] == 0.0);
  CHECK(img.pixels[1] == 1.0);
  CHECK(img.pixels[2] == 1.0);
  CHECK(img.pixels[3] == 0.0);

  // 16-bit samples are big-endian
  const auto p16 = tmp.path / "img16.pgm";
  const unsigned char wide[] = {0x01, 0x00, 0x00, 0x02};
  std::string content16 = "P5\n1 2\n65535\n";
  content16.append(reinterpret_cast<const char*>(wide), 4);
  atomic_write(p16, content16);
  const PgmImage img16 = read_pgm(p16);
  CHECK(img16.pixels[0] == doctest::Approx(256.0 / 65535.0).epsilon(1e-12));
  CHECK(img16.pixels[1] == doctest::Approx(2.0 / 65535.0).epsilon(1e-12));

  // round trip through the writer
  const auto out = tmp.path / "out.pgm";
  write_pgm(out, img);
  const PgmImage back = read_pgm(out);
  CHECK((back.pixels - img.pixels).cwiseAbs().maxCoeff() == 0.0);

  const auto p2 = tmp.path / "ascii.pgm";
  atomic_write(p2, std::string("P2\n2 2\n255\n0 1 2 3\n"));
  CHECK_THROWS_WITH_AS(read_pgm(p2), doctest::Contains("UnsupportedFormat"), Error);
}

TEST_CASE("atomic writes leave no temporary behind") {
  TempDir tmp;
  const auto p = tmp.path / "x.txt";
  atomic_write(p, std::string("hello"));
  CHECK(fs::exists(p));
  CHECK_FALSE(fs::exists(tmp.path / "x.txt.tmp"));
  std::ifstream in(p);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "hello");
}

TEST_CASE("config hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
  CHECK(fnv1a_hex("ripl") == fnv1a_hex("ripl"));
}

TEST_CASE("reports serialize with their typed fields") {
  CertificateReport r;
  r.kind = CertificateReport::Kind::RipLevels;
  r.method = CertificateReport::Method::ExactEnumeration;
  r.value = 0.25;
  r.work = 12;
  r.witness_support = std::vector<int>{1, 5};
  const json j = to_json(r);
  CHECK(j["kind"] == "RIP_L");
  CHECK(j["method"] == "exact-enumeration");
  CHECK(j["value"] == 0.25);
  CHECK(j["witness_support"] == json::array({1, 5}));

  FlipReport f;
  f.err_original_l2 = 0.5;
  const json jf = to_json(f);
  CHECK(jf["err_original_l2"] == 0.5);

  const json jp = to_json(SparsityPattern({1, 2}, {0, 2, 4}));
  CHECK(jp["s"] == json::array({1, 2}));
  CHECK(jp["M"] == json::array({0, 2, 4}));
}
