#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "nearint/errors.hpp"
#include "nearint/io.hpp"

using namespace nearint;

namespace {

bool same_points(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size() || a.dim() != b.dim() || a.mode() != b.mode()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return a.radius_bound() == b.radius_bound();
}

}  // namespace

TEST_CASE("exact point set round trip") {
  PointSetFile f;
  f.points = PointSet({Point::lattice_point({1, -2, 3}), Point::lattice_point({(1LL << 55) + 1, 0, -7})},
                      ArithmeticMode::exact_lattice, 1e17);
  f.delta = Rational(1, 11664);
  f.meta.construction = "sarkozy3d";
  f.meta.params = {{"k", "3"}, {"t", "1"}};
  f.meta.created = "2020-01-01T00:00:00Z";
  f.meta.seed = 42;
  const std::string text = serialize_point_set(f);
  const PointSetFile g = parse_point_set(text);
  CHECK(same_points(f.points, g.points));
  REQUIRE(g.delta);
  REQUIRE(g.delta->exact());
  CHECK(*g.delta->exact() == Rational(1, 11664));
  CHECK(g.meta.construction == "sarkozy3d");
  CHECK(g.meta.params == f.meta.params);
  CHECK(g.meta.created == f.meta.created);
  CHECK(g.meta.seed == std::optional<std::uint64_t>(42));
  CHECK(g.norm.is_euclidean());
  CHECK(serialize_point_set(g) == text);
}

TEST_CASE("float point set round trip is bit exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<Point> pts;
  for (int i = 0; i < 500; ++i) pts.push_back(Point{u(rng), u(rng) * 1e-9, u(rng) * 1e9, 1.0 / (i + 3)});
  PointSetFile f;
  f.points = PointSet(std::move(pts), ArithmeticMode::certified_float, 2e12);
  f.delta = Delta(0.1);
  f.norm = NormSpec::lp(3.5);
  const PointSetFile g = parse_point_set(serialize_point_set(f));
  CHECK(same_points(f.points, g.points));
  REQUIRE(g.delta);
  CHECK(g.delta->value() == 0.1);
  CHECK_FALSE(g.norm.is_euclidean());
  CHECK(g.norm.p == 3.5);

  const auto dir = std::filesystem::temp_directory_path() / "nearint_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "set.json").string();
  write_point_set(path, f);
  CHECK(same_points(read_point_set(path).points, f.points));
}

TEST_CASE("certificate round trip") {
  const CertifyResult r = certify_negative_polynomial(Rational(1, 5), 1);
  REQUIRE(r.feasible());
  const CertificateFile f = make_certificate_file(Rational(1, 5), 1, 64, r);
  CHECK(f.status() == "certified");
  const CertificateFile g = parse_certificate(serialize_certificate(f));
  REQUIRE(g.certificate);
  CHECK(g.certificate->coeffs == f.certificate->coeffs);
  CHECK(g.certificate->margin == f.certificate->margin);
  CHECK(g.certificate->grid_step == f.certificate->grid_step);
  CHECK(g.certificate->delta == Rational(1, 5));
  CHECK(check_certificate(*g.certificate));

  const CertifyResult none = certify_negative_polynomial(Rational(1, 5), 2);
  const CertificateFile h = parse_certificate(
      serialize_certificate(make_certificate_file(Rational(1, 5), 2, 64, none)));
  CHECK(h.status() == "infeasible");
  CHECK_FALSE(h.certificate);
  CHECK(h.best_grid_margin == none.best_grid_margin);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_point_set("{"), DomainError);
  CHECK_THROWS_AS(parse_point_set("[]"), DomainError);
  CHECK_THROWS_AS(parse_point_set(R"({"format":"other","version":1})"), DomainError);
  CHECK_THROWS_AS(parse_point_set(R"({"format":"nearint-pointset","version":9})"), DomainError);
  const std::string head =
      R"({"format":"nearint-pointset","version":1,"dim":2,"radius_bound":5,"norm":"l2",)";
  CHECK_THROWS_AS(parse_point_set(head + R"("mode":"exact-lattice","points":[[1,2.5]]})"), DomainError);
  CHECK_THROWS_AS(parse_point_set(head + R"("mode":"certified-float","points":[[1]]})"), DomainError);
  CHECK_THROWS_AS(parse_point_set(head + R"("mode":"certified-float","points":[[1,"a"]]})"), DomainError);
  CHECK_THROWS_AS(
      parse_point_set(head + R"("mode":"certified-float","points":[[1,2]],"meta":{"count":3}})"),
      DomainError);
  CHECK_NOTHROW(parse_point_set(head + R"("mode":"certified-float","points":[[1,2]]})"));
  CHECK_THROWS_AS(parse_certificate(R"({"format":"nearint-pointset","version":1})"), DomainError);
  CHECK_THROWS_AS(read_point_set("/nonexistent/dir/file.json"), DomainError);
}

TEST_CASE("parse_delta") {
  const Delta a = parse_delta("0.1", ArithmeticMode::exact_lattice);
  REQUIRE(a.exact());
  CHECK(*a.exact() == Rational(1, 10));
  const Delta b = parse_delta("0.1", ArithmeticMode::certified_float);
  CHECK(b.value() == 0.1);
  const Delta c = parse_delta("3/7", ArithmeticMode::certified_float);
  REQUIRE(c.exact());
  CHECK(*c.exact() == Rational(3, 7));
  CHECK_THROWS_AS(parse_delta("abc", ArithmeticMode::certified_float), DomainError);
}

TEST_CASE("timestamp honours SOURCE_DATE_EPOCH") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(timestamp_now() == "1970-01-01T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(timestamp_now().size() == 20);
}
