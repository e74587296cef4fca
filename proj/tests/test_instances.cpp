#include <doctest.h>

#include <cstdio>
#include <stdexcept>

#include "boxvol/classify.hpp"
#include "boxvol/exact.hpp"
#include "boxvol/instances.hpp"

using namespace boxvol;

TEST_CASE("generators are deterministic and well formed") {
  for (const char* kind : {"uniform", "cubes", "dissimilar-classes", "lattice"}) {
    const auto a = generate_instance(kind, 30, 3, 5);
    const auto b = generate_instance(kind, 30, 3, 5);
    CHECK(a == b);
    CHECK(a.size() == 30);
    for (const auto& box : a) {
      CHECK(box.dim() == 3);
      CHECK_FALSE(box.degenerate());
    }
    const auto c = generate_instance(kind, 30, 3, 6);
    CHECK(a != c);
  }
  CHECK_THROWS_AS(generate_instance("nope", 5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance("uniform", 0, 2, 1), std::invalid_argument);
}

TEST_CASE("cubes have equal sides and lattice boxes are unit cubes") {
  for (const auto& b : generate_instance("cubes", 25, 3, 7)) {
    CHECK(b.side(1) == doctest::Approx(b.side(0)));
    CHECK(b.side(2) == doctest::Approx(b.side(0)));
  }
  for (const auto& b : generate_instance("lattice", 25, 2, 7)) {
    CHECK(b.side(0) == 1.0);
    CHECK(b.side(1) == 1.0);
  }
}

TEST_CASE("dissimilar-classes instances contain dissimilar shape classes") {
  const int n = 32;
  const auto boxes = generate_instance("dissimilar-classes", n, 2, 9);
  const auto p = partition(boxes);
  REQUIRE(p.num_classes() >= 2);
  bool found = false;
  for (int s = 0; s < p.num_classes() && !found; ++s) {
    for (int t = s + 1; t < p.num_classes() && !found; ++t) {
      found = !similar(p.classes[static_cast<size_t>(s)].type,
                       p.classes[static_cast<size_t>(t)].type, n);
    }
  }
  CHECK(found);
}

TEST_CASE("serialization round-trips bit for bit") {
  for (const char* kind : {"uniform", "cubes", "dissimilar-classes"}) {
    const auto boxes = generate_instance(kind, 50, 2, 11);
    const auto text = serialize_instance(boxes);
    const auto back = parse_instance(text);
    CHECK(back == boxes);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_instance(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("2 1\n0 1"), std::invalid_argument);       // truncated
  CHECK_THROWS_AS(parse_instance("0 3\n"), std::invalid_argument);          // bad dim
  CHECK_THROWS_AS(parse_instance("1 1\n0 abc\n"), std::invalid_argument);   // bad number
  CHECK_THROWS_AS(parse_instance("1 1\n1 0\n"), std::invalid_argument);     // lo > hi
}

TEST_CASE("file round trip") {
  const auto boxes = generate_instance("uniform", 12, 3, 13);
  const std::string path = "instances_roundtrip.tmp";
  write_instance(path, boxes);
  CHECK(read_instance(path) == boxes);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_instance("does_not_exist.tmp"), std::runtime_error);
}
