#include "boxvol/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boxvol {

std::vector<AlignedBox> gen_uniform(int n, int d, RandomStream& stream) {
  std::vector<AlignedBox> boxes;
  boxes.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      double a = stream.next_double();
      double b = stream.next_double();
      if (a > b) std::swap(a, b);
      lo[static_cast<size_t>(k)] = a;
      hi[static_cast<size_t>(k)] = b;
    }
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

std::vector<AlignedBox> gen_cubes(int n, int d, RandomStream& stream) {
  std::vector<AlignedBox> boxes;
  boxes.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double side = 0.05 + 0.15 * stream.next_double();
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      const double a = stream.next_double() * (1.0 - side);
      lo[static_cast<size_t>(k)] = a;
      hi[static_cast<size_t>(k)] = a + side;
    }
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

std::vector<AlignedBox> gen_dissimilar_classes(int n, int d, RandomStream& stream) {
  if (n < 2) throw std::invalid_argument("gen_dissimilar_classes: need n >= 2");
  // Exponent gap strictly past the similarity threshold 4 log2(n).
  const int gap = static_cast<int>(std::ceil(4.0 * std::log2(static_cast<double>(n)))) + 1;
  const int groups = std::min(3, n);
  std::vector<AlignedBox> boxes;
  boxes.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int g = i % groups;
    const int exponent = g * gap;
    const double base_side = std::ldexp(1.0, exponent);
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      // First dimension carries the class gap; others stay in [1, 2).
      const double side = (k == 0 ? base_side : 1.0) * (1.0 + stream.next_double() * 0.999);
      const double origin = stream.next_double() * base_side;
      lo[static_cast<size_t>(k)] = origin;
      hi[static_cast<size_t>(k)] = origin + side;
    }
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

std::vector<AlignedBox> gen_lattice(int n, int d, RandomStream& stream) {
  const auto width = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d)))) + 2;
  std::vector<AlignedBox> boxes;
  boxes.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      const double a = static_cast<double>(stream.next_below(width));
      lo[static_cast<size_t>(k)] = a;
      hi[static_cast<size_t>(k)] = a + 1.0;
    }
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

std::vector<AlignedBox> generate_instance(const std::string& kind, int n, int d,
                                          std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("generate_instance: need n >= 1 and d >= 1");
  RandomStream stream(seed);
  if (kind == "uniform") return gen_uniform(n, d, stream);
  if (kind == "cubes") return gen_cubes(n, d, stream);
  if (kind == "dissimilar-classes") return gen_dissimilar_classes(n, d, stream);
  if (kind == "lattice") return gen_lattice(n, d, stream);
  throw std::invalid_argument("generate_instance: unknown kind '" + kind + "'");
}

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("parse_instance: bad number '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

std::string serialize_instance(std::span<const AlignedBox> boxes) {
  if (boxes.empty()) throw std::invalid_argument("serialize_instance: empty instance");
  const int d = boxes.front().dim();
  std::string out;
  out += std::to_string(d);
  out += ' ';
  out += std::to_string(boxes.size());
  out += '\n';
  for (const auto& b : boxes) {
    if (b.dim() != d) throw std::invalid_argument("serialize_instance: mixed dimensions");
    for (int k = 0; k < d; ++k) {
      if (k > 0) out += ' ';
      append_double(out, b.lo[static_cast<size_t>(k)]);
      out += ' ';
      append_double(out, b.hi[static_cast<size_t>(k)]);
    }
    out += '\n';
  }
  return out;
}

std::vector<AlignedBox> parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  int d = 0;
  long long n = 0;
  if (!(in >> d >> n) || d < 1 || n < 1) {
    throw std::invalid_argument("parse_instance: bad header");
  }
  std::vector<AlignedBox> boxes;
  boxes.reserve(static_cast<size_t>(n));
  std::string token;
  for (long long i = 0; i < n; ++i) {
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      if (!(in >> token)) throw std::invalid_argument("parse_instance: truncated file");
      lo[static_cast<size_t>(k)] = parse_double(token);
      if (!(in >> token)) throw std::invalid_argument("parse_instance: truncated file");
      hi[static_cast<size_t>(k)] = parse_double(token);
    }
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

void write_instance(const std::string& path, std::span<const AlignedBox> boxes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_instance: cannot open " + path);
  out << serialize_instance(boxes);
}

std::vector<AlignedBox> read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_instance: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace boxvol
