#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boxvol/geometry.hpp"
#include "boxvol/sampling.hpp"

namespace boxvol {

/// Random box generators. All are deterministic for a fixed stream.
std::vector<AlignedBox> gen_uniform(int n, int d, RandomStream& stream);
std::vector<AlignedBox> gen_cubes(int n, int d, RandomStream& stream);
/// Boxes spread over shape classes whose exponent gaps exceed the
/// similarity threshold, so the partition contains pairwise-dissimilar
/// classes.
std::vector<AlignedBox> gen_dissimilar_classes(int n, int d, RandomStream& stream);
/// Unit cubes at random lattice points.
std::vector<AlignedBox> gen_lattice(int n, int d, RandomStream& stream);

/// Dispatch by kind name: uniform | cubes | dissimilar-classes | lattice.
std::vector<AlignedBox> generate_instance(const std::string& kind, int n, int d,
                                          std::uint64_t seed);

/// Instance file format: header "d n", then one line per box with the 2d
/// numbers "a_1 b_1 ... a_d b_d". Serialization uses shortest round-trip
/// decimal form, so parse(serialize(x)) == x bit for bit.
std::string serialize_instance(std::span<const AlignedBox> boxes);
std::vector<AlignedBox> parse_instance(std::string_view text);

void write_instance(const std::string& path, std::span<const AlignedBox> boxes);
std::vector<AlignedBox> read_instance(const std::string& path);

}  // namespace boxvol
