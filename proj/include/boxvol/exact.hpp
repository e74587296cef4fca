#pragma once

#include <cstddef>
#include <span>

#include "boxvol/classify.hpp"
#include "boxvol/geometry.hpp"

namespace boxvol {

/// Ground-truth union volume over a coordinate-compressed grid. Feasible
/// only while the elementary cell count stays under cell_cap; throws
/// otherwise. Every statistical test in the project leans on this oracle.
double exact_volume(std::span<const AlignedBox> boxes, std::size_t cell_cap = 100'000'000);

/// Independent d=2 implementation (sweep over x events, interval union on
/// y) used to cross-check the grid oracle.
double exact_volume_sweepline(std::span<const AlignedBox> boxes);

/// exact_volume restricted to class t of the partition.
double exact_class_volume(const ClassPartition& p, int t, std::size_t cell_cap = 100'000'000);

}  // namespace boxvol
