#pragma once

#include "mildns/field.hpp"

#include <filesystem>
#include <vector>

namespace mildns::spectral {

/// One time-stamped group of scalar fields (e.g. the components of a velocity).
struct FieldRecord {
    double time = 0.0;
    std::vector<SpectralField> components;
};

/// Binary field file, little-endian:
///
///   offset  type        content
///   0       char[8]     "MILDNSF1"
///   8       uint32      d
///   12      uint32      N
///   16      float64     L
///   24      uint64      record count R
///   32      uint32      components per record C
///   36      ...         R records, each: float64 time, then C blocks of
///                       N^d (float64 re, float64 im) coefficient pairs in
///                       grid storage order
///
/// All records share the header grid and component count.
void write_fields(const std::filesystem::path& path, const GridSpec& grid,
                  const std::vector<FieldRecord>& records);

struct FieldFile {
    GridSpec grid;
    std::vector<FieldRecord> records;
};

FieldFile read_fields(const std::filesystem::path& path);

} // namespace mildns::spectral
