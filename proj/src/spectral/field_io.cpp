#include "mildns/field_io.hpp"

#include "mildns/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace mildns::spectral {

static_assert(std::endian::native == std::endian::little,
              "field files are written in little-endian byte order");

namespace {

constexpr char kMagic[8] = {'M', 'I', 'L', 'D', 'N', 'S', 'F', '1'};

template <class T>
void put(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw Error("field file truncated");
    return value;
}

} // namespace

void write_fields(const std::filesystem::path& path, const GridSpec& grid,
                  const std::vector<FieldRecord>& records) {
    const std::uint32_t components =
        records.empty() ? 0u : static_cast<std::uint32_t>(records.front().components.size());
    for (const auto& r : records) {
        if (r.components.size() != components) {
            throw DimensionError("all records in a field file need the same component count");
        }
        for (const auto& c : r.components) require_same_grid(grid, c.grid());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(kMagic, sizeof(kMagic));
    put(out, static_cast<std::uint32_t>(grid.dim()));
    put(out, static_cast<std::uint32_t>(grid.modes()));
    put(out, grid.length());
    put(out, static_cast<std::uint64_t>(records.size()));
    put(out, components);
    for (const auto& r : records) {
        put(out, r.time);
        for (const auto& c : r.components) {
            out.write(reinterpret_cast<const char*>(c.coeffs().data()),
                      static_cast<std::streamsize>(c.size() * sizeof(Complex)));
        }
    }
    if (!out) throw Error("failed writing " + path.string());
}

FieldFile read_fields(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw Error(path.string() + " is not a field file");
    }
    const auto d = get<std::uint32_t>(in);
    const auto n = get<std::uint32_t>(in);
    const auto length = get<double>(in);
    const auto count = get<std::uint64_t>(in);
    const auto components = get<std::uint32_t>(in);
    FieldFile file{GridSpec(static_cast<int>(d), static_cast<int>(n), length), {}};
    file.records.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) {
        FieldRecord rec;
        rec.time = get<double>(in);
        for (std::uint32_t c = 0; c < components; ++c) {
            SpectralField f(file.grid);
            in.read(reinterpret_cast<char*>(f.coeffs().data()),
                    static_cast<std::streamsize>(f.size() * sizeof(Complex)));
            if (!in) throw Error("field file truncated");
            rec.components.push_back(std::move(f));
        }
        file.records.push_back(std::move(rec));
    }
    return file;
}

} // namespace mildns::spectral
