#include "lpt/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lpt {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'L', 'P', 'T', 'F'};
constexpr std::uint8_t kVersion = 1;

struct Header {
  char magic[4];
  std::uint8_t version;
  std::uint8_t d;
  std::uint16_t reserved1;
  std::uint32_t n;
  std::uint32_t reserved2;
};
static_assert(sizeof(Header) == 16);

}  // namespace

void write_snapshot(const std::string& path, const PhysicalField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.d = static_cast<std::uint8_t>(f.grid.dim);
  h.n = static_cast<std::uint32_t>(f.grid.n);
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

PhysicalField read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, kMagic, 4) != 0)
    throw std::runtime_error("read_snapshot: bad magic in " + path);
  if (h.version != kVersion)
    throw std::runtime_error("read_snapshot: unsupported version in " + path);
  TorusGrid g = make_grid(h.d, static_cast<int>(h.n));
  PhysicalField f(g);
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_snapshot: truncated data in " + path);
  return f;
}

}  // namespace lpt
