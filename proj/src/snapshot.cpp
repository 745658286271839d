#include "aqg/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace aqg {

namespace {

constexpr char kMagic[4] = {'A', 'Q', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ofstream& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(buf), std::end(buf));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::ifstream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(buf), std::end(buf));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const RealField& f, double t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(kMagic, 4);
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.n1));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.n2));
    put_le<double>(out, f.grid.l1);
    put_le<double>(out, f.grid.l2);
    put_le<double>(out, t);
    for (double v : f.values) put_le<double>(out, v);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("'" + path.string() + "' is not a snapshot file");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    const auto n1 = get_le<std::uint32_t>(in);
    const auto n2 = get_le<std::uint32_t>(in);
    const double l1 = get_le<double>(in);
    const double l2 = get_le<double>(in);
    const double t = get_le<double>(in);

    Snapshot snap;
    snap.t = t;
    snap.field = RealField(GridSpec(static_cast<int>(n1), static_cast<int>(n2), l1, l2));
    for (double& v : snap.field.values) v = get_le<double>(in);
    if (!in) throw std::runtime_error("truncated snapshot '" + path.string() + "'");
    return snap;
}

}  // namespace aqg
