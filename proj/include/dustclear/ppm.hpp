#pragma once

// Binary PPM (P6, maxval 255) codec. Encoding is canonical: "P6\n<w> <h>\n255\n"
// followed by the interleaved payload, so decode(encode(x)) == x and
// encode(decode(bytes)) == bytes for canonical input.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dustclear/image.hpp"

namespace dustclear {

class PpmError : public std::runtime_error {
public:
    enum class Kind { UnsupportedMagic, MalformedHeader, UnsupportedMaxval, TruncatedPayload, Io };

    PpmError(Kind kind, std::size_t offset, const std::string& detail);

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

Raster8 decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const Raster8& img);

Raster8 read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Raster8& img);

}  // namespace dustclear
