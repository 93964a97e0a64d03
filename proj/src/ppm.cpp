#include "dustclear/ppm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace dustclear {

namespace {

const char* kind_name(PpmError::Kind kind) {
    switch (kind) {
        case PpmError::Kind::UnsupportedMagic: return "unsupported magic";
        case PpmError::Kind::MalformedHeader: return "malformed header";
        case PpmError::Kind::UnsupportedMaxval: return "unsupported maxval";
        case PpmError::Kind::TruncatedPayload: return "truncated payload";
        case PpmError::Kind::Io: return "i/o error";
    }
    return "ppm error";
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t pos() const { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Header fields must be separated by whitespace; no field may be empty.
    long long number(const char* field) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) {
                throw PpmError(PpmError::Kind::MalformedHeader, start,
                               std::string(field) + " out of range");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw PpmError(PpmError::Kind::MalformedHeader, start,
                           std::string("expected ") + field);
        }
        return value;
    }

    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw PpmError(PpmError::Kind::MalformedHeader, pos_,
                           "expected whitespace after maxval");
        }
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

PpmError::PpmError(Kind kind, std::size_t offset, const std::string& detail)
    : std::runtime_error(std::string(kind_name(kind)) + " at byte " + std::to_string(offset) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      offset_(offset) {}

Raster8 decode_ppm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
        throw PpmError(PpmError::Kind::UnsupportedMagic, 0, "only binary P6 is supported");
    }
    HeaderReader reader(bytes.subspan(2));
    const long long width = reader.number("width");
    const long long height = reader.number("height");
    if (width < 1 || height < 1) {
        throw PpmError(PpmError::Kind::MalformedHeader, 2 + reader.pos(),
                       "dimensions must be positive");
    }
    const std::size_t maxval_at = 2 + reader.pos();
    const long long maxval = reader.number("maxval");
    if (maxval != 255) {
        throw PpmError(PpmError::Kind::UnsupportedMaxval, maxval_at,
                       "maxval " + std::to_string(maxval) + " (only 255 is supported)");
    }
    reader.single_whitespace();

    const std::size_t payload_at = 2 + reader.pos();
    const std::size_t expected = static_cast<std::size_t>(width) * height * 3;
    if (bytes.size() - payload_at < expected) {
        throw PpmError(PpmError::Kind::TruncatedPayload, bytes.size(),
                       "expected " + std::to_string(expected) + " payload bytes, found " +
                           std::to_string(bytes.size() - payload_at));
    }
    std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(payload_at),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(payload_at + expected));
    return Raster8(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

std::vector<std::uint8_t> encode_ppm(const Raster8& img) {
    const std::string header =
        "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

Raster8 read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PpmError(PpmError::Kind::Io, 0, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_ppm(bytes);
}

void write_ppm(const std::filesystem::path& path, const Raster8& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw PpmError(PpmError::Kind::Io, 0, "cannot create " + path.string());
    const auto bytes = encode_ppm(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PpmError(PpmError::Kind::Io, 0, "write failed for " + path.string());
}

}  // namespace dustclear
